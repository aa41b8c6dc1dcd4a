#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace affect_engine {

/// Dense row-major matrix, indexed (row, col).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

/// Dense rank-3 tensor, indexed (i, j, k) with k fastest.
struct Tensor3 {
    std::size_t d0 = 0;
    std::size_t d1 = 0;
    std::size_t d2 = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(std::size_t a, std::size_t b, std::size_t c, double fill = 0.0)
        : d0(a), d1(b), d2(c), data(a * b * c, fill) {}

    double& at(std::size_t i, std::size_t j, std::size_t k) {
        return data[(i * d1 + j) * d2 + k];
    }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return data[(i * d1 + j) * d2 + k];
    }
};

/// Seeded random source. The uniform draw is derived from the raw engine
/// output rather than std::uniform_real_distribution so that streams are
/// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace affect_engine
