#pragma once

#include <string>

#include "affect_engine/scenario.hpp"

namespace affect_engine {

/// Per-step table, one row per step. Floating-point columns use fixed
/// six-decimal formatting so reruns are byte-identical.
std::string csv_string(const TrajectoryLog& log);

/// Full structured record: resolved configuration, outcome and the per-step
/// fields (beliefs included).
std::string json_string(const TrajectoryLog& log);

/// Self-contained SVG of the trajectory in the valence/arousal plane: axes,
/// unit square, neutral disk, the eight sector labels and a polyline through
/// the per-step points (start and end markers).
std::string svg_string(const TrajectoryLog& log);

/// write_* render and write to `path`, throwing IoError on failure.
void write_csv(const TrajectoryLog& log, const std::string& path);
void write_json(const TrajectoryLog& log, const std::string& path);
void write_svg(const TrajectoryLog& log, const std::string& path);

/// Writes arbitrary text to `path`, throwing IoError on failure.
void write_text(const std::string& text, const std::string& path);

} // namespace affect_engine
