#include "affect_engine/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "affect_engine/config_json.hpp"
#include "affect_engine/errors.hpp"

namespace affect_engine {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

std::string fixed2(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

const char* visibility_name(Visibility v) {
    return v == Visibility::Visible ? "visible" : "invisible";
}

// Drawing frame shared by the circumplex plot: a 640x640 canvas whose unit
// square [-1,1]^2 maps linearly onto a circle of radius 260 around the
// center.
constexpr double kCanvas = 640.0;
constexpr double kCenter = 320.0;
constexpr double kScale = 260.0;

double to_px_x(double valence_norm) { return kCenter + valence_norm * kScale; }
double to_px_y(double arousal_norm) { return kCenter - arousal_norm * kScale; }

} // namespace

std::string csv_string(const TrajectoryLog& log) {
    std::ostringstream out;
    out << "t,agent_loc,action,obs_visibility,valence_raw,arousal_raw,valence_norm,"
           "arousal_norm,radius,angle_deg,label,free_energy,selected_G\n";
    for (const TrajectoryStep& step : log.steps) {
        out << step.t << ',' << step.agent_location << ',' << step.action << ','
            << visibility_name(step.observation.visibility) << ','
            << fixed6(step.affect.valence_raw) << ',' << fixed6(step.affect.arousal_raw) << ','
            << fixed6(step.affect.valence_norm) << ',' << fixed6(step.affect.arousal_norm) << ','
            << fixed6(step.affect.radius) << ',' << fixed6(step.affect.angle_deg) << ','
            << to_string(step.affect.label) << ',' << fixed6(step.free_energy.total) << ','
            << fixed6(step.selected_policy_g) << '\n';
    }
    return out.str();
}

std::string json_string(const TrajectoryLog& log) {
    const std::string config_text = resolved_config_json({log.config});
    ordered_json config_array = ordered_json::parse(config_text);

    ordered_json doc;
    doc["config"] = config_array.at(0);
    doc["outcome"] = to_string(log.outcome);
    ordered_json steps = ordered_json::array();
    for (const TrajectoryStep& step : log.steps) {
        ordered_json entry;
        entry["t"] = step.t;
        entry["agent_location"] = step.agent_location;
        entry["action"] = step.action;
        entry["observation"] = {{"location", step.observation.location},
                                {"visibility", visibility_name(step.observation.visibility)}};
        entry["object_belief"] = step.object_belief;
        entry["free_energy"] = {{"total", step.free_energy.total},
                                {"kl_posterior_form", step.free_energy.kl_posterior_form},
                                {"energy", step.free_energy.energy},
                                {"entropy", step.free_energy.entropy},
                                {"complexity", step.free_energy.complexity},
                                {"accuracy", step.free_energy.accuracy}};
        entry["selected_policy_g"] = step.selected_policy_g;
        entry["affect"] = {{"utility", step.affect.utility},
                           {"expected_utility", step.affect.expected_utility},
                           {"valence_raw", step.affect.valence_raw},
                           {"arousal_raw", step.affect.arousal_raw},
                           {"valence_norm", step.affect.valence_norm},
                           {"arousal_norm", step.affect.arousal_norm},
                           {"radius", step.affect.radius},
                           {"angle_deg", step.affect.angle_deg},
                           {"label", to_string(step.affect.label)},
                           {"utility_floored", step.affect.utility_floored}};
        steps.push_back(std::move(entry));
    }
    doc["steps"] = std::move(steps);
    return doc.dump(2) + "\n";
}

std::string svg_string(const TrajectoryLog& log) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";

    // Axes: valence horizontal, arousal vertical.
    out << "  <line x1=\"" << fixed2(kCenter - kScale - 20) << "\" y1=\"" << fixed2(kCenter)
        << "\" x2=\"" << fixed2(kCenter + kScale + 20) << "\" y2=\"" << fixed2(kCenter)
        << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << fixed2(kCenter) << "\" y1=\"" << fixed2(kCenter - kScale - 20)
        << "\" x2=\"" << fixed2(kCenter) << "\" y2=\"" << fixed2(kCenter + kScale + 20)
        << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << fixed2(kCenter + kScale + 22) << "\" y=\"" << fixed2(kCenter + 4)
        << "\" font-size=\"14\" fill=\"#333\">valence</text>\n";
    out << "  <text x=\"" << fixed2(kCenter + 6) << "\" y=\"" << fixed2(kCenter - kScale - 24)
        << "\" font-size=\"14\" fill=\"#333\">arousal</text>\n";

    // Unit circle and neutral disk.
    out << "  <circle cx=\"" << fixed2(kCenter) << "\" cy=\"" << fixed2(kCenter) << "\" r=\""
        << fixed2(kScale) << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\"/>\n";
    out << "  <circle cx=\"" << fixed2(kCenter) << "\" cy=\"" << fixed2(kCenter) << "\" r=\""
        << fixed2(0.1 * kScale)
        << "\" fill=\"#f2f2f2\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";

    // Sector labels at the eight 45-degree centers.
    struct SectorLabel {
        const char* name;
        double angle_deg;
    };
    static constexpr SectorLabel kLabels[8] = {
        {"happy", 0.0},   {"excited", 45.0},   {"alert", 90.0},  {"angry", 135.0},
        {"sad", 180.0},   {"depressed", 225.0}, {"calm", 270.0}, {"relaxed", 315.0},
    };
    for (const SectorLabel& label : kLabels) {
        const double rad = label.angle_deg * std::numbers::pi / 180.0;
        const double x = kCenter + 1.08 * kScale * std::cos(rad);
        const double y = kCenter - 1.08 * kScale * std::sin(rad);
        out << "  <text x=\"" << fixed2(x) << "\" y=\"" << fixed2(y)
            << "\" font-size=\"13\" fill=\"#555\" text-anchor=\"middle\">" << label.name
            << "</text>\n";
    }

    // The trajectory itself: one polyline plus per-step markers.
    out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < log.steps.size(); ++i) {
        if (i > 0) out << ' ';
        out << fixed2(to_px_x(log.steps[i].affect.valence_norm)) << ','
            << fixed2(to_px_y(log.steps[i].affect.arousal_norm));
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < log.steps.size(); ++i) {
        const double x = to_px_x(log.steps[i].affect.valence_norm);
        const double y = to_px_y(log.steps[i].affect.arousal_norm);
        const bool first = i == 0;
        const bool last = i + 1 == log.steps.size();
        const char* fill = first ? "#2ca02c" : (last ? "#d62728" : "#1f77b4");
        out << "  <circle cx=\"" << fixed2(x) << "\" cy=\"" << fixed2(y) << "\" r=\""
            << (first || last ? "5" : "3") << "\" fill=\"" << fill << "\"/>\n";
        out << "  <text x=\"" << fixed2(x + 6) << "\" y=\"" << fixed2(y - 6)
            << "\" font-size=\"10\" fill=\"#333\">" << log.steps[i].t << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("could not open for writing: " + path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed while writing: " + path);
    }
}

void write_csv(const TrajectoryLog& log, const std::string& path) {
    write_text(csv_string(log), path);
}

void write_json(const TrajectoryLog& log, const std::string& path) {
    write_text(json_string(log), path);
}

void write_svg(const TrajectoryLog& log, const std::string& path) {
    write_text(svg_string(log), path);
}

} // namespace affect_engine
