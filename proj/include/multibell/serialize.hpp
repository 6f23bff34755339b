#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellineq.hpp"
#include "corrtensor.hpp"
#include "criteria.hpp"
#include "errors.hpp"

namespace multibell {

using nlohmann::json;

// 12 significant digits, the precision every report number is printed with.
// Library-level JSON keeps native full precision so vectors round-trip.
inline std::string sig12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Number parsed back from its 12-digit form, for report payloads.
inline double round12(double x) { return std::strtod(sig12(x).c_str(), nullptr); }

inline json to_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

inline Eigen::Vector3d vector3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw parse_error("expected [x,y,z] vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// ---- correlation tensors: flat row-major entries, exact round-trip ----

inline json to_json(const CorrelationTensor& t) {
    return json{{"n_parties", t.n_parties}, {"entries", t.entries}};
}

inline CorrelationTensor tensor_from_json(const json& j) {
    CorrelationTensor t;
    t.n_parties = j.at("n_parties").get<int>();
    if (t.n_parties < 1) throw parse_error("tensor needs at least one party");
    t.entries = j.at("entries").get<std::vector<double>>();
    if (t.entries.size() != CorrelationTensor::size_for(t.n_parties))
        throw parse_error("tensor entry count does not match party count");
    return t;
}

// ---- settings: per-party list of [x,y,z] unit vectors ----

inline json to_json(const SettingsAssignment& s) {
    json parties = json::array();
    for (const auto& p : s.settings) {
        json vs = json::array();
        for (const auto& v : p) vs.push_back(to_json(v));
        parties.push_back(vs);
    }
    return parties;
}

inline SettingsAssignment settings_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("expected per-party settings array");
    SettingsAssignment s;
    for (const auto& p : j) {
        if (!p.is_array()) throw parse_error("expected settings list per party");
        std::vector<Eigen::Vector3d> vs;
        for (const auto& v : p) vs.push_back(vector3_from_json(v));
        s.settings.push_back(std::move(vs));
    }
    return s;
}

// ---- criterion results ----

inline json to_json(const TermFrames& tf) {
    json planes = json::array();
    for (const auto& p : tf.planes) {
        json cols = json::array();
        for (int c = 0; c < p.cols(); ++c) cols.push_back(to_json(Eigen::Vector3d(p.col(c))));
        planes.push_back(cols);
    }
    return json{{"planes", planes}, {"last_axis", to_json(tf.last_axis)}};
}

inline json to_json(const FrameSet& fs) {
    json terms = json::array();
    for (const auto& t : fs.terms) terms.push_back(to_json(t));
    return json{{"terms", terms}};
}

inline json to_json(const CriterionResult& r) {
    const double threshold =
        r.violation_factor <= 1.0 ? 1.0 : std::min(1.0, 1.0 / r.violation_factor);
    return json{{"criterion_id", to_string(r.criterion_id)},
                {"max_value", r.max_value},
                {"violation_factor", r.violation_factor},
                {"threshold", threshold},
                {"method", to_string(r.method)},
                {"restarts_used", r.restarts_used},
                {"spread", r.spread},
                {"frames", to_json(r.argmax_frames)}};
}

inline json to_json(const BellMaximum& m) {
    return json{{"value", m.value},
                {"argmax", to_json(m.argmax)},
                {"restarts_used", m.restarts_used},
                {"spread", m.spread}};
}

// ---- CSV ----

inline std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
    return out;
}

}  // namespace multibell
