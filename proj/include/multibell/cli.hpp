#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellineq.hpp"
#include "criteria.hpp"
#include "errors.hpp"
#include "lhv.hpp"
#include "qstate.hpp"
#include "serialize.hpp"

namespace multibell::cli {

// ----------------------------------------------------------------------
// state-spec grammar
//   ghz:n=<int>,alpha=<real>   (alpha optional, defaults to 0)
//   w:n=<int>
//   fourphoton
//   noise:v=<real>,inner=<spec>   (inner consumes the rest of the string)
// ----------------------------------------------------------------------

struct ParsedState {
    std::string kind;
    int n = 0;
    bool has_n = false;
    double alpha = 0.0;
    double v = 1.0;
    std::string inner;
};

namespace detail {

inline double parse_real(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw parse_error("bad number: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad number: " + s);
    } catch (const std::out_of_range&) {
        throw parse_error("number out of range: " + s);
    }
}

inline int parse_int(const std::string& s) {
    const double v = parse_real(s);
    const int i = int(std::llround(v));
    if (double(i) != v) throw parse_error("expected integer: " + s);
    return i;
}

}  // namespace detail

inline ParsedState parse_state_spec(const std::string& spec) {
    ParsedState p;
    const auto colon = spec.find(':');
    p.kind = spec.substr(0, colon);
    std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (p.kind != "ghz" && p.kind != "w" && p.kind != "fourphoton" && p.kind != "noise")
        throw parse_error("unknown state kind: " + p.kind);
    if (p.kind == "fourphoton") {
        if (!params.empty()) throw parse_error("fourphoton takes no parameters");
        return p;
    }

    bool has_alpha = false, has_v = false, has_inner = false;
    while (!params.empty()) {
        const auto eq = params.find('=');
        if (eq == std::string::npos) throw parse_error("expected key=value in state spec");
        const std::string key = params.substr(0, eq);
        std::string value;
        if (key == "inner") {  // rest of the string, commas and all
            value = params.substr(eq + 1);
            params.clear();
        } else {
            const auto comma = params.find(',', eq);
            value = params.substr(eq + 1, comma == std::string::npos ? std::string::npos
                                                                     : comma - eq - 1);
            params = comma == std::string::npos ? "" : params.substr(comma + 1);
        }
        if (key == "n") {
            p.n = detail::parse_int(value);
            p.has_n = true;
        } else if (key == "alpha" && p.kind == "ghz") {
            p.alpha = detail::parse_real(value);
            has_alpha = true;
        } else if (key == "v" && p.kind == "noise") {
            p.v = detail::parse_real(value);
            has_v = true;
        } else if (key == "inner" && p.kind == "noise") {
            p.inner = value;
            has_inner = true;
        } else {
            throw parse_error("unknown parameter '" + key + "' for state kind " + p.kind);
        }
    }
    (void)has_alpha;
    if ((p.kind == "ghz" || p.kind == "w") && !p.has_n)
        throw parse_error(p.kind + " spec requires n=<int>");
    if (p.kind == "noise" && (!has_v || !has_inner))
        throw parse_error("noise spec requires v=<real> and inner=<spec>");
    return p;
}

inline QuantumState build_state(const ParsedState& p) {
    if (p.kind == "ghz") return make_ghz(p.n, p.alpha);
    if (p.kind == "w") return make_w(p.n);
    if (p.kind == "fourphoton") return make_four_photon();
    return mix_white_noise(build_state(parse_state_spec(p.inner)), p.v);
}

inline QuantumState parse_state(const std::string& spec) {
    return build_state(parse_state_spec(spec));
}

// ----------------------------------------------------------------------
// report assembly
// ----------------------------------------------------------------------

struct ReportRow {
    std::string state_spec;
    std::string criterion_id;
    double max_value = 0.0;
    double violation_factor = 0.0;
    double threshold = 1.0;
    std::string method;
};

inline CriterionResult run_criterion(const CorrelationTensor& t, CriterionId id, int restarts,
                                     std::uint64_t seed) {
    switch (id) {
        case CriterionId::standard: return condition_standard(t, restarts, seed);
        case CriterionId::c442: return condition_442_numeric(t, restarts, seed);
        case CriterionId::c332: return condition_332(t, restarts, seed);
        case CriterionId::cN: return condition_N(t, restarts, seed);
    }
    throw parse_error("unknown criterion");
}

inline ReportRow row_from_result(const std::string& state_spec, const CriterionResult& r) {
    ReportRow row;
    row.state_spec = state_spec;
    row.criterion_id = to_string(r.criterion_id);
    row.max_value = r.max_value;
    row.violation_factor = r.violation_factor;
    row.threshold = r.violation_factor <= 1.0 ? 1.0 : 1.0 / r.violation_factor;
    row.method = to_string(r.method);
    return row;
}

inline std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(csv);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    return out;
}

inline std::vector<ReportRow> analyze_rows(const std::string& state_spec,
                                           const std::vector<std::string>& criteria, int restarts,
                                           std::uint64_t seed) {
    if (criteria.empty()) throw parse_error("empty criteria list");
    const QuantumState state = parse_state(state_spec);
    const CorrelationTensor t = compute_tensor(state);
    std::vector<ReportRow> rows;
    for (const auto& c : criteria)
        rows.push_back(row_from_result(state_spec, run_criterion(t, criterion_from_string(c), restarts, seed)));
    return rows;
}

inline json analyze_report(const std::string& state_spec, const std::vector<std::string>& criteria,
                           int restarts, std::uint64_t seed) {
    json rows = json::array();
    for (const auto& r : analyze_rows(state_spec, criteria, restarts, seed))
        rows.push_back(json{{"state_spec", r.state_spec},
                            {"criterion_id", r.criterion_id},
                            {"max_value", round12(r.max_value)},
                            {"violation_factor", round12(r.violation_factor)},
                            {"threshold", round12(r.threshold)},
                            {"method", r.method}});
    return json{{"command", "analyze"},
                {"state", state_spec},
                {"seed", seed},
                {"restarts", restarts},
                {"rows", rows}};
}

// Sweep grid: `points` samples from `from` to `to` inclusive, increasing.
inline std::vector<double> sweep_grid(double from, double to, int points) {
    if (points < 0) throw parse_error("points must be >= 0");
    std::vector<double> g;
    if (points == 0) return g;
    if (points == 1) return {from};
    if (to < from) throw parse_error("sweep range must be increasing");
    for (int i = 0; i < points; ++i) g.push_back(from + (to - from) * double(i) / double(points - 1));
    return g;
}

inline json sweep_report(const std::string& state_spec, const std::string& param, double from,
                         double to, int points, const std::string& criterion, int restarts,
                         std::uint64_t seed) {
    ParsedState base = parse_state_spec(state_spec);
    if (param == "alpha") {
        if (base.kind != "ghz") throw parse_error("alpha sweep requires a ghz state");
    } else if (param == "n") {
        if (base.kind != "ghz" && base.kind != "w") throw parse_error("n sweep requires ghz or w");
    } else if (param == "v") {
        if (base.kind != "noise") throw parse_error("v sweep requires a noise state");
    } else {
        throw parse_error("unknown sweep parameter: " + param);
    }
    const CriterionId id = criterion_from_string(criterion);

    json rows = json::array();
    for (double x : sweep_grid(from, to, points)) {
        ParsedState p = base;
        if (param == "alpha") p.alpha = x;
        else if (param == "v") p.v = x;
        else {
            p.n = int(std::llround(x));
            p.has_n = true;
        }
        const CorrelationTensor t = compute_tensor(build_state(p));
        const CriterionResult r = run_criterion(t, id, restarts, seed);
        const double threshold = r.violation_factor <= 1.0 ? 1.0 : 1.0 / r.violation_factor;
        rows.push_back(json{{"param", round12(x)},
                            {"max_value", round12(r.max_value)},
                            {"violation_factor", round12(r.violation_factor)},
                            {"threshold", round12(threshold)}});
    }
    return json{{"command", "sweep"},   {"state", state_spec}, {"sweep", param},
                {"from", round12(from)}, {"to", round12(to)},   {"points", points},
                {"criterion", criterion}, {"seed", seed},        {"restarts", restarts},
                {"rows", rows}};
}

inline json bound_report(const std::string& family, int n) {
    const Family f = family_from_string(family);
    InequalitySpec spec;
    if (f == Family::fN) {
        if (n <= 0) throw parse_error("fN bound requires --n");
        spec = inequality_N(n);
    } else {
        if (n > 0 && n != 3) throw arity_error(family + " is a three-party family");
        spec = f == Family::f442 ? inequality_442() : inequality_332();
    }
    const double b = classical_bound(spec);
    return json{{"command", "bound"},
                {"family", family},
                {"n", spec.n_parties},
                {"classical_bound", static_cast<long long>(std::llround(b))}};
}

// ----------------------------------------------------------------------
// rendering
// ----------------------------------------------------------------------

inline std::string render_csv(const json& report) {
    std::string out;
    const std::string cmd = report.at("command").get<std::string>();
    if (cmd == "analyze") {
        out += csv_row({"state_spec", "criterion_id", "max_value", "violation_factor",
                        "threshold", "method"});
        for (const auto& r : report.at("rows"))
            out += csv_row({r.at("state_spec").get<std::string>(),
                            r.at("criterion_id").get<std::string>(),
                            sig12(r.at("max_value").get<double>()),
                            sig12(r.at("violation_factor").get<double>()),
                            sig12(r.at("threshold").get<double>()),
                            r.at("method").get<std::string>()});
    } else if (cmd == "sweep") {
        out += csv_row({"param", "max_value", "violation_factor", "threshold"});
        for (const auto& r : report.at("rows"))
            out += csv_row({sig12(r.at("param").get<double>()),
                            sig12(r.at("max_value").get<double>()),
                            sig12(r.at("violation_factor").get<double>()),
                            sig12(r.at("threshold").get<double>())});
    } else {
        out += csv_row({"family", "n", "classical_bound"});
        out += csv_row({report.at("family").get<std::string>(),
                        std::to_string(report.at("n").get<int>()),
                        sig12(double(report.at("classical_bound").get<long long>()))});
    }
    return out;
}

inline void emit(const json& report, const std::string& format, const std::string& out_path,
                 std::ostream& out) {
    std::string text = format == "csv" ? render_csv(report) : report.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw parse_error("cannot open output file: " + out_path);
        f << text;
    }
}

// ----------------------------------------------------------------------
// entry point; returns the process exit code
//   0 ok, 1 internal, 2 parse, 3 arity, 4 size
// ----------------------------------------------------------------------

inline int run_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"multiqubit Bell inequality analyzer"};
    app.require_subcommand(1);

    std::string state, criteria_csv, sweep_param, family, format = "json", out_path;
    std::uint64_t seed = 0;
    int restarts = 32, points = 0, n = -1;
    double from = 0.0, to = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "pseudo-random seed");
        sub->add_option("--restarts", restarts, "optimizer restarts");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path, "write the report to a file");
    };

    CLI::App* an = app.add_subcommand("analyze", "criterion report for one state");
    an->add_option("--state", state, "state spec")->required();
    an->add_option("--criteria", criteria_csv, "comma-separated criteria")->required();
    add_common(an);

    CLI::App* sw = app.add_subcommand("sweep", "criterion table over a parameter grid");
    sw->add_option("--state", state, "base state spec")->required();
    sw->add_option("--sweep", sweep_param, "parameter to sweep (alpha|n|v)")->required();
    sw->add_option("--from", from, "grid start")->required();
    sw->add_option("--to", to, "grid end")->required();
    sw->add_option("--points", points, "grid size")->required();
    sw->add_option("--criteria", criteria_csv, "criterion id")->required();
    add_common(sw);

    CLI::App* bd = app.add_subcommand("bound", "exact classical bound of a family");
    bd->add_option("--family", family, "f442|f332|fN")->required();
    bd->add_option("--n", n, "party count for fN");
    add_common(bd);

    std::reverse(args.begin(), args.end());  // CLI11 vector parse wants back-to-front
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        json report;
        if (an->parsed()) {
            report = analyze_report(state, split_list(criteria_csv), restarts, seed);
        } else if (sw->parsed()) {
            const auto list = split_list(criteria_csv);
            if (list.size() != 1) throw parse_error("sweep takes exactly one criterion");
            if (format == "json" && sw->count("--format") == 0) format = "csv";  // tables default to CSV
            report = sweep_report(state, sweep_param, from, to, points, list[0], restarts, seed);
        } else {
            report = bound_report(family, n);
        }
        emit(report, format, out_path, out);
        return 0;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const arity_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const size_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_main(std::move(args), out, err);
}

}  // namespace multibell::cli
