#include "coopad/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "coopad/config_io.hpp"
#include "coopad/equilibrium.hpp"
#include "coopad/experiments.hpp"
#include "coopad/subsidy.hpp"

#ifndef COOPAD_VERSION
#define COOPAD_VERSION "0.0.0"
#endif

namespace coopad {

std::string version() { return COOPAD_VERSION; }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

nlohmann::json RunManifest::to_json() const {
    return {{"command", command},
            {"config", coopad::to_json(config)},
            {"grid_steps", grid_steps},
            {"version", version()},
            {"outputs", outputs}};
}

namespace {

using nlohmann::json;

struct Options {
    std::string config_path;
    std::optional<std::string> scenario;
    std::optional<double> theta;
    std::optional<double> theta_step;
    std::optional<int> grid_steps;
    std::string spec_path;
    std::string output;
    std::string format = "csv";
};

struct Failure {
    int code;
    std::string message;
};

json read_json(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw Failure{kExitInvalid, std::string("cannot read ") + what + " " + path};
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Failure{kExitInvalid, std::string("malformed ") + what + " " + path + ": " + e.what()};
    }
}

/// File fields first, then flags on top; validation sees the merged object.
ScenarioConfig resolve_config(const Options& o) {
    json raw = o.config_path.empty() ? json::object() : read_json(o.config_path, "config");
    if (!raw.is_object()) throw Failure{kExitInvalid, "config must be a JSON object"};
    if (o.scenario) raw["scenario"] = *o.scenario;
    if (o.grid_steps) raw["grid_steps"] = *o.grid_steps;
    if (o.theta) raw["theta"] = *o.theta;
    return validate_config(raw);
}

double resolve_step(const Options& o) {
    const double step = o.theta_step.value_or(kDefaultThetaStep);
    if (!(step > 0.0 && step <= kMaxThetaStep))
        throw ConfigError("theta_step", "must lie in (0, 0.1]");
    return step;
}

/// Collects output documents and writes them either to files derived
/// from --output or to the given streams.
class Sink {
public:
    Sink(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    bool to_files() const { return !o_.output.empty(); }
    bool json_mode() const { return o_.format == "json"; }

    void primary(const std::string& text) { write(o_.output, text); }

    /// Secondary table; to stdout it is dropped with a note.
    void secondary(const std::string& suffix, const std::string& text, const char* what) {
        if (!to_files()) {
            err_ << "note: " << what << " written only with --output or --format json\n";
            return;
        }
        write(o_.output + suffix, text);
    }

    void summary(const json& j) {
        if (to_files()) write(o_.output + ".summary.json", j.dump(2) + "\n");
        else err_ << j.dump(2) << "\n";
    }

    void manifest(RunManifest m) {
        if (!to_files()) return;
        m.outputs = written_;
        const std::string path = o_.output + ".manifest.json";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Failure{kExitInvalid, "cannot write " + path};
        f << m.to_json().dump(2) << "\n";
    }

private:
    void write(const std::string& path, const std::string& text) {
        if (path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Failure{kExitInvalid, "cannot write " + path};
        f << text;
        written_.push_back(path);
    }

    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    std::vector<std::string> written_;
};

std::string csv_row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line + "\n";
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json trajectory_json(const EquilibriumTrajectory& t) {
    json j = {{"theta", t.theta}, {"feasible", t.feasible}};
    if (!t.feasible) return j;
    j["t"] = json::array();
    for (Eigen::Index k = 0; k < t.grid.size(); ++k) j["t"].push_back(t.grid.node(static_cast<int>(k)));
    auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    j["x"] = vec(t.x);
    j["u1"] = vec(t.u1);
    j["v"] = vec(t.v);
    if (t.scenario == Scenario::II) j["u2"] = vec(t.u2);
    j["projection_active"] = {{"u1", t.projection_active.u1},
                              {"v", t.projection_active.v},
                              {"u2", t.projection_active.u2}};
    return j;
}

std::string trajectory_csv(const EquilibriumTrajectory& t) {
    const bool two = t.scenario == Scenario::II;
    std::string s = two ? "t,x,u1,v,u2\n" : "t,x,u1,v\n";
    for (Eigen::Index k = 0; k < t.grid.size(); ++k) {
        std::vector<std::string> row = {format_number(t.grid.node(static_cast<int>(k))),
                                        format_number(t.x[k]), format_number(t.u1[k]),
                                        format_number(t.v[k])};
        if (two) row.push_back(format_number(t.u2[k]));
        s += csv_row(row);
    }
    return s;
}

json profits_json(const ProfitReport& p) {
    return {{"J1", number(p.J1)}, {"J2", number(p.J2)}, {"JM", number(p.JM)},
            {"Jchannel", number(p.Jchannel)}};
}

int cmd_solve(const Options& o, Sink& sink, std::ostream& err) {
    const auto cfg = resolve_config(o);
    const double theta = cfg.theta.value_or(0.0);
    const auto traj = build_trajectory(cfg, theta);
    if (!traj.feasible) {
        err << "error: coefficient paths blow up at theta = " << format_number(theta) << "\n";
        return kExitInfeasible;
    }
    if (traj.projection_active.any()) err << "warning: a control hit its nonnegativity bound\n";
    if (sink.json_mode()) {
        json j = trajectory_json(traj);
        j["profits"] = profits_json(profits(cfg, traj));
        sink.primary(j.dump(2) + "\n");
    } else {
        sink.primary(trajectory_csv(traj));
    }
    sink.manifest({"solve", cfg, {cfg.grid_steps}, {}});
    return kExitOk;
}

json curve_summary(const SubsidyCurve& c) {
    return {{"theta_star", c.theta_star},
            {"theta_bar", c.theta_bar},
            {"JM_at_theta_star", c.JM[c.star_index]},
            {"Jchannel_at_theta_bar", c.Jchannel[c.bar_index]},
            {"theta_step", c.size() > 1 ? c.theta[1] : 0.0},
            {"points", c.size()}};
}

int cmd_optimize(const Options& o, Sink& sink, std::ostream& err) {
    const auto cfg = resolve_config(o);
    const double step = resolve_step(o);
    SubsidyCurve curve;
    try {
        curve = scan_subsidy(cfg, step);
    } catch (const OptimizationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    const json summary = curve_summary(curve);
    if (sink.json_mode()) {
        json rows = json::array();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            rows.push_back({{"theta", curve.theta[i]},
                            {"JM", number(curve.JM[i])},
                            {"Jchannel", number(curve.Jchannel[i])},
                            {"feasible", static_cast<bool>(curve.feasible[i])}});
        }
        sink.primary(json{{"curve", rows}, {"summary", summary}}.dump(2) + "\n");
    } else {
        std::string s = "theta,JM,Jchannel,feasible\n";
        for (std::size_t i = 0; i < curve.size(); ++i) {
            s += csv_row({format_number(curve.theta[i]), format_number(curve.JM[i]),
                          format_number(curve.Jchannel[i]), curve.feasible[i] ? "1" : "0"});
        }
        sink.primary(s);
        sink.summary(summary);
    }
    sink.manifest({"optimize", cfg, {cfg.grid_steps}, {}});
    return kExitOk;
}

int cmd_sweep(const Options& o, Sink& sink, std::ostream&) {
    if (o.spec_path.empty()) throw Failure{kExitUsage, "sweep needs --spec"};
    const auto cfg = resolve_config(o);
    json raw_spec = read_json(o.spec_path, "sweep spec");
    if (o.theta_step && raw_spec.is_object()) raw_spec["theta_step"] = resolve_step(o);
    if (o.theta && raw_spec.is_object()) raw_spec["theta"] = *o.theta;
    const auto spec = parse_sweep_spec(raw_spec, cfg);
    const auto result = sweep(spec);
    const auto cross = cross_margin_signs(result);

    std::vector<SweepOutput> scalars;
    for (auto out : spec.outputs)
        if (out != SweepOutput::trajectories) scalars.push_back(out);
    auto scalar_value = [](const SweepRow& r, SweepOutput out) {
        switch (out) {
            case SweepOutput::theta_star: return r.theta_star;
            case SweepOutput::theta_bar: return r.theta_bar;
            case SweepOutput::J1: return r.profits.J1;
            case SweepOutput::J2: return r.profits.J2;
            case SweepOutput::JM: return r.profits.JM;
            case SweepOutput::Jchannel: return r.profits.Jchannel;
            case SweepOutput::trajectories: break;
        }
        return std::nan("");
    };

    if (sink.json_mode()) {
        json rows = json::array();
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            const auto& r = result.rows[i];
            json j;
            for (std::size_t a = 0; a < result.axis_names.size(); ++a) {
                j[result.axis_names[a]] = std::isnan(r.axis_values[a]) ? json(r.axis_labels[a])
                                                                       : json(r.axis_values[a]);
            }
            j["feasible"] = r.feasible;
            j["theta_used"] = number(r.theta_used);
            for (auto out : scalars) j[to_string(out)] = number(scalar_value(r, out));
            if (!cross.empty()) j["cross_margin_sign"] = number(cross[i]);
            if (r.trajectory) j["trajectory"] = trajectory_json(*r.trajectory);
            rows.push_back(std::move(j));
        }
        sink.primary(json{{"axes", result.axis_names}, {"rows", rows}}.dump(2) + "\n");
    } else {
        std::vector<std::string> header = result.axis_names;
        header.push_back("feasible");
        header.push_back("theta_used");
        for (auto out : scalars) header.push_back(to_string(out));
        if (!cross.empty()) header.push_back("cross_margin_sign");
        std::string s = csv_row(header);
        std::string paths = "row,t,x,u1,v,u2\n";
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            const auto& r = result.rows[i];
            std::vector<std::string> row;
            for (std::size_t a = 0; a < r.axis_values.size(); ++a)
                row.push_back(std::isnan(r.axis_values[a]) ? r.axis_labels[a]
                                                           : format_number(r.axis_values[a]));
            row.push_back(r.feasible ? "1" : "0");
            row.push_back(format_number(r.theta_used));
            for (auto out : scalars) row.push_back(format_number(scalar_value(r, out)));
            if (!cross.empty()) row.push_back(format_number(cross[i]));
            s += csv_row(row);
            if (r.trajectory) {
                const auto& t = *r.trajectory;
                for (Eigen::Index k = 0; k < t.grid.size(); ++k) {
                    paths += csv_row({std::to_string(i), format_number(t.grid.node(static_cast<int>(k))),
                                      format_number(t.x[k]), format_number(t.u1[k]),
                                      format_number(t.v[k]), format_number(t.u2[k])});
                }
            }
        }
        sink.primary(s);
        if (spec.wants(SweepOutput::trajectories))
            sink.secondary(".trajectories.csv", paths, "trajectories");
    }
    sink.manifest({"sweep", cfg, {cfg.grid_steps}, {}});
    return kExitOk;
}

int cmd_compare(const Options& o, Sink& sink, std::ostream& err) {
    const auto cfg = resolve_config(o);
    CompareOptions opts;
    opts.theta_step = resolve_step(o);
    opts.matched_theta = cfg.theta;
    ComparisonReport rep;
    try {
        rep = compare_scenarios(cfg, opts);
    } catch (const OptimizationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    struct Line {
        const char* name;
        double worc;
        double wrc;
    };
    const auto& a = rep.worc;
    const auto& b = rep.wrc;
    const std::vector<Line> lines = {
        {"theta_star", a.curve.theta_star, b.curve.theta_star},
        {"theta_bar", a.curve.theta_bar, b.curve.theta_bar},
        {"J1_at_theta_star", a.star_profits.J1, b.star_profits.J1},
        {"JM_at_theta_star", a.star_profits.JM, b.star_profits.JM},
        {"Jchannel_at_theta_star", a.star_profits.Jchannel, b.star_profits.Jchannel},
        {"matched_theta", rep.matched_theta, rep.matched_theta},
        {"J1_at_matched", a.matched_profits.J1, b.matched_profits.J1},
        {"JM_at_matched", a.matched_profits.JM, b.matched_profits.JM},
        {"Jchannel_at_matched", a.matched_profits.Jchannel, b.matched_profits.Jchannel},
        {"J2_at_theta_star", std::nan(""), b.star_profits.J2},
    };

    if (sink.json_mode()) {
        json scalars = json::array();
        for (const auto& l : lines)
            scalars.push_back({{"quantity", l.name}, {"WORC", number(l.worc)}, {"WRC", number(l.wrc)},
                               {"delta", number(l.wrc - l.worc)}});
        json j = {{"scalars", scalars},
                  {"WORC", {{"at_theta_star", trajectory_json(a.at_star)},
                            {"at_matched", trajectory_json(a.at_matched)}}},
                  {"WRC", {{"at_theta_star", trajectory_json(b.at_star)},
                           {"at_matched", trajectory_json(b.at_matched)}}}};
        sink.primary(j.dump(2) + "\n");
    } else {
        std::string s = "quantity,WORC,WRC,delta\n";
        for (const auto& l : lines)
            s += csv_row({l.name, format_number(l.worc), format_number(l.wrc),
                          format_number(l.wrc - l.worc)});
        sink.primary(s);
        std::string p =
            "t,x_WORC_star,x_WRC_star,u1_WORC_star,u1_WRC_star,v_WORC_star,v_WRC_star,u2_WRC_star,"
            "x_WORC_matched,x_WRC_matched,u1_WORC_matched,u1_WRC_matched,v_WORC_matched,"
            "v_WRC_matched,u2_WRC_matched\n";
        for (Eigen::Index k = 0; k < a.at_star.grid.size(); ++k) {
            auto cell = [&](const EquilibriumTrajectory& t, const Eigen::VectorXd& v) {
                return t.feasible ? format_number(v[k]) : std::string("nan");
            };
            p += csv_row({format_number(a.at_star.grid.node(static_cast<int>(k))),
                          cell(a.at_star, a.at_star.x), cell(b.at_star, b.at_star.x),
                          cell(a.at_star, a.at_star.u1), cell(b.at_star, b.at_star.u1),
                          cell(a.at_star, a.at_star.v), cell(b.at_star, b.at_star.v),
                          cell(b.at_star, b.at_star.u2), cell(a.at_matched, a.at_matched.x),
                          cell(b.at_matched, b.at_matched.x), cell(a.at_matched, a.at_matched.u1),
                          cell(b.at_matched, b.at_matched.u1), cell(a.at_matched, a.at_matched.v),
                          cell(b.at_matched, b.at_matched.v), cell(b.at_matched, b.at_matched.u2)});
        }
        sink.secondary(".paths.csv", p, "paths");
    }
    sink.manifest({"compare", cfg, {cfg.grid_steps}, {}});
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cooperative search-advertising game solver", "coopad"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON configuration file");
        sub->add_option("--scenario", o.scenario, "I or II")->check(CLI::IsMember({"I", "II"}));
        sub->add_option("--grid-steps", o.grid_steps, "time steps N");
        sub->add_option("--output", o.output, "output file (default stdout)");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto* solve = app.add_subcommand("solve", "equilibrium trajectory at one subsidy rate");
    common(solve);
    solve->add_option("--theta", o.theta, "subsidy rate");
    auto* optimize = app.add_subcommand("optimize", "scan the subsidy rate");
    common(optimize);
    optimize->add_option("--theta-step", o.theta_step, "scan step");
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
    common(sweep_cmd);
    sweep_cmd->add_option("--spec", o.spec_path, "JSON sweep specification");
    sweep_cmd->add_option("--theta-step", o.theta_step, "scan step");
    sweep_cmd->add_option("--theta", o.theta, "fixed subsidy rate");
    auto* compare = app.add_subcommand("compare", "scenario I against scenario II");
    common(compare);
    compare->add_option("--theta-step", o.theta_step, "scan step");
    compare->add_option("--theta", o.theta, "matched subsidy rate");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Sink sink(o, out, err);
    try {
        if (*solve) return cmd_solve(o, sink, err);
        if (*optimize) return cmd_optimize(o, sink, err);
        if (*sweep_cmd) return cmd_sweep(o, sink, err);
        return cmd_compare(o, sink, err);
    } catch (const Failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace coopad
