#include "coopad/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "coopad/config_io.hpp"
#include "coopad/parallel.hpp"

namespace coopad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_quality(SweepField f) {
    return f == SweepField::q1 || f == SweepField::q2 || f == SweepField::qM;
}

bool needs_competitor(SweepField f) { return f == SweepField::q2 || f == SweepField::c2; }

SweepField axis_field(const SweepAxis& axis) {
    return std::visit([](const auto& a) { return a.field; }, axis);
}

std::size_t axis_size(const SweepAxis& axis) {
    if (const auto* r = std::get_if<ScalarRange>(&axis)) return static_cast<std::size_t>(r->count);
    return std::get<ScheduleList>(axis).schedules.size();
}

QualitySchedule& schedule_slot(ScenarioConfig& c, SweepField f) {
    if (f == SweepField::q1) return c.q1;
    if (f == SweepField::qM) return c.qM;
    if (!c.q2) c.q2 = QualitySchedule{};
    return *c.q2;
}

void assign_scalar(ScenarioConfig& c, SweepField f, double v) {
    auto& p = c.params;
    switch (f) {
        case SweepField::q1:
        case SweepField::q2:
        case SweepField::qM: schedule_slot(c, f) = QualitySchedule::constant(v); break;
        case SweepField::c1: p.c1 = v; break;
        case SweepField::c2: p.c2 = v; break;
        case SweepField::cM: p.cM = v; break;
        case SweepField::x0: p.x0 = v; break;
    }
}

/// Applies point `index` of an axis; returns (numeric value, label).
std::pair<double, std::string> apply(ScenarioConfig& c, const SweepAxis& axis, std::size_t index) {
    if (const auto* r = std::get_if<ScalarRange>(&axis)) {
        const double v = r->values()[index];
        assign_scalar(c, r->field, v);
        std::ostringstream os;
        os.precision(15);
        os << v;
        return {v, os.str()};
    }
    const auto& list = std::get<ScheduleList>(axis);
    schedule_slot(c, list.field) = list.schedules[index];
    return {kNaN, list.schedules[index].label()};
}

}  // namespace

std::string to_string(SweepField f) {
    switch (f) {
        case SweepField::q1: return "q1";
        case SweepField::q2: return "q2";
        case SweepField::qM: return "qM";
        case SweepField::c1: return "c1";
        case SweepField::c2: return "c2";
        case SweepField::cM: return "cM";
        case SweepField::x0: return "x0";
    }
    return "?";
}

std::optional<SweepField> sweep_field_from(const std::string& name) {
    for (auto f : {SweepField::q1, SweepField::q2, SweepField::qM, SweepField::c1, SweepField::c2,
                   SweepField::cM, SweepField::x0}) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

std::string to_string(SweepOutput o) {
    switch (o) {
        case SweepOutput::theta_star: return "theta_star";
        case SweepOutput::theta_bar: return "theta_bar";
        case SweepOutput::J1: return "J1";
        case SweepOutput::J2: return "J2";
        case SweepOutput::JM: return "JM";
        case SweepOutput::Jchannel: return "Jchannel";
        case SweepOutput::trajectories: return "trajectories";
    }
    return "?";
}

std::vector<double> ScalarRange::values() const {
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        out[i] = count == 1 ? start : start + (stop - start) * (static_cast<double>(i) / (count - 1));
    }
    if (count > 1) out.back() = stop;
    return out;
}

bool SweepSpec::wants(SweepOutput o) const {
    return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

void validate_sweep_spec(const SweepSpec& spec) {
    std::vector<Violation> v = check_config(spec.base);
    if (spec.axes.empty() || spec.axes.size() > 2)
        v.push_back({"axes", "need one or two axes"});
    std::set<SweepField> seen;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
        const std::string where = "axes[" + std::to_string(i) + "]";
        const SweepField f = axis_field(spec.axes[i]);
        if (!seen.insert(f).second) v.push_back({where, "field swept twice"});
        if (needs_competitor(f) && spec.base.scenario != Scenario::II)
            v.push_back({where, to_string(f) + " only exists in scenario II"});
        if (const auto* r = std::get_if<ScalarRange>(&spec.axes[i])) {
            if (r->count < 1) v.push_back({where + ".count", "must be >= 1"});
            const bool finite = std::isfinite(r->start) && std::isfinite(r->stop);
            const double lo = std::min(r->start, r->stop);
            const double hi = std::max(r->start, r->stop);
            if (!finite || lo < 0.0)
                v.push_back({where, "range must be finite and >= 0"});
            else if (f == SweepField::x0 && hi > 1.0)
                v.push_back({where, "x0 range must lie in [0, 1]"});
        } else {
            const auto& list = std::get<ScheduleList>(spec.axes[i]);
            if (!is_quality(f)) v.push_back({where, "schedule lists apply to q1, qM or q2 only"});
            if (list.schedules.empty()) v.push_back({where, "empty schedule list"});
            for (const auto& s : list.schedules) {
                ScenarioConfig probe = spec.base;
                schedule_slot(probe, f) = s;
                for (auto& e : check_config(probe)) v.push_back({where + "." + e.field, e.message});
            }
        }
    }
    if (spec.outputs.empty()) v.push_back({"outputs", "request at least one output"});
    if (!(spec.theta_step > 0.0 && spec.theta_step <= kMaxThetaStep))
        v.push_back({"theta_step", "must lie in (0, 0.1]"});
    if (spec.theta && !(*spec.theta >= 0.0 && *spec.theta <= kThetaMax))
        v.push_back({"theta", "must lie in [0, 0.99]"});
    if (!v.empty()) throw ConfigError(std::move(v));
}

SweepSpec parse_sweep_spec(const nlohmann::json& raw, const ScenarioConfig& base) {
    using nlohmann::json;
    std::vector<Violation> v;
    SweepSpec spec;
    spec.base = base;
    if (!raw.is_object()) throw ConfigError("<root>", "sweep spec must be a JSON object");
    static const std::set<std::string> known = {"axes", "outputs", "theta_step", "theta"};
    for (const auto& [key, _] : raw.items()) {
        if (!known.count(key)) v.push_back({key, "unknown field"});
    }

    if (!raw.contains("axes") || !raw["axes"].is_array()) {
        v.push_back({"axes", "must be an array"});
    } else {
        for (std::size_t i = 0; i < raw["axes"].size(); ++i) {
            const json& a = raw["axes"][i];
            const std::string where = "axes[" + std::to_string(i) + "]";
            if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) {
                v.push_back({where, "axis needs a \"name\""});
                continue;
            }
            const auto field = sweep_field_from(a["name"].get<std::string>());
            if (!field) {
                v.push_back({where + ".name", "unknown sweep field"});
                continue;
            }
            if (a.contains("schedules")) {
                ScheduleList list{*field, {}};
                if (!a["schedules"].is_array()) {
                    v.push_back({where + ".schedules", "must be an array"});
                    continue;
                }
                for (const auto& s : a["schedules"]) {
                    if (auto q = parse_schedule(s, where + ".schedules", v)) list.schedules.push_back(*q);
                }
                spec.axes.emplace_back(std::move(list));
                continue;
            }
            ScalarRange r{*field, 0.0, 0.0, 0};
            bool ok = true;
            for (const char* key : {"start", "stop"}) {
                if (!a.contains(key) || !a[key].is_number()) {
                    v.push_back({where + "." + key, "must be a number"});
                    ok = false;
                }
            }
            if (!a.contains("count") || !a["count"].is_number_integer()) {
                v.push_back({where + ".count", "must be an integer"});
                ok = false;
            }
            if (!ok) continue;
            r.start = a["start"].get<double>();
            r.stop = a["stop"].get<double>();
            r.count = a["count"].get<int>();
            spec.axes.emplace_back(r);
        }
    }

    if (raw.contains("outputs")) {
        spec.outputs.clear();
        if (!raw["outputs"].is_array()) v.push_back({"outputs", "must be an array"});
        else {
            for (const auto& o : raw["outputs"]) {
                bool matched = false;
                for (auto cand : {SweepOutput::theta_star, SweepOutput::theta_bar, SweepOutput::J1,
                                  SweepOutput::J2, SweepOutput::JM, SweepOutput::Jchannel,
                                  SweepOutput::trajectories}) {
                    if (o.is_string() && o.get<std::string>() == to_string(cand)) {
                        spec.outputs.push_back(cand);
                        matched = true;
                    }
                }
                if (!matched) v.push_back({"outputs", "unknown output " + o.dump()});
            }
        }
    }
    if (raw.contains("theta_step")) {
        if (raw["theta_step"].is_number()) spec.theta_step = raw["theta_step"].get<double>();
        else v.push_back({"theta_step", "must be a number"});
    }
    if (raw.contains("theta")) {
        if (raw["theta"].is_number()) spec.theta = raw["theta"].get<double>();
        else v.push_back({"theta", "must be a number"});
    }
    if (!v.empty()) throw ConfigError(std::move(v));
    validate_sweep_spec(spec);
    return spec;
}

const SweepRow& SweepResult::at(std::size_t i, std::size_t j) const {
    const std::size_t inner = shape.size() > 1 ? shape[1] : 1;
    return rows.at(i * inner + (shape.size() > 1 ? j : 0));
}

SweepResult sweep(const SweepSpec& spec) {
    validate_sweep_spec(spec);
    SweepResult result;
    for (const auto& axis : spec.axes) {
        result.axis_names.push_back(to_string(axis_field(axis)));
        result.shape.push_back(axis_size(axis));
    }
    std::size_t total = 1;
    for (auto n : result.shape) total *= n;
    result.rows.resize(total);

    const bool scan = !spec.theta || spec.wants(SweepOutput::theta_star) ||
                      spec.wants(SweepOutput::theta_bar);
    const bool keep_paths = spec.wants(SweepOutput::trajectories);

    for (std::size_t idx = 0; idx < total; ++idx) {
        SweepRow& row = result.rows[idx];
        row.config = spec.base;
        std::size_t rest = idx;
        std::vector<std::size_t> multi(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            multi[a] = rest % result.shape[a];
            rest /= result.shape[a];
        }
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            auto [value, label] = apply(row.config, spec.axes[a], multi[a]);
            row.axis_values.push_back(value);
            row.axis_labels.push_back(std::move(label));
        }
    }

    parallel_for(
        total,
        [&](std::size_t idx) {
            SweepRow& row = result.rows[idx];
            row.theta_star = row.theta_bar = row.theta_used = kNaN;
            row.profits = {kNaN, kNaN, kNaN, kNaN};
            const DiscretizedGame game(row.config);
            if (scan) {
                try {
                    const auto curve = scan_subsidy(game, spec.theta_step, {1, spec.solve});
                    row.theta_star = curve.theta_star;
                    row.theta_bar = curve.theta_bar;
                } catch (const OptimizationError&) {
                    return;
                }
            }
            row.theta_used = spec.theta ? *spec.theta : row.theta_star;
            auto traj = build_trajectory(game, row.theta_used, spec.solve);
            if (!traj.feasible) return;
            row.feasible = true;
            row.profits = profits(row.config, traj);
            row.projection_active = traj.projection_active;
            if (keep_paths) row.trajectory = std::move(traj);
        },
        spec.workers);
    return result;
}

std::vector<double> cross_margin_signs(const SweepResult& result) {
    if (result.axis_names.empty()) return {};
    const bool c1 = result.axis_names[0] == "c1";
    const bool cM = result.axis_names[0] == "cM";
    if (!c1 && !cM) return {};
    const std::size_t inner = result.shape.size() > 1 ? result.shape[1] : 1;
    std::vector<double> out(result.rows.size(), kNaN);
    for (std::size_t i = 0; i + 1 < result.shape[0]; ++i) {
        for (std::size_t j = 0; j < inner; ++j) {
            const auto& a = result.at(i, j).profits;
            const auto& b = result.at(i + 1, j).profits;
            const double d = c1 ? b.JM - a.JM : b.J1 - a.J1;
            if (std::isfinite(d)) out[i * inner + j] = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
        }
    }
    return out;
}

namespace {

ScenarioRun run_scenario(ScenarioConfig config, Scenario tag, const CompareOptions& options,
                         const std::optional<double>& matched) {
    config.scenario = tag;
    ScenarioRun run;
    run.config = config;
    const DiscretizedGame game(config);
    run.curve = scan_subsidy(game, options.theta_step, {options.workers, {}});
    run.at_star = build_trajectory(game, run.curve.theta_star);
    run.star_profits = profits(config, run.at_star);
    if (matched) {
        run.at_matched = build_trajectory(game, *matched);
        if (run.at_matched.feasible) run.matched_profits = profits(config, run.at_matched);
    }
    return run;
}

ScalarDeltas scalar_deltas(const ProfitReport& a, const ProfitReport& b) {
    return {0.0, 0.0, b.J1 - a.J1, b.JM - a.JM, b.Jchannel - a.Jchannel};
}

PathDeltas path_deltas(const EquilibriumTrajectory& a, const EquilibriumTrajectory& b) {
    if (!a.feasible || !b.feasible) return {};
    return {b.x - a.x, b.u1 - a.u1, b.v - a.v};
}

}  // namespace

ComparisonReport compare_scenarios(const ScenarioConfig& base, const CompareOptions& options) {
    if (!base.q2) throw ConfigError("q2", "comparison needs a competitor quality schedule");
    theta_grid(options.theta_step);
    if (options.matched_theta) require_theta(*options.matched_theta);

    ComparisonReport rep;
    rep.worc = run_scenario(base, Scenario::I, options, options.matched_theta);
    rep.matched_theta = options.matched_theta.value_or(rep.worc.curve.theta_star);
    if (!options.matched_theta) {
        rep.worc.at_matched = rep.worc.at_star;
        rep.worc.matched_profits = rep.worc.star_profits;
    }
    rep.wrc = run_scenario(base, Scenario::II, options, rep.matched_theta);

    rep.at_star = scalar_deltas(rep.worc.star_profits, rep.wrc.star_profits);
    rep.at_star.theta_star = rep.wrc.curve.theta_star - rep.worc.curve.theta_star;
    rep.at_star.theta_bar = rep.wrc.curve.theta_bar - rep.worc.curve.theta_bar;
    rep.at_matched = scalar_deltas(rep.worc.matched_profits, rep.wrc.matched_profits);
    rep.at_matched.theta_star = rep.at_star.theta_star;
    rep.at_matched.theta_bar = rep.at_star.theta_bar;
    rep.star_paths = path_deltas(rep.worc.at_star, rep.wrc.at_star);
    rep.matched_paths = path_deltas(rep.worc.at_matched, rep.wrc.at_matched);
    return rep;
}

}  // namespace coopad
