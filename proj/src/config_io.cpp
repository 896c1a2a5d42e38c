#include "coopad/config_io.hpp"

#include <set>

namespace coopad {

using nlohmann::json;

std::optional<QualitySchedule> parse_schedule(const json& j, const std::string& field,
                                              std::vector<Violation>& violations) {
    if (j.is_number()) return QualitySchedule::constant(j.get<double>());
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        violations.push_back({field, "schedule must be a number or an object with a \"kind\""});
        return std::nullopt;
    }
    const auto kind = j["kind"].get<std::string>();
    auto number = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || !j[key].is_number()) {
            violations.push_back({field, std::string("missing numeric \"") + key + "\""});
            return std::nullopt;
        }
        return j[key].get<double>();
    };
    if (kind == "constant") {
        auto q0 = number("q0");
        if (!q0) return std::nullopt;
        return QualitySchedule::constant(*q0);
    }
    if (kind == "linear") {
        auto a = number("start");
        auto b = number("end");
        if (!a || !b) return std::nullopt;
        return QualitySchedule::linear(*a, *b);
    }
    if (kind == "table") {
        if (!j.contains("points") || !j["points"].is_array()) {
            violations.push_back({field, "table schedule needs a \"points\" array"});
            return std::nullopt;
        }
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j["points"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                violations.push_back({field, "table points must be [t, q] number pairs"});
                return std::nullopt;
            }
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return QualitySchedule::table(std::move(pts));
    }
    violations.push_back({field, "unknown schedule kind \"" + kind + "\""});
    return std::nullopt;
}

ScenarioConfig validate_config(const json& raw) {
    std::vector<Violation> violations;
    ScenarioConfig cfg;
    if (raw.is_null()) return require_valid(cfg);
    if (!raw.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");

    static const std::set<std::string> known = {"scenario", "rho1", "rho2", "rhoM", "c1",
                                                "c2",       "cM",   "r",    "T",    "x0",
                                                "q1",       "q2",   "qM",   "grid_steps",
                                                "theta"};
    for (const auto& [key, _] : raw.items()) {
        if (!known.count(key)) violations.push_back({key, "unknown field"});
    }

    if (raw.contains("scenario")) {
        const auto& s = raw["scenario"];
        if (s == "I" || s == 1) {
            cfg.scenario = Scenario::I;
        } else if (s == "II" || s == 2) {
            cfg.scenario = Scenario::II;
        } else {
            violations.push_back({"scenario", "must be \"I\" or \"II\""});
        }
    }

    auto scalar = [&](const char* key, double& dst) {
        if (!raw.contains(key)) return;
        if (!raw[key].is_number()) {
            violations.push_back({key, "must be a number"});
            return;
        }
        dst = raw[key].get<double>();
    };
    auto& p = cfg.params;
    scalar("rho1", p.rho1);
    scalar("rho2", p.rho2);
    scalar("rhoM", p.rhoM);
    scalar("c1", p.c1);
    scalar("c2", p.c2);
    scalar("cM", p.cM);
    scalar("r", p.r);
    scalar("T", p.T);
    scalar("x0", p.x0);

    if (raw.contains("grid_steps")) {
        if (raw["grid_steps"].is_number_integer()) {
            cfg.grid_steps = raw["grid_steps"].get<int>();
        } else {
            violations.push_back({"grid_steps", "must be an integer"});
        }
    }
    if (raw.contains("theta")) {
        if (raw["theta"].is_number()) {
            cfg.theta = raw["theta"].get<double>();
        } else {
            violations.push_back({"theta", "must be a number"});
        }
    }
    if (raw.contains("q1")) {
        if (auto s = parse_schedule(raw["q1"], "q1", violations)) cfg.q1 = *s;
    }
    if (raw.contains("qM")) {
        if (auto s = parse_schedule(raw["qM"], "qM", violations)) cfg.qM = *s;
    }
    if (raw.contains("q2") && !raw["q2"].is_null()) {
        if (auto s = parse_schedule(raw["q2"], "q2", violations)) cfg.q2 = *s;
    }

    auto semantic = check_config(cfg);
    for (auto& v : semantic) {
        // A field whose parse already failed would otherwise be reported twice.
        bool dup = false;
        for (const auto& e : violations) dup = dup || e.field == v.field;
        if (!dup) violations.push_back(std::move(v));
    }
    if (!violations.empty()) throw ConfigError(std::move(violations));
    return cfg;
}

json to_json(const QualitySchedule& schedule) {
    if (const auto* c = std::get_if<QualitySchedule::Constant>(&schedule.form()))
        return {{"kind", "constant"}, {"q0", c->q0}};
    if (const auto* l = std::get_if<QualitySchedule::Linear>(&schedule.form()))
        return {{"kind", "linear"}, {"start", l->start}, {"end", l->end}};
    const auto& t = std::get<QualitySchedule::Table>(schedule.form());
    json pts = json::array();
    for (const auto& [time, q] : t.points) pts.push_back({time, q});
    return {{"kind", "table"}, {"points", pts}};
}

json to_json(const ScenarioConfig& config) {
    const auto& p = config.params;
    json j = {{"scenario", to_string(config.scenario)},
              {"rho1", p.rho1},
              {"rho2", p.rho2},
              {"rhoM", p.rhoM},
              {"c1", p.c1},
              {"c2", p.c2},
              {"cM", p.cM},
              {"r", p.r},
              {"T", p.T},
              {"x0", p.x0},
              {"q1", to_json(config.q1)},
              {"qM", to_json(config.qM)},
              {"grid_steps", config.grid_steps}};
    if (config.q2) j["q2"] = to_json(*config.q2);
    if (config.theta) j["theta"] = *config.theta;
    return j;
}

}  // namespace coopad
