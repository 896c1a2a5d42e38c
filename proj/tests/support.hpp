#pragma once

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "coopad/model.hpp"

namespace testing_support {

inline const nlohmann::json& golden() {
    static const nlohmann::json data = [] {
        std::ifstream in(std::string(COOPAD_GOLDEN_DIR) + "/base_case.json");
        return nlohmann::json::parse(in);
    }();
    return data;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline coopad::ScenarioConfig base(coopad::Scenario s = coopad::Scenario::I, int N = 2000) {
    coopad::ScenarioConfig c;
    c.scenario = s;
    c.grid_steps = N;
    if (s == coopad::Scenario::II) c.q2 = coopad::QualitySchedule::constant(0.15);
    return c;
}

}  // namespace testing_support
