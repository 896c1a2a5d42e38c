#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "coopad/equilibrium.hpp"
#include "coopad/model.hpp"
#include "coopad/subsidy.hpp"

namespace coopad {

enum class SweepField { q1, q2, qM, c1, c2, cM, x0 };

std::string to_string(SweepField f);
std::optional<SweepField> sweep_field_from(const std::string& name);

/// Inclusive range start..stop with `count` evenly spaced points.
struct ScalarRange {
    SweepField field = SweepField::q1;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    std::vector<double> values() const;
};

/// Alternative quality schedules for q1, qM or q2.
struct ScheduleList {
    SweepField field = SweepField::qM;
    std::vector<QualitySchedule> schedules;
};

using SweepAxis = std::variant<ScalarRange, ScheduleList>;

enum class SweepOutput { theta_star, theta_bar, J1, J2, JM, Jchannel, trajectories };

std::string to_string(SweepOutput o);

struct SweepSpec {
    ScenarioConfig base;
    std::vector<SweepAxis> axes;
    std::vector<SweepOutput> outputs{SweepOutput::theta_star, SweepOutput::theta_bar,
                                     SweepOutput::J1,         SweepOutput::J2,
                                     SweepOutput::JM,         SweepOutput::Jchannel};
    double theta_step = kDefaultThetaStep;
    /// When set, profits and trajectories are evaluated at this rate instead of theta_star.
    std::optional<double> theta;
    SolveOptions solve{};
    unsigned workers = 0;

    bool wants(SweepOutput o) const;
};

/// Throws ConfigError listing every problem with the spec.
void validate_sweep_spec(const SweepSpec& spec);

/// Reads {"axes": [...], "outputs": [...], "theta_step": s, "theta": t} on
/// top of an already validated base configuration. An axis is either
/// {"name", "start", "stop", "count"} or {"name", "schedules": [...]}.
SweepSpec parse_sweep_spec(const nlohmann::json& raw, const ScenarioConfig& base);

struct SweepRow {
    std::vector<double> axis_values;  // NaN for schedule axes
    std::vector<std::string> axis_labels;
    ScenarioConfig config;
    bool feasible = false;
    double theta_star = 0.0;  // NaN when not scanned or infeasible
    double theta_bar = 0.0;
    double theta_used = 0.0;  // rate at which profits and trajectory were evaluated
    ProfitReport profits;
    ProjectionFlags projection_active;
    std::optional<EquilibriumTrajectory> trajectory;
};

struct SweepResult {
    std::vector<std::string> axis_names;
    std::vector<std::size_t> shape;  // axis cardinalities, first axis slowest
    std::vector<SweepRow> rows;

    /// Row at multi-index (i, j); j is ignored for a single axis.
    const SweepRow& at(std::size_t i, std::size_t j = 0) const;
};

/// Full factorial evaluation of the spec; row order follows the axes with
/// the last axis varying fastest. Infeasible points stay in the table.
SweepResult sweep(const SweepSpec& spec);

/// For a margin axis (c1 or cM) as first axis: sign of the change in the
/// partner's profit (JM along c1, J1 along cM) between consecutive points
/// of that axis, holding any second axis fixed. Empty for other axes.
std::vector<double> cross_margin_signs(const SweepResult& result);

struct ScenarioRun {
    ScenarioConfig config;
    SubsidyCurve curve;
    EquilibriumTrajectory at_star;
    ProfitReport star_profits;
    EquilibriumTrajectory at_matched;
    ProfitReport matched_profits;
};

struct ScalarDeltas {
    double theta_star = 0.0;
    double theta_bar = 0.0;
    double J1 = 0.0;
    double JM = 0.0;
    double Jchannel = 0.0;
};

struct PathDeltas {
    Eigen::VectorXd x;
    Eigen::VectorXd u1;
    Eigen::VectorXd v;
};

/// Scenario I (no competitor) against scenario II on identical shared
/// parameters. Deltas are scenario II minus scenario I.
struct ComparisonReport {
    double matched_theta = 0.0;
    ScenarioRun worc;
    ScenarioRun wrc;
    ScalarDeltas at_star;     // each scenario at its own theta_star
    ScalarDeltas at_matched;  // both at matched_theta
    PathDeltas star_paths;
    PathDeltas matched_paths;
};

struct CompareOptions {
    double theta_step = kDefaultThetaStep;
    /// Rate for the matched run; defaults to the scenario I theta_star.
    std::optional<double> matched_theta;
    unsigned workers = 0;
};

/// `base` must carry q2. Its scenario tag is ignored.
ComparisonReport compare_scenarios(const ScenarioConfig& base, const CompareOptions& options = {});

}  // namespace coopad
