#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "coopad/coefficients.hpp"
#include "coopad/model.hpp"

namespace coopad {

/// Equilibrium advertising efforts at one (x, t_k). A control whose
/// first-order condition came out negative is projected to 0 and flagged.
struct Controls {
    double u1 = 0.0;
    double v = 0.0;
    double u2 = 0.0;
    bool u1_projected = false;
    bool v_projected = false;
    bool u2_projected = false;
};

Controls feedback_controls(const ScenarioConfig& config, const CoefficientPath& coeffs, double x,
                           Eigen::Index k);

struct ProjectionFlags {
    bool u1 = false;
    bool v = false;
    bool u2 = false;

    bool any() const { return u1 || v || u2; }
};

/// Share and controls under equilibrium play for one subsidy rate. When
/// `feasible` is false the coefficient solve blew up and the paths are empty.
struct EquilibriumTrajectory {
    Scenario scenario = Scenario::I;
    double theta = 0.0;
    bool feasible = true;
    TimeGrid grid{};
    Eigen::VectorXd x;
    Eigen::VectorXd u1;
    Eigen::VectorXd v;
    Eigen::VectorXd u2;  // zero in scenario I
    ProjectionFlags projection_active;
    CoefficientPath coeffs;
};

EquilibriumTrajectory build_trajectory(const DiscretizedGame& game, double theta,
                                       const SolveOptions& options = {});
EquilibriumTrajectory build_trajectory(const ScenarioConfig& config, double theta,
                                       const SolveOptions& options = {});

/// Discounted profits; J2 is NaN in scenario I. Jchannel = J1 + JM.
struct ProfitReport {
    double J1 = 0.0;
    double J2 = 0.0;
    double JM = 0.0;
    double Jchannel = 0.0;
};

/// Composite trapezoid on the trajectory grid.
ProfitReport profits(const ScenarioConfig& config, const EquilibriumTrajectory& traj);

struct PlayerValues {
    double retailer1 = 0.0;
    double manufacturer = 0.0;
    std::optional<double> retailer2;
};

/// V_i(x, t_k) = exp(-r t_k) (alpha_i[k] + beta_i[k] x).
PlayerValues value_at(const ScenarioConfig& config, const CoefficientPath& coeffs, double x,
                      Eigen::Index k);

/// Signed left-hand side of each player's HJ equation at (x, t_k), with
/// time derivatives of alpha and beta from fourth-order differences. Only
/// interior nodes are accepted.
PlayerValues hj_residual(const ScenarioConfig& config, const CoefficientPath& coeffs, double x,
                         Eigen::Index k);

/// max |residual| over all interior nodes, players and the given shares.
double max_hj_residual(const ScenarioConfig& config, const CoefficientPath& coeffs,
                       const std::vector<double>& shares);

}  // namespace coopad
