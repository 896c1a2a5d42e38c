#pragma once

#include <Eigen/Core>

#include "coopad/model.hpp"

namespace coopad {

/// Column layout of every per-player matrix.
enum Player : Eigen::Index { kRetailer1 = 0, kManufacturer = 1, kRetailer2 = 2 };

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Which intercept equations to integrate. `as_printed` reproduces two
/// misprinted intercept equations (manufacturer in scenario I, retailer 2
/// in scenario II) and exists only so tests can show that they fail the
/// HJ residual and value-consistency checks.
enum class InterceptForm { derived, as_printed };

struct SolveOptions {
    InterceptForm intercepts = InterceptForm::derived;
    /// Any |coefficient| above this marks the path infeasible.
    double blowup_bound = 1e12;
};

/// Time derivative of the value-function slopes (beta_1, beta_M, beta_2).
/// Scenario I leaves the retailer-2 slot at zero.
template <typename Scalar>
Vector3<Scalar> slope_rates(Scenario scenario, const Vector3<Scalar>& beta,
                            const Intensities<Scalar>& a, Scalar theta, const MarketParams& p) {
    const Scalar b1 = beta[kRetailer1];
    const Scalar bM = beta[kManufacturer];
    const Scalar b2 = beta[kRetailer2];
    const Scalar keep = Scalar(1) - theta;
    const Scalar r = Scalar(p.r);

    Scalar d1 = r * b1 + a.retailer1 * b1 * b1 / (Scalar(4) * keep) +
                a.manufacturer * b1 * bM / Scalar(2) - Scalar(p.c1);
    Scalar dM = r * bM + a.manufacturer * bM * bM / Scalar(4) -
                a.retailer1 * theta * b1 * b1 / (Scalar(4) * keep * keep) +
                a.retailer1 * b1 * bM / (Scalar(2) * keep) - Scalar(p.cM);
    Scalar d2 = Scalar(0);
    if (scenario == Scenario::II) {
        d1 -= a.retailer2 * b1 * b2 / Scalar(2);
        dM -= a.retailer2 * b2 * bM / Scalar(2);
        d2 = r * b2 + a.retailer1 * b1 * b2 / (Scalar(2) * keep) +
             a.manufacturer * b2 * bM / Scalar(2) - a.retailer2 * b2 * b2 / Scalar(4) +
             Scalar(p.c2);
    }
    return {d1, dM, d2};
}

/// Source terms of the intercept equations: d(alpha)/dt = r*alpha - source.
template <typename Scalar>
Vector3<Scalar> intercept_sources(Scenario scenario, const Vector3<Scalar>& beta,
                                  const Intensities<Scalar>& a, Scalar theta,
                                  const MarketParams& p,
                                  InterceptForm form = InterceptForm::derived) {
    const Scalar b1 = beta[kRetailer1];
    const Scalar bM = beta[kManufacturer];
    const Scalar b2 = beta[kRetailer2];
    const Scalar keep = Scalar(1) - theta;
    const bool printed = form == InterceptForm::as_printed;

    const Scalar s1 = a.retailer1 * b1 * b1 / (Scalar(4) * keep) +
                      a.manufacturer * b1 * bM / Scalar(2);
    const Scalar own_m =
        (printed && scenario == Scenario::I) ? a.retailer1 : a.manufacturer;
    const Scalar sM = own_m * bM * bM / Scalar(4) -
                      a.retailer1 * theta * b1 * b1 / (Scalar(4) * keep * keep) +
                      a.retailer1 * b1 * bM / (Scalar(2) * keep);
    Scalar s2 = Scalar(0);
    if (scenario == Scenario::II) {
        const Scalar cross = printed ? b1 * bM : b2 * bM;
        s2 = a.retailer1 * b1 * b2 / (Scalar(2) * keep) + a.manufacturer * cross / Scalar(2) +
             Scalar(p.c2);
    }
    return {s1, sM, s2};
}

/// Game data sampled on a fixed grid: quality intensities at every node and
/// midpoint, which are exactly the RK4 stage times. Built once and shared by
/// every solve in a subsidy scan.
class DiscretizedGame {
public:
    explicit DiscretizedGame(ScenarioConfig config);

    const ScenarioConfig& config() const noexcept { return config_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    Scenario scenario() const noexcept { return config_.scenario; }

    /// Intensities at half-step index j (t = j * dt / 2), j in [0, 2N].
    const Intensities<double>& intensities_half(Eigen::Index j) const { return half_[j]; }
    /// Intensities at a stage time; t is rounded to the nearest half step.
    const Intensities<double>& intensities_at_stage(double t) const;
    Eigen::Index half_index(double t) const;

private:
    ScenarioConfig config_;
    TimeGrid grid_;
    std::vector<Intensities<double>> half_;
};

/// Discretized value-function coefficients V_i = exp(-r t)(alpha_i + beta_i x)
/// for one subsidy rate. Each matrix has N+1 rows and one column per Player.
struct CoefficientPath {
    Scenario scenario = Scenario::I;
    double theta = 0.0;
    bool feasible = true;
    TimeGrid grid{};
    Eigen::MatrixXd alpha;
    Eigen::MatrixXd beta;
    Eigen::MatrixXd beta_rate;  // d(beta)/dt at the nodes, from the slope equations

    auto beta1() const { return beta.col(kRetailer1); }
    auto betaM() const { return beta.col(kManufacturer); }
    auto beta2() const { return beta.col(kRetailer2); }
    auto alpha1() const { return alpha.col(kRetailer1); }
    auto alphaM() const { return alpha.col(kManufacturer); }
    auto alpha2() const { return alpha.col(kRetailer2); }

    /// Slopes at fractional position k + s of the grid (cubic Hermite).
    Vector3<double> beta_between(Eigen::Index k, double s) const;
};

struct StatePath {
    double theta = 0.0;
    Eigen::VectorXd x;
};

CoefficientPath solve_coefficients(const DiscretizedGame& game, double theta,
                                   const SolveOptions& options = {});
CoefficientPath solve_coefficients(const ScenarioConfig& config, double theta,
                                   const SolveOptions& options = {});

/// Scenario-checked entry points; throw PreconditionError on a mismatched tag.
CoefficientPath solve_coefficients_I(const ScenarioConfig& config, double theta,
                                     const SolveOptions& options = {});
CoefficientPath solve_coefficients_II(const ScenarioConfig& config, double theta,
                                      const SolveOptions& options = {});

/// Right-hand side of the equilibrium share dynamics at given slopes.
template <typename Scalar>
Scalar share_rate(Scenario scenario, const Vector3<Scalar>& beta, const Intensities<Scalar>& a,
                  Scalar theta, Scalar x) {
    Scalar rate = (a.retailer1 * beta[kRetailer1] / (Scalar(2) * (Scalar(1) - theta)) +
                   a.manufacturer * beta[kManufacturer] / Scalar(2)) *
                  (Scalar(1) - x);
    if (scenario == Scenario::II) rate += a.retailer2 * beta[kRetailer2] * x / Scalar(2);
    return rate;
}

StatePath integrate_state(const DiscretizedGame& game, double theta,
                          const CoefficientPath& coeffs);
StatePath integrate_state(const ScenarioConfig& config, double theta,
                          const CoefficientPath& coeffs);

}  // namespace coopad
