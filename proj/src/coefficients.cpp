#include "coopad/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coopad/rk4.hpp"

namespace coopad {

namespace {

ScenarioConfig validated(ScenarioConfig config) {
    require_valid(config);
    return config;
}

}  // namespace

DiscretizedGame::DiscretizedGame(ScenarioConfig config)
    : config_(validated(std::move(config))),
      grid_(make_time_grid(config_.params.T, config_.grid_steps)) {
    half_.reserve(2 * static_cast<std::size_t>(grid_.N) + 1);
    for (int j = 0; j <= 2 * grid_.N; ++j) {
        const double t = j == 2 * grid_.N ? grid_.T : grid_.T * (j / (2.0 * grid_.N));
        half_.push_back(intensities_at(config_, t));
    }
}

Eigen::Index DiscretizedGame::half_index(double t) const {
    const double j = std::round(2.0 * t / grid_.dt);
    return std::clamp<Eigen::Index>(static_cast<Eigen::Index>(j), 0, 2 * grid_.N);
}

const Intensities<double>& DiscretizedGame::intensities_at_stage(double t) const {
    return half_[half_index(t)];
}

Vector3<double> CoefficientPath::beta_between(Eigen::Index k, double s) const {
    if (s == 0.0) return beta.row(k).transpose();
    if (s == 1.0) return beta.row(k + 1).transpose();
    return hermite<Vector3<double>>(beta.row(k).transpose(), beta_rate.row(k).transpose(),
                                    beta.row(k + 1).transpose(),
                                    beta_rate.row(k + 1).transpose(), grid.dt, s);
}

namespace {

bool within(const Vector3<double>& y, double bound) {
    return y.allFinite() && y.cwiseAbs().maxCoeff() <= bound;
}

/// Slopes at a stage time of step [k, k+1]: the nodes are stored exactly,
/// the midpoint comes from the Hermite interpolant.
Vector3<double> stage_beta(const CoefficientPath& path, Eigen::Index k, Eigen::Index half,
                           Eigen::Index k_half) {
    if (half == k_half) return path.beta.row(k).transpose();
    if (half == k_half + 2) return path.beta.row(k + 1).transpose();
    return path.beta_between(k, 0.5);
}

}  // namespace

CoefficientPath solve_coefficients(const DiscretizedGame& game, double theta,
                                   const SolveOptions& options) {
    require_theta(theta);
    const auto& grid = game.grid();
    const auto& params = game.config().params;
    const Scenario scenario = game.scenario();
    const Eigen::Index rows = grid.size();

    CoefficientPath path;
    path.scenario = scenario;
    path.theta = theta;
    path.grid = grid;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    path.alpha = Eigen::MatrixXd::Constant(rows, 3, nan);
    path.beta = Eigen::MatrixXd::Constant(rows, 3, nan);
    path.beta_rate = Eigen::MatrixXd::Constant(rows, 3, nan);

    auto slope_rhs = [&](double t, const Vector3<double>& b) {
        return slope_rates<double>(scenario, b, game.intensities_at_stage(t), theta, params);
    };

    // Terminal data is seeded, never integrated.
    Vector3<double> b = Vector3<double>::Zero();
    path.beta.row(grid.N) = b.transpose();
    for (int k = grid.N - 1; k >= 0; --k) {
        b = rk4_step(slope_rhs, grid.node(k + 1), b, -grid.dt);
        if (!within(b, options.blowup_bound)) {
            path.feasible = false;
            return path;
        }
        path.beta.row(k) = b.transpose();
    }
    for (int k = 0; k <= grid.N; ++k) {
        path.beta_rate.row(k) =
            slope_rates<double>(scenario, path.beta.row(k).transpose(),
                                game.intensities_half(2 * k), theta, params)
                .transpose();
    }

    const double r = params.r;
    Vector3<double> a = Vector3<double>::Zero();
    path.alpha.row(grid.N) = a.transpose();
    for (int k = grid.N - 1; k >= 0; --k) {
        const Eigen::Index k_half = 2 * k;
        auto intercept_rhs = [&](double t, const Vector3<double>& alpha) {
            const Eigen::Index j = game.half_index(t);
            const Vector3<double> beta = stage_beta(path, k, j, k_half);
            return Vector3<double>(r * alpha - intercept_sources<double>(
                                                   scenario, beta, game.intensities_half(j),
                                                   theta, params, options.intercepts));
        };
        a = rk4_step(intercept_rhs, grid.node(k + 1), a, -grid.dt);
        if (!within(a, options.blowup_bound)) {
            path.feasible = false;
            return path;
        }
        path.alpha.row(k) = a.transpose();
    }
    if (scenario == Scenario::I) {
        path.alpha.col(kRetailer2).setZero();
        path.beta.col(kRetailer2).setZero();
        path.beta_rate.col(kRetailer2).setZero();
    }
    return path;
}

CoefficientPath solve_coefficients(const ScenarioConfig& config, double theta,
                                   const SolveOptions& options) {
    require_theta(theta);
    return solve_coefficients(DiscretizedGame(config), theta, options);
}

CoefficientPath solve_coefficients_I(const ScenarioConfig& config, double theta,
                                     const SolveOptions& options) {
    if (config.scenario != Scenario::I)
        throw PreconditionError("solve_coefficients_I needs a scenario I configuration");
    return solve_coefficients(config, theta, options);
}

CoefficientPath solve_coefficients_II(const ScenarioConfig& config, double theta,
                                      const SolveOptions& options) {
    if (config.scenario != Scenario::II)
        throw PreconditionError("solve_coefficients_II needs a scenario II configuration");
    return solve_coefficients(config, theta, options);
}

StatePath integrate_state(const DiscretizedGame& game, double theta,
                          const CoefficientPath& coeffs) {
    if (!coeffs.feasible)
        throw PreconditionError("cannot integrate the share on an infeasible coefficient path");
    if (coeffs.theta != theta)
        throw PreconditionError("coefficient path was solved for a different subsidy rate");
    if (coeffs.grid.N != game.grid().N || coeffs.scenario != game.scenario())
        throw PreconditionError("coefficient path does not match the game discretization");

    const auto& grid = game.grid();
    const Scenario scenario = game.scenario();
    StatePath out;
    out.theta = theta;
    out.x.resize(grid.size());
    double x = game.config().params.x0;
    out.x[0] = x;
    for (int k = 0; k < grid.N; ++k) {
        const Eigen::Index k_half = 2 * k;
        auto rhs = [&](double t, double state) {
            const Eigen::Index j = game.half_index(t);
            return share_rate<double>(scenario, stage_beta(coeffs, k, j, k_half),
                                      game.intensities_half(j), theta, state);
        };
        x = std::clamp(rk4_step(rhs, grid.node(k), x, grid.dt), 0.0, 1.0);
        out.x[k + 1] = x;
    }
    return out;
}

StatePath integrate_state(const ScenarioConfig& config, double theta,
                          const CoefficientPath& coeffs) {
    return integrate_state(DiscretizedGame(config), theta, coeffs);
}

}  // namespace coopad
