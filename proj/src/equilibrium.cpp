#include "coopad/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coopad {

namespace {

void require_share(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("market share must lie in [0, 1]");
}

void require_node(const CoefficientPath& coeffs, Eigen::Index k) {
    if (k < 0 || k > coeffs.grid.N) throw DomainError("node index outside the grid");
}

}  // namespace

Controls feedback_controls(const ScenarioConfig& config, const CoefficientPath& coeffs, double x,
                           Eigen::Index k) {
    require_share(x);
    require_node(coeffs, k);
    const auto& p = config.params;
    const auto q = qualities_at(config, coeffs.grid.node(static_cast<int>(k)));
    const double theta = coeffs.theta;
    const double free_share = std::sqrt(std::max(0.0, 1.0 - x));
    const double held_share = std::sqrt(std::max(0.0, x));

    Controls c;
    const double u1 =
        p.rho1 * q.q1 * coeffs.beta(k, kRetailer1) * free_share / (2.0 * (1.0 - theta));
    const double v = p.rhoM * q.qM * coeffs.beta(k, kManufacturer) * free_share / 2.0;
    c.u1_projected = u1 < 0.0;
    c.v_projected = v < 0.0;
    c.u1 = std::max(0.0, u1);
    c.v = std::max(0.0, v);
    if (coeffs.scenario == Scenario::II) {
        const double u2 = -p.rho2 * q.q2 * coeffs.beta(k, kRetailer2) * held_share / 2.0;
        c.u2_projected = u2 < 0.0;
        c.u2 = std::max(0.0, u2);
    }
    return c;
}

EquilibriumTrajectory build_trajectory(const DiscretizedGame& game, double theta,
                                       const SolveOptions& options) {
    EquilibriumTrajectory traj;
    traj.scenario = game.scenario();
    traj.theta = theta;
    traj.grid = game.grid();
    traj.coeffs = solve_coefficients(game, theta, options);
    if (!traj.coeffs.feasible) {
        traj.feasible = false;
        return traj;
    }
    traj.x = integrate_state(game, theta, traj.coeffs).x;
    const Eigen::Index n = traj.grid.size();
    traj.u1.resize(n);
    traj.v.resize(n);
    traj.u2.setZero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto c = feedback_controls(game.config(), traj.coeffs, traj.x[k], k);
        traj.u1[k] = c.u1;
        traj.v[k] = c.v;
        traj.u2[k] = c.u2;
        traj.projection_active.u1 |= c.u1_projected;
        traj.projection_active.v |= c.v_projected;
        traj.projection_active.u2 |= c.u2_projected;
    }
    return traj;
}

EquilibriumTrajectory build_trajectory(const ScenarioConfig& config, double theta,
                                       const SolveOptions& options) {
    require_theta(theta);
    return build_trajectory(DiscretizedGame(config), theta, options);
}

ProfitReport profits(const ScenarioConfig& config, const EquilibriumTrajectory& traj) {
    if (!traj.feasible) throw PreconditionError("profits need a feasible trajectory");
    const auto& p = config.params;
    const auto& grid = traj.grid;
    const double theta = traj.theta;
    const Eigen::Index n = grid.size();
    if (traj.x.size() != n || traj.u1.size() != n || traj.v.size() != n)
        throw PreconditionError("trajectory arrays do not match the grid");
    const bool competitor = traj.scenario == Scenario::II;
    if (competitor && traj.u2.size() != n)
        throw PreconditionError("scenario II trajectory needs a u2 path");

    double j1 = 0.0;
    double j2 = 0.0;
    double jm = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        const double disc = w * std::exp(-p.r * grid.node(static_cast<int>(k)));
        const double x = traj.x[k];
        const double u1sq = traj.u1[k] * traj.u1[k];
        j1 += disc * (p.c1 * x - (1.0 - theta) * u1sq);
        jm += disc * (p.cM * x - traj.v[k] * traj.v[k] - theta * u1sq);
        if (competitor) j2 += disc * (p.c2 * (1.0 - x) - traj.u2[k] * traj.u2[k]);
    }
    ProfitReport out;
    out.J1 = grid.dt * j1;
    out.JM = grid.dt * jm;
    out.J2 = competitor ? grid.dt * j2 : std::numeric_limits<double>::quiet_NaN();
    out.Jchannel = out.J1 + out.JM;
    return out;
}

PlayerValues value_at(const ScenarioConfig& config, const CoefficientPath& coeffs, double x,
                      Eigen::Index k) {
    require_share(x);
    require_node(coeffs, k);
    const double disc = std::exp(-config.params.r * coeffs.grid.node(static_cast<int>(k)));
    auto value = [&](Player i) { return disc * (coeffs.alpha(k, i) + coeffs.beta(k, i) * x); };
    PlayerValues out;
    out.retailer1 = value(kRetailer1);
    out.manufacturer = value(kManufacturer);
    if (coeffs.scenario == Scenario::II) out.retailer2 = value(kRetailer2);
    return out;
}

PlayerValues hj_residual(const ScenarioConfig& config, const CoefficientPath& coeffs, double x,
                         Eigen::Index k) {
    require_share(x);
    if (k <= 0 || k >= coeffs.grid.N)
        throw DomainError("HJ residuals are defined on interior nodes only");
    if (!coeffs.feasible) throw PreconditionError("HJ residual on an infeasible path");

    const auto& p = config.params;
    const double t = coeffs.grid.node(static_cast<int>(k));
    const auto a = intensities_at(config, t);
    const double theta = coeffs.theta;
    const double keep = 1.0 - theta;
    const double disc = std::exp(-p.r * t);
    const double grow = std::exp(p.r * t);
    const double dt = coeffs.grid.dt;
    const Eigen::Index N = coeffs.grid.N;

    // Fourth-order stencils: centered where five nodes fit, shifted by one
    // node next to either end (N >= 10 guarantees the span exists).
    auto d_dt = [&](const Eigen::MatrixXd& m, Player i) {
        auto f = [&](Eigen::Index j) { return m(j, i); };
        if (k == 1)
            return (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) / (12.0 * dt);
        if (k == N - 1)
            return (3.0 * f(N) + 10.0 * f(N - 1) - 18.0 * f(N - 2) + 6.0 * f(N - 3) - f(N - 4)) /
                   (12.0 * dt);
        return (f(k - 2) - 8.0 * f(k - 1) + 8.0 * f(k + 1) - f(k + 2)) / (12.0 * dt);
    };
    // V_t from the affine form and the differenced alpha and beta.
    auto value_t = [&](Player i) {
        const double level = coeffs.alpha(k, i) + coeffs.beta(k, i) * x;
        return disc * (-p.r * level + d_dt(coeffs.alpha, i) + d_dt(coeffs.beta, i) * x);
    };
    const double V1x = disc * coeffs.beta(k, kRetailer1);
    const double VMx = disc * coeffs.beta(k, kManufacturer);
    const double V2x = disc * coeffs.beta(k, kRetailer2);
    const double a1 = a.retailer1;
    const double aM = a.manufacturer;
    const double a2 = a.retailer2;

    PlayerValues out;
    out.retailer1 = value_t(kRetailer1) + p.c1 * disc * x +
                    a1 * grow * V1x * V1x * (1.0 - x) / (4.0 * keep) +
                    aM * grow * V1x * VMx * (1.0 - x) / 2.0;
    out.manufacturer = value_t(kManufacturer) + p.cM * disc * x +
                       aM * grow * VMx * VMx * (1.0 - x) / 4.0 -
                       a1 * theta * grow * V1x * V1x * (1.0 - x) / (4.0 * keep * keep) +
                       a1 * grow * V1x * VMx * (1.0 - x) / (2.0 * keep);
    if (coeffs.scenario == Scenario::II) {
        out.retailer1 += a2 * grow * V1x * V2x * x / 2.0;
        out.manufacturer += a2 * grow * V2x * VMx * x / 2.0;
        out.retailer2 = value_t(kRetailer2) + p.c2 * disc * (1.0 - x) +
                        a1 * grow * V1x * V2x * (1.0 - x) / (2.0 * keep) +
                        a2 * grow * V2x * V2x * x / 4.0 +
                        aM * grow * V2x * VMx * (1.0 - x) / 2.0;
    }
    return out;
}

double max_hj_residual(const ScenarioConfig& config, const CoefficientPath& coeffs,
                       const std::vector<double>& shares) {
    double worst = 0.0;
    for (Eigen::Index k = 1; k < coeffs.grid.N; ++k) {
        for (double x : shares) {
            const auto res = hj_residual(config, coeffs, x, k);
            worst = std::max({worst, std::abs(res.retailer1), std::abs(res.manufacturer),
                              std::abs(res.retailer2.value_or(0.0))});
        }
    }
    return worst;
}

}  // namespace coopad
