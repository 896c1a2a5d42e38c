#include "coopad/subsidy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "coopad/equilibrium.hpp"
#include "coopad/parallel.hpp"

namespace coopad {

std::vector<double> theta_grid(double step) {
    if (!(step > 0.0 && step <= kMaxThetaStep))
        throw DomainError("theta step must lie in (0, " + std::to_string(kMaxThetaStep) + "]");
    const auto count = static_cast<std::size_t>(std::floor(kThetaMax / step + 1e-9));
    std::vector<double> grid(count + 1);
    for (std::size_t k = 0; k <= count; ++k)
        grid[k] = std::min(static_cast<double>(k) * step, kThetaMax);
    return grid;
}

std::pair<std::size_t, std::size_t> optimal_indices(const SubsidyCurve& curve) {
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::size_t star = none;
    std::size_t bar = none;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!curve.feasible[i]) continue;
        // Strict comparison over ascending theta keeps the smallest maximizer.
        if (star == none || curve.JM[i] > curve.JM[star]) star = i;
        if (bar == none || curve.Jchannel[i] > curve.Jchannel[bar]) bar = i;
    }
    if (star == none) throw OptimizationError("no feasible subsidy rate on the grid");
    return {star, bar};
}

std::pair<double, double> optimal_rates(const SubsidyCurve& curve) {
    const auto [star, bar] = optimal_indices(curve);
    return {curve.theta[star], curve.theta[bar]};
}

SubsidyCurve scan_subsidy(const DiscretizedGame& game, double theta_step,
                          const ScanOptions& options) {
    SubsidyCurve curve;
    curve.theta = theta_grid(theta_step);
    const std::size_t n = curve.theta.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    curve.J1.assign(n, nan);
    curve.J2.assign(n, nan);
    curve.JM.assign(n, nan);
    curve.Jchannel.assign(n, nan);
    curve.feasible.assign(n, 0);

    parallel_for(
        n,
        [&](std::size_t i) {
            const auto traj = build_trajectory(game, curve.theta[i], options.solve);
            if (!traj.feasible) return;
            const auto pr = profits(game.config(), traj);
            if (!std::isfinite(pr.JM) || !std::isfinite(pr.Jchannel)) return;
            curve.J1[i] = pr.J1;
            curve.J2[i] = pr.J2;
            curve.JM[i] = pr.JM;
            curve.Jchannel[i] = pr.Jchannel;
            curve.feasible[i] = 1;
        },
        options.workers);

    const auto [star, bar] = optimal_indices(curve);
    curve.star_index = star;
    curve.bar_index = bar;
    curve.theta_star = curve.theta[star];
    curve.theta_bar = curve.theta[bar];
    return curve;
}

SubsidyCurve scan_subsidy(const ScenarioConfig& config, double theta_step,
                          const ScanOptions& options) {
    theta_grid(theta_step);  // reject a bad step before building the game
    return scan_subsidy(DiscretizedGame(config), theta_step, options);
}

}  // namespace coopad
