#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coopad/coefficients.hpp"
#include "coopad/model.hpp"

namespace coopad {

inline constexpr double kDefaultThetaStep = 0.005;
inline constexpr double kMaxThetaStep = 0.1;

struct ScanOptions {
    unsigned workers = 0;  // 0 = hardware concurrency
    SolveOptions solve{};
};

/// Manufacturer and channel profit as functions of the subsidy rate on a
/// uniform grid, with the two grid maximizers. theta_star maximizes JM
/// (non-integrated rate), theta_bar maximizes Jchannel (integrated rate).
struct SubsidyCurve {
    std::vector<double> theta;
    std::vector<double> J1;
    std::vector<double> J2;  // NaN in scenario I
    std::vector<double> JM;
    std::vector<double> Jchannel;
    std::vector<char> feasible;
    double theta_star = 0.0;
    double theta_bar = 0.0;
    std::size_t star_index = 0;
    std::size_t bar_index = 0;

    std::size_t size() const { return theta.size(); }
};

/// {0, step, 2 step, ...} up to kThetaMax, by multiplication.
std::vector<double> theta_grid(double step);

/// Evaluates every grid rate; infeasible rates are recorded and excluded
/// from the argmax. Throws DomainError for a step outside (0, 0.1] and
/// OptimizationError when no rate is feasible.
SubsidyCurve scan_subsidy(const DiscretizedGame& game, double theta_step = kDefaultThetaStep,
                          const ScanOptions& options = {});
SubsidyCurve scan_subsidy(const ScenarioConfig& config, double theta_step = kDefaultThetaStep,
                          const ScanOptions& options = {});

/// (theta_star, theta_bar) recomputed from the curve data. Ties go to the
/// smaller rate. Throws OptimizationError when nothing is feasible.
std::pair<double, double> optimal_rates(const SubsidyCurve& curve);

/// Index form of optimal_rates.
std::pair<std::size_t, std::size_t> optimal_indices(const SubsidyCurve& curve);

}  // namespace coopad
