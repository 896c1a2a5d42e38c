#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "coopad/errors.hpp"

namespace coopad {

/// Largest admissible subsidy rate. The Riccati terms carry 1/(1 - theta),
/// so rates at or above 1 are rejected.
inline constexpr double kThetaMax = 0.99;

/// Smallest admissible number of time steps.
inline constexpr int kMinGridSteps = 10;

inline constexpr int kDefaultGridSteps = 2000;

enum class Scenario { I, II };

std::string to_string(Scenario s);

/// Scalar economics shared by both games. Defaults are the base case:
/// effectiveness 0.05, margins 200, discount 0.05, horizon 100, share 0.1.
struct MarketParams {
    double rho1 = 0.05;
    double rho2 = 0.05;
    double rhoM = 0.05;
    double c1 = 200.0;
    double c2 = 200.0;
    double cM = 200.0;
    double r = 0.05;
    double T = 100.0;
    double x0 = 0.1;

    bool operator==(const MarketParams&) const = default;
};

/// Quality score q(t) on [0, T].
class QualitySchedule {
public:
    struct Constant {
        double q0 = 0.15;
        bool operator==(const Constant&) const = default;
    };
    struct Linear {
        double start = 0.0;
        double end = 0.0;
        bool operator==(const Linear&) const = default;
    };
    struct Table {
        std::vector<std::pair<double, double>> points;  // (t, q), t strictly increasing
        bool operator==(const Table&) const = default;
    };
    using Variant = std::variant<Constant, Linear, Table>;

    QualitySchedule() : form_(Constant{}) {}
    QualitySchedule(Variant form) : form_(std::move(form)) {}  // NOLINT(implicit)

    static QualitySchedule constant(double q0) { return QualitySchedule(Constant{q0}); }
    static QualitySchedule linear(double start, double end) {
        return QualitySchedule(Linear{start, end});
    }
    static QualitySchedule table(std::vector<std::pair<double, double>> points) {
        return QualitySchedule(Table{std::move(points)});
    }

    const Variant& form() const noexcept { return form_; }

    /// Short human-readable tag, e.g. "constant(0.15)" or "linear(0.05->0.25)".
    std::string label() const;

    bool operator==(const QualitySchedule&) const = default;

private:
    Variant form_;
};

/// q(t) for t in [0, horizon]. Throws DomainError outside that interval.
double eval_quality(const QualitySchedule& schedule, double t, double horizon);

struct ScenarioConfig {
    Scenario scenario = Scenario::I;
    MarketParams params{};
    QualitySchedule q1 = QualitySchedule::constant(0.15);
    QualitySchedule qM = QualitySchedule::constant(0.15);
    std::optional<QualitySchedule> q2;  // required for scenario II, ignored for I
    int grid_steps = kDefaultGridSteps;
    std::optional<double> theta;        // optional rate carried by a config file

    bool operator==(const ScenarioConfig&) const = default;
};

/// Uniform grid t_k = T * k / N, k = 0..N, with t_N == T exactly.
struct TimeGrid {
    double T = 0.0;
    int N = 0;
    double dt = 0.0;

    double node(int k) const { return k == N ? T : T * (static_cast<double>(k) / N); }
    /// Time at fractional position k + s, s in [0, 1].
    double at(int k, double s) const { return T * ((k + s) / N); }
    Eigen::Index size() const { return N + 1; }
    Eigen::VectorXd nodes() const;
};

TimeGrid make_time_grid(double T, int N);

/// Returns every violated invariant of an already-typed configuration.
std::vector<Violation> check_config(const ScenarioConfig& config);

/// Throws ConfigError when check_config reports anything.
const ScenarioConfig& require_valid(const ScenarioConfig& config);

/// Throws DomainError unless 0 <= theta <= kThetaMax.
void require_theta(double theta);

/// (rho_i q_i(t))^2 for each player; the quadratic terms of every
/// coefficient equation are built from these intensities.
template <typename Scalar = double>
struct Intensities {
    Scalar retailer1{};
    Scalar manufacturer{};
    Scalar retailer2{};
};

Intensities<double> intensities_at(const ScenarioConfig& config, double t);

struct Qualities {
    double q1 = 0.0;
    double qM = 0.0;
    double q2 = 0.0;
};

/// Quality scores of all players at t; q2 is 0 in scenario I.
Qualities qualities_at(const ScenarioConfig& config, double t);

}  // namespace coopad
