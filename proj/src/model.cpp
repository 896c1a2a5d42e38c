#include "coopad/model.hpp"

#include <cmath>
#include <sstream>

namespace coopad {

std::string to_string(Scenario s) { return s == Scenario::I ? "I" : "II"; }

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string QualitySchedule::label() const {
    return std::visit(
        overloaded{
            [](const Constant& c) { return "constant(" + fmt(c.q0) + ")"; },
            [](const Linear& l) { return "linear(" + fmt(l.start) + "->" + fmt(l.end) + ")"; },
            [](const Table& t) { return "table(" + std::to_string(t.points.size()) + " points)"; },
        },
        form_);
}

double eval_quality(const QualitySchedule& schedule, double t, double horizon) {
    if (!(t >= 0.0 && t <= horizon)) {
        throw DomainError("quality schedule evaluated at t=" + fmt(t) + " outside [0, " +
                          fmt(horizon) + "]");
    }
    return std::visit(
        overloaded{
            [](const QualitySchedule::Constant& c) { return c.q0; },
            [&](const QualitySchedule::Linear& l) {
                return l.start + (l.end - l.start) * (t / horizon);
            },
            [&](const QualitySchedule::Table& tab) {
                const auto& p = tab.points;
                if (p.empty()) throw DomainError("empty quality table");
                if (t <= p.front().first) return p.front().second;
                if (t >= p.back().first) return p.back().second;
                std::size_t lo = 0;
                std::size_t hi = p.size() - 1;
                while (hi - lo > 1) {
                    const std::size_t mid = (lo + hi) / 2;
                    (p[mid].first <= t ? lo : hi) = mid;
                }
                const double w = (t - p[lo].first) / (p[hi].first - p[lo].first);
                return p[lo].second + w * (p[hi].second - p[lo].second);
            },
        },
        schedule.form());
}

Eigen::VectorXd TimeGrid::nodes() const {
    Eigen::VectorXd t(size());
    for (int k = 0; k <= N; ++k) t[k] = node(k);
    return t;
}

TimeGrid make_time_grid(double T, int N) {
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T", "horizon must be positive");
    if (N < kMinGridSteps) {
        throw ConfigError("grid_steps", "need at least " + std::to_string(kMinGridSteps) +
                                              " steps, got " + std::to_string(N));
    }
    return TimeGrid{T, N, T / N};
}

namespace {

void check_nonnegative(std::vector<Violation>& out, const char* field, double v) {
    if (!std::isfinite(v) || v < 0.0) out.push_back({field, "must be finite and >= 0"});
}

void check_schedule(std::vector<Violation>& out, const std::string& field,
                    const QualitySchedule& s, double T) {
    std::visit(overloaded{
                   [&](const QualitySchedule::Constant& c) {
                       if (!std::isfinite(c.q0) || c.q0 < 0.0)
                           out.push_back({field, "constant quality must be finite and >= 0"});
                   },
                   [&](const QualitySchedule::Linear& l) {
                       // Linear in t, so nonnegativity at both ends covers [0, T].
                       if (!std::isfinite(l.start) || !std::isfinite(l.end) || l.start < 0.0 ||
                           l.end < 0.0)
                           out.push_back({field, "linear endpoints must be finite and >= 0"});
                   },
                   [&](const QualitySchedule::Table& t) {
                       const auto& p = t.points;
                       if (p.size() < 2) {
                           out.push_back({field, "table needs at least two points"});
                           return;
                       }
                       for (std::size_t i = 0; i < p.size(); ++i) {
                           if (!std::isfinite(p[i].first) || !std::isfinite(p[i].second) ||
                               p[i].second < 0.0) {
                               out.push_back({field, "table entries must be finite with q >= 0"});
                               return;
                           }
                           if (i > 0 && !(p[i].first > p[i - 1].first)) {
                               out.push_back({field, "table times must be strictly increasing"});
                               return;
                           }
                       }
                       if (p.front().first > 0.0 || p.back().first < T)
                           out.push_back({field, "table must cover [0, T]"});
                   },
               },
               s.form());
}

}  // namespace

std::vector<Violation> check_config(const ScenarioConfig& config) {
    std::vector<Violation> out;
    const auto& p = config.params;
    check_nonnegative(out, "rho1", p.rho1);
    check_nonnegative(out, "rhoM", p.rhoM);
    check_nonnegative(out, "c1", p.c1);
    check_nonnegative(out, "cM", p.cM);
    check_nonnegative(out, "r", p.r);
    if (config.scenario == Scenario::II) {
        check_nonnegative(out, "rho2", p.rho2);
        check_nonnegative(out, "c2", p.c2);
    }
    const bool horizon_ok = std::isfinite(p.T) && p.T > 0.0;
    if (!horizon_ok) out.push_back({"T", "horizon must be finite and > 0"});
    if (!std::isfinite(p.x0) || p.x0 < 0.0 || p.x0 > 1.0)
        out.push_back({"x0", "initial share must lie in [0, 1]"});
    if (config.grid_steps < kMinGridSteps)
        out.push_back({"grid_steps", "must be >= " + std::to_string(kMinGridSteps)});
    const double T = horizon_ok ? p.T : 0.0;
    check_schedule(out, "q1", config.q1, T);
    check_schedule(out, "qM", config.qM, T);
    if (config.scenario == Scenario::II) {
        if (!config.q2) {
            out.push_back({"q2", "required for scenario II"});
        } else {
            check_schedule(out, "q2", *config.q2, T);
        }
    }
    if (config.theta && !(*config.theta >= 0.0 && *config.theta <= kThetaMax))
        out.push_back({"theta", "must lie in [0, " + fmt(kThetaMax) + "]"});
    return out;
}

const ScenarioConfig& require_valid(const ScenarioConfig& config) {
    auto v = check_config(config);
    if (!v.empty()) throw ConfigError(std::move(v));
    return config;
}

void require_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kThetaMax)) {
        throw DomainError("subsidy rate " + fmt(theta) + " outside [0, " + fmt(kThetaMax) + "]");
    }
}

Qualities qualities_at(const ScenarioConfig& config, double t) {
    const double T = config.params.T;
    Qualities q;
    q.q1 = eval_quality(config.q1, t, T);
    q.qM = eval_quality(config.qM, t, T);
    if (config.scenario == Scenario::II && config.q2) q.q2 = eval_quality(*config.q2, t, T);
    return q;
}

Intensities<double> intensities_at(const ScenarioConfig& config, double t) {
    const auto q = qualities_at(config, t);
    const auto& p = config.params;
    const double g1 = p.rho1 * q.q1;
    const double gM = p.rhoM * q.qM;
    const double g2 = config.scenario == Scenario::II ? p.rho2 * q.q2 : 0.0;
    return {g1 * g1, gM * gM, g2 * g2};
}

}  // namespace coopad
