// Acceptance run: one PASS/FAIL line per criterion, diagnostics indented
// below it. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopad/experiments.hpp"

using namespace coopad;
using Q = QualitySchedule;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

ScenarioConfig base(Scenario s = Scenario::I, int N = 2000, double q2 = 0.15) {
    ScenarioConfig c;
    c.scenario = s;
    c.grid_steps = N;
    if (s == Scenario::II) c.q2 = Q::constant(q2);
    return c;
}

std::vector<std::string> pending;

template <typename... Args>
void note(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    pending.emplace_back(buf);
}

int failures = 0;

void verdict(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("%s  C%02d %-30s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    for (const auto& line : pending) std::printf("      %s\n", line.c_str());
    pending.clear();
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bool strictly_decreasing(const Eigen::VectorXd& v, Eigen::Index from, Eigen::Index to) {
    for (Eigen::Index k = from; k < to; ++k)
        if (!(v[k + 1] < v[k])) return false;
    return true;
}

bool strictly_increasing(const Eigen::VectorXd& v, Eigen::Index from, Eigen::Index to) {
    for (Eigen::Index k = from; k < to; ++k)
        if (!(v[k + 1] > v[k])) return false;
    return true;
}

/// (pairs satisfying ok, all pairs) over neighbours along one axis of an n x m grid.
template <typename Cmp>
std::pair<int, int> count_pairs(std::size_t n, std::size_t m, const std::function<double(std::size_t, std::size_t)>& f,
                                bool along_first, Cmp ok) {
    int good = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const bool has_next = along_first ? i + 1 < n : j + 1 < m;
            if (!has_next) continue;
            const double a = f(i, j);
            const double b = along_first ? f(i + 1, j) : f(i, j + 1);
            ++total;
            if (ok(a, b)) ++good;
        }
    }
    return {good, total};
}

// 1 ------------------------------------------------------------------------
void bellman() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (auto s : {Scenario::I, Scenario::II}) {
        const auto c = base(s, 4000);
        for (double theta : {0.0, 0.2, 0.5}) {
            const auto traj = build_trajectory(c, theta);
            const auto p = profits(c, traj);
            const auto v = value_at(c, traj.coeffs, c.params.x0, 0);
            worst = std::max({worst, rel_err(v.retailer1, p.J1), rel_err(v.manufacturer, p.JM)});
            if (s == Scenario::II) worst = std::max(worst, rel_err(*v.retailer2, p.J2));
        }
    }
    const double secs = seconds_since(t0);
    verdict(1, "bellman-consistency", worst <= 1e-3 && secs < 5.0,
            fmt("max rel err %.3e (tol 1e-3)", worst) + fmt(", %.2f s (limit 5 s)", secs));
}

// 2 ------------------------------------------------------------------------
void hj_residuals() {
    const std::vector<double> shares{0.0, 0.25, 0.5, 0.75, 1.0};
    bool pass = true;
    for (auto s : {Scenario::I, Scenario::II}) {
        for (double theta : {0.0, 0.3}) {
            const auto coarse = base(s, 2000);
            const auto fine = base(s, 4000);
            const double rc = max_hj_residual(coarse, solve_coefficients(coarse, theta), shares);
            const double rf = max_hj_residual(fine, solve_coefficients(fine, theta), shares);
            const double bound = 1e-4 * std::max(coarse.params.c1, coarse.params.cM);
            const bool ok = rc <= bound && rc / rf >= 4.0;
            pass = pass && ok;
            note("scenario %s theta %.1f: N=2000 %.3e (bound %.0e), N=4000 %.3e, ratio %.2f%s",
                 to_string(s).c_str(), theta, rc, bound, rf, rc / rf, ok ? "" : "  <-");
        }
    }
    verdict(2, "hj-residuals", pass, "max residual <= 1e-4 max(c), shrink >= 4x");
}

// 3 ------------------------------------------------------------------------
void terminal() {
    bool pass = true;
    double worst = 0.0;
    for (auto s : {Scenario::I, Scenario::II}) {
        const auto c = base(s);
        const auto traj = build_trajectory(c, 0.0);
        const auto& b = traj.coeffs.beta;
        const Eigen::Index N = traj.grid.N;
        const double h = traj.grid.dt;
        auto slope = [&](Player p) {
            return (25.0 * b(N, p) - 48.0 * b(N - 1, p) + 36.0 * b(N - 2, p) - 16.0 * b(N - 3, p) +
                    3.0 * b(N - 4, p)) /
                   (12.0 * h);
        };
        worst = std::max(worst, rel_err(slope(kRetailer1), -c.params.c1));
        worst = std::max(worst, rel_err(slope(kManufacturer), -c.params.cM));
        if (s == Scenario::II) worst = std::max(worst, rel_err(slope(kRetailer2), c.params.c2));
        const bool zero = traj.u1[N] == 0.0 && traj.v[N] == 0.0 && traj.u2[N] == 0.0;
        if (!zero) note("scenario %s: controls at T not exactly zero", to_string(s).c_str());
        pass = pass && zero;
    }
    pass = pass && worst <= 1e-6;
    verdict(3, "terminal-analytics", pass,
            fmt("max rel err of one-sided slope rate %.3e (tol 1e-6), controls at T exactly 0", worst));
}

// 4 ------------------------------------------------------------------------
void reduction() {
    const auto one = base(Scenario::I);
    const auto two = base(Scenario::II, 2000, 0.0);
    const auto c1 = scan_subsidy(one);
    const auto c2 = scan_subsidy(two);
    double worst = std::max(std::abs(c1.theta_star - c2.theta_star), std::abs(c1.theta_bar - c2.theta_bar));
    for (double theta : {0.0, c1.theta_star, c1.theta_bar}) {
        const auto t1 = build_trajectory(one, theta);
        const auto t2 = build_trajectory(two, theta);
        worst = std::max({worst, (t1.x - t2.x).cwiseAbs().maxCoeff(), (t1.u1 - t2.u1).cwiseAbs().maxCoeff(),
                          (t1.v - t2.v).cwiseAbs().maxCoeff()});
        const auto p1 = profits(one, t1);
        const auto p2 = profits(two, t2);
        worst = std::max({worst, std::abs(p1.J1 - p2.J1), std::abs(p1.JM - p2.JM),
                          std::abs(p1.Jchannel - p2.Jchannel)});
    }
    verdict(4, "reduction-equivalence", worst <= 1e-8, fmt("max abs difference %.3e (tol 1e-8)", worst));
}

// 5 ------------------------------------------------------------------------
void decreasing_efforts() {
    const auto c = base();
    const auto t = build_trajectory(c, 0.0);
    const Eigen::Index N = t.grid.N;
    const bool u1_dec = strictly_decreasing(t.u1, 0, N);
    const bool v_dec = strictly_decreasing(t.v, 0, N);
    const Eigen::VectorXd dx = t.x.tail(N) - t.x.head(N);
    const bool x_inc = (dx.array() > 0.0).all();
    const bool dx_dec = strictly_decreasing(dx, 0, N - 1);
    note("theta 0: u1 strictly decreasing %s, v %s, x increasing %s, increments decreasing %s",
         u1_dec ? "yes" : "no", v_dec ? "yes" : "no", x_inc ? "yes" : "no", dx_dec ? "yes" : "no");

    auto lo = c, hi = c;
    lo.qM = Q::constant(0.05);
    hi.qM = Q::constant(0.25);
    const auto tl = build_trajectory(lo, 0.0);
    const auto th = build_trajectory(hi, 0.0);
    int v_up = 0, u1_down = 0;
    for (Eigen::Index k = 0; k < N; ++k) {
        v_up += th.v[k] > tl.v[k];
        u1_down += th.u1[k] < tl.u1[k];
    }
    note("qM 0.05 -> 0.25 at theta 0: v higher at %d/%d nodes, u1 lower at %d/%d nodes", v_up,
         static_cast<int>(N), u1_down, static_cast<int>(N));
    for (Eigen::Index k = 0; k < N; ++k) {
        if (!(th.v[k] > tl.v[k])) {
            note("v under qM 0.25 drops below the qM 0.05 path at t = %.2f (%.4f vs %.4f; shares %.4f vs %.4f)",
                 t.grid.node(static_cast<int>(k)), th.v[k], tl.v[k], th.x[k], tl.x[k]);
            break;
        }
    }

    const bool pass = u1_dec && v_dec && x_inc && dx_dec && v_up == N && u1_down == N;
    verdict(5, "efforts-decrease-over-time", pass,
            "monotone paths at base; qM raise lifts v and lowers u1 at every node before T");
}

// 6 ------------------------------------------------------------------------
void increasing_quality_trend() {
    bool pass = true;
    for (double q1 : {0.05, 0.25}) {
        std::vector<EquilibriumTrajectory> paths;
        std::vector<double> rates;
        for (const auto& qM : {Q::linear(0.05, 0.25), Q::constant(0.15), Q::linear(0.25, 0.05)}) {
            auto c = base();
            c.q1 = Q::constant(q1);
            c.qM = qM;
            const DiscretizedGame game(c);
            const auto curve = scan_subsidy(game);
            rates.push_back(curve.theta_star);
            paths.push_back(build_trajectory(game, curve.theta_star));
        }
        const Eigen::Index N = paths[0].grid.N;
        int worse = 0;
        for (Eigen::Index k = 0; k < N; ++k)
            worse += !(paths[0].u1[k] >= paths[1].u1[k] && paths[0].u1[k] >= paths[2].u1[k]);
        note("q1 %.2f: theta* increasing/constant/decreasing qM = %.3f/%.3f/%.3f; u1 not highest under "
             "increasing qM at %d of %d nodes",
             q1, rates[0], rates[1], rates[2], worse, static_cast<int>(N));
        pass = pass && worse == 0;
    }
    verdict(6, "increasing-qM-highest-u1", pass, "pointwise at each form's theta*");
}

// 7 ------------------------------------------------------------------------
double grid_seconds = 0.0;

void quality_grid() {
    SweepSpec spec;
    spec.base = base();
    spec.axes = {ScalarRange{SweepField::q1, 0.02, 0.26, 7}, ScalarRange{SweepField::qM, 0.02, 0.26, 7}};
    spec.outputs = {SweepOutput::theta_star, SweepOutput::theta_bar};
    const auto t0 = Clock::now();
    const auto r = sweep(spec);
    grid_seconds = seconds_since(t0);

    auto star = [&](std::size_t i, std::size_t j) { return r.at(i, j).theta_star; };
    const auto [q1_ok, q1_total] = count_pairs(7, 7, star, true, [](double a, double b) { return b <= a; });
    const auto [qM_ok, qM_total] = count_pairs(7, 7, star, false, [](double a, double b) { return b >= a; });
    bool bar_above = true;
    double smin = 1, smax = 0, bmin = 1, bmax = 0;
    for (const auto& row : r.rows) {
        bar_above = bar_above && row.theta_bar >= row.theta_star;
        smin = std::min(smin, row.theta_star);
        smax = std::max(smax, row.theta_star);
        bmin = std::min(bmin, row.theta_bar);
        bmax = std::max(bmax, row.theta_bar);
    }
    const double corner = r.at(6, 0).theta_star;
    note("theta* nonincreasing in q1 on %d/%d pairs, nondecreasing in qM on %d/%d pairs", q1_ok, q1_total,
         qM_ok, qM_total);
    note("theta* range [%.3f, %.3f], theta_bar range [%.3f, %.3f], theta* at (0.26, 0.02) = %.3f", smin, smax,
         bmin, bmax, corner);
    const bool pass = q1_ok >= 0.9 * q1_total && qM_ok >= 0.9 * qM_total && bar_above && corner == 0.0 &&
                      (bmax - bmin) < (smax - smin);
    verdict(7, "quality-grid-optima", pass, fmt("7x7 grid in %.1f s", grid_seconds));
}

// 8 ------------------------------------------------------------------------
void competitor_quality() {
    auto zeros_for = [](double q2, double& lowest) {
        SweepSpec spec;
        spec.base = base(Scenario::II, 2000, q2);
        spec.axes = {ScalarRange{SweepField::q1, 0.02, 0.26, 7}, ScalarRange{SweepField::qM, 0.02, 0.26, 7}};
        spec.outputs = {SweepOutput::theta_star};
        const auto r = sweep(spec);
        int zeros = 0;
        lowest = 1.0;
        for (const auto& row : r.rows) {
            zeros += row.theta_star == 0.0;
            lowest = std::min(lowest, row.theta_star);
        }
        return zeros;
    };
    double low_hi = 0, low_lo = 0;
    const int z_hi = zeros_for(0.24, low_hi);
    const int z_lo = zeros_for(0.04, low_lo);
    note("q2 0.24: %d zero points, smallest theta* %.3f; q2 0.04: %d zero points", z_hi, low_hi, z_lo);
    verdict(8, "competitor-quality-zero-region", z_hi == 0 && z_lo > 0,
            "no theta*-zero point at q2 0.24, at least one at q2 0.04");
}

// 9 ------------------------------------------------------------------------
void margins() {
    auto margin_sweep = [](Scenario s, double c2, std::optional<double> theta) {
        SweepSpec spec;
        spec.base = base(s);
        spec.base.params.c2 = c2;
        spec.axes = {ScalarRange{SweepField::c1, 50, 300, 6}, ScalarRange{SweepField::cM, 50, 300, 6}};
        spec.theta = theta;
        return sweep(spec);
    };
    auto up = [](double a, double b) { return b > a; };
    auto down = [](double a, double b) { return b < a; };

    const auto r1 = margin_sweep(Scenario::I, 200.0, std::nullopt);
    auto field = [&](const SweepResult& r, double ProfitReport::*m) {
        return [&r, m](std::size_t i, std::size_t j) { return r.at(i, j).profits.*m; };
    };
    const auto j1 = count_pairs(6, 6, field(r1, &ProfitReport::J1), true, up);
    const auto jm = count_pairs(6, 6, field(r1, &ProfitReport::JM), false, up);
    const auto jc1 = count_pairs(6, 6, field(r1, &ProfitReport::Jchannel), true, up);
    const auto jcm = count_pairs(6, 6, field(r1, &ProfitReport::Jchannel), false, up);
    note("scenario I at theta*: J1 up in c1 %d/%d, JM up in cM %d/%d, Jchannel up in c1 %d/%d, in cM %d/%d",
         j1.first, j1.second, jm.first, jm.second, jc1.first, jc1.second, jcm.first, jcm.second);
    const auto signs = cross_margin_signs(r1);
    int pos = 0, neg = 0;
    for (double s : signs) {
        pos += s > 0;
        neg += s < 0;
    }
    note("scenario I cross effect, sign of JM change along c1: %d positive, %d negative", pos, neg);
    bool pass = j1.first == j1.second && jm.first == jm.second && jc1.first == jc1.second &&
                jcm.first == jcm.second;

    for (double c2 : {40.0, 160.0, 280.0}) {
        const auto r2 = margin_sweep(Scenario::II, c2, std::nullopt);
        const auto a = count_pairs(6, 6, field(r2, &ProfitReport::J2), true, down);
        const auto b = count_pairs(6, 6, field(r2, &ProfitReport::J2), false, down);
        const auto fixed = margin_sweep(Scenario::II, c2, 0.3);
        const auto fa = count_pairs(6, 6, field(fixed, &ProfitReport::J2), true, down);
        const auto fb = count_pairs(6, 6, field(fixed, &ProfitReport::J2), false, down);
        note("scenario II c2 %.0f at theta*: J2 down in c1 %d/%d, in cM %d/%d; at fixed theta 0.3: %d/%d, %d/%d",
             c2, a.first, a.second, b.first, b.second, fa.first, fa.second, fb.first, fb.second);
        if (a.first != a.second) {
            for (std::size_t j = 0; j < 6; ++j)
                for (std::size_t i = 0; i + 1 < 6; ++i)
                    if (!(r2.at(i + 1, j).profits.J2 < r2.at(i, j).profits.J2)) {
                        note("  first rise at cM %.0f, c1 %.0f -> %.0f: theta* %.3f -> %.3f, J2 %.4f -> %.4f",
                             r2.at(i, j).axis_values[1], r2.at(i, j).axis_values[0],
                             r2.at(i + 1, j).axis_values[0], r2.at(i, j).theta_star,
                             r2.at(i + 1, j).theta_star, r2.at(i, j).profits.J2, r2.at(i + 1, j).profits.J2);
                        goto reported;
                    }
        reported:;
        }
        pass = pass && a.first == a.second && b.first == b.second;
    }
    verdict(9, "margin-studies", pass, "c1, cM in {50..300}; each point at its theta*");
}

// 10 -----------------------------------------------------------------------
void initial_share() {
    SweepSpec spec;
    spec.base = base(Scenario::II);
    spec.axes = {ScalarRange{SweepField::x0, 0.1, 0.9, 3}};
    spec.outputs = {SweepOutput::theta_star, SweepOutput::theta_bar, SweepOutput::trajectories};
    const auto r = sweep(spec);
    bool pass = true;
    for (const auto& row : r.rows) {
        const auto& t = *row.trajectory;
        const Eigen::Index early = t.grid.N / 5;
        const Eigen::Index mid = t.grid.N / 2;
        const bool decrease = row.axis_values[0] < 0.75;
        auto pattern = [&](const Eigen::VectorXd& u, bool dec) {
            return dec ? strictly_decreasing(u, 0, early) && u[0] > u[mid]
                       : strictly_increasing(u, 0, early) && u[0] < u[mid];
        };
        const bool ok1 = pattern(t.u1, decrease);
        const bool okv = pattern(t.v, decrease);
        const bool ok2 = pattern(t.u2, !decrease);
        note("x0 %.1f: theta* %.3f theta_bar %.3f; u1 %s %s, v %s %s, u2 %s %s", row.axis_values[0],
             row.theta_star, row.theta_bar, decrease ? "decreasing" : "increasing", ok1 ? "yes" : "no",
             decrease ? "decreasing" : "increasing", okv ? "yes" : "no", decrease ? "increasing" : "decreasing",
             ok2 ? "yes" : "no");
        pass = pass && ok1 && okv && ok2;
    }
    // Retailer 2's initial share 1 - x0 grows down the rows.
    for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) {
        pass = pass && r.rows[i + 1].theta_star >= r.rows[i].theta_star &&
               r.rows[i + 1].theta_bar >= r.rows[i].theta_bar;
    }
    verdict(10, "initial-share-patterns", pass,
            "monotone on [0, T/5] and u(0) vs u(T/2); rates nonincreasing in 1 - x0");
}

// 11 -----------------------------------------------------------------------
void competition() {
    std::vector<std::pair<double, double>> settings;
    for (double fixed : {0.05, 0.25})
        for (double other : {0.05, 0.10, 0.15, 0.20, 0.25}) {
            settings.emplace_back(fixed, other);
            settings.emplace_back(other, fixed);
        }
    std::sort(settings.begin(), settings.end());
    settings.erase(std::unique(settings.begin(), settings.end()), settings.end());

    int rates_ok = 0, controls_ok = 0, share_ok = 0, profits_ok = 0, matched_share_ok = 0;
    double min_du1 = 0, min_dv = 0, max_dx = 0;
    long below_u1 = 0, below_v = 0, nodes = 0;
    for (const auto& [q1, qM] : settings) {
        auto c = base(Scenario::I);
        c.q1 = Q::constant(q1);
        c.qM = Q::constant(qM);
        c.q2 = Q::constant(0.15);
        const auto r = compare_scenarios(c);
        const bool rates = r.wrc.curve.theta_star >= r.worc.curve.theta_star &&
                           r.wrc.curve.theta_bar >= r.worc.curve.theta_bar;
        const double du1 = r.star_paths.u1.minCoeff();
        const double dv = r.star_paths.v.minCoeff();
        const double dx = r.star_paths.x.maxCoeff();
        min_du1 = std::min(min_du1, du1);
        min_dv = std::min(min_dv, dv);
        max_dx = std::max(max_dx, dx);
        below_u1 += (r.star_paths.u1.array() < 0.0).count();
        below_v += (r.star_paths.v.array() < 0.0).count();
        nodes += r.star_paths.u1.size();
        rates_ok += rates;
        controls_ok += du1 >= 0.0 && dv >= 0.0;
        share_ok += dx <= 0.0;
        matched_share_ok += r.matched_paths.x.maxCoeff() <= 0.0;
        profits_ok += r.at_star.J1 <= 0.0 && r.at_star.JM <= 0.0 && r.at_star.Jchannel <= 0.0;
    }
    const int n = static_cast<int>(settings.size());
    note("%d settings: rates WRC >= WORC in %d, member and channel profits lower in %d", n, rates_ok,
         profits_ok);
    note("controls WRC >= WORC at every node in %d settings; WRC below at %.1f%% (u1) and %.1f%% (v) of "
         "nodes; min delta u1 %.4f, v %.4f",
         controls_ok, 100.0 * below_u1 / nodes, 100.0 * below_v / nodes, min_du1, min_dv);
    note("share WRC <= WORC at every node in %d settings at own theta* (max excess %.4f), in %d at the "
         "matched rate",
         share_ok, max_dx, matched_share_ok);
    verdict(11, "competition-comparison", rates_ok == n && controls_ok == n && share_ok == n && profits_ok == n,
            "each scenario at its own theta*");
}

// 12 -----------------------------------------------------------------------
void golden() {
    std::ifstream in(std::string(COOPAD_GOLDEN_DIR) + "/base_case.json");
    const auto g = nlohmann::json::parse(in);
    bool pass = true;
    auto check = [&](const char* name, double got, double want) {
        const double e = rel_err(got, want);
        const bool ok = e <= 1e-6;
        pass = pass && ok;
        note("%-10s %.12g vs %.12g, rel err %.2e%s", name, got, want, e, ok ? "" : "  <-");
    };

    const auto c1 = base();
    const auto t1 = build_trajectory(c1, 0.0);
    const auto p1 = profits(c1, t1);
    const Eigen::Index N = t1.grid.N;
    check("B1_0", t1.coeffs.beta(0, kRetailer1), g["B1_0"]);
    check("BM_0", t1.coeffs.beta(0, kManufacturer), g["BM_0"]);
    check("X_T", t1.x[N], g["X_T"]);
    check("G1", p1.J1, g["G1"]);
    check("GM", p1.JM, g["GM"]);

    const auto c2 = base(Scenario::II);
    const auto t2 = build_trajectory(c2, 0.0);
    const auto& g2 = g["scenario_II"];
    check("B2_0", t2.coeffs.beta(0, kRetailer2), g["B2_0"]);
    check("II.B1_0", t2.coeffs.beta(0, kRetailer1), g2["B1_0"]);
    check("II.X_T", t2.x[N], g2["X_T"]);

    const double step = g["theta_step"];
    const auto curve = scan_subsidy(c1, step);
    const bool star_ok = std::abs(curve.theta_star - double(g["Theta_star"])) <= step + 1e-12;
    const bool bar_ok = std::abs(curve.theta_bar - double(g["Theta_bar"])) <= step + 1e-12;
    note("Theta     %.3f vs %.3f, Theta_bar %.3f vs %.3f (within one step %.3f)", curve.theta_star,
         double(g["Theta_star"]), curve.theta_bar, double(g["Theta_bar"]), step);
    pass = pass && star_ok && bar_ok;

    const auto v = value_at(c1, t1.coeffs, c1.params.x0, 0);
    const auto c_fine = base(Scenario::I, 4000);
    const auto p_fine = profits(c_fine, build_trajectory(c_fine, 0.0));
    note("trapezoid profit at N=2000 is O(dt^2): J1 rel err %.2e; at N=4000 %.2e; V1(x0,0) rel err %.2e",
         rel_err(p1.J1, g["G1"]), rel_err(p_fine.J1, g["G1"]), rel_err(v.retailer1, g["G1"]));
    verdict(12, "golden-regression", pass, "1e-6 relative at N=2000, optima within one theta step");
}

// 13 -----------------------------------------------------------------------
void performance() {
    const auto c = base(Scenario::II);
    const auto t0 = Clock::now();
    const auto curve = scan_subsidy(c);
    const double scan = seconds_since(t0);
    note("scenario II scan: %zu rates at N=2000 in %.2f s; 49-scan grid in %.1f s", curve.size(), scan,
         grid_seconds);
    verdict(13, "performance", scan < 10.0 && grid_seconds < 300.0,
            "single scan < 10 s, 7x7 grid < 5 min");
}

}  // namespace

int main() {
    bellman();
    hj_residuals();
    terminal();
    reduction();
    decreasing_efforts();
    increasing_quality_trend();
    quality_grid();
    competitor_quality();
    margins();
    initial_share();
    competition();
    golden();
    performance();
    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
