#include "euler_oracle.hpp"

#include <cmath>

namespace oracle {

Outcome euler(const Game& g, double theta, double dt) {
    const long n = std::lround(g.T / dt);
    const double h = g.T / static_cast<double>(n);
    const double a1 = (g.rho1 * g.q1) * (g.rho1 * g.q1);
    const double aM = (g.rhoM * g.qM) * (g.rhoM * g.qM);
    const double a2 = g.competitor ? (g.rho2 * g.q2) * (g.rho2 * g.q2) : 0.0;
    const double k = 1.0 - theta;

    std::vector<double> b1(n + 1, 0.0), bM(n + 1, 0.0), b2(n + 1, 0.0);
    double al1 = 0.0, alM = 0.0, al2 = 0.0;
    for (long i = n; i > 0; --i) {
        const double B1 = b1[i], BM = bM[i], B2 = b2[i];
        double d1 = g.r * B1 + a1 * B1 * B1 / (4 * k) + aM * B1 * BM / 2 - g.c1;
        double dM = g.r * BM + aM * BM * BM / 4 - a1 * theta * B1 * B1 / (4 * k * k) +
                    a1 * B1 * BM / (2 * k) - g.cM;
        double d2 = 0.0;
        if (g.competitor) {
            d1 -= a2 * B1 * B2 / 2;
            dM -= a2 * B2 * BM / 2;
            d2 = g.r * B2 + a1 * B1 * B2 / (2 * k) + aM * B2 * BM / 2 - a2 * B2 * B2 / 4 + g.c2;
        }
        const double e1 = g.r * al1 - (a1 * B1 * B1 / (4 * k) + aM * B1 * BM / 2);
        const double eM = g.r * alM - (aM * BM * BM / 4 - a1 * theta * B1 * B1 / (4 * k * k) +
                                       a1 * B1 * BM / (2 * k));
        const double e2 = g.competitor
                              ? g.r * al2 - (a1 * B1 * B2 / (2 * k) + aM * B2 * BM / 2 + g.c2)
                              : 0.0;
        b1[i - 1] = B1 - h * d1;
        bM[i - 1] = BM - h * dM;
        b2[i - 1] = B2 - h * d2;
        al1 -= h * e1;
        alM -= h * eM;
        al2 -= h * e2;
    }

    Outcome out;
    out.beta1_0 = b1[0];
    out.betaM_0 = bM[0];
    out.beta2_0 = b2[0];
    out.alpha1_0 = al1;
    out.alphaM_0 = alM;
    out.alpha2_0 = al2;

    const double s1 = g.rho1 * g.q1, sM = g.rhoM * g.qM, s2 = g.rho2 * g.q2;
    double x = g.x0;
    double j1 = 0.0, jm = 0.0, j2 = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double t = h * static_cast<double>(i);
        const double u1 = s1 * b1[i] * std::sqrt(std::fmax(0.0, 1 - x)) / (2 * k);
        const double v = sM * bM[i] * std::sqrt(std::fmax(0.0, 1 - x)) / 2;
        const double u2 = g.competitor ? -s2 * b2[i] * std::sqrt(std::fmax(0.0, x)) / 2 : 0.0;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        const double disc = w * std::exp(-g.r * t);
        j1 += disc * (g.c1 * x - k * u1 * u1);
        jm += disc * (g.cM * x - v * v - theta * u1 * u1);
        j2 += disc * (g.c2 * (1 - x) - u2 * u2);
        if (i == n) break;
        double dx = (a1 * b1[i] / (2 * k) + aM * bM[i] / 2) * (1 - x);
        if (g.competitor) dx += a2 * b2[i] * x / 2;
        x = std::fmin(1.0, std::fmax(0.0, x + h * dx));
    }
    out.x_T = x;
    out.J1 = h * j1;
    out.JM = h * jm;
    out.J2 = h * j2;
    out.Jchannel = out.J1 + out.JM;
    return out;
}

Outcome extrapolated(const Game& g, double theta, double dt) {
    const Outcome c = euler(g, theta, dt);
    const Outcome f = euler(g, theta, dt / 2);
    auto ex = [](double fine, double coarse) { return 2 * fine - coarse; };
    Outcome o;
    o.beta1_0 = ex(f.beta1_0, c.beta1_0);
    o.betaM_0 = ex(f.betaM_0, c.betaM_0);
    o.beta2_0 = ex(f.beta2_0, c.beta2_0);
    o.alpha1_0 = ex(f.alpha1_0, c.alpha1_0);
    o.alphaM_0 = ex(f.alphaM_0, c.alphaM_0);
    o.alpha2_0 = ex(f.alpha2_0, c.alpha2_0);
    o.x_T = ex(f.x_T, c.x_T);
    o.J1 = ex(f.J1, c.J1);
    o.JM = ex(f.JM, c.JM);
    o.J2 = ex(f.J2, c.J2);
    o.Jchannel = o.J1 + o.JM;
    return o;
}

Optimum exhaustive_optimum(const Game& g, double step, double dt) {
    Optimum best;
    double best_m = -INFINITY, best_c = -INFINITY;
    for (long i = 0;; ++i) {
        const double theta = step * static_cast<double>(i);
        if (theta > 0.99 + 1e-12) break;
        const Outcome o = extrapolated(g, theta, dt);
        if (o.JM > best_m) {
            best_m = o.JM;
            best.theta_star = theta;
        }
        if (o.Jchannel > best_c) {
            best_c = o.Jchannel;
            best.theta_bar = theta;
        }
    }
    return best;
}

}  // namespace oracle
