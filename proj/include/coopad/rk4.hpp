#pragma once

namespace coopad {

/// One classical fourth-order Runge-Kutta step of size h (negative h
/// integrates backward). `rhs(t, y)` returns dy/dt; State may be a scalar
/// or any Eigen vector expression-compatible type.
template <typename State, typename Scalar, typename Rhs>
State rk4_step(const Rhs& rhs, Scalar t, const State& y, Scalar h) {
    const Scalar half = h / Scalar(2);
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + half, State(y + half * k1));
    const State k3 = rhs(t + half, State(y + half * k2));
    const State k4 = rhs(t + h, State(y + h * k3));
    return State(y + (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4));
}

/// Cubic Hermite interpolant on [t0, t0 + h] at fraction s, from values and
/// slopes at both ends. Fourth-order accurate for smooth paths.
template <typename Value, typename Scalar>
Value hermite(const Value& y0, const Value& dy0, const Value& y1, const Value& dy1, Scalar h,
              Scalar s) {
    const Scalar s2 = s * s;
    const Scalar s3 = s2 * s;
    const Scalar h00 = Scalar(2) * s3 - Scalar(3) * s2 + Scalar(1);
    const Scalar h10 = s3 - Scalar(2) * s2 + s;
    const Scalar h01 = -Scalar(2) * s3 + Scalar(3) * s2;
    const Scalar h11 = s3 - s2;
    return Value(h00 * y0 + (h10 * h) * dy0 + h01 * y1 + (h11 * h) * dy1);
}

}  // namespace coopad
