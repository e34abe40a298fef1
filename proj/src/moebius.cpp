#include "orbits/moebius.hpp"

#include <cmath>

namespace orbits {

Complex mobius_act(const Mat2& g, Complex z) {
    const Complex num = g.a * z + g.b;
    const Complex den = g.c * z + g.d;
    return num / den;
}

BoundaryPoint mobius_act(const Mat2& g, BoundaryPoint p) {
    if (p.inf) {
        if (g.c == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint::real(g.a / g.c);
    }
    const double den = g.c * p.x + g.d;
    if (den == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::real((g.a * p.x + g.b) / den);
}

double hyp_dist(Complex z, Complex w) {
    if (z.imag() <= 0.0 || w.imag() <= 0.0)
        throw std::domain_error("hyp_dist: points must have positive imaginary part");
    const double n = std::norm(z - w);
    return std::acosh(1.0 + n / (2.0 * z.imag() * w.imag()));
}

double busemann(BoundaryPoint xi, Complex x, Complex y) {
    if (xi.inf) return std::log(y.imag() / x.imag());
    // Conjugate xi to infinity by z -> -1/(z - xi); Im(-1/(z-xi)) = Im z / |z-xi|^2.
    const double ix = x.imag() / std::norm(x - xi.x);
    const double iy = y.imag() / std::norm(y - xi.x);
    return std::log(iy / ix);
}

double circle_angle(BoundaryPoint p) {
    if (p.inf) return M_PI;
    return 2.0 * std::atan(p.x);
}

BoundaryPoint from_circle_angle(double phi) {
    // Normalize into (-pi, pi].
    phi = std::remainder(phi, 2.0 * M_PI);
    if (phi <= -M_PI) phi += 2.0 * M_PI;
    if (std::abs(phi - M_PI) < 1e-15 || std::abs(phi + M_PI) < 1e-15)
        return BoundaryPoint::infinity();
    return BoundaryPoint::real(std::tan(0.5 * phi));
}

FrameEndpoints frame_endpoints(const Frame& v) {
    FrameEndpoints e;
    e.backward = mobius_act(v.m, BoundaryPoint::real(0.0));
    e.forward = mobius_act(v.m, BoundaryPoint::infinity());
    e.basepoint = mobius_act(v.m, Complex(0.0, 1.0));
    return e;
}

}  // namespace orbits
