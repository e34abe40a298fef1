#pragma once

#include <stdexcept>

#include "orbits/mat2.hpp"

namespace orbits {

// Point of the boundary circle R \cup {inf} of the upper half plane.
// Infinity is a first-class value, not a large float: parabolic fixed
// points are exercised constantly.
struct BoundaryPoint {
    double x = 0.0;
    bool inf = false;

    static BoundaryPoint infinity() { return {0.0, true}; }
    static BoundaryPoint real(double v) { return {v, false}; }
};

inline bool boundary_close(BoundaryPoint p, BoundaryPoint q, double tol) {
    if (p.inf || q.inf) return p.inf == q.inf;
    return std::abs(p.x - q.x) <= tol;
}

// Homography z -> (az+b)/(cz+d) on the closed upper half plane.
Complex mobius_act(const Mat2& g, Complex z);
BoundaryPoint mobius_act(const Mat2& g, BoundaryPoint p);

// cosh d(z,w) = 1 + |z-w|^2 / (2 Im z Im w).
double hyp_dist(Complex z, Complex w);

// Busemann cocycle b_xi(x,y) = lim_{z->xi} (d(x,z) - d(y,z)), closed form.
// For xi = inf this is log(Im y / Im x); a general xi is conjugated to inf
// by z -> -1/(z - xi).
double busemann(BoundaryPoint xi, Complex x, Complex y);

// Angle coordinate on the boundary circle: phi = 2*atan(x) in (-pi, pi],
// infinity -> pi. PSL(2,R) acts on the circle preserving orientation.
double circle_angle(BoundaryPoint p);
BoundaryPoint from_circle_angle(double phi);

// Unit tangent vector of H, identified with an element of PSL(2,R).
// Stored as the sign-normalized SL(2,R) representative: the first entry of
// (a,b,c,d) that is not negligible is made positive.
struct Frame {
    Mat2 m;

    Frame() = default;
    explicit Frame(const Mat2& g) : m(normalize(g)) {
        if (std::abs(m.det() - 1.0) > 1e-9)
            throw std::invalid_argument("Frame: determinant is not 1");
    }

    static Mat2 normalize(const Mat2& g) {
        const double scale = max_abs_entry(g);
        const double eps = 1e-12 * scale;
        for (double e : g.entries()) {
            if (std::abs(e) > eps) return e < 0.0 ? -g : g;
        }
        return g;
    }
};

inline bool frame_close(const Frame& u, const Frame& v, double tol) {
    return max_entry_diff(u.m, v.m) <= tol;
}

// Flows act by right multiplication: g^t v = v * a_t, h^s v = v * n_s.
inline Frame geodesic_flow(const Frame& v, double t) {
    return Frame(v.m * Mat2::geodesic(t));
}
inline Frame horocycle_flow(const Frame& v, double s) {
    return Frame(v.m * Mat2::horocycle(s));
}

struct FrameEndpoints {
    BoundaryPoint backward;  // v^-
    BoundaryPoint forward;   // v^+
    Complex basepoint;       // pi(v)
};

// The identity frame is the unit vector (0,1) at i, pointing at infinity:
// endpoints (0, inf, i). A general frame g carries the Moebius images.
FrameEndpoints frame_endpoints(const Frame& v);

}  // namespace orbits
