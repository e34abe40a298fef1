#pragma once

#include <string>
#include <vector>

#include "orbits/groups.hpp"
#include "orbits/norms.hpp"

namespace orbits {

struct PlaneVector {
    double x = 0.0, y = 0.0;
    double norm2() const { return std::hypot(x, y); }
    PlaneVector scaled(double t) const { return {t * x, t * y}; }
    PlaneVector operator-() const { return {-x, -y}; }
};

inline PlaneVector apply(const Mat2& g, PlaneVector v) {
    return {g.a * v.x + g.b * v.y, g.c * v.x + g.d * v.y};
}

// Polar convention matching the double cover of the boundary: the direction
// of angle theta is (sin theta, cos theta), which covers the boundary point
// xi = tan theta.
inline PlaneVector dir(double theta) { return {std::sin(theta), std::cos(theta)}; }
inline double angle_of(PlaneVector v) { return std::atan2(v.x, v.y); }

// The KAN section Psi : R^2 \ {0} -> SL(2,R), with Psi(u)*u0 = u for
// u0 = (1,0):
//   Psi(u) = ((u_x, -u_y/|u|^2), (u_y, u_x/|u|^2)).
Mat2 psi(PlaneVector u);

// A horocycle, parameterized by its boundary basepoint and the signed
// distance t = b_xi(o, x) from the origin.
struct Horocycle {
    BoundaryPoint xi;
    double t = 0.0;
};

// v -> (Psi(v)(inf), 2 log |v|), a bijection R^2\{0}/± -> horocycles.
Horocycle plane_to_horocycle(PlaneVector v);
// Inverse, returning the representative with second coordinate >= 0.
PlaneVector horocycle_to_plane(const Horocycle& h);
// gamma.(xi,t) = (gamma xi, t + b_xi(gamma^{-1} o, o)).
Horocycle h_action(const Mat2& g, const Horocycle& h);

// c_u(g), defined by n_{c_u(g)} = Psi(gu)^{-1} g Psi(u). Throws if the
// product is not unipotent to 1e-8 (a numerical or logic fault).
double cocycle(PlaneVector u, const Mat2& g);

// v*u = |((-u_y v_x, u_x v_x), (-u_y v_y, u_x v_y))|, the replacement for
// |v||u| under a general matrix norm.
double star(PlaneVector v, PlaneVector u, const NormSpec& norm);

// kappa(u,v,s) = |Psi(v) ((1,s),(0,0)) Psi(u)^{-1}|, convex in s; for the
// l2 norm kappa^2 = |v|^2/|u|^2 + s^2 |v|^2 |u|^2.
double kappa(PlaneVector u, PlaneVector v, double s, const NormSpec& norm);

// The window {s : kappa(u,v,s) <= 1}: empty or a compact interval
// [minus, plus]; all four fields are 0 when empty.
struct ThetaWindow {
    double minus = 0.0, plus = 0.0, mid = 0.0, half = 0.0;
};

// Requires a strictly convex norm. l2 uses the closed form; other norms
// bracket by the l2 window scaled by the equivalence constants and bisect
// kappa = 1 on each side to 1e-10.
ThetaWindow theta_window(PlaneVector u, PlaneVector v, const NormSpec& norm);

// D(u) = {v : Theta(u,v) > 0}, an open bounded star-shaped set.
struct DomainD {
    PlaneVector u;
    NormSpec norm;
    bool contains(PlaneVector v) const;
    // Radius of the boundary in direction theta, by bisection in r.
    double boundary_radius(double theta, double tol = 1e-10) const;
};

// Symmetric compactly supported test function: triangular radial profile
// on [r0-wr, r0+wr] times a pi-periodic triangular angular profile of
// half-width wtheta (wtheta >= pi/2 means the full circle). sup f = 1.
struct BumpFunction {
    double r0 = 1.0;
    double wr = 0.25;
    double theta0 = 0.0;
    double wtheta = M_PI;  // full circle

    BumpFunction() = default;
    BumpFunction(double r0_, double wr_, double th0_, double wth_);

    bool full_circle() const { return wtheta >= 0.5 * M_PI; }
    double operator()(PlaneVector v) const;
    double radial(double r) const;
    double angular(double theta) const;

    double angular_mass() const;           // integral of the angular factor over [0,2pi)
    double plane_mass() const;             // integral of f over R^2 (Lebesgue)
    double mass_over_radius() const;       // integral of f(v)/|v| dv = wr * angular_mass
    BumpFunction scaled_arg(double lam) const;  // v -> f(lam v)

    std::string to_string() const;               // bump:r0,wr,theta0,wtheta
    static BumpFunction parse(const std::string& s);
};

// phi(t) = max(0, 1-|t|): nonnegative, supported in [-1,1], unit mass.
double mollifier(double t);
double mollifier_cdf(double t);
// Integral of the mollifier over [a, b].
double mollifier_mass(double a, double b);

// R = sup, r = inf of v*u over supp f; vratio = R/r; D = sup |Psi(v)Psi(u)^{-1}|.
struct SupportStats {
    double R = 0.0, r = 0.0, vratio = 1.0, D = 0.0;
};
SupportStats support_stats(PlaneVector u, const BumpFunction& f, const NormSpec& norm);

// f~(g) = f(g u0) phi(c_{u0}(g)).
double lift_f_tilde(const BumpFunction& f, const Mat2& g);

}  // namespace orbits
