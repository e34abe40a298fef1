#pragma once

#include "orbits/ball.hpp"
#include "orbits/plane.hpp"

namespace orbits {

// Everything needed to evaluate bar_f(h^s u) = sum_gamma f~(gamma u n_s)
// for |s| <= smax. Since c_{u0}(g n_s) = c_{u0}(g) + s, a contributing
// gamma is reduced to the pair (f(w u0), c_{u0}(w)) with w = gamma U, and
// the horocycle integral of the mollified sum is a closed form.
struct BarFContext {
    std::vector<double> fval;
    std::vector<double> cval;
    double smax = 0.0;
    double ball_radius = 0.0;  // l2 radius enumerated (diagnostic)
};

// Collect contributions along {h^s u : |s| <= smax}. The finite ball radius
// comes from the key inequality | |w| - |c|(w u0 * u0) | <= D(u0,f): any
// contributor satisfies |w| <= (1+smax) R + D, enumerated with a 10% margin
// and then filtered exactly.
BarFContext bar_f_context(const BumpFunction& f, const Frame& u, const GroupSpec& spec,
                          const NormSpec& norm, double smax, BallCache& cache);

double bar_f_eval(const BarFContext& ctx, double s);

// Integral of s -> bar_f(h^s u) over [a, b], exact per contribution.
double bar_f_integral(const BarFContext& ctx, double a, double b);

// Point value of bar_f at the frame u itself.
double bar_f(const BumpFunction& f, const Frame& u, const GroupSpec& spec, const NormSpec& norm,
             BallCache& cache);

// Birkhoff horocycle integral int_{-t}^{t} bar_f(h^s u) ds. The mollifier
// contributions integrate in closed form, so the result is exact well below
// the 1e-3 * t * sup|f| target.
double horocycle_birkhoff(const BumpFunction& f, const Frame& u, double t, const GroupSpec& spec,
                          const NormSpec& norm, BallCache& cache);

// The two-sided counting estimate relating sum over Gamma_T of f(gamma u)
// to horocycle integrals of bar_f (SL-level numbers, both signs counted).
struct SandwichOutcome {
    double lhs = 0.0;    // sum over Gamma_T (SL) of f(gamma u)
    double upper = 0.0;  // 2 * int over |s| <= 1+(T+D)/r
    double lower = 0.0;  // 2 * int over |s| <= (T-D)/R-1 (0 if the interval is empty)
    double limit_upper = 0.0, limit_lower = 0.0;
    bool holds(double tol) const { return lhs <= upper + tol && lhs >= lower - tol; }
};
SandwichOutcome sandwich_check(const GroupSpec& spec, const NormSpec& norm, const BumpFunction& f,
                               PlaneVector u, double T, BallCache& cache);

}  // namespace orbits
