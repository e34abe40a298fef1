#include "orbits/horocycle_sums.hpp"

#include <cmath>

namespace orbits {

namespace {
const PlaneVector U0{1.0, 0.0};
}

BarFContext bar_f_context(const BumpFunction& f, const Frame& u, const GroupSpec& spec,
                          const NormSpec& norm, double smax, BallCache& cache) {
    const SupportStats st = support_stats(U0, f, norm);
    const double w_bound = (1.0 + smax) * st.R + st.D;
    const double radius = 1.1 * (w_bound / norm.c_low) * u.m.op_norm();

    BarFContext ctx;
    ctx.smax = smax;
    ctx.ball_radius = radius;
    const BallResult& ball = cache.at_least(spec, NormSpec::l2(), radius);
    for (const auto& e : ball.elements) {
        const Mat2 w = e.m * u.m;
        const double fv = f(PlaneVector{w.a, w.c});
        if (fv == 0.0) continue;
        const double c = cocycle(U0, w);
        if (std::abs(c) > smax + 1.0) continue;  // mollifier support never reached
        ctx.fval.push_back(fv);
        ctx.cval.push_back(c);
    }
    return ctx;
}

double bar_f_eval(const BarFContext& ctx, double s) {
    double acc = 0.0;
    for (size_t i = 0; i < ctx.fval.size(); ++i) acc += ctx.fval[i] * mollifier(ctx.cval[i] + s);
    return acc;
}

double bar_f_integral(const BarFContext& ctx, double a, double b) {
    if (b <= a) return 0.0;
    double acc = 0.0;
    for (size_t i = 0; i < ctx.fval.size(); ++i)
        acc += ctx.fval[i] * mollifier_mass(ctx.cval[i] + a, ctx.cval[i] + b);
    return acc;
}

double bar_f(const BumpFunction& f, const Frame& u, const GroupSpec& spec, const NormSpec& norm,
             BallCache& cache) {
    return bar_f_eval(bar_f_context(f, u, spec, norm, 0.0, cache), 0.0);
}

double horocycle_birkhoff(const BumpFunction& f, const Frame& u, double t, const GroupSpec& spec,
                          const NormSpec& norm, BallCache& cache) {
    if (!(t > 0.0)) throw std::invalid_argument("horocycle_birkhoff: t must be positive");
    const BarFContext ctx = bar_f_context(f, u, spec, norm, t, cache);
    return bar_f_integral(ctx, -t, t);
}

SandwichOutcome sandwich_check(const GroupSpec& spec, const NormSpec& norm, const BumpFunction& f,
                               PlaneVector u, double T, BallCache& cache) {
    const SupportStats st = support_stats(u, f, norm);
    const Frame uf{psi(u)};

    SandwichOutcome out;
    out.limit_upper = 1.0 + (T + st.D) / st.r;
    out.limit_lower = (T - st.D) / st.R - 1.0;

    // Left side: sum over Gamma_T in SL(2,R); each PSL class contributes
    // f(gamma u) + f(-gamma u) = 2 f(gamma u) for symmetric f.
    const BallResult& ball = cache.at_least(spec, norm, T);
    double lhs = 0.0;
    for (size_t i = 0; i < ball.elements.size(); ++i) {
        if (ball.norms[i] > T) continue;
        lhs += 2.0 * f(apply(ball.elements[i].m, u));
    }
    out.lhs = lhs;

    const BarFContext ctx = bar_f_context(f, uf, spec, norm, out.limit_upper, cache);
    out.upper = 2.0 * bar_f_integral(ctx, -out.limit_upper, out.limit_upper);
    out.lower = out.limit_lower > 0.0 ? 2.0 * bar_f_integral(ctx, -out.limit_lower, out.limit_lower) : 0.0;
    return out;
}

}  // namespace orbits
