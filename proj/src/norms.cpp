#include "orbits/norms.hpp"

#include <cmath>
#include <random>

namespace orbits {

NormSpec NormSpec::l4() {
    NormSpec n;
    n.kind = NormKind::custom;
    n.name = "l4";
    n.custom_eval = [](const Mat2& m) {
        auto p4 = [](double x) { return x * x * x * x; };
        return std::pow(p4(m.a) + p4(m.b) + p4(m.c) + p4(m.d), 0.25);
    };
    n.strictly_convex = true;
    n.c_low = 1.0 / std::sqrt(2.0);
    n.c_high = 1.0;
    return n;
}

NormSpec NormSpec::custom(std::string name, std::function<double(const Mat2&)> eval,
                          bool strictly_convex, double c_low, double c_high) {
    if (!(c_low > 0.0) || !(c_high >= c_low))
        throw std::invalid_argument("NormSpec::custom: equivalence constants must satisfy 0 < c_low <= c_high");
    NormSpec n;
    n.kind = NormKind::custom;
    n.name = std::move(name);
    n.custom_eval = std::move(eval);
    n.strictly_convex = strictly_convex;
    n.c_low = c_low;
    n.c_high = c_high;
    return n;
}

double norm_eval(const NormSpec& n, const Mat2& m) {
    switch (n.kind) {
        case NormKind::l1:
            return std::abs(m.a) + std::abs(m.b) + std::abs(m.c) + std::abs(m.d);
        case NormKind::l2:
            return m.frobenius();
        case NormKind::linf:
            return max_abs_entry(m);
        case NormKind::custom: {
            const double v = n.custom_eval(m);
            if (!(v >= 0.0) || std::isnan(v))
                throw std::invalid_argument("norm_eval: custom evaluator returned a negative or NaN value");
            return v;
        }
    }
    return 0.0;
}

double vec_norm(const NormSpec& n, double x, double y) {
    switch (n.kind) {
        case NormKind::l1: return std::abs(x) + std::abs(y);
        case NormKind::l2: return std::hypot(x, y);
        case NormKind::linf: return std::max(std::abs(x), std::abs(y));
        case NormKind::custom:
            if (n.name == "l4")
                return std::pow(x * x * x * x + y * y * y * y, 0.25);
            throw std::invalid_argument("vec_norm: no matching vector norm for custom matrix norm '" + n.name + "'");
    }
    return 0.0;
}

void validate_norm(const NormSpec& n, unsigned seed, int samples) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    auto rand_mat = [&] { return Mat2{u(rng), u(rng), u(rng), u(rng)}; };
    for (int i = 0; i < samples; ++i) {
        const Mat2 A = rand_mat(), B = rand_mat();
        const double lam = std::abs(u(rng)) + 0.1;
        const double na = norm_eval(n, A), nb = norm_eval(n, B);
        const double scale = std::max(1.0, na + nb);
        if (std::abs(norm_eval(n, Mat2{lam * A.a, lam * A.b, lam * A.c, lam * A.d}) - lam * na) > 1e-9 * scale * lam)
            throw std::invalid_argument("validate_norm: homogeneity fails for '" + n.name + "'");
        if (norm_eval(n, Mat2{A.a + B.a, A.b + B.b, A.c + B.c, A.d + B.d}) > na + nb + 1e-9 * scale)
            throw std::invalid_argument("validate_norm: triangle inequality fails for '" + n.name + "'");
        const double nf = A.frobenius();
        if (na < n.c_low * nf - 1e-9 * scale || na > n.c_high * nf + 1e-9 * scale)
            throw std::invalid_argument("validate_norm: equivalence constants violated for '" + n.name + "'");
    }
}

NormSpec parse_norm(const std::string& s) {
    if (s == "l1") return NormSpec::l1();
    if (s == "l2") return NormSpec::l2();
    if (s == "linf") return NormSpec::linf();
    if (s == "custom:l4" || s == "l4") return NormSpec::l4();
    throw std::invalid_argument("parse_norm: unknown norm '" + s + "' (expected l1|l2|linf|custom:l4)");
}

}  // namespace orbits
