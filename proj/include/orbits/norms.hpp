#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "orbits/mat2.hpp"

namespace orbits {

enum class NormKind { l1, l2, linf, custom };

// A matrix norm on M(2,R), entrywise for the l^p kinds, together with the
// equivalence constants c_low * |M|_2 <= |M| <= c_high * |M|_2 used to turn
// operator-norm certificates into bounds for this norm.
struct NormSpec {
    NormKind kind = NormKind::l2;
    std::string name = "l2";
    std::function<double(const Mat2&)> custom_eval;
    bool strictly_convex = true;
    double c_low = 1.0;
    double c_high = 1.0;

    static NormSpec l1() {
        NormSpec n;
        n.kind = NormKind::l1;
        n.name = "l1";
        n.strictly_convex = false;
        n.c_low = 1.0;
        n.c_high = 2.0;
        return n;
    }
    static NormSpec l2() { return NormSpec{}; }
    static NormSpec linf() {
        NormSpec n;
        n.kind = NormKind::linf;
        n.name = "linf";
        n.strictly_convex = false;
        n.c_low = 0.5;
        n.c_high = 1.0;
        return n;
    }
    // Entrywise l^4: strictly convex, |M|_2 / sqrt(2) <= |M|_4 <= |M|_2.
    static NormSpec l4();
    static NormSpec custom(std::string name, std::function<double(const Mat2&)> eval,
                           bool strictly_convex, double c_low, double c_high);
};

double norm_eval(const NormSpec& n, const Mat2& m);

// Matching vector norm for the entrywise l^p kinds (used where the star
// product collapses to |v||u|). Not defined for custom norms.
double vec_norm(const NormSpec& n, double x, double y);

// Spot-checks homogeneity and the triangle inequality on random samples.
// Throws std::invalid_argument on failure.
void validate_norm(const NormSpec& n, unsigned seed = 7, int samples = 200);

NormSpec parse_norm(const std::string& s);  // "l1" | "l2" | "linf" | "custom:l4"

}  // namespace orbits
