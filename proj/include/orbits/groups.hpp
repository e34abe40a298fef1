#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbits/moebius.hpp"

namespace orbits {

// Closed arc of the boundary circle, counterclockwise from `lo` to `hi` in
// the angle coordinate phi = 2*atan(x) (infinity at pi). PSL(2,R) preserves
// the circle orientation, so the image of an arc under a Moebius map is the
// arc spanned by the endpoint images.
struct Arc {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double phi, double slack = 0.0) const;
    bool contains(BoundaryPoint p, double slack = 0.0) const { return contains(circle_angle(p), slack); }
    double length() const;
    Arc mapped(const Mat2& g) const;
    bool contains_arc(const Arc& other, double slack = 0.0) const;
    bool disjoint(const Arc& other) const;

    static Arc between(BoundaryPoint p, BoundaryPoint q) { return {circle_angle(p), circle_angle(q)}; }
    // {x : |x| <= r}, the arc through 0.
    static Arc abs_le(double r) { return {2.0 * std::atan(-r), 2.0 * std::atan(r)}; }
    // {x : |x| >= r} together with infinity.
    static Arc abs_ge(double r) { return {2.0 * std::atan(r), 2.0 * std::atan(-r)}; }
};

struct GrowthCertificate {
    double c = 1.0;      // every reduced word w has |gamma_w|_op >= c * lambda^syllables(w)
    double lambda = 1.0;
};

enum class GroupKind { modular, schottky, parabolic_free, custom };

// Letters are signed 1-based generator indices: +1, -1, +2, -2, ...
using Word = std::vector<std::int16_t>;

struct GroupSpec {
    GroupKind kind = GroupKind::custom;
    std::string config;  // round-trips through the CLI config format
    std::vector<Mat2> generators;
    bool contains_minus_I = false;
    bool minus_I_adjoined = false;  // free groups: counting convention lifts to SL with -I adjoined
    std::optional<double> known_delta;
    std::optional<GrowthCertificate> certificate;
    // Ping-pong domains, one arc per signed letter in the order
    // g1, g1^{-1}, g2, g2^{-1}, ... For parabolic generators the letter and
    // its inverse share one arc and words are pruned by syllables.
    std::vector<Arc> domains;
    bool syllable_mode = false;

    int letter_count() const { return 2 * static_cast<int>(generators.size()); }
    Mat2 letter_matrix(std::int16_t letter) const;
    const Arc& letter_domain(std::int16_t letter) const;
    bool has_ping_pong() const { return !domains.empty(); }
};

struct GroupElement {
    Mat2 m;
    Word word;
};

GroupSpec build_modular();
GroupSpec build_schottky(double t1, double t2, double angle);
GroupSpec build_parabolic_free(double mu);

// True iff each generator maps the complement of its inverse's domain into
// its own domain (syllable-wise for parabolic generators), checked at arc
// endpoints by Moebius monotonicity on the circle.
bool verify_ping_pong(const GroupSpec& spec);

// Certified constants (c, lambda), lambda > 1, such that every reduced word
// satisfies |gamma_w|_op >= c * lambda^{syllable count}. Derived from the
// contraction of each generator on the opposing ping-pong arcs, measured in
// the round metric of the boundary circle. Throws if no contraction below 1
// can be certified.
GrowthCertificate growth_certificate(const GroupSpec& spec);

// Certified per-syllable factor phi(letter, power) >= 1 with
// |gamma_w|_op >= prod over syllables of phi; sharper than c*lambda^n and
// the quantity the enumerator prunes with. power >= 1.
double syllable_factor(const GroupSpec& spec, std::int16_t letter, int power);

Mat2 word_matrix(const GroupSpec& spec, const Word& w);
std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);
bool word_is_reduced(const Word& w);

// Word for a modular-group matrix via continued-fraction reduction in exact
// integer arithmetic; the product reproduces the matrix up to sign (PSL).
Word modular_word(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

GroupSpec parse_group(const std::string& s);  // modular | schottky:t1,t2,angle | parabolic:mu

}  // namespace orbits
