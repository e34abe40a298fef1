#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbits/ball.hpp"

namespace orbits {

enum class DeltaMethod { geodesic_count, l2ball_fit };

struct DeltaEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::string method;
    double window_lo = 0.0, window_hi = 0.0;
};

// Critical exponent from counting: least-squares slope of log #{d(o,go)<=t}
// against t (geodesic_count) or half the log-log slope of N(T) (l2ball_fit).
DeltaEstimate estimate_delta(const GroupSpec& spec, DeltaMethod method, double T_max,
                             BallCache* cache = nullptr);

// Finite approximation of the Patterson density: atoms in the directions of
// orbit points, weights e^{-(delta+eps) d(o,go)}, symmetrized to the circle
// double cover and normalized to a probability.
struct BoundaryMeasure {
    struct Atom {
        double theta;
        double weight;
    };
    std::vector<Atom> atoms;  // sorted by theta in [0, 2pi), symmetric under theta -> theta+pi
    double s_parameter = 0.0;

    // Pushforward to the boundary R u {inf} (pairs of circle atoms collapse).
    std::vector<double> xi;
    std::vector<double> xi_weight;  // aligned, sorted by xi
    double weight_at_inf = 0.0;

    double total() const;
    double mass_on_circle_arc(const Arc& arc) const;   // boundary-arc mass
    double mass_in_interval(double lo, double hi) const;
    void finalize();  // sorts, normalizes to total 1, rebuilds the boundary view
};

BoundaryMeasure patterson_measure(const GroupSpec& spec, double delta, double epsilon,
                                  double t_max, BallCache* cache = nullptr);

// Quadrature grid for d(mu) = 2 r^{2delta-1} dr dnu(theta) on [r_min, r_max]:
// exact radial cell masses (r_hi^{2d}-r_lo^{2d})/delta on log-spaced cells,
// angular atoms optionally binned.
EmpiricalMeasure mu_bar(double delta, const BoundaryMeasure& nu, double r_min, double r_max,
                        int radial_cells, int angular_bins = 0);

// tau(v) = conditional mass of the unit horocyclic ball at v:
// sum over atoms xi in {(h^s v)^- : |s| <= 1} of w * e^{delta b_xi(o, p(s))},
// where p(s) is the basepoint of h^s v. The arc is the Moebius image
// V.[-1,1] so everything is a closed-form solve.
double tau(const Frame& v, const BoundaryMeasure& nu, double delta);
// mu_{H^-}((h^s v)_{|s|<=R}) = R^delta tau(g^{log R} v).
double tau_ball(const Frame& v, double R, const BoundaryMeasure& nu, double delta);

// Shadow V(x,xi,t): boundary points whose projection on the geodesic (x xi)
// lies beyond the point at distance t. Returned as the arc containing xi.
Arc shadow(Complex x, BoundaryPoint xi, double t);
// Point at signed distance t from x on the geodesic toward xi.
Complex geodesic_point(Complex x, BoundaryPoint xi, double t);

struct ShadowReport {
    double band_min = 0.0, band_max = 0.0, band_ratio = 0.0;
    int samples = 0, empty_arcs = 0;
};
// Ratio nu(V) / e^{-delta t + (1-delta) d_hat} over sampled (xi, t); d_hat is
// the minimum distance from the geodesic point to the enumerated orbit.
ShadowReport shadow_lemma_check(const GroupSpec& spec, const BoundaryMeasure& nu, double delta,
                                int samples, double t_max, std::uint64_t seed,
                                BallCache* cache = nullptr);

// Xi(u,v) = Theta(u,v)^delta tau(g^{log Theta} h^{-Theta^m} Psi(u)); 0 off D(u).
double xi_density(PlaneVector u, PlaneVector v, const NormSpec& norm,
                  const BoundaryMeasure& nu, double delta);

struct SeriesReport {
    bool converges = false;
    double partial_sum = 0.0;
    double tail_bound = 0.0;  // meaningful only when convergent
    std::vector<double> checkpoints_n;
    std::vector<double> partials;
};
// Partial sums of sum_n n^{1-3delta}; convergent iff 1-3delta < -1.
SeriesReport cusp_integrability_series(double delta, long long N);

}  // namespace orbits
