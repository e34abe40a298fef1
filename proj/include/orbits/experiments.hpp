#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orbits/horocycle_sums.hpp"
#include "orbits/patterson.hpp"

namespace orbits {

struct ExperimentReport {
    std::string name;
    std::string group;
    std::string norm;
    std::map<std::string, std::string> params;
    std::map<std::string, double> metrics;
    std::map<std::string, std::vector<double>> series;
    std::string verdict;  // pass | fail | informational
    double runtime_s = 0.0;

    bool passed() const { return verdict != "fail"; }
    std::string to_json_string() const;
    void write_json(const std::string& path) const;
    void write_series_csv(const std::string& path) const;
};

// Shared state across the experiments of one run: the nested ball cache and
// memoized Patterson data per group.
struct PattersonData {
    double delta = 0.0;  // value used to build nu (known delta when available)
    DeltaEstimate est_geodesic, est_l2ball;
    BoundaryMeasure nu;
    double t_max = 0.0;
};

struct LabContext {
    BallCache cache;
    std::uint64_t seed = 12345;
    std::map<std::string, PattersonData> patterson_store;

    const PattersonData& patterson_for(const GroupSpec& spec, int min_orbit_points = 10000);
    double delta_for(const GroupSpec& spec);
};

// A vector of the cone C(Gamma): angular part from the Patterson atoms,
// radial part uniform in [1,2].
PlaneVector draw_cone_vector(LabContext& ctx, const GroupSpec& spec, std::uint64_t seed);

std::vector<double> log_grid(double lo, double hi, int n);

// --- experiment suites -------------------------------------------------

// Exact-identity suite over random inputs (section maps, cocycle laws, flow
// commutation, star and kappa closed forms, norm/distance identity).
ExperimentReport algebra_suite(std::uint64_t seed, int samples = 2000);

// Modular lattice limit: rho(T) = sum f / sum g against the closed-form
// target, plus the linear-growth series sum f / T.
ExperimentReport lattice_limit_experiment(LabContext& ctx, PlaneVector u, const BumpFunction& f,
                                          const BumpFunction& g, const std::vector<double>& T_grid);

// I(alpha,f,T,u) = T^{-(1+alpha)delta} sum f(gamma u/T^alpha) against
// int f/(v*u)^delta dmu: the ratio must stay in a bounded positive band.
ExperimentReport ratio_band_experiment(LabContext& ctx, const GroupSpec& spec, PlaneVector u,
                                       const BumpFunction& f, double alpha,
                                       const std::vector<double>& T_grid);

// Oscillation probe with g(v) = f(2v): reports max/min of the ratio over
// the top two decades (informational).
ExperimentReport no_limit_probe(LabContext& ctx, const GroupSpec& spec, PlaneVector u,
                                const std::vector<double>& T_grid);

// Log-Cesaro average L(S) of T^{-delta} sum f(gamma u) dT/T: Cauchy spread
// over the top decade and cross-(u,f) invariance of L(S)/RHS.
ExperimentReport log_cesaro_experiment(LabContext& ctx, const GroupSpec& spec,
                                       const std::vector<PlaneVector>& us,
                                       const std::vector<BumpFunction>& fs,
                                       const std::vector<double>& S_grid);

// alpha = 1 cloud against delta * Xi(u,.) dmu: support containment, radial
// and angular marginals, count stability.
ExperimentReport large_scale_experiment(LabContext& ctx, const GroupSpec& spec, PlaneVector u,
                                        const NormSpec& norm, double T);

// Random (bump, u, T) trials of the two-sided horocycle estimate.
ExperimentReport sandwich_suite(LabContext& ctx, const GroupSpec& spec, int trials,
                                std::uint64_t seed);

// Shadow-lemma band check (the constant is existential: report the band).
ExperimentReport shadow_suite(LabContext& ctx, const GroupSpec& spec, int samples, double t_max,
                              std::uint64_t seed);

// Integrability series partial sums and verdict.
ExperimentReport series_suite(double delta, long long N);

// Critical exponent estimates by both methods.
ExperimentReport delta_experiment(LabContext& ctx, const GroupSpec& spec, const std::string& method,
                                  double T_max);

// Modular Patterson chain: nu uniformity, tau at the identity frame, mu_bar
// annulus masses, and the Xi mass law.
ExperimentReport modular_chain_experiment(LabContext& ctx);

}  // namespace orbits
