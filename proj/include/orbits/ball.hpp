#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "orbits/empirical_measure.hpp"
#include "orbits/groups.hpp"
#include "orbits/norms.hpp"
#include "orbits/plane.hpp"

namespace orbits {

struct BallStats {
    std::uint64_t nodes = 0;            // word-tree nodes visited (or (c,d) rows scanned)
    std::uint64_t pruned = 0;           // subtrees cut by the certificate
    double min_pruned_bound = std::numeric_limits<double>::infinity();
    double wall_seconds = 0.0;
};

// The ball Gamma_T = {gamma : |gamma| <= T}, as PSL representatives in a
// canonical deterministic order.
struct BallResult {
    std::vector<GroupElement> elements;
    std::vector<double> norms;  // aligned with elements, in the requested norm
    double T = 0.0;
    std::string group_config;
    std::string norm_name;
    long long psl_count = 0;
    long long sl_count = 0;  // 2x psl when the group contains -I
    BallStats stats;
};

struct EnumerateOptions {
    bool parallel = true;
    bool with_words = false;     // modular scan: compute words (ping-pong words are always present)
    std::string cache_dir;       // non-empty: CSV ball cache keyed by (group, norm, T)
};

BallResult enumerate_ball(const GroupSpec& spec, const NormSpec& norm, double T,
                          const EnumerateOptions& opts = {});

// Counting-only fast path: the multiset of PSL element norms with |.| <= T.
std::vector<double> ball_norms(const GroupSpec& spec, const NormSpec& norm, double T,
                               bool parallel = true);

struct CountCurve {
    std::vector<double> T;
    std::vector<long long> N;  // SL-level counts
};
CountCurve count_function(const GroupSpec& spec, const NormSpec& norm,
                          const std::vector<double>& T_grid, bool parallel = true);

// {gamma : d(o, gamma o) <= t} via |gamma|_2^2 = 2 cosh d(o, gamma o).
BallResult geodesic_ball(const GroupSpec& spec, double t, const EnumerateOptions& opts = {});
inline double l2_radius_for_distance(double t) { return std::sqrt(2.0 * std::cosh(t)); }

// The symmetric cloud {±gamma u / T^alpha : gamma in Gamma_T (PSL)} with
// unit weights.
EmpiricalMeasure orbit_cloud(const GroupSpec& spec, const NormSpec& norm, double T,
                             PlaneVector u, double alpha, const EnumerateOptions& opts = {});

// --- kernels kept individually callable for tests and the benchmark ---

// Exhaustive O(bound^4) integer scan (serial reference / oracle).
std::vector<std::array<std::int64_t, 4>> modular_scan_naive(double l2_bound);
// Row-structured scan: solve ad - bc = 1 per coprime bottom row (c,d).
std::vector<std::array<std::int64_t, 4>> modular_scan_rows(double l2_bound, bool parallel);

// Breadth-first word search over {S, T, T^-1} with a slack expansion bound,
// in exact integer arithmetic. The modular group admits no exponential
// growth certificate (parabolic runs grow linearly), so the expansion bound
// carries slack and the result is validated against the integer scan.
BallResult modular_word_search(const GroupSpec& spec, const NormSpec& norm, double T,
                               double slack_factor = 3.0, double slack_add = 4.0);

// Certified depth-first word search for ping-pong groups.
BallResult pingpong_word_search(const GroupSpec& spec, const NormSpec& norm, double T,
                                bool parallel);

// Disk cache (CSV, header a,b,c,d,word,norm, 17 significant digits).
std::string ball_cache_path(const std::string& dir, const GroupSpec& spec,
                            const NormSpec& norm, double T);
void save_ball_csv(const std::string& path, const BallResult& ball);
bool load_ball_csv(const std::string& path, BallResult& out);

// In-memory nested ball cache shared by T-grid experiments: requests are
// served from the largest ball enumerated so far.
class BallCache {
  public:
    const BallResult& at_least(const GroupSpec& spec, const NormSpec& norm, double T,
                               const EnumerateOptions& opts = {});

  private:
    std::map<std::string, BallResult> store_;
};

}  // namespace orbits
