#include "orbits/ball.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <functional>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbits {

namespace {

double wall_now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct IMat {
    std::int64_t a, b, c, d;
    IMat mul(const IMat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    std::int64_t fro2() const { return a * a + b * b + c * c + d * d; }
    Mat2 to_mat2() const {
        return {double(a), double(b), double(c), double(d)};
    }
    // PSL representative: bottom row in the half plane (c > 0) or (c == 0, d > 0).
    IMat canonical() const {
        if (c < 0 || (c == 0 && d < 0)) return {-a, -b, -c, -d};
        return *this;
    }
    bool operator==(const IMat& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

struct IMatHash {
    size_t operator()(const IMat& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {m.a, m.b, m.c, m.d}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

std::int64_t isqrt_floor(double x) {
    if (x < 0.0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(x));
    while (double(r + 1) * double(r + 1) <= x) ++r;
    while (r >= 0 && double(r) * double(r) > x) --r;
    return r;
}

// a0*d - b0*c = 1 for coprime (c,d); returns false if gcd(c,d) != 1.
bool solve_unimodular(std::int64_t c, std::int64_t d, std::int64_t& a0, std::int64_t& b0) {
    // extended gcd on (c, d): x*c + y*d = g
    std::int64_t old_r = c, r = d, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * x; old_x = x; x = t;
        t = old_y - q * y; old_y = y; y = t;
    }
    if (old_r == 1) { a0 = old_y; b0 = -old_x; return true; }
    if (old_r == -1) { a0 = -old_y; b0 = old_x; return true; }
    return false;
}

// Emit all (a,b) on the line (a0+t*c, b0+t*d) with a^2+b^2 <= S2.
template <typename F>
void scan_line(std::int64_t a0, std::int64_t b0, std::int64_t c, std::int64_t d, double S2, F&& emit) {
    const double A = double(c) * c + double(d) * d;
    const double B = 2.0 * (double(a0) * c + double(b0) * d);
    const double C = double(a0) * a0 + double(b0) * b0 - S2;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    auto t_lo = static_cast<std::int64_t>(std::ceil((-B - sq) / (2.0 * A) - 1e-12));
    auto t_hi = static_cast<std::int64_t>(std::floor((-B + sq) / (2.0 * A) + 1e-12));
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
        const std::int64_t a = a0 + t * c, b = b0 + t * d;
        if (double(a) * a + double(b) * b <= S2) emit(a, b);
    }
}

void scan_row(std::int64_t c, double R2, std::vector<std::array<std::int64_t, 4>>& out) {
    if (c == 0) {
        // bottom row (0, 1): upper triangular T^b
        const double S2 = R2 - 2.0;
        if (S2 < 0.0) return;
        const std::int64_t bmax = isqrt_floor(S2);
        for (std::int64_t b = -bmax; b <= bmax; ++b) out.push_back({1, b, 0, 1});
        return;
    }
    const std::int64_t dmax = isqrt_floor(R2 - double(c) * c);
    for (std::int64_t d = -dmax; d <= dmax; ++d) {
        std::int64_t a0, b0;
        if (!solve_unimodular(c, d, a0, b0)) continue;
        scan_line(a0, b0, c, d, R2 - double(c) * c - double(d) * d,
                  [&](std::int64_t a, std::int64_t b) { out.push_back({a, b, c, d}); });
    }
}

}  // namespace

std::vector<std::array<std::int64_t, 4>> modular_scan_naive(double l2_bound) {
    std::vector<std::array<std::int64_t, 4>> out;
    const double R2 = l2_bound * l2_bound;
    const std::int64_t m = isqrt_floor(R2);
    for (std::int64_t c = 0; c <= m; ++c)
        for (std::int64_t d = -m; d <= m; ++d) {
            if (c == 0 && d <= 0) continue;  // PSL: bottom row in the half plane
            for (std::int64_t a = -m; a <= m; ++a)
                for (std::int64_t b = -m; b <= m; ++b) {
                    if (a * d - b * c != 1) continue;
                    if (double(a) * a + double(b) * b + double(c) * c + double(d) * d > R2) continue;
                    out.push_back({a, b, c, d});
                }
        }
    return out;
}

std::vector<std::array<std::int64_t, 4>> modular_scan_rows(double l2_bound, bool parallel) {
    const double R2 = l2_bound * l2_bound;
    const std::int64_t cmax = std::max<std::int64_t>(isqrt_floor(R2), 0);
    std::vector<std::vector<std::array<std::int64_t, 4>>> buckets(static_cast<size_t>(cmax) + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (std::int64_t c = 0; c <= cmax; ++c) scan_row(c, R2, buckets[static_cast<size_t>(c)]);
    std::vector<std::array<std::int64_t, 4>> out;
    size_t n = 0;
    for (const auto& b : buckets) n += b.size();
    out.reserve(n);
    for (const auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
    return out;
}

namespace {

BallResult modular_ball(const GroupSpec& spec, const NormSpec& norm, double T,
                        const EnumerateOptions& opts) {
    BallResult res;
    res.T = T;
    res.group_config = spec.config;
    res.norm_name = norm.name;
    const double t0 = wall_now();
    auto rows = modular_scan_rows(T / norm.c_low, opts.parallel);
    res.stats.nodes = rows.size();
    for (const auto& r : rows) {
        const Mat2 m{double(r[0]), double(r[1]), double(r[2]), double(r[3])};
        const double nv = norm_eval(norm, m);
        if (nv > T) continue;
        GroupElement e;
        e.m = m;
        if (opts.with_words) e.word = modular_word(r[0], r[1], r[2], r[3]);
        res.elements.push_back(std::move(e));
        res.norms.push_back(nv);
    }
    res.psl_count = static_cast<long long>(res.elements.size());
    res.sl_count = spec.contains_minus_I ? 2 * res.psl_count : res.psl_count;
    res.stats.wall_seconds = wall_now() - t0;
    return res;
}

// Certified per-syllable lower-bound factors, cached per (letter, power).
class PhiTable {
  public:
    explicit PhiTable(const GroupSpec& spec) : spec_(spec), by_letter_(spec.letter_count()) {}

    double get(std::int16_t letter, int power) {
        auto& v = by_letter_[index(letter)];
        const size_t p = spec_.syllable_mode ? static_cast<size_t>(power) : 1;
        while (v.size() <= p) {
            const int pw = static_cast<int>(v.size());
            v.push_back(pw == 0 ? 1.0 : syllable_factor(spec_, letter, pw));
        }
        return v[p];
    }

  private:
    size_t index(std::int16_t l) const {
        return 2 * (static_cast<size_t>(std::abs(l)) - 1) + (l < 0 ? 1 : 0);
    }
    const GroupSpec& spec_;
    std::vector<std::vector<double>> by_letter_;
};

struct DfsNode {
    Mat2 m;
    Word word;
    double certified;  // product of syllable factors: lower bound on |m|_op
    std::int16_t last;
    int power;
};

struct DfsSink {
    std::vector<GroupElement> elements;
    std::vector<double> norms;
    std::uint64_t nodes = 0, pruned = 0;
    double min_pruned = std::numeric_limits<double>::infinity();
};

void word_dfs(const GroupSpec& spec, const NormSpec& norm, double T, double T_op,
              PhiTable& phi, DfsNode node, DfsSink& sink) {
    ++sink.nodes;
    const double nv = norm_eval(norm, node.m);
    if (nv <= T) {
        sink.elements.push_back({node.m, node.word});
        sink.norms.push_back(nv);
    }
    for (std::int16_t g = 1; g <= static_cast<std::int16_t>(spec.generators.size()); ++g) {
        for (std::int16_t letter : {g, static_cast<std::int16_t>(-g)}) {
            if (node.last == static_cast<std::int16_t>(-letter)) continue;
            double cert;
            int power;
            if (spec.syllable_mode && node.last == letter) {
                power = node.power + 1;
                cert = node.certified / phi.get(letter, node.power) * phi.get(letter, power);
            } else {
                power = 1;
                cert = node.certified * phi.get(letter, 1);
            }
            if (cert > T_op) {
                ++sink.pruned;
                sink.min_pruned = std::min(sink.min_pruned, cert);
                continue;
            }
            DfsNode child;
            child.m = node.m * spec.letter_matrix(letter);
            child.word = node.word;
            child.word.push_back(letter);
            child.certified = cert;
            child.last = letter;
            child.power = power;
            word_dfs(spec, norm, T, T_op, phi, std::move(child), sink);
        }
    }
}

int letter_rank(std::int16_t l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

bool word_less(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return letter_rank(x[i]) < letter_rank(y[i]);
    return false;
}

void sort_by_word(BallResult& res) {
    std::vector<size_t> idx(res.elements.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
        return word_less(res.elements[i].word, res.elements[j].word);
    });
    std::vector<GroupElement> es;
    std::vector<double> ns;
    es.reserve(idx.size());
    ns.reserve(idx.size());
    for (size_t i : idx) {
        es.push_back(std::move(res.elements[i]));
        ns.push_back(res.norms[i]);
    }
    res.elements = std::move(es);
    res.norms = std::move(ns);
}

}  // namespace

BallResult pingpong_word_search(const GroupSpec& spec, const NormSpec& norm, double T,
                                bool parallel) {
    if (!spec.certificate)
        throw std::invalid_argument("pingpong_word_search: group has no growth certificate");
    BallResult res;
    res.T = T;
    res.group_config = spec.config;
    res.norm_name = norm.name;
    const double t0 = wall_now();
    const double T_op = T / norm.c_low;
    PhiTable phi(spec);

    DfsNode root{Mat2::identity(), {}, 1.0, 0, 0};

    // Partition the word tree: expand a frontier breadth-first, then run
    // independent DFS per frontier node; the final canonical sort makes the
    // merge order immaterial.
    std::deque<DfsNode> frontier{root};
    DfsSink trunk;
    const size_t want = parallel ? 256 : 1;
    while (frontier.size() < want) {
        DfsNode n = std::move(frontier.front());
        frontier.pop_front();
        ++trunk.nodes;
        const double nv = norm_eval(norm, n.m);
        if (nv <= T) {
            trunk.elements.push_back({n.m, n.word});
            trunk.norms.push_back(nv);
        }
        bool expanded = false;
        for (std::int16_t g = 1; g <= static_cast<std::int16_t>(spec.generators.size()); ++g) {
            for (std::int16_t letter : {g, static_cast<std::int16_t>(-g)}) {
                if (n.last == static_cast<std::int16_t>(-letter)) continue;
                double cert;
                int power;
                if (spec.syllable_mode && n.last == letter) {
                    power = n.power + 1;
                    cert = n.certified / phi.get(letter, n.power) * phi.get(letter, power);
                } else {
                    power = 1;
                    cert = n.certified * phi.get(letter, 1);
                }
                if (cert > T_op) {
                    ++trunk.pruned;
                    trunk.min_pruned = std::min(trunk.min_pruned, cert);
                    continue;
                }
                DfsNode child;
                child.m = n.m * spec.letter_matrix(letter);
                child.word = n.word;
                child.word.push_back(letter);
                child.certified = cert;
                child.last = letter;
                child.power = power;
                frontier.push_back(std::move(child));
                expanded = true;
            }
        }
        (void)expanded;
        if (frontier.empty()) break;
    }

    std::vector<DfsNode> jobs(frontier.begin(), frontier.end());
    std::vector<DfsSink> sinks(jobs.size());
    // Warm the factor cache before the parallel region (PhiTable is not
    // thread safe to grow).
    for (std::int16_t g = 1; g <= static_cast<std::int16_t>(spec.generators.size()); ++g)
        for (std::int16_t letter : {g, static_cast<std::int16_t>(-g)})
            phi.get(letter, 1);
    if (spec.syllable_mode) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (size_t i = 0; i < jobs.size(); ++i) {
            PhiTable local(spec);
            word_dfs(spec, norm, T, T_op, local, jobs[i], sinks[i]);
        }
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (size_t i = 0; i < jobs.size(); ++i)
            word_dfs(spec, norm, T, T_op, phi, jobs[i], sinks[i]);
    }

    res.elements = std::move(trunk.elements);
    res.norms = std::move(trunk.norms);
    res.stats.nodes = trunk.nodes;
    res.stats.pruned = trunk.pruned;
    res.stats.min_pruned_bound = trunk.min_pruned;
    for (auto& s : sinks) {
        res.elements.insert(res.elements.end(), std::make_move_iterator(s.elements.begin()),
                            std::make_move_iterator(s.elements.end()));
        res.norms.insert(res.norms.end(), s.norms.begin(), s.norms.end());
        res.stats.nodes += s.nodes;
        res.stats.pruned += s.pruned;
        res.stats.min_pruned_bound = std::min(res.stats.min_pruned_bound, s.min_pruned);
    }
    sort_by_word(res);

    // Soundness audit: a cut subtree must have had its certified bound
    // beyond the conversion of T into the operator norm.
    if (res.stats.pruned > 0 && !(res.stats.min_pruned_bound > T_op))
        throw std::logic_error("pingpong_word_search: pruned a subtree below the certified bound");

    res.psl_count = static_cast<long long>(res.elements.size());
    res.sl_count = spec.contains_minus_I ? 2 * res.psl_count : res.psl_count;
    res.stats.wall_seconds = wall_now() - t0;
    return res;
}

BallResult modular_word_search(const GroupSpec& spec, const NormSpec& norm, double T,
                               double slack_factor, double slack_add) {
    if (spec.kind != GroupKind::modular)
        throw std::invalid_argument("modular_word_search: modular group only");
    BallResult res;
    res.T = T;
    res.group_config = spec.config;
    res.norm_name = norm.name;
    const double t0 = wall_now();
    const double expand2 = std::pow((slack_factor * T + slack_add) / norm.c_low, 2.0);

    const IMat S{0, -1, 1, 0}, Tm{1, 1, 0, 1}, Ti{1, -1, 0, 1};
    struct Node {
        IMat m;
        Word word;
    };
    std::unordered_set<IMat, IMatHash> seen;
    std::deque<Node> queue;
    queue.push_back({IMat{1, 0, 0, 1}, {}});
    seen.insert(IMat{1, 0, 0, 1});
    while (!queue.empty()) {
        Node n = std::move(queue.front());
        queue.pop_front();
        ++res.stats.nodes;
        const double nv = norm_eval(norm, n.m.to_mat2());
        if (nv <= T) {
            res.elements.push_back({n.m.to_mat2(), n.word});
            res.norms.push_back(nv);
        }
        const std::int16_t last = n.word.empty() ? 0 : n.word.back();
        const std::array<std::pair<IMat, std::int16_t>, 3> steps{
            std::make_pair(S, std::int16_t(1)), std::make_pair(Tm, std::int16_t(2)),
            std::make_pair(Ti, std::int16_t(-2))};
        for (const auto& [g, letter] : steps) {
            if (last == static_cast<std::int16_t>(-letter)) continue;
            IMat child = n.m.mul(g).canonical();
            if (double(child.fro2()) > expand2) continue;
            if (!seen.insert(child).second) continue;
            Word w = n.word;
            w.push_back(letter);
            queue.push_back({child, std::move(w)});
        }
    }
    // Canonical order: bottom row then top row.
    std::vector<size_t> idx(res.elements.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto key = [&](size_t i) {
        const Mat2& m = res.elements[i].m;
        return std::array<double, 4>{m.c, m.d, m.a, m.b};
    };
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return key(i) < key(j); });
    BallResult sorted = res;
    sorted.elements.clear();
    sorted.norms.clear();
    for (size_t i : idx) {
        sorted.elements.push_back(res.elements[i]);
        sorted.norms.push_back(res.norms[i]);
    }
    sorted.psl_count = static_cast<long long>(sorted.elements.size());
    sorted.sl_count = spec.contains_minus_I ? 2 * sorted.psl_count : sorted.psl_count;
    sorted.stats.wall_seconds = wall_now() - t0;
    return sorted;
}

BallResult enumerate_ball(const GroupSpec& spec, const NormSpec& norm, double T,
                          const EnumerateOptions& opts) {
    if (!(T > 0.0)) throw std::invalid_argument("enumerate_ball: T must be positive");
    if (!opts.cache_dir.empty()) {
        const std::string path = ball_cache_path(opts.cache_dir, spec, norm, T);
        BallResult cached;
        if (load_ball_csv(path, cached)) {
            cached.sl_count = spec.contains_minus_I ? 2 * cached.psl_count : cached.psl_count;
            return cached;
        }
        BallResult fresh = enumerate_ball(spec, norm, T, EnumerateOptions{opts.parallel, true, ""});
        save_ball_csv(path, fresh);
        return fresh;
    }
    if (spec.kind == GroupKind::modular) return modular_ball(spec, norm, T, opts);
    if (spec.has_ping_pong() && spec.certificate)
        return pingpong_word_search(spec, norm, T, opts.parallel);
    throw std::invalid_argument("enumerate_ball: group '" + spec.config +
                                "' has neither exact integer arithmetic nor a growth certificate");
}

std::vector<double> ball_norms(const GroupSpec& spec, const NormSpec& norm, double T,
                               bool parallel) {
    if (spec.kind == GroupKind::modular) {
        auto rows = modular_scan_rows(T / norm.c_low, parallel);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) {
            const double nv = norm_eval(norm, Mat2{double(r[0]), double(r[1]), double(r[2]), double(r[3])});
            if (nv <= T) out.push_back(nv);
        }
        return out;
    }
    BallResult b = enumerate_ball(spec, norm, T, EnumerateOptions{parallel, false, ""});
    return b.norms;
}

CountCurve count_function(const GroupSpec& spec, const NormSpec& norm,
                          const std::vector<double>& T_grid, bool parallel) {
    for (size_t i = 1; i < T_grid.size(); ++i)
        if (T_grid[i] < T_grid[i - 1])
            throw std::invalid_argument("count_function: grid must be ascending");
    CountCurve curve;
    if (T_grid.empty()) return curve;
    std::vector<double> norms = ball_norms(spec, norm, T_grid.back(), parallel);
    std::sort(norms.begin(), norms.end());
    const long long mult = spec.contains_minus_I ? 2 : 1;
    for (double T : T_grid) {
        const auto it = std::upper_bound(norms.begin(), norms.end(), T);
        curve.T.push_back(T);
        curve.N.push_back(mult * static_cast<long long>(it - norms.begin()));
    }
    return curve;
}

BallResult geodesic_ball(const GroupSpec& spec, double t, const EnumerateOptions& opts) {
    if (t < 0.0) throw std::invalid_argument("geodesic_ball: t must be nonnegative");
    return enumerate_ball(spec, NormSpec::l2(), l2_radius_for_distance(t), opts);
}

EmpiricalMeasure orbit_cloud(const GroupSpec& spec, const NormSpec& norm, double T,
                             PlaneVector u, double alpha, const EnumerateOptions& opts) {
    if (u.x == 0.0 && u.y == 0.0) throw std::invalid_argument("orbit_cloud: u must be nonzero");
    const BallResult ball = enumerate_ball(spec, norm, T, opts);
    const double scale = std::pow(T, alpha);
    EmpiricalMeasure cloud;
    cloud.points.reserve(2 * ball.elements.size());
    for (const auto& e : ball.elements) {
        const PlaneVector v = apply(e.m, u).scaled(1.0 / scale);
        cloud.add(v.norm2(), angle_of(v), 1.0);
        cloud.add(v.norm2(), angle_of(-v), 1.0);
    }
    return cloud;
}

std::string ball_cache_path(const std::string& dir, const GroupSpec& spec,
                            const NormSpec& norm, double T) {
    std::string key = spec.config + "_" + norm.name;
    for (char& c : key)
        if (c == ':' || c == ',' || c == '.') c = '-';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "_T%.17g", T);
    std::string tpart = buf;
    for (char& c : tpart)
        if (c == '.' || c == '+') c = '-';
    return dir + "/" + key + tpart + ".csv";
}

void save_ball_csv(const std::string& path, const BallResult& ball) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_ball_csv: cannot write " + path);
    os << "a,b,c,d,word,norm\n";
    char buf[256];
    for (size_t i = 0; i < ball.elements.size(); ++i) {
        const Mat2& m = ball.elements[i].m;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,", m.a, m.b, m.c, m.d);
        os << buf << word_to_string(ball.elements[i].word);
        std::snprintf(buf, sizeof(buf), ",%.17g\n", ball.norms[i]);
        os << buf;
    }
}

bool load_ball_csv(const std::string& path, BallResult& out) {
    std::ifstream is(path);
    if (!is) return false;
    std::string line;
    if (!std::getline(is, line) || line != "a,b,c,d,word,norm") return false;
    out = BallResult{};
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<std::string, 6> cols;
        size_t start = 0;
        for (int k = 0; k < 6; ++k) {
            const size_t pos = k == 5 ? line.size() : line.find(',', start);
            if (pos == std::string::npos) return false;
            cols[k] = line.substr(start, pos - start);
            start = pos + 1;
        }
        GroupElement e;
        e.m = Mat2{std::stod(cols[0]), std::stod(cols[1]), std::stod(cols[2]), std::stod(cols[3])};
        e.word = word_from_string(cols[4]);
        out.elements.push_back(std::move(e));
        out.norms.push_back(std::stod(cols[5]));
    }
    out.psl_count = static_cast<long long>(out.elements.size());
    return true;
}

const BallResult& BallCache::at_least(const GroupSpec& spec, const NormSpec& norm, double T,
                                      const EnumerateOptions& opts) {
    const std::string key = spec.config + "|" + norm.name;
    auto it = store_.find(key);
    if (it != store_.end() && it->second.T >= T) return it->second;
    const double target = it == store_.end() ? T : std::max(T, 1.3 * it->second.T);
    BallResult ball = enumerate_ball(spec, norm, target, opts);
    return store_[key] = std::move(ball);
}

}  // namespace orbits
