#include "orbits/patterson.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace orbits {

namespace {

struct Ols {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    void add(double x, double y) {
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y; ++n;
    }
    double slope() const { return (n * sxy - sx * sy) / (n * sxx - sx * sx); }
    double slope_stderr() const {
        const double b = slope();
        const double a = (sy - b * sx) / n;
        double sse = syy - 2.0 * b * sxy - 2.0 * a * sy + b * b * sxx + 2.0 * a * b * sx + n * a * a;
        sse = std::max(0.0, sse);
        const double sxx_c = sxx - sx * sx / n;
        if (n <= 2 || sxx_c <= 0.0) return 0.0;
        return std::sqrt(sse / (n - 2) / sxx_c);
    }
};

}  // namespace

DeltaEstimate estimate_delta(const GroupSpec& spec, DeltaMethod method, double T_max,
                             BallCache* cache) {
    BallCache local;
    BallCache& bc = cache ? *cache : local;
    const NormSpec l2 = NormSpec::l2();
    std::vector<double> norms = bc.at_least(spec, l2, T_max).norms;
    std::vector<double> kept;
    kept.reserve(norms.size());
    for (double v : norms)
        if (v <= T_max) kept.push_back(v);
    std::sort(kept.begin(), kept.end());
    auto count_le = [&](double T) {
        return static_cast<double>(std::upper_bound(kept.begin(), kept.end(), T) - kept.begin());
    };

    DeltaEstimate est;
    Ols ols;
    const int grid_n = 40;
    if (method == DeltaMethod::l2ball_fit) {
        est.method = "l2ball_fit";
        const double T_lo = T_max / 10.0;
        est.window_lo = T_lo;
        est.window_hi = T_max;
        int used = 0;
        for (int i = 0; i < grid_n; ++i) {
            const double T = T_lo * std::pow(T_max / T_lo, double(i) / (grid_n - 1));
            const double N = count_le(T);
            if (N <= 0.0) continue;
            ols.add(std::log(T), std::log(N));
            ++used;
        }
        if (used < 20) throw std::invalid_argument("estimate_delta: too few grid values with points");
        est.value = 0.5 * ols.slope();
        est.stderr_ = 0.5 * ols.slope_stderr();
        return est;
    }
    est.method = "geodesic_count";
    // |g|_2^2 = 2 cosh d(o, g o): the same norms, read on the distance scale.
    const double t_max = std::acosh(std::max(1.0, T_max * T_max / 2.0));
    const double t_lo = 0.5 * t_max;
    est.window_lo = t_lo;
    est.window_hi = t_max;
    int used = 0;
    for (int i = 0; i < grid_n; ++i) {
        const double t = t_lo + (t_max - t_lo) * i / (grid_n - 1);
        const double N = count_le(l2_radius_for_distance(t));
        if (N <= 0.0) continue;
        ols.add(t, std::log(N));
        ++used;
    }
    if (used < 20) throw std::invalid_argument("estimate_delta: too few grid values with points");
    est.value = ols.slope();
    est.stderr_ = ols.slope_stderr();
    return est;
}

double BoundaryMeasure::total() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    return s;
}

void BoundaryMeasure::finalize() {
    double s = total();
    if (s <= 0.0) throw std::runtime_error("BoundaryMeasure: empty measure");
    for (auto& a : atoms) a.weight /= s;
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.theta < y.theta; });
    xi.clear();
    xi_weight.clear();
    weight_at_inf = 0.0;
    std::vector<std::pair<double, double>> bd;
    for (const auto& a : atoms) {
        // theta and theta+pi cover the same boundary point tan(theta)
        const double th = std::remainder(a.theta, M_PI);
        if (std::abs(std::abs(th) - 0.5 * M_PI) < 1e-15) {
            weight_at_inf += a.weight;
            continue;
        }
        bd.push_back({std::tan(th), a.weight});
    }
    std::sort(bd.begin(), bd.end());
    xi.reserve(bd.size());
    xi_weight.reserve(bd.size());
    for (auto& [x, w] : bd) {
        if (!xi.empty() && x == xi.back()) {
            xi_weight.back() += w;
        } else {
            xi.push_back(x);
            xi_weight.push_back(w);
        }
    }
}

double BoundaryMeasure::mass_in_interval(double lo, double hi) const {
    if (hi < lo) return 0.0;
    const auto i0 = std::lower_bound(xi.begin(), xi.end(), lo) - xi.begin();
    const auto i1 = std::upper_bound(xi.begin(), xi.end(), hi) - xi.begin();
    double s = 0.0;
    for (auto i = i0; i < i1; ++i) s += xi_weight[i];
    return s;
}

double BoundaryMeasure::mass_on_circle_arc(const Arc& arc) const {
    double s = 0.0;
    for (size_t i = 0; i < xi.size(); ++i)
        if (arc.contains(BoundaryPoint::real(xi[i]))) s += xi_weight[i];
    if (arc.contains(BoundaryPoint::infinity())) s += weight_at_inf;
    return s;
}

BoundaryMeasure patterson_measure(const GroupSpec& spec, double delta, double epsilon,
                                  double t_max, BallCache* cache) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("patterson_measure: epsilon must be positive (divergent normalization)");
    BallCache local;
    BallCache& bc = cache ? *cache : local;
    const BallResult& ball = bc.at_least(spec, NormSpec::l2(), l2_radius_for_distance(t_max));
    const Complex o(0.0, 1.0);

    BoundaryMeasure nu;
    nu.s_parameter = delta + epsilon;
    nu.atoms.reserve(2 * ball.elements.size());
    for (size_t k = 0; k < ball.elements.size(); ++k) {
        const Complex z = mobius_act(ball.elements[k].m, o);
        const double x = z.real(), y = z.imag();
        const double dist = hyp_dist(o, z);
        if (dist <= 1e-12 || dist > t_max) continue;  // identity / elliptic fixing i
        double theta;
        if (std::abs(x) < 1e-14) {
            // Vertical ray: endpoint inf when the point sits above i, else 0.
            theta = y > 1.0 ? 0.5 * M_PI : 0.0;
        } else {
            const double cc = (x * x + y * y - 1.0) / (2.0 * x);
            const double rho = std::sqrt(cc * cc + 1.0);
            const double xi_pt = x > 0.0 ? cc + rho : cc - rho;
            theta = std::atan(xi_pt);
        }
        const double w = std::exp(-(delta + epsilon) * dist);
        double th1 = theta < 0.0 ? theta + 2.0 * M_PI : theta;
        double th2 = th1 + M_PI;
        if (th2 >= 2.0 * M_PI) th2 -= 2.0 * M_PI;
        nu.atoms.push_back({th1, 0.5 * w});
        nu.atoms.push_back({th2, 0.5 * w});
    }
    nu.finalize();
    return nu;
}

EmpiricalMeasure mu_bar(double delta, const BoundaryMeasure& nu, double r_min, double r_max,
                        int radial_cells, int angular_bins) {
    if (!(0.0 < r_min && r_min < r_max))
        throw std::invalid_argument("mu_bar: need 0 < r_min < r_max");
    std::vector<std::pair<double, double>> ang;  // (theta, weight)
    if (angular_bins <= 0) {
        for (const auto& a : nu.atoms) ang.push_back({a.theta, a.weight});
    } else {
        std::vector<double> w(angular_bins, 0.0);
        for (const auto& a : nu.atoms) {
            int b = static_cast<int>(std::floor(a.theta / (2.0 * M_PI) * angular_bins));
            b = std::clamp(b, 0, angular_bins - 1);
            w[b] += a.weight;
        }
        for (int b = 0; b < angular_bins; ++b)
            if (w[b] > 0.0) ang.push_back({(b + 0.5) * 2.0 * M_PI / angular_bins, w[b]});
    }
    EmpiricalMeasure m;
    m.points.reserve(static_cast<size_t>(radial_cells) * ang.size());
    const double ratio = r_max / r_min;
    for (int i = 0; i < radial_cells; ++i) {
        const double r_lo = r_min * std::pow(ratio, double(i) / radial_cells);
        const double r_hi = r_min * std::pow(ratio, double(i + 1) / radial_cells);
        const double wr = (std::pow(r_hi, 2.0 * delta) - std::pow(r_lo, 2.0 * delta)) / delta;
        const double node = std::sqrt(r_lo * r_hi);
        for (const auto& [th, w] : ang) m.add(node, th, wr * w);
    }
    return m;
}

double tau(const Frame& v, const BoundaryMeasure& nu, double delta) {
    const Mat2& V = v.m;
    const Mat2 Vi = V.inverse();
    const Complex o(0.0, 1.0);

    auto contrib = [&](double xi_val, double w, bool at_inf) -> double {
        const BoundaryPoint xi_pt = at_inf ? BoundaryPoint::infinity() : BoundaryPoint::real(xi_val);
        const BoundaryPoint s_pt = mobius_act(Vi, xi_pt);
        if (s_pt.inf || std::abs(s_pt.x) > 1.0) return 0.0;
        const Complex basepoint = mobius_act(V, Complex(s_pt.x, 1.0));
        return w * std::exp(delta * busemann(xi_pt, o, basepoint));
    };

    double s = 0.0;
    // Image of [-1,1] under V: a finite interval unless the pole of V
    // (the s with V.s = inf) sits inside. The |s|<=1 membership check in
    // contrib double-guards the interval boundary, so the padding below
    // cannot overcount.
    const BoundaryPoint p = mobius_act(V, BoundaryPoint::real(-1.0));
    const BoundaryPoint q = mobius_act(V, BoundaryPoint::real(1.0));
    bool finite_interval = !p.inf && !q.inf;
    if (finite_interval && std::abs(V.c) > 0.0) {
        const double pole_s = -V.d / V.c;
        finite_interval = !(pole_s > -1.0 && pole_s < 1.0);
    }
    if (finite_interval) {
        const double lo = std::min(p.x, q.x), hi = std::max(p.x, q.x);
        const double pad = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
        const auto i0 = std::lower_bound(nu.xi.begin(), nu.xi.end(), lo - pad) - nu.xi.begin();
        const auto i1 = std::upper_bound(nu.xi.begin(), nu.xi.end(), hi + pad) - nu.xi.begin();
        for (auto i = i0; i < i1; ++i) s += contrib(nu.xi[i], nu.xi_weight[i], false);
    } else {
        // The arc runs through infinity: rare enough that a full scan is fine.
        for (size_t i = 0; i < nu.xi.size(); ++i) s += contrib(nu.xi[i], nu.xi_weight[i], false);
        if (nu.weight_at_inf > 0.0) s += contrib(0.0, nu.weight_at_inf, true);
    }
    return s;
}

double tau_ball(const Frame& v, double R, const BoundaryMeasure& nu, double delta) {
    if (!(R > 0.0)) throw std::invalid_argument("tau_ball: R must be positive");
    return std::pow(R, delta) * tau(geodesic_flow(v, std::log(R)), nu, delta);
}

namespace {

// Isometry sending x to i and xi to infinity.
Mat2 to_standard_position(Complex x, BoundaryPoint xi) {
    Mat2 g = Mat2::identity();
    Complex z = x;
    if (!xi.inf) {
        const Mat2 J{0.0, -1.0, 1.0, -xi.x};  // z -> -1/(z - xi)
        z = mobius_act(J, z);
        g = J;
    }
    const double sy = std::sqrt(z.imag());
    const Mat2 F{1.0 / sy, -z.real() / sy, 0.0, sy};  // z -> (z - Re)/Im
    return F * g;
}

}  // namespace

Complex geodesic_point(Complex x, BoundaryPoint xi, double t) {
    const Mat2 g = to_standard_position(x, xi);
    return mobius_act(g.inverse(), Complex(0.0, std::exp(t)));
}

Arc shadow(Complex x, BoundaryPoint xi, double t) {
    const Mat2 g = to_standard_position(x, xi);
    const Mat2 gi = g.inverse();
    // In standard position the shadow is {|eta| >= e^t} u {inf}: the arc
    // between -e^t and e^t through infinity.
    const double et = std::exp(t);
    const BoundaryPoint e1 = mobius_act(gi, BoundaryPoint::real(et));
    const BoundaryPoint e2 = mobius_act(gi, BoundaryPoint::real(-et));
    Arc arc{circle_angle(e1), circle_angle(e2)};
    if (!arc.contains(circle_angle(xi))) arc = Arc{arc.hi, arc.lo};
    return arc;
}

ShadowReport shadow_lemma_check(const GroupSpec& spec, const BoundaryMeasure& nu, double delta,
                                int samples, double t_max, std::uint64_t seed, BallCache* cache) {
    BallCache local;
    BallCache& bc = cache ? *cache : local;
    const BallResult& ball = bc.at_least(spec, NormSpec::l2(), l2_radius_for_distance(t_max + 4.0));
    const Complex o(0.0, 1.0);
    std::vector<Complex> orbit;
    orbit.reserve(ball.elements.size());
    for (const auto& e : ball.elements) orbit.push_back(mobius_act(e.m, o));

    std::mt19937_64 rng(seed);
    std::vector<double> cum;
    cum.reserve(nu.xi.size());
    double acc = 0.0;
    for (double w : nu.xi_weight) cum.push_back(acc += w);
    std::uniform_real_distribution<double> unif(0.0, acc);
    std::uniform_real_distribution<double> tdist(0.5, t_max);

    ShadowReport rep;
    rep.band_min = std::numeric_limits<double>::infinity();
    rep.band_max = 0.0;
    for (int k = 0; k < samples; ++k) {
        const size_t j = std::lower_bound(cum.begin(), cum.end(), unif(rng)) - cum.begin();
        const BoundaryPoint xi = BoundaryPoint::real(nu.xi[std::min(j, nu.xi.size() - 1)]);
        const double t = tdist(rng);
        const Arc V = shadow(o, xi, t);
        const double mass = nu.mass_on_circle_arc(V);
        if (mass <= 0.0) {
            ++rep.empty_arcs;
            continue;
        }
        const Complex pt = geodesic_point(o, xi, t);
        double dmin = std::numeric_limits<double>::infinity();
        for (const Complex& z : orbit) dmin = std::min(dmin, hyp_dist(pt, z));
        const double ratio = mass / std::exp(-delta * t + (1.0 - delta) * dmin);
        rep.band_min = std::min(rep.band_min, ratio);
        rep.band_max = std::max(rep.band_max, ratio);
        ++rep.samples;
    }
    rep.band_ratio = rep.samples > 0 ? rep.band_max / rep.band_min : 0.0;
    return rep;
}

double xi_density(PlaneVector u, PlaneVector v, const NormSpec& norm,
                  const BoundaryMeasure& nu, double delta) {
    const ThetaWindow w = theta_window(u, v, norm);
    if (!(w.half > 0.0)) return 0.0;
    const Mat2 frame_m = psi(u) * Mat2::horocycle(-w.mid) * Mat2::geodesic(std::log(w.half));
    return std::pow(w.half, delta) * tau(Frame(frame_m), nu, delta);
}

SeriesReport cusp_integrability_series(double delta, long long N) {
    if (N < 10) throw std::invalid_argument("cusp_integrability_series: N must be >= 10");
    SeriesReport rep;
    const double expo = 1.0 - 3.0 * delta;
    rep.converges = expo < -1.0;
    std::vector<long long> marks;
    for (long long m = 10; m < N; m *= 10) marks.push_back(m);
    marks.push_back(N);
    double s = 0.0;
    size_t mi = 0;
    for (long long n = 1; n <= N; ++n) {
        s += std::pow(double(n), expo);
        if (mi < marks.size() && n == marks[mi]) {
            rep.checkpoints_n.push_back(double(n));
            rep.partials.push_back(s);
            ++mi;
        }
    }
    rep.partial_sum = s;
    if (rep.converges) rep.tail_bound = std::pow(double(N), expo + 1.0) / (3.0 * delta - 2.0);
    return rep;
}

}  // namespace orbits
