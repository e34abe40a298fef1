#include "orbits/plane.hpp"

#include <cmath>
#include <cstdio>

namespace orbits {

namespace {
const PlaneVector U0{1.0, 0.0};
}

Mat2 psi(PlaneVector u) {
    const double n2 = u.x * u.x + u.y * u.y;
    if (n2 == 0.0) throw std::invalid_argument("psi: zero vector");
    return {u.x, -u.y / n2, u.y, u.x / n2};
}

Horocycle plane_to_horocycle(PlaneVector v) {
    const Mat2 P = psi(v);
    Horocycle h;
    h.xi = P.c == 0.0 ? BoundaryPoint::infinity() : BoundaryPoint::real(P.a / P.c);
    h.t = 2.0 * std::log(v.norm2());
    return h;
}

PlaneVector horocycle_to_plane(const Horocycle& h) {
    const double theta = h.xi.inf ? 0.5 * M_PI : std::atan(h.xi.x);
    const double r = std::exp(0.5 * h.t);
    return {r * std::sin(theta), r * std::cos(theta)};
}

Horocycle h_action(const Mat2& g, const Horocycle& h) {
    const Complex o(0.0, 1.0);
    Horocycle out;
    out.xi = mobius_act(g, h.xi);
    out.t = h.t + busemann(h.xi, mobius_act(g.inverse(), o), o);
    return out;
}

double cocycle(PlaneVector u, const Mat2& g) {
    const PlaneVector gu = apply(g, u);
    const Mat2 M = psi(gu).inverse() * g * psi(u);
    const double scale = std::max(1.0, std::abs(M.b));
    if (std::abs(M.a - 1.0) > 1e-8 * scale || std::abs(M.d - 1.0) > 1e-8 * scale ||
        std::abs(M.c) > 1e-8 * scale)
        throw std::runtime_error("cocycle: Psi(gu)^{-1} g Psi(u) is not unipotent");
    return M.b;
}

double star(PlaneVector v, PlaneVector u, const NormSpec& norm) {
    const Mat2 m{-u.y * v.x, u.x * v.x, -u.y * v.y, u.x * v.y};
    return norm_eval(norm, m);
}

double kappa(PlaneVector u, PlaneVector v, double s, const NormSpec& norm) {
    const Mat2 mid{1.0, s, 0.0, 0.0};
    return norm_eval(norm, psi(v) * mid * psi(u).inverse());
}

ThetaWindow theta_window(PlaneVector u, PlaneVector v, const NormSpec& norm) {
    ThetaWindow w;
    const double nu = u.norm2(), nv = v.norm2();
    if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("theta_window: zero vector");
    if (norm.kind == NormKind::l2) {
        if (nv > nu) return w;
        const double h = std::sqrt(std::max(0.0, 1.0 - (nv * nv) / (nu * nu))) / (nu * nv);
        w.minus = -h;
        w.plus = h;
        w.half = h;
        w.mid = 0.0;
        return w;
    }
    if (!norm.strictly_convex)
        throw std::invalid_argument("theta_window: norm '" + norm.name + "' is not strictly convex");

    // kappa >= c_low * kappa_l2 confines the window to the l2 window at
    // level 1/c_low; kappa <= c_high * kappa_l2 provides interior points.
    const double A = (nv * nv) / (nu * nu);
    const double B = nv * nv * nu * nu;
    const double lvl_out = 1.0 / (norm.c_low * norm.c_low);
    if (A > lvl_out) return w;
    const double s_out = std::sqrt((lvl_out - A) / B);

    auto k = [&](double s) { return kappa(u, v, s, norm); };

    double s_inner;
    const double lvl_in = 1.0 / (norm.c_high * norm.c_high);
    if (A <= lvl_in) {
        s_inner = 0.0;  // kappa(0) <= c_high * sqrt(A) <= 1
    } else {
        // Ternary search for the minimum of the convex map s -> kappa.
        double lo = -s_out, hi = s_out;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + s_out); ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (k(m1) <= k(m2)) hi = m2; else lo = m1;
        }
        s_inner = 0.5 * (lo + hi);
        if (k(s_inner) > 1.0) return w;
    }

    auto bisect = [&](double inside, double outside) {
        for (int it = 0; it < 80 && std::abs(outside - inside) > 1e-10; ++it) {
            const double mid = 0.5 * (inside + outside);
            if (k(mid) <= 1.0) inside = mid; else outside = mid;
        }
        return 0.5 * (inside + outside);
    };
    w.plus = bisect(s_inner, s_out);
    w.minus = bisect(s_inner, -s_out);
    w.mid = 0.5 * (w.plus + w.minus);
    w.half = 0.5 * (w.plus - w.minus);
    return w;
}

bool DomainD::contains(PlaneVector v) const {
    if (v.x == 0.0 && v.y == 0.0) return false;
    return theta_window(u, v, norm).half > 0.0;
}

double DomainD::boundary_radius(double theta, double tol) const {
    const PlaneVector w = dir(theta);
    const double nu = u.norm2();
    double lo = 0.5 * nu / norm.c_high;          // strictly inside
    double hi = 1.000001 * nu / norm.c_low;      // strictly outside
    if (!contains(w.scaled(lo)))
        throw std::runtime_error("DomainD::boundary_radius: inner point escaped D(u)");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (contains(w.scaled(mid))) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

BumpFunction::BumpFunction(double r0_, double wr_, double th0_, double wth_)
    : r0(r0_), wr(wr_), theta0(th0_), wtheta(wth_) {
    if (!(wr > 0.0) || !(r0 > wr))
        throw std::invalid_argument("BumpFunction: need 0 < wr < r0 so the support excludes 0");
    if (!(wtheta > 0.0))
        throw std::invalid_argument("BumpFunction: angular half-width must be positive");
}

double BumpFunction::radial(double r) const {
    return std::max(0.0, 1.0 - std::abs(r - r0) / wr);
}

double BumpFunction::angular(double theta) const {
    if (full_circle()) return 1.0;
    // pi-periodic tent (the profile must be symmetric under v -> -v).
    const double d = std::abs(std::remainder(theta - theta0, M_PI));
    return std::max(0.0, 1.0 - d / wtheta);
}

double BumpFunction::operator()(PlaneVector v) const {
    const double r = v.norm2();
    if (r <= 0.0) return 0.0;
    const double fr = radial(r);
    if (fr == 0.0) return 0.0;
    return fr * angular(angle_of(v));
}

double BumpFunction::angular_mass() const { return full_circle() ? 2.0 * M_PI : 2.0 * wtheta; }

double BumpFunction::plane_mass() const { return r0 * wr * angular_mass(); }

double BumpFunction::mass_over_radius() const { return wr * angular_mass(); }

BumpFunction BumpFunction::scaled_arg(double lam) const {
    return BumpFunction(r0 / lam, wr / lam, theta0, wtheta);
}

std::string BumpFunction::to_string() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "bump:%.12g,%.12g,%.12g,%.12g", r0, wr, theta0, wtheta);
    return buf;
}

BumpFunction BumpFunction::parse(const std::string& s) {
    double a, b, c, d;
    if (std::sscanf(s.c_str(), "bump:%lf,%lf,%lf,%lf", &a, &b, &c, &d) != 4)
        throw std::invalid_argument("BumpFunction::parse: expected bump:r0,wr,theta0,wtheta");
    return BumpFunction(a, b, c, d);
}

double mollifier(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

double mollifier_cdf(double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (t <= 0.0) return 0.5 * (1.0 + t) * (1.0 + t);
    return 1.0 - 0.5 * (1.0 - t) * (1.0 - t);
}

double mollifier_mass(double a, double b) {
    if (b <= a) return 0.0;
    return mollifier_cdf(b) - mollifier_cdf(a);
}

SupportStats support_stats(PlaneVector u, const BumpFunction& f, const NormSpec& norm) {
    SupportStats st;
    const double r_lo = f.r0 - f.wr, r_hi = f.r0 + f.wr;

    // Angular pieces of the support.
    std::vector<std::pair<double, double>> th_ranges;
    if (f.full_circle()) {
        th_ranges.push_back({0.0, 2.0 * M_PI});
    } else {
        th_ranges.push_back({f.theta0 - f.wtheta, f.theta0 + f.wtheta});
        th_ranges.push_back({f.theta0 + M_PI - f.wtheta, f.theta0 + M_PI + f.wtheta});
    }

    if (norm.kind == NormKind::l2) {
        // v*u = |v||u|: extremes exactly at the support radii.
        const double nu = u.norm2();
        st.R = r_hi * nu;
        st.r = r_lo * nu;
    } else {
        // v*u = r * (dir(theta)*u): linear in r, 1-d scan in theta.
        double g_min = std::numeric_limits<double>::infinity(), g_max = 0.0;
        const int NTH = 4096;
        for (auto [a, b] : th_ranges) {
            for (int i = 0; i <= NTH; ++i) {
                const double th = a + (b - a) * i / NTH;
                const double g = star(dir(th), u, norm);
                g_min = std::min(g_min, g);
                g_max = std::max(g_max, g);
            }
        }
        st.R = r_hi * g_max * (1.0 + 1e-4);
        st.r = r_lo * g_min * (1.0 - 1e-4);
    }
    st.vratio = st.R / st.r;

    // D = sup |Psi(v) Psi(u)^{-1}| over supp f. Psi(r w) = Psi(w) a_{2 log r},
    // so for fixed theta the l2 norm squared is P r^2 + Q + S / r^2, convex
    // in r^2: the radial sup sits at an endpoint. Other norms scan log r.
    const Mat2 Yi = psi(u).inverse();
    double Dmax = 0.0;
    const int NTH = 2048;
    const int NR = norm.kind == NormKind::l2 ? 2 : 17;
    for (auto [a, b] : th_ranges) {
        for (int i = 0; i <= NTH; ++i) {
            const double th = a + (b - a) * i / NTH;
            const Mat2 X = psi(dir(th));
            for (int j = 0; j < NR; ++j) {
                const double r = NR == 2 ? (j == 0 ? r_lo : r_hi)
                                         : r_lo * std::pow(r_hi / r_lo, double(j) / (NR - 1));
                const Mat2 M = X * Mat2{r, 0.0, 0.0, 1.0 / r} * Yi;
                Dmax = std::max(Dmax, norm_eval(norm, M));
            }
        }
    }
    st.D = Dmax * (1.0 + 1e-4);
    return st;
}

double lift_f_tilde(const BumpFunction& f, const Mat2& g) {
    const double fv = f(PlaneVector{g.a, g.c});
    if (fv == 0.0) return 0.0;
    return fv * mollifier(cocycle(U0, g));
}

}  // namespace orbits
