#include "orbits/empirical_measure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace orbits {

double EmpiricalMeasure::integrate(const std::function<double(PlaneVector)>& f) const {
    double s = 0.0;
    for (const auto& p : points) s += p.w * f(dir(p.theta).scaled(p.r));
    return s;
}

double EmpiricalMeasure::integrate_polar(const std::function<double(double, double)>& f) const {
    double s = 0.0;
    for (const auto& p : points) s += p.w * f(p.r, p.theta);
    return s;
}

std::vector<std::pair<double, double>> EmpiricalMeasure::radial_marginal() const {
    std::vector<std::pair<double, double>> m;
    m.reserve(points.size());
    for (const auto& p : points) m.push_back({p.r, p.w});
    return m;
}

std::vector<std::pair<double, double>> EmpiricalMeasure::angular_marginal() const {
    std::vector<std::pair<double, double>> m;
    m.reserve(points.size());
    for (const auto& p : points) {
        double th = std::fmod(p.theta, 2.0 * M_PI);
        if (th < 0.0) th += 2.0 * M_PI;
        m.push_back({th, p.w});
    }
    return m;
}

void EmpiricalMeasure::write_csv(std::ostream& os) const {
    os << "r,theta,weight\n";
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.r, p.theta, p.w);
        os << buf;
    }
}

namespace {

// Weighted empirical CDF evaluator over a sorted (value, weight) sample.
struct Ecdf {
    std::vector<double> xs, cum;
    double total = 0.0;

    explicit Ecdf(std::vector<std::pair<double, double>> sample) {
        std::sort(sample.begin(), sample.end());
        xs.reserve(sample.size());
        cum.reserve(sample.size());
        for (const auto& [x, w] : sample) {
            total += w;
            xs.push_back(x);
            cum.push_back(total);
        }
    }

    double operator()(double x) const {
        if (total <= 0.0) return 0.0;
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        if (it == xs.begin()) return 0.0;
        return cum[static_cast<size_t>(it - xs.begin()) - 1] / total;
    }
};

}  // namespace

double ks_distance(std::vector<std::pair<double, double>> sample,
                   const std::function<double(double)>& cdf, int grid) {
    if (sample.empty()) return 1.0;
    Ecdf F(std::move(sample));
    const double lo = F.xs.front(), hi = F.xs.back();
    double d = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double x = lo + (hi - lo) * i / grid;
        d = std::max(d, std::abs(F(x) - cdf(x)));
    }
    // Jumps of the empirical CDF: check both sides of every atom.
    for (size_t j = 0; j < F.xs.size(); ++j) {
        const double Fx = F.cum[j] / F.total;
        const double Fprev = j == 0 ? 0.0 : F.cum[j - 1] / F.total;
        const double c = cdf(F.xs[j]);
        d = std::max(d, std::max(std::abs(Fx - c), std::abs(Fprev - c)));
    }
    return d;
}

double ks_distance_two_sample(std::vector<std::pair<double, double>> a,
                              std::vector<std::pair<double, double>> b, int grid) {
    if (a.empty() || b.empty()) return 1.0;
    Ecdf Fa(std::move(a)), Fb(std::move(b));
    const double lo = std::min(Fa.xs.front(), Fb.xs.front());
    const double hi = std::max(Fa.xs.back(), Fb.xs.back());
    double d = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double x = lo + (hi - lo) * i / grid;
        d = std::max(d, std::abs(Fa(x) - Fb(x)));
    }
    for (double x : Fa.xs) d = std::max(d, std::abs(Fa(x) - Fb(x)));
    for (double x : Fb.xs) d = std::max(d, std::abs(Fa(x) - Fb(x)));
    return d;
}

}  // namespace orbits
