#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "orbits/plane.hpp"

namespace orbits {

// Weighted point cloud in polar coordinates (r > 0, theta, weight >= 0).
// Houses both quadrature grids for plane measures and empirical orbit
// clouds; integration is linear and monotone.
struct EmpiricalMeasure {
    struct Point {
        double r, theta, w;
    };
    std::vector<Point> points;
    double total = 0.0;

    void add(double r, double theta, double w) {
        points.push_back({r, theta, w});
        total += w;
    }

    double integrate(const std::function<double(PlaneVector)>& f) const;
    double integrate_polar(const std::function<double(double, double)>& f) const;

    // Weighted marginals as (value, weight) pairs.
    std::vector<std::pair<double, double>> radial_marginal() const;
    std::vector<std::pair<double, double>> angular_marginal() const;  // theta mod 2pi

    void write_csv(std::ostream& os) const;  // header r,theta,weight
};

// Kolmogorov-Smirnov distance of a weighted sample against a CDF, evaluated
// on an n-point grid spanning the sample range (plus the sample jumps).
double ks_distance(std::vector<std::pair<double, double>> sample,
                   const std::function<double(double)>& cdf, int grid = 1000);

// Two-sample weighted KS on a shared n-point grid.
double ks_distance_two_sample(std::vector<std::pair<double, double>> a,
                              std::vector<std::pair<double, double>> b, int grid = 1000);

}  // namespace orbits
