#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace hs {

/// Region of R^{n-1} integrated in polar coordinates about `center`.
/// Pieces of one data set must have disjoint interiors.
struct SupportPiece {
    std::vector<double> center;
    double r_min = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
    /// Length scale of the data inside the piece.
    double scale = 1.0;
    /// Fixed polar axis; empty means the axis follows the evaluation point.
    std::vector<double> pole;
    /// Extra breakpoints for the angle measured from the pole.
    std::vector<double> angle_breaks;
};

/// Data f on the boundary hyperplane.
struct BoundaryData {
    std::string name;
    int dim = 2;  // n - 1
    std::function<double(const double*)> eval;
    /// Smallest g with |f(y)| <= C (1 + |y|)^g; -infinity for exponential decay.
    double growth_exponent = -std::numeric_limits<double>::infinity();
    /// Rate of exponential decay when growth_exponent is -infinity and support is global.
    double exp_rate = 0.0;
    std::vector<SupportPiece> pieces;
    /// Largest M for which second-kind modified integrals converge.
    int integrability_M = 0;
    /// Infimum of |y| over the support.
    double support_min_radius = 0.0;

    double operator()(const std::vector<double>& y) const { return eval(y.data()); }
    bool compact() const;
    /// Radius of a ball about the origin containing the support.
    double support_radius() const;
};

/// Smooth compactly supported profile exp(1 - 1/(1 - q^2)) on |q| < 1.
double bump_profile(double q);

/// Smoothstep cutoff: 0 on |y| <= 1, 1 on |y| >= 2.
double cutoff_w(const double* y, int dim);
double cutoff_w(const std::vector<double>& y);

BoundaryData zero_data(int dim);

/// amplitude * bump_profile(|y - c| / radius). With unit_mass the amplitude
/// is chosen so that the integral of f equals `amplitude`.
BoundaryData bump(std::vector<double> center, double radius, double amplitude = 1.0,
                  bool unit_mass = false);

/// Radial bump supported in r_in <= |y| <= r_out.
BoundaryData annulus_bump(int dim, double r_in, double r_out, double amplitude = 1.0,
                          bool unit_mass = false);

/// Sum of bumps at 2^k e_1 (k = 1..count) with amplitudes (2^k)^g and radii 2^k / 4.
BoundaryData bump_train(int dim, int count, double g);

/// exp(-|y|).
BoundaryData exp_decay(int dim);

/// (1 + |y|^2)^{g/2}.
BoundaryData poly_growth(int dim, double g);

/// a f + b g for data with disjoint supports.
BoundaryData combine(double a, const BoundaryData& f, double b, const BoundaryData& g);

/// Integral of bump_profile(|z|) over the unit ball of R^dim.
double bump_mass(int dim);

/// Surface area of the unit sphere in R^dim.
double sphere_area(int dim);

/// Volume of the unit ball in R^n.
double ball_volume(int n);

}  // namespace hs
