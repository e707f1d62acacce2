#pragma once

#include <vector>

namespace hs {

/// Point of the open upper half space in polar form.
/// x_n = r cos(theta), |y| = r sin(theta), y = |y| y_hat.
struct HalfSpacePoint {
    int n = 3;
    double r = 1.0;
    double theta = 0.0;
    std::vector<double> y_hat;  // n - 1 components

    static HalfSpacePoint polar(int n, double r, double theta, std::vector<double> y_hat = {});
    static HalfSpacePoint from_cartesian(const std::vector<double>& x);

    std::vector<double> cartesian() const;
    std::vector<double> y() const;
    double xn() const;
    double y_norm() const;
};

/// Point y' of the boundary hyperplane.
struct BoundaryPoint {
    std::vector<double> coords;
    double norm() const;
};

struct AngleTriple {
    double theta;
    double theta_prime;
    double Theta;
};

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm(const std::vector<double>& a);

/// Angle between y and y', pi/2 when either vanishes.
double theta_prime(const HalfSpacePoint& x, const BoundaryPoint& yp);

/// Theta = sin(theta) cos(theta').
double big_theta(const HalfSpacePoint& x, const BoundaryPoint& yp);

AngleTriple angles(const HalfSpacePoint& x, const BoundaryPoint& yp);

BoundaryPoint reflect_across_first_axis(const BoundaryPoint& yp);

/// Unit vector e_k in R^d (k zero based).
std::vector<double> unit_vector(int d, int k);

}  // namespace hs
