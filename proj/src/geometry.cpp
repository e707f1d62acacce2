#include "halfspace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hs {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    const std::size_t k = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < k; ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> unit_vector(int d, int k) {
    std::vector<double> e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    return e;
}

HalfSpacePoint HalfSpacePoint::polar(int n, double r, double theta, std::vector<double> y_hat) {
    if (n < 2) throw std::domain_error("HalfSpacePoint: n must be >= 2");
    if (!(r > 0.0)) throw std::domain_error("HalfSpacePoint: r must be positive");
    if (!(theta >= 0.0 && theta < std::numbers::pi / 2))
        throw std::domain_error("HalfSpacePoint: theta must lie in [0, pi/2)");
    HalfSpacePoint p;
    p.n = n;
    p.r = r;
    p.theta = theta;
    if (y_hat.empty()) {
        p.y_hat = unit_vector(n - 1, 0);
    } else {
        if (static_cast<int>(y_hat.size()) != n - 1)
            throw std::domain_error("HalfSpacePoint: y_hat must have n-1 components");
        const double l = norm(y_hat);
        if (!(l > 0.0)) throw std::domain_error("HalfSpacePoint: y_hat must be nonzero");
        for (double& v : y_hat) v /= l;
        p.y_hat = std::move(y_hat);
    }
    return p;
}

HalfSpacePoint HalfSpacePoint::from_cartesian(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::domain_error("HalfSpacePoint: n must be >= 2");
    const double xn = x.back();
    if (!(xn > 0.0)) throw std::domain_error("HalfSpacePoint: x_n must be positive");
    std::vector<double> y(x.begin(), x.end() - 1);
    const double ly = norm(y);
    HalfSpacePoint p;
    p.n = n;
    p.r = std::hypot(ly, xn);
    p.theta = std::atan2(ly, xn);
    if (ly > 0.0) {
        for (double& v : y) v /= ly;
        p.y_hat = std::move(y);
    } else {
        p.y_hat = unit_vector(n - 1, 0);
    }
    return p;
}

std::vector<double> HalfSpacePoint::y() const {
    std::vector<double> out(y_hat);
    const double ly = y_norm();
    for (double& v : out) v *= ly;
    return out;
}

std::vector<double> HalfSpacePoint::cartesian() const {
    std::vector<double> out = y();
    out.push_back(xn());
    return out;
}

double HalfSpacePoint::xn() const { return r * std::cos(theta); }
double HalfSpacePoint::y_norm() const { return r * std::sin(theta); }

double BoundaryPoint::norm() const { return hs::norm(coords); }

double theta_prime(const HalfSpacePoint& x, const BoundaryPoint& yp) {
    const double ly = x.y_norm();
    const double lyp = yp.norm();
    if (ly == 0.0 || lyp == 0.0) return std::numbers::pi / 2;
    const double c = std::clamp(dot(x.y_hat, yp.coords) / lyp, -1.0, 1.0);
    return std::acos(c);
}

double big_theta(const HalfSpacePoint& x, const BoundaryPoint& yp) {
    const double lyp = yp.norm();
    if (lyp == 0.0 || x.theta == 0.0) return 0.0;
    const double c = std::clamp(dot(x.y_hat, yp.coords) / lyp, -1.0, 1.0);
    return std::sin(x.theta) * c;
}

AngleTriple angles(const HalfSpacePoint& x, const BoundaryPoint& yp) {
    return {x.theta, theta_prime(x, yp), big_theta(x, yp)};
}

BoundaryPoint reflect_across_first_axis(const BoundaryPoint& yp) {
    BoundaryPoint out = yp;
    if (!out.coords.empty()) out.coords[0] = -out.coords[0];
    return out;
}

}  // namespace hs
