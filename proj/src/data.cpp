#include "halfspace/data.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hs {

namespace {

double norm_d(const double* y, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += y[i] * y[i];
    return std::sqrt(s);
}

double dist_d(const double* y, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = y[i] - c[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double radial_integral(const std::function<double(double)>& g, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 20, 1e-14);
}

}  // namespace

double sphere_area(int dim) {
    return 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
}

double ball_volume(int n) { return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(1.0 + n / 2.0); }

bool BoundaryData::compact() const {
    for (const auto& p : pieces)
        if (!std::isfinite(p.r_max)) return false;
    return true;
}

double BoundaryData::support_radius() const {
    double r = 0.0;
    for (const auto& p : pieces) {
        double c = 0.0;
        for (double v : p.center) c += v * v;
        r = std::max(r, std::sqrt(c) + p.r_max);
    }
    return r;
}

double bump_profile(double q) {
    const double a = std::abs(q);
    if (a >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - a * a));
}

double cutoff_w(const double* y, int dim) {
    const double t = std::clamp(norm_d(y, dim) - 1.0, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

double cutoff_w(const std::vector<double>& y) {
    return cutoff_w(y.data(), static_cast<int>(y.size()));
}

double bump_mass(int dim) {
    return sphere_area(dim) *
           radial_integral([dim](double q) { return bump_profile(q) * std::pow(q, dim - 1); }, 0.0,
                           1.0);
}

BoundaryData zero_data(int dim) {
    BoundaryData d;
    d.name = "zero";
    d.dim = dim;
    d.eval = [](const double*) { return 0.0; };
    d.integrability_M = 1 << 20;
    return d;
}

BoundaryData bump(std::vector<double> center, double radius, double amplitude, bool unit_mass) {
    if (!(radius > 0.0)) throw std::domain_error("bump: radius must be positive");
    const int dim = static_cast<int>(center.size());
    double amp = amplitude;
    if (unit_mass) amp = amplitude / (bump_mass(dim) * std::pow(radius, dim));
    BoundaryData d;
    d.name = "bump";
    d.dim = dim;
    d.eval = [center, radius, amp](const double* y) {
        return amp * bump_profile(dist_d(y, center) / radius);
    };
    d.integrability_M = 1 << 20;
    SupportPiece p;
    p.center = center;
    p.r_max = radius;
    p.scale = radius;
    d.pieces.push_back(p);
    d.support_min_radius = std::max(0.0, std::sqrt(std::inner_product(
                                             center.begin(), center.end(), center.begin(), 0.0)) -
                                             radius);
    return d;
}

BoundaryData annulus_bump(int dim, double r_in, double r_out, double amplitude, bool unit_mass) {
    if (!(r_out > r_in && r_in >= 0.0)) throw std::domain_error("annulus_bump: bad radii");
    const double mid = 0.5 * (r_in + r_out);
    const double half = 0.5 * (r_out - r_in);
    double amp = amplitude;
    if (unit_mass) {
        const double m = sphere_area(dim) *
                         radial_integral(
                             [=](double r) { return bump_profile((r - mid) / half) * std::pow(r, dim - 1); },
                             r_in, r_out);
        amp = amplitude / m;
    }
    BoundaryData d;
    d.name = "annulus_bump";
    d.dim = dim;
    d.eval = [=](const double* y) { return amp * bump_profile((norm_d(y, dim) - mid) / half); };
    d.integrability_M = 1 << 20;
    SupportPiece p;
    p.center.assign(static_cast<std::size_t>(dim), 0.0);
    p.r_min = r_in;
    p.r_max = r_out;
    p.scale = half;
    d.pieces.push_back(p);
    d.support_min_radius = r_in;
    return d;
}

BoundaryData bump_train(int dim, int count, double g) {
    std::vector<std::vector<double>> centers;
    std::vector<double> radii, amps;
    for (int k = 1; k <= count; ++k) {
        const double c = std::ldexp(1.0, k);
        std::vector<double> ctr(static_cast<std::size_t>(dim), 0.0);
        ctr[0] = c;
        centers.push_back(ctr);
        radii.push_back(c / 4.0);
        amps.push_back(std::pow(c, g));
    }
    BoundaryData d;
    d.name = "bump_train";
    d.dim = dim;
    d.eval = [=](const double* y) {
        // The bump at 2^k covers [3 * 2^{k-2}, 5 * 2^{k-2}] along e_1.
        const double y0 = y[0];
        if (y0 <= 0.0) return 0.0;
        const int k = static_cast<int>(std::lround(std::log2(y0)));
        double s = 0.0;
        for (int j = std::max(1, k - 1); j <= std::min(count, k + 1); ++j) {
            const std::size_t i = static_cast<std::size_t>(j - 1);
            s += amps[i] * bump_profile(dist_d(y, centers[i]) / radii[i]);
        }
        return s;
    };
    d.growth_exponent = g;
    d.integrability_M = 1 << 20;
    for (int k = 0; k < count; ++k) {
        SupportPiece p;
        p.center = centers[static_cast<std::size_t>(k)];
        p.r_max = radii[static_cast<std::size_t>(k)];
        p.scale = radii[static_cast<std::size_t>(k)];
        d.pieces.push_back(p);
    }
    d.support_min_radius = 1.5;
    return d;
}

BoundaryData exp_decay(int dim) {
    BoundaryData d;
    d.name = "exp_decay";
    d.dim = dim;
    d.eval = [dim](const double* y) { return std::exp(-norm_d(y, dim)); };
    d.exp_rate = 1.0;
    d.integrability_M = 1 << 20;
    SupportPiece p;
    p.center.assign(static_cast<std::size_t>(dim), 0.0);
    p.scale = 1.0;
    d.pieces.push_back(p);
    return d;
}

BoundaryData poly_growth(int dim, double g) {
    BoundaryData d;
    d.name = "poly_growth";
    d.dim = dim;
    d.eval = [dim, g](const double* y) {
        const double r = norm_d(y, dim);
        return std::pow(1.0 + r * r, 0.5 * g);
    };
    d.growth_exponent = g;
    // The second-kind kernel grows like |y'|^{M-1}: needs g + dim + M - 1 < 0.
    d.integrability_M = std::max(0, static_cast<int>(std::ceil(1.0 - g - dim)) - 1);
    SupportPiece p;
    p.center.assign(static_cast<std::size_t>(dim), 0.0);
    p.scale = 1.0;
    d.pieces.push_back(p);
    return d;
}

BoundaryData combine(double a, const BoundaryData& f, double b, const BoundaryData& g) {
    if (f.dim != g.dim) throw std::domain_error("combine: dimension mismatch");
    if (!f.compact() || !g.compact()) throw std::domain_error("combine: data must be compact");
    for (const auto& p : f.pieces)
        for (const auto& q : g.pieces) {
            double c = 0.0;
            for (std::size_t i = 0; i < p.center.size(); ++i) {
                const double dd = p.center[i] - q.center[i];
                c += dd * dd;
            }
            const double dc = std::sqrt(c);
            const bool concentric_disjoint =
                dc < 1e-14 && (p.r_max <= q.r_min || q.r_max <= p.r_min);
            if (dc < p.r_max + q.r_max && !concentric_disjoint)
                throw std::domain_error("combine: supports overlap");
        }
    BoundaryData d;
    d.name = "combination";
    d.dim = f.dim;
    auto fe = f.eval;
    auto ge = g.eval;
    d.eval = [=](const double* y) { return a * fe(y) + b * ge(y); };
    d.growth_exponent = std::max(f.growth_exponent, g.growth_exponent);
    d.integrability_M = std::min(f.integrability_M, g.integrability_M);
    d.pieces = f.pieces;
    d.pieces.insert(d.pieces.end(), g.pieces.begin(), g.pieces.end());
    d.support_min_radius = std::min(f.support_min_radius, g.support_min_radius);
    return d;
}

}  // namespace hs
