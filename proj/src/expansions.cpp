#include "halfspace/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "halfspace/gauss.hpp"
#include "halfspace/gegenbauer.hpp"

namespace hs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> default_pole(int d, const std::vector<double>& pole) {
    if (!pole.empty()) {
        if (static_cast<int>(pole.size()) != d) throw std::domain_error("pole dimension mismatch");
        return pole;
    }
    return unit_vector(d, 0);
}

double family_lambda(Family fam, int n) { return fam == Family::dirichlet ? n / 2.0 : (n - 2) / 2.0; }

void check_family(Family fam, int n) {
    if (n < 2) throw std::domain_error("dimension must be at least 2");
    if (fam == Family::neumann && n < 3) throw std::domain_error("Neumann family requires n >= 3");
}

// |x|^m C_m^lambda(u / |x|) with u = x . pole.
double homogeneous_zonal(double lambda, int m, double r, double u) {
    if (m == 0) return 1.0;
    if (r == 0.0) return 0.0;
    return std::pow(r, m) * gegenbauer(lambda, m, std::clamp(u / r, -1.0, 1.0));
}

LogValue make_log(double log_abs, int sign, double factor) {
    if (factor == 0.0 || sign == 0) return {kNegInf, 0};
    return {log_abs + std::log(std::abs(factor)), factor > 0 ? sign : -sign};
}

// log of (n - 2) omega_{n-2}, the surface measure of S^{n-3}.
double log_sphere_factor(int n) {
    const double k = (n - 2) / 2.0;
    return std::log(static_cast<double>(n - 2)) + k * std::log(kPi) - std::lgamma(1.0 + k);
}

// Closed-form I_{n,2k}^{(1)} without its Gegenbauer factor.
double log_I1_prefactor(int n, int k) {
    return (n - 3) * std::log(2.0) + std::lgamma(n / 2.0 - 1.0) + std::lgamma(2.0 * k + 1.0) +
           std::lgamma(k + n / 2.0 - 1.0) - std::lgamma(k + 1.0) - std::lgamma(2.0 * k + n - 2.0);
}

}  // namespace

double LogValue::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

int degree(const HarmonicFamilyTerm& t) { return t.family == Family::dirichlet ? t.m + 1 : t.m; }

double harmonic_term(const HarmonicFamilyTerm& t, const std::vector<double>& x,
                     const std::vector<double>& pole) {
    if (t.n < 2) throw std::domain_error("dimension must be at least 2");
    if (t.m < 0) throw std::domain_error("harmonic_term: negative index");
    if (static_cast<int>(x.size()) != t.n) throw std::domain_error("harmonic_term: point dimension");
    const std::vector<double> p = default_pole(t.n - 1, pole);
    double r2 = 0.0, u = 0.0;
    for (int i = 0; i < t.n; ++i) r2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < t.n; ++i) u += x[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
    if (t.family == Family::neumann && t.n == 2) {
        // lambda -> 0 limit: C_m^lambda / lambda -> (2/m) T_m.
        if (t.m == 0) return 1.0;
        const double r = std::sqrt(r2);
        if (r == 0.0) return 0.0;
        return 2.0 / t.m * std::pow(r, t.m) * std::cos(t.m * std::acos(std::clamp(u / r, -1.0, 1.0)));
    }
    const double h = homogeneous_zonal(family_lambda(t.family, t.n), t.m, std::sqrt(r2), u);
    return t.family == Family::dirichlet ? x.back() * h : h;
}

double kelvin_term(const HarmonicFamilyTerm& t, const std::vector<double>& x,
                   const std::vector<double>& pole) {
    double r2 = 0.0;
    for (double a : x) r2 += a * a;
    if (r2 == 0.0) throw std::domain_error("kelvin_term: undefined at the origin");
    const int deg = degree(t);
    // h(x) |x|^{-deg} is the spherical harmonic; scale by |x|^{-(deg + n - 2)}.
    return harmonic_term(t, x, pole) * std::pow(r2, -(2.0 * deg + t.n - 2) / 2.0);
}

namespace {

double zonal_moment(double lambda, int m, const BoundaryData& f, double sin_theta,
                    const std::vector<double>& y_hat, const QuadratureSpec& spec) {
    const int d = f.dim;
    auto g = [&](const double* y, double rho) {
        if (rho == 0.0) return m == 0 ? 1.0 : 0.0;
        double c = 0.0;
        for (int i = 0; i < d; ++i) c += y_hat[static_cast<std::size_t>(i)] * y[i];
        return std::pow(rho, m) * gegenbauer(lambda, m, std::clamp(sin_theta * c / rho, -1.0, 1.0));
    };
    return integrate_data(f, g, spec, m).value;
}

std::vector<double> direction_of(const HalfSpacePoint& x) {
    if (!x.y_hat.empty()) return x.y_hat;
    return unit_vector(x.n - 1, 0);
}

}  // namespace

double coefficient_Y0(int m, const BoundaryData& f, const HalfSpacePoint& x_hat,
                      const QuadratureSpec& spec) {
    check_family(Family::dirichlet, x_hat.n);
    if (m < 0) throw std::domain_error("coefficient_Y0: negative index");
    if (f.dim != x_hat.n - 1) throw std::domain_error("coefficient_Y0: data dimension must be n - 1");
    const double c = std::cos(x_hat.theta);
    if (c == 0.0 || std::abs(x_hat.theta - kPi / 2) < 1e-15) return 0.0;
    return alpha_n(x_hat.n) * c *
           zonal_moment(x_hat.n / 2.0, m, f, std::sin(x_hat.theta), direction_of(x_hat), spec);
}

double coefficient_Y1(int m, const BoundaryData& f, const HalfSpacePoint& x_hat,
                      const QuadratureSpec& spec) {
    check_family(Family::neumann, x_hat.n);
    if (m < 0) throw std::domain_error("coefficient_Y1: negative index");
    if (f.dim != x_hat.n - 1) throw std::domain_error("coefficient_Y1: data dimension must be n - 1");
    const int n = x_hat.n;
    return alpha_n(n) / (n - 2) *
           zonal_moment((n - 2) / 2.0, m, f, std::sin(x_hat.theta), direction_of(x_hat), spec);
}

AsymptoticExpansion::AsymptoticExpansion(Family family, BoundaryData f, int n, QuadratureSpec spec)
    : family_(family), f_(std::move(f)), n_(n), spec_(spec) {
    check_family(family_, n_);
    if (f_.dim != n_ - 1) throw std::domain_error("expansion: data dimension must be n - 1");
}

double AsymptoticExpansion::coefficient(int m, double theta, const std::vector<double>& y_hat) const {
    const auto key = std::make_tuple(m, theta, y_hat);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const HalfSpacePoint dir = HalfSpacePoint::polar(n_, 1.0, theta, y_hat);
    const double v = family_ == Family::dirichlet ? coefficient_Y0(m, f_, dir, spec_)
                                                  : coefficient_Y1(m, f_, dir, spec_);
    std::lock_guard<std::mutex> lock(mu_);
    cache_[key] = v;
    return v;
}

double AsymptoticExpansion::partial_sum(int M, const HalfSpacePoint& x) const {
    const std::vector<double> yh = direction_of(x);
    const int shift = family_ == Family::dirichlet ? n_ - 1 : n_ - 2;
    double s = 0.0;
    for (int m = 0; m < M; ++m) s += std::pow(x.r, -(m + shift)) * coefficient(m, x.theta, yh);
    return s;
}

double AsymptoticExpansion::direct(const HalfSpacePoint& x) const {
    PotentialSpec p;
    p.kind = family_ == Family::dirichlet ? Potential::D : Potential::N;
    p.n = n_;
    return hs::evaluate(p, f_, x, spec_).value;
}

double AsymptoticExpansion::remainder_second(int M, const HalfSpacePoint& x) const {
    if (M == 0) return direct(x);
    PotentialSpec p;
    p.kind = family_ == Family::dirichlet ? Potential::D_second : Potential::N_second;
    p.n = n_;
    p.M = M;
    return hs::evaluate(p, f_, x, spec_).value;
}

ExpansionValue AsymptoticExpansion::evaluate(int M, const HalfSpacePoint& x) const {
    if (M < 0) throw std::domain_error("expansion: M must be non-negative");
    ExpansionValue v;
    v.partial_sum = partial_sum(M, x);
    v.direct = direct(x);
    v.remainder = v.direct - v.partial_sum;
    v.remainder_second = remainder_second(M, x);
    return v;
}

ExpansionValue asymptotic_expansion(Family family, const BoundaryData& f, int M,
                                    const HalfSpacePoint& x, const QuadratureSpec& spec) {
    return AsymptoticExpansion(family, f, x.n, spec).evaluate(M, x);
}

double addition_gamma(int n, int m, int l, double theta) {
    if (n < 2 || m < 0 || l < 0 || 2 * l > m) throw std::domain_error("addition_gamma: need 0 <= 2l <= m, n >= 2");
    const double h = n / 2.0;
    const double log_num = std::lgamma(n - 1.0) + std::lgamma(2.0 * l + 1.0) +
                           std::log(static_cast<double>(n + 2 * m - 4 * l - 1)) +
                           std::lgamma(h + m - 2 * l) + std::lgamma(h + m - l);
    const double log_den = (2.0 * l - m) * std::log(4.0) + 2.0 * std::lgamma(h) +
                           std::lgamma(l + 1.0) + std::lgamma(n + 2.0 * m - 2.0 * l);
    const double sign = (l % 2) ? -1.0 : 1.0;
    return sign * std::exp(log_num - log_den) * std::pow(std::sin(theta), m - 2 * l) *
           gegenbauer(h + m - 2 * l, 2 * l, std::cos(theta));
}

double addition_delta(int n, int m, int l, const std::vector<double>& y_hat, const BoundaryData& f,
                      const QuadratureSpec& spec) {
    const double lambda = (n - 1) / 2.0;
    if (!(lambda > 0.0)) throw std::domain_error("addition_delta: requires n >= 2");
    const int d = f.dim;
    if (static_cast<int>(y_hat.size()) != d) throw std::domain_error("addition_delta: direction dimension");
    const int k = m - 2 * l;
    auto g = [&](const double* y, double rho) {
        if (rho == 0.0) return m == 0 ? 1.0 : 0.0;
        double c = 0.0;
        for (int i = 0; i < d; ++i) c += y_hat[static_cast<std::size_t>(i)] * y[i];
        return std::pow(rho, m) * gegenbauer(lambda, k, std::clamp(c / rho, -1.0, 1.0));
    };
    return integrate_data(f, g, spec, m).value;
}

double addition_separation(int n, int m, double theta, const std::vector<double>& y_hat,
                           const BoundaryData& f, const QuadratureSpec& spec) {
    if (f.dim != n - 1) throw std::domain_error("addition_separation: data dimension must be n - 1");
    double s = 0.0;
    for (int l = 0; 2 * l <= m; ++l)
        s += addition_gamma(n, m, l, theta) * addition_delta(n, m, l, y_hat, f, spec);
    return alpha_n(n) * std::cos(theta) * s;
}

double addition_separation_neumann(int n, int m, double theta, const std::vector<double>& y_hat,
                                   const BoundaryData& f, const QuadratureSpec& spec) {
    if (n < 4) throw std::domain_error("addition_separation_neumann: requires n >= 4");
    if (f.dim != n - 1) throw std::domain_error("addition_separation_neumann: data dimension must be n - 1");
    double s = 0.0;
    for (int l = 0; 2 * l <= m; ++l)
        s += addition_gamma(n - 2, m, l, theta) * addition_delta(n - 2, m, l, y_hat, f, spec);
    return alpha_n(n) / (n - 2) * s;
}

double zonal_harmonic(int n, int m, const std::vector<double>& y1, const std::vector<double>& y2) {
    if (y1.size() != y2.size()) throw std::domain_error("zonal_harmonic: dimension mismatch");
    return gegenbauer(n / 2.0, m, std::clamp(dot(y1, y2), -1.0, 1.0));
}

LogValue exp_example_I1(int n, int m, double theta) {
    if (n < 3 || m < 0) throw std::domain_error("exp example: requires n >= 3, m >= 0");
    if (m % 2) return {kNegInf, 0};
    const int k = m / 2;
    return make_log(log_I1_prefactor(n, k), (k % 2) ? -1 : 1,
                    gegenbauer((n - 2) / 2.0, m, std::cos(theta)));
}

double exp_example_I1_numeric(int n, int m, double theta) {
    if (n < 3) throw std::domain_error("exp example: requires n >= 3");
    const double lambda = (n - 2) / 2.0, st = std::sin(theta);
    return gauss_integrate(
        [&](double phi) {
            return gegenbauer(lambda, m, st * std::cos(phi)) * std::pow(std::sin(phi), n - 3);
        },
        0.0, kPi, 40, 4);
}

LogValue exp_example_Y1(int n, int m, double theta) {
    if (n < 3 || m < 0) throw std::domain_error("exp example: requires n >= 3, m >= 0");
    if (m % 2) return {kNegInf, 0};
    const int k = m / 2;
    const double log_abs = (n - 2) * std::log(2.0) + std::lgamma(n / 2.0 - 1.0) +
                           std::lgamma(2.0 * k + 1.0) + std::lgamma(k + n / 2.0) - std::log(kPi) -
                           std::lgamma(k + 1.0);
    return make_log(log_abs, (k % 2) ? -1 : 1, gegenbauer((n - 2) / 2.0, m, std::cos(theta)));
}

double example_exp_closed_form(int n, int m, double theta) { return exp_example_Y1(n, m, theta).value(); }

LogValue exp_example_Y0(int n, int m, double theta) {
    if (n < 5 || m < 0) throw std::domain_error("exp example, Dirichlet: requires n >= 5, m >= 0");
    if (m % 2) return {kNegInf, 0};
    const int k = (m + 2) / 2;
    const double mu = (n - 4) / 2.0;
    // I^{(0)}_{n,m} = -(2 mu / (n - 2)) P C_{m+1}^{(n-2)/2}(cos theta), P the
    // prefactor of I^{(1)}_{n-2,m+2}.
    const double log_I0 = log_I1_prefactor(n - 2, k) + std::log(2.0 * mu / (n - 2));
    const int sign_I0 = (k % 2) ? 1 : -1;
    const double log_abs = std::log(alpha_n(n)) + std::lgamma(m + n - 1.0) + log_sphere_factor(n) + log_I0;
    return make_log(log_abs, sign_I0, gegenbauer((n - 2) / 2.0, m + 1, std::cos(theta)));
}

double exp_example_I0_numeric(int n, int m, double theta) {
    if (n < 3) throw std::domain_error("exp example: requires n >= 3");
    const double lambda = n / 2.0, st = std::sin(theta);
    return std::cos(theta) *
           gauss_integrate(
               [&](double phi) {
                   return gegenbauer(lambda, m, st * std::cos(phi)) * std::pow(std::sin(phi), n - 3);
               },
               0.0, kPi, 40, 4);
}

std::vector<DivergenceTerm> divergence_demo(int n, double r, double theta, int k_max) {
    if (!(r > 0.0)) throw std::domain_error("divergence_demo: r must be positive");
    if (k_max < 0) throw std::domain_error("divergence_demo: k_max must be non-negative");
    std::vector<DivergenceTerm> out;
    for (int k = 0; k <= k_max; ++k) {
        const LogValue y = exp_example_Y1(n, 2 * k, theta);
        DivergenceTerm t;
        t.k = k;
        t.log_magnitude = y.sign == 0 ? kNegInf : y.log_abs - (2.0 * k + n - 2) * std::log(r);
        t.magnitude = std::exp(t.log_magnitude);
        out.push_back(t);
    }
    return out;
}

int divergence_onset(const std::vector<DivergenceTerm>& terms) {
    if (terms.size() < 2) return -1;
    int k = static_cast<int>(terms.size()) - 1;
    while (k > 0 && terms[static_cast<std::size_t>(k)].log_magnitude >
                        terms[static_cast<std::size_t>(k - 1)].log_magnitude)
        --k;
    if (k == static_cast<int>(terms.size()) - 1) return -1;
    return terms[static_cast<std::size_t>(k)].k;
}

}  // namespace hs
