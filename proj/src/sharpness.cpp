#include "halfspace/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "halfspace/gauss.hpp"
#include "halfspace/gegenbauer.hpp"
#include "halfspace/kernels.hpp"

namespace hs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lm(double lambda, int M) {
    if (!(lambda > 0.0)) throw std::domain_error("sharpness: lambda must be positive");
    if (M < 1) throw std::domain_error("sharpness: M must be at least 1");
}

double min_on_interval(double lambda, int m, double lo, double hi) {
    double best = std::min(gegenbauer(lambda, m, lo), gegenbauer(lambda, m, hi));
    if (m >= 2) {
        // Interior extrema are zeros of the derivative 2 lambda C_{m-1}^{lambda+1}.
        for (double t : roots({lambda + 1.0, m - 1}))
            if (t > lo && t < hi) best = std::min(best, gegenbauer(lambda, m, t));
    }
    return best;
}

std::vector<double> boundary_direction(const HalfSpacePoint& x) {
    if (!x.y_hat.empty()) return x.y_hat;
    return unit_vector(x.n - 1, 0);
}

double cos_to(const std::vector<double>& y_hat, const std::vector<double>& yp) {
    const double r = norm(yp);
    if (r == 0.0) return 0.0;
    return std::clamp(dot(y_hat, yp) / r, -1.0, 1.0);
}

// Random unit vector of R^d orthogonal to u (d >= 2).
std::vector<double> random_orthogonal(const std::vector<double>& u, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        std::vector<double> v(u.size());
        for (double& a : v) a = g(rng);
        const double c = dot(v, u);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
        const double l = norm(v);
        if (l > 1e-8) {
            for (double& a : v) a /= l;
            return v;
        }
    }
}

// Uniform point in the unit ball of R^d.
std::vector<double> random_in_ball(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        std::vector<double> v(static_cast<std::size_t>(d));
        for (double& a : v) a = u(rng);
        if (norm(v) < 1.0) return v;
    }
}

// K_M / (K s^M) at Cartesian x and boundary point y'.
double normalized_KM(double lambda, int M, const std::vector<double>& x, const std::vector<double>& yp) {
    const std::size_t d = yp.size();
    double r2 = 0.0, dist2 = 0.0, dt = 0.0;
    for (double a : x) r2 += a * a;
    for (std::size_t i = 0; i < d; ++i) {
        const double t = yp[i] - x[i];
        dist2 += t * t;
        dt += yp[i] * x[i];
    }
    dist2 += x[d] * x[d];
    const double r = std::sqrt(r2), rho = norm(yp);
    const KernelArgs a{r, rho, dt / (r * rho), dist2};
    const double s = r / rho;
    return km_first(lambda, M, a) / (inv_pow(dist2, lambda) * std::pow(s, M));
}

}  // namespace

int sign_factor(int M) { return ((M + 1) / 2) % 2 ? -1 : 1; }

SharpnessConstants compute_constants(double lambda, int M) {
    check_lm(lambda, M);
    SharpnessConstants c;
    c.lambda = lambda;
    c.M = M;
    c.mu = M / 2;
    c.eps0 = M % 2;
    if (M == 1) {
        c.beta1 = 1.0;
    } else {
        double b = kInf;
        for (int m : {M, M - 1})
            for (double t : roots({lambda, m}))
                if (t > 1e-12) b = std::min(b, t);
        c.beta1 = b;
    }
    c.beta2 = roots({std::min(1.0, lambda), M}).back();
    double sum = 0.0;
    for (int m = 0; m < M; ++m) sum += std::ldexp(1.0, m) * eval_at_one({lambda, m});
    c.gamma_lm = std::pow(sum, -1.0 / lambda);
    const double g = c.gamma_lm;
    c.r0 = std::sqrt(0.5 * ((g - 1.0) + std::sqrt((1.0 - g) * (1.0 - g) + 8.0)));
    const double sec_bound = M == 1 ? kInf : 1.0 / std::cos(kPi / (2.0 * M));
    c.A_max = std::min({2.0, c.r0, sec_bound});
    c.A = 0.5 * (1.0 + c.A_max);
    c.min_C_prev = min_on_interval(lambda, M - 1, 1.0 / c.A, 1.0);
    const double inner = 8.0 * std::sqrt(2.0) * (M + 1) / (2.0 * lambda + M - 1) *
                         binom_real(2.0 * lambda + M, M - 1) / c.min_C_prev;
    c.A_lambda = std::pow((c.A + 1.0) / (c.A - 1.0), 2.0 * lambda) * std::max(1.0, inner);
    c.theta0 = std::asin(std::sqrt(c.A / (2.0 * c.A - 1.0)));
    c.theta_contain = 0.5 * (kPi - std::asin(1.0 - 1.0 / (c.A * c.A)));
    return c;
}

std::pair<double, double> omega1_cos_band(int M, double beta1, OddBand band) {
    if (M % 2 == 0) return {beta1 / 3.0, beta1 / 2.0};
    if (band == OddBand::mirrored) return {-beta1 / 2.0, -beta1 / 3.0};
    return {-beta1 / 2.0, beta1 / 3.0};
}

bool region_contains(const RegionSpec& region, const BoundaryPoint& yp) {
    const SharpnessConstants& c = region.constants;
    const std::vector<double> yh = boundary_direction(region.x_ref);
    if (yp.coords.size() != yh.size()) throw std::domain_error("region_contains: dimension mismatch");
    const double rho = yp.norm();
    const double ct = cos_to(yh, yp.coords);
    const double s = rho > 0.0 ? region.x_ref.r / rho : kInf;
    const double cone = 1.0 / std::sqrt(c.A);
    const bool in_omega2 = rho > 1.0 && ct > cone;
    switch (region.which) {
        case Region::omega1: {
            const auto [lo, hi] = omega1_cos_band(region.M, c.beta1, region.odd_band);
            return rho > 0.0 && ct >= lo && ct <= hi;
        }
        case Region::omega2: return in_omega2;
        case Region::omega3: return in_omega2 && yp.coords[0] > 0.0 && s > 1.0 / c.A && s < c.A;
        case Region::omega_gt: return in_omega2 && yp.coords[0] > 0.0 && s > c.A;
        case Region::omega_lt: {
            const BoundaryPoint star = reflect_across_first_axis(yp);
            const bool mirrored = rho > 1.0 && cos_to(yh, star.coords) > cone;
            return mirrored && yp.coords[0] < 0.0 && s > c.A;
        }
    }
    return false;
}

SignReport sign_check_phi(double lambda, int M, long samples, std::uint64_t seed, OddBand band) {
    const SharpnessConstants c = compute_constants(lambda, M);
    const auto [lo, hi] = omega1_cos_band(M, c.beta1, band);
    const double tp_lo = std::acos(hi), tp_hi = std::acos(lo);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const int sg = sign_factor(M);
    SignReport rep;
    rep.check = band == OddBand::mirrored ? "sign_phi_omega1" : "sign_phi_omega1_literal_band";
    rep.params = {{"lambda", lambda}, {"M", M}, {"beta1", c.beta1}, {"seed", static_cast<double>(seed)}};
    rep.samples = samples;
    rep.min_value = kInf;
    rep.max_value = -kInf;
    for (long i = 0; i < samples; ++i) {
        const double theta = 0.5 * kPi * U(rng);
        const double tp = tp_lo + (tp_hi - tp_lo) * U(rng);
        const double zeta = U(rng), s = 10.0 * U(rng);
        const double v = sg * phi_pm(lambda, M, std::sin(theta) * std::cos(tp), s * zeta, Sign::minus);
        rep.min_value = std::min(rep.min_value, v);
        rep.max_value = std::max(rep.max_value, v);
    }
    rep.pass = rep.min_value > 0.0;
    return rep;
}

SignReport sign_check_phi_control(double lambda, int M, long samples, std::uint64_t seed) {
    check_lm(lambda, M);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const int sg = sign_factor(M);
    SignReport rep;
    rep.check = "sign_phi_control_theta_prime_zero";
    rep.params = {{"lambda", lambda}, {"M", M}, {"seed", static_cast<double>(seed)}};
    rep.samples = samples;
    rep.min_value = kInf;
    rep.max_value = -kInf;
    for (long i = 0; i < samples; ++i) {
        const double theta = 0.5 * kPi * (0.9 + 0.1 * U(rng));
        const double zeta = U(rng), s = 10.0 * U(rng);
        const double v = sg * phi_pm(lambda, M, std::sin(theta), s * zeta, Sign::minus);
        rep.min_value = std::min(rep.min_value, v);
        rep.max_value = std::max(rep.max_value, v);
    }
    rep.pass = rep.min_value > 0.0;
    return rep;
}

SignReport sign_check_KM_omega3(double lambda, int M, const HalfSpacePoint& x, long samples,
                                std::uint64_t seed) {
    SignReport rep;
    rep.check = "sign_KM_omega3";
    rep.params = {{"lambda", lambda}, {"M", M}, {"theta", x.theta}, {"r", x.r},
                  {"seed", static_cast<double>(seed)}};
    rep.samples = samples;
    if (M == 0) {
        rep.min_value = rep.max_value = 1.0;
        rep.pass = true;
        return rep;
    }
    const SharpnessConstants c = compute_constants(lambda, M);
    if (std::sin(x.theta) < std::sin(c.theta0) - 1e-14)
        throw std::domain_error("sign_check_KM_omega3: requires sin(theta) >= sin(theta0)");
    const int d = x.n - 1;
    const std::vector<double> yh = boundary_direction(x);
    const std::vector<double> xc = x.cartesian();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double cone = 1.0 / std::sqrt(c.A);
    rep.min_value = kInf;
    rep.max_value = -kInf;
    long taken = 0, attempts = 0;
    while (taken < samples) {
        if (++attempts > 100 * samples + 1000) throw std::domain_error("sign_check_KM_omega3: Omega_3 is empty for this x");
        const double s = 1.0 / c.A + (c.A - 1.0 / c.A) * U(rng);
        const double rho = x.r / s;
        if (rho <= 1.0) continue;
        const double ct = cone + (1.0 - cone) * U(rng);
        std::vector<double> yp(yh);
        if (d >= 2) {
            const std::vector<double> eta = random_orthogonal(yh, rng);
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int i = 0; i < d; ++i)
                yp[static_cast<std::size_t>(i)] = rho * (ct * yh[static_cast<std::size_t>(i)] + st * eta[static_cast<std::size_t>(i)]);
        } else {
            yp[0] = rho * yh[0];
        }
        RegionSpec reg{Region::omega3, M, c, x, OddBand::mirrored};
        if (!region_contains(reg, BoundaryPoint{yp})) continue;
        const double v = normalized_KM(lambda, M, xc, yp);
        rep.min_value = std::min(rep.min_value, v);
        rep.max_value = std::max(rep.max_value, v);
        ++taken;
    }
    rep.pass = rep.min_value > 0.0;
    return rep;
}

double omega3_corner_ratio(double lambda, int M) {
    check_lm(lambda, M);
    return km_weight_integral(lambda, M, 1.0, 1.0, 1e-13);
}

double omega3_corner_closed_form(double lambda, int M) {
    check_lm(lambda, M);
    const double pref = std::exp(std::lgamma(2.0 * lambda + M) - std::lgamma(2.0 * lambda) - std::lgamma(M));
    return pref * std::beta(2.0 * lambda, static_cast<double>(M));
}

BoundaryData data_half_balls(int dim, const std::vector<double>& amplitudes,
                             const std::vector<double>& centers, double lambda, int M) {
    check_lm(lambda, M);
    if (dim < 2) throw std::domain_error("data_half_balls: boundary dimension must be at least 2");
    if (amplitudes.size() != centers.size() || centers.empty())
        throw std::domain_error("data_half_balls: need matching non-empty amplitudes and centers");
    if (centers[0] < 2.0) throw std::domain_error("data_half_balls: first center must be >= 2");
    for (std::size_t i = 1; i < centers.size(); ++i)
        if (centers[i] - centers[i - 1] < 2.0) throw std::domain_error("data_half_balls: unit balls overlap");
    const double sg = sign_factor(M);
    const double side = (M % 2) ? -1.0 : 1.0;
    BoundaryData f;
    f.name = "sharpness_half_balls";
    f.dim = dim;
    f.eval = [=](const double* y) {
        if (side * y[0] < 0.0) return 0.0;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            double r2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double t = y[k] - (k == 1 ? centers[i] : 0.0);
                r2 += t * t;
            }
            if (r2 < 1.0) return sg * amplitudes[i] * (1.0 - std::sqrt(r2)) * std::abs(y[0]);
        }
        return 0.0;
    };
    for (double ci : centers) {
        SupportPiece p;
        p.center = unit_vector(dim, 1);
        for (double& a : p.center) a *= ci;
        p.r_max = 1.0;
        p.scale = 1.0;
        p.pole = unit_vector(dim, 0);
        p.angle_breaks = {kPi / 2};
        f.pieces.push_back(p);
    }
    f.integrability_M = std::numeric_limits<int>::max();
    f.support_min_radius = centers[0] - 1.0;
    return f;
}

std::vector<double> half_ball_amplitudes(const std::vector<double>& psi, const std::vector<double>& centers,
                                         double d7, double lambda) {
    if (psi.size() != centers.size()) throw std::domain_error("half_ball_amplitudes: size mismatch");
    std::vector<double> out;
    for (std::size_t i = 0; i < psi.size(); ++i) out.push_back(d7 * psi[i] * std::pow(centers[i], 2.0 * lambda));
    return out;
}

double half_ball_profile_integral(int dim) {
    if (dim < 2) throw std::domain_error("half_ball_profile_integral: dimension must be at least 2");
    return sphere_area(dim - 1) / ((dim - 1.0) * (dim + 1.0) * (dim + 2.0));
}

BoundaryData data_balls_super_extension(int dim, const std::vector<double>& a, const std::vector<double>& b,
                                        const std::vector<double>& amplitudes, const SharpnessConstants& c) {
    if (dim < 1) throw std::domain_error("data_balls_super_extension: bad dimension");
    if (a.size() != b.size() || a.size() != amplitudes.size() || a.empty())
        throw std::domain_error("data_balls_super_extension: need matching non-empty a, b, amplitudes");
    const double cone = std::acos(1.0 / std::sqrt(c.A));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(b[i] > 0.0) || b[i] > 0.5 * a[i]) throw std::domain_error("data_balls_super_extension: need 0 < b_i <= a_i / 2");
        if (a[i] - b[i] <= 1.0) throw std::domain_error("data_balls_super_extension: ball meets the unit ball");
        if (std::asin(b[i] / a[i]) >= cone) throw std::domain_error("data_balls_super_extension: ball leaves the Omega_2 cone");
        if (i > 0 && a[i] < 3.0 * a[i - 1]) throw std::domain_error("data_balls_super_extension: need a_{i+1} >= 3 a_i");
    }
    const double mirror = ((c.M % 2) ? -1.0 : 1.0) * c.A_lambda;
    BoundaryData f;
    f.name = "sharpness_super_balls";
    f.dim = dim;
    f.eval = [=](const double* y) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (double side : {1.0, -1.0}) {
                double r2 = 0.0;
                for (int k = 0; k < dim; ++k) {
                    const double t = y[k] - (k == 0 ? side * a[i] : 0.0);
                    r2 += t * t;
                }
                if (r2 < b[i] * b[i]) {
                    const double v = amplitudes[i] * (1.0 - std::sqrt(r2) / b[i]);
                    return side > 0 ? v : mirror * v;
                }
            }
        }
        return 0.0;
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (double side : {1.0, -1.0}) {
            SupportPiece p;
            p.center = unit_vector(dim, 0);
            p.center[0] *= side * a[i];
            p.r_max = b[i];
            p.scale = b[i];
            f.pieces.push_back(p);
        }
    }
    f.integrability_M = std::numeric_limits<int>::max();
    f.support_min_radius = a[0] - b[0];
    return f;
}

std::vector<double> super_ball_amplitudes(const std::vector<double>& psi, const std::vector<double>& b,
                                          int n, double d9, double lambda) {
    if (psi.size() != b.size()) throw std::domain_error("super_ball_amplitudes: size mismatch");
    std::vector<double> out;
    for (std::size_t i = 0; i < psi.size(); ++i) out.push_back(psi[i] * std::pow(b[i], 2.0 * lambda - n + 1) / d9);
    return out;
}

double d9_from_d8(double d8, int n, double lambda, int M) {
    const double I = gauss_integrate(
        [&](double rho) { return (1.0 - rho) * std::pow(rho * rho + 1.0, -lambda) * std::pow(rho, n - 2); },
        0.0, 1.0, 30, 2);
    return d8 * std::pow(2.0, -M / 2.0) * sphere_area(n - 1) * I;
}

LowerBoundReport half_ball_lower_bound(int n, double lambda, int M, double theta,
                                       const std::vector<double>& centers,
                                       const std::vector<double>& amplitudes,
                                       const QuadratureSpec& spec, long samples, std::uint64_t seed) {
    const int d = n - 1;
    const BoundaryData f = data_half_balls(d, amplitudes, centers, lambda, M);
    const double side = (M % 2) ? -1.0 : 1.0;
    const int sg = sign_factor(M);
    std::vector<HalfSpacePoint> xs;
    for (double c : centers) xs.push_back(HalfSpacePoint::polar(n, c, theta));

    // d5: min of (-1)^{ceil(M/2)} K_M (1 + s)^2 / (K s^M) over the support and the points.
    std::mt19937_64 rng(seed);
    double d5 = kInf;
    for (const auto& x : xs) {
        const std::vector<double> xc = x.cartesian();
        for (double c : centers) {
            for (long k = 0; k < samples; ++k) {
                std::vector<double> yp = random_in_ball(d, rng);
                yp[0] = side * std::abs(yp[0]);
                yp[1] += c;
                const double s = x.r / norm(yp);
                d5 = std::min(d5, sg * normalized_KM(lambda, M, xc, yp) * (1.0 + s) * (1.0 + s));
            }
        }
    }
    LowerBoundReport rep;
    rep.check = "half_ball_lower_bound";
    rep.params = {{"n", n}, {"lambda", lambda}, {"M", M}, {"theta", theta}};
    rep.measured_constant = d5;
    const double d7_inv = d5 * std::pow(7.0, -lambda) * std::pow(2.0 / 3.0, M) / 9.0 * half_ball_profile_integral(d);
    rep.params["d7_inverse"] = d7_inv;
    rep.pass = d5 > 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        LowerBoundRow row;
        row.j = static_cast<int>(j + 1);
        row.x_norm = xs[j].r;
        row.F = integral_F({lambda, M, KernelKind::first}, f, xs[j], spec);
        row.bound = d7_inv * amplitudes[j] * std::pow(centers[j], -2.0 * lambda);
        row.pass = row.F >= row.bound;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

LowerBoundReport super_ball_lower_bound(int n, double lambda, int M, const std::vector<double>& a,
                                        const std::vector<double>& b, const std::vector<double>& amplitudes,
                                        const QuadratureSpec& spec, long samples, std::uint64_t seed) {
    const SharpnessConstants c = compute_constants(lambda, M);
    const BoundaryData f = data_balls_super_extension(n - 1, a, b, amplitudes, c);
    std::vector<HalfSpacePoint> xs;
    for (std::size_t j = 0; j < a.size(); ++j) {
        std::vector<double> xc(static_cast<std::size_t>(n), 0.0);
        xc[0] = a[j];
        xc.back() = b[j];
        const HalfSpacePoint x = HalfSpacePoint::from_cartesian(xc);
        if (std::sin(x.theta) < std::sin(c.theta0)) throw std::domain_error("super_ball_lower_bound: point below theta0");
        if (a[j] - x.r / c.A < b[j] || c.A * x.r - a[j] < b[j])
            throw std::domain_error("super_ball_lower_bound: ball not inside Omega_3");
        xs.push_back(x);
    }
    double d8 = kInf;
    for (std::size_t j = 0; j < xs.size(); ++j)
        d8 = std::min(d8, sign_check_KM_omega3(lambda, M, xs[j], samples, seed + j).min_value);
    const double d9 = d9_from_d8(d8, n, lambda, M);
    LowerBoundReport rep;
    rep.check = "super_ball_lower_bound";
    rep.params = {{"n", n}, {"lambda", lambda}, {"M", M}, {"A", c.A}, {"A_lambda", c.A_lambda}, {"d9", d9}};
    rep.measured_constant = d8;
    rep.pass = d8 > 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        LowerBoundRow row;
        row.j = static_cast<int>(j + 1);
        row.x_norm = xs[j].r;
        row.F = integral_F({lambda, M, KernelKind::first}, f, xs[j], spec);
        row.bound = d9 * amplitudes[j] * std::pow(b[j], n - 1 - 2.0 * lambda);
        row.pass = row.F >= row.bound;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

double balanced_sign_integral(const BoundaryData& f, const SharpnessConstants& c, const HalfSpacePoint& x,
                              const QuadratureSpec& spec) {
    BoundaryData g = f;
    const RegionSpec gt{Region::omega_gt, c.M, c, x, OddBand::mirrored};
    const RegionSpec lt{Region::omega_lt, c.M, c, x, OddBand::mirrored};
    const int d = f.dim;
    auto fe = f.eval;
    g.eval = [=](const double* y) {
        const BoundaryPoint p{std::vector<double>(y, y + d)};
        return (region_contains(gt, p) || region_contains(lt, p)) ? fe(y) : 0.0;
    };
    return integral_F({c.lambda, c.M, KernelKind::first}, g, x, spec);
}

}  // namespace hs
