#include "halfspace/kernels.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "halfspace/gegenbauer.hpp"

namespace hs {

namespace {

constexpr double kSeriesSwitch = 0.5;

void check_params(const KernelParams& p) {
    if (!(p.lambda > 0.0)) throw std::domain_error("kernel: lambda must be positive");
    if (p.M < 0) throw std::domain_error("kernel: M must be non-negative");
}

// sum_{m<M} s^m C_m(Theta), the truncated generating function.
double head_sum(double lambda, int M, double s, double Theta) {
    if (M <= 0) return 0.0;
    double c0 = 1.0;
    double sum = 1.0;
    if (M == 1) return sum;
    double c1 = 2.0 * lambda * Theta;
    double sp = s;
    sum += sp * c1;
    for (int k = 2; k < M; ++k) {
        const double c2 = (2.0 * (k - 1 + lambda) * Theta * c1 - (k - 2 + 2.0 * lambda) * c0) / k;
        c0 = c1;
        c1 = c2;
        sp *= s;
        sum += sp * c1;
    }
    return sum;
}

// sum_{m>=M} s^m C_m(Theta) for 0 <= s < 1.
double tail_sum(double lambda, int M, double s, double Theta) {
    if (s == 0.0) return M == 0 ? 1.0 : 0.0;
    double c0 = 1.0;
    double c1 = 2.0 * lambda * Theta;
    double at_one = 1.0;  // C_m(1)
    double sp = 1.0;
    double sum = 0.0;
    double first_bound = -1.0;
    const int max_m = M + 2000;
    for (int m = 0; m <= max_m; ++m) {
        double cm;
        if (m == 0) {
            cm = 1.0;
        } else if (m == 1) {
            cm = c1;
            at_one = 2.0 * lambda;
        } else {
            cm = (2.0 * (m - 1 + lambda) * Theta * c1 - (m - 2 + 2.0 * lambda) * c0) / m;
            c0 = c1;
            c1 = cm;
            at_one *= (2.0 * lambda + m - 1) / m;
        }
        if (m >= M) {
            sum += sp * cm;
            const double bound = sp * at_one;
            if (first_bound < 0.0) first_bound = bound;
            if (bound < 1e-18 * first_bound) break;
        }
        sp *= s;
    }
    return sum;
}

}  // namespace

double inv_pow(double x, double lambda) {
    const double twice = 2.0 * lambda;
    if (twice == std::floor(twice) && twice <= 12.0) {
        const int k = static_cast<int>(twice);
        double p = 1.0;
        for (int i = 0; i < k / 2; ++i) p *= x;
        if (k % 2) p *= std::sqrt(x);
        return 1.0 / p;
    }
    return std::pow(x, -lambda);
}

KernelArgs kernel_args(const HalfSpacePoint& x, const BoundaryPoint& yp) {
    const std::vector<double> y = x.y();
    const double xn = x.xn();
    double d2 = xn * xn;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = yp.coords.at(i) - y[i];
        d2 += d * d;
    }
    return {x.r, yp.norm(), big_theta(x, yp), d2};
}

double kernel_K(double lambda, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    if (!(lambda > 0.0)) throw std::domain_error("kernel: lambda must be positive");
    const KernelArgs a = kernel_args(x, yp);
    if (a.dist2 == 0.0) throw std::domain_error("kernel: singular point y' = y on the boundary");
    return inv_pow(a.dist2, lambda);
}

double kernel_K_polar(double lambda, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    if (!(lambda > 0.0)) throw std::domain_error("kernel: lambda must be positive");
    const KernelArgs a = kernel_args(x, yp);
    return std::pow(a.rho * a.rho - 2.0 * a.rho * a.r * a.Theta + a.r * a.r, -lambda);
}

double km_first_direct(double lambda, int M, const KernelArgs& a) {
    const double K = inv_pow(a.dist2, lambda);
    if (M == 0) return K;
    return K - inv_pow(a.rho * a.rho, lambda) * head_sum(lambda, M, a.r / a.rho, a.Theta);
}

double km_first_series(double lambda, int M, const KernelArgs& a) {
    const double s = a.r / a.rho;
    if (!(s < 1.0)) throw std::domain_error("kernel series: requires |x| < |y'|");
    return inv_pow(a.rho * a.rho, lambda) * tail_sum(lambda, M, s, a.Theta);
}

double km_second_direct(double lambda, int M, const KernelArgs& a) {
    const double K = inv_pow(a.dist2, lambda);
    return K - inv_pow(a.r * a.r, lambda) * head_sum(lambda, M, a.rho / a.r, a.Theta);
}

double km_second_series(double lambda, int M, const KernelArgs& a) {
    const double t = a.rho / a.r;
    if (!(t < 1.0)) throw std::domain_error("kernel series: requires |y'| < |x|");
    return inv_pow(a.r * a.r, lambda) * tail_sum(lambda, M, t, a.Theta);
}

double km_first(double lambda, int M, const KernelArgs& a) {
    if (M == 0) return inv_pow(a.dist2, lambda);
    if (a.r < kSeriesSwitch * a.rho) return km_first_series(lambda, M, a);
    return km_first_direct(lambda, M, a);
}

double km_second(double lambda, int M, const KernelArgs& a) {
    if (M == 0) return inv_pow(a.dist2, lambda);
    if (a.rho < kSeriesSwitch * a.r) return km_second_series(lambda, M, a);
    return km_second_direct(lambda, M, a);
}

double kernel_KM_direct(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    check_params(p);
    const KernelArgs a = kernel_args(x, yp);
    if (p.M >= 1 && a.rho == 0.0) throw std::domain_error("kernel: K_M singular at y' = 0");
    if (a.dist2 == 0.0) throw std::domain_error("kernel: singular point y' = y on the boundary");
    return km_first_direct(p.lambda, p.M, a);
}

double kernel_KM_series(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    check_params(p);
    return km_first_series(p.lambda, p.M, kernel_args(x, yp));
}

double km_weight_integral(double lambda, int M, double Theta, double s, double rel_tol,
                          double* err) {
    if (err) *err = 0.0;
    if (s <= 0.0) return 0.0;
    const double cM = gegenbauer(lambda, M, Theta);
    const double cM1 = gegenbauer(lambda, M - 1, Theta);
    const double b = 2.0 * lambda + M - 1;
    auto f = [&](double z) {
        const double w = (z - Theta) * (z - Theta) + (1.0 - Theta) * (1.0 + Theta);
        return std::pow(w, lambda - 1.0) * (M * cM - b * cM1 * z) * std::pow(z, M - 1);
    };
    // Split where the weight base is smallest (z = Theta) and at z = 1.
    std::vector<double> cuts{0.0};
    if (Theta > 0.0 && Theta < s) cuts.push_back(Theta);
    if (1.0 < s && std::abs(1.0 - Theta) > 1e-14) cuts.push_back(1.0);
    cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        double e = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, cuts[i], cuts[i + 1], 15, rel_tol, &e);
        if (err) *err += e;
    }
    return total;
}

double kernel_KM_integral(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp,
                          double tol) {
    check_params(p);
    if (p.M < 1) throw std::domain_error("kernel integral form: requires M >= 1");
    const KernelArgs a = kernel_args(x, yp);
    if (a.rho == 0.0) throw std::domain_error("kernel: K_M singular at y' = 0");
    const double K = std::pow(a.dist2, -p.lambda);
    double err = 0.0;
    const double I = km_weight_integral(p.lambda, p.M, a.Theta, a.r / a.rho, 1e-13, &err);
    // The weighted integral's error is absolute; scale to the kernel.
    if (K * err > tol)
        throw AccuracyError("kernel integral form: tolerance not met", K * err);
    return K * I;
}

double kernel_KM_integral_lambda_one(int M, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    if (M < 1) throw std::domain_error("kernel integral form: requires M >= 1");
    const KernelArgs a = kernel_args(x, yp);
    const double s = a.r / a.rho;
    const double K = 1.0 / a.dist2;
    const double sM = std::pow(s, M);
    return K * (gegenbauer(1.0, M, a.Theta) * sM - gegenbauer(1.0, M - 1, a.Theta) * sM * s);
}

double kernel_KM_second(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    check_params(p);
    if (p.M < 1) throw std::domain_error("second-kind kernel: requires M >= 1");
    return km_second_direct(p.lambda, p.M, kernel_args(x, yp));
}

double bound_constant_d1(double lambda, int M) {
    return 2.0 * lambda * binom_real(2.0 * lambda + M, M - 1);
}

namespace {

double first_kind_bound(double lambda, int M, double theta, double r, double rho) {
    const double s = r / rho;
    const double sec2l = std::pow(1.0 / std::cos(theta), 2.0 * lambda);
    const double base = bound_constant_d1(lambda, M) * std::pow(2.0, 2.0 * lambda) * sec2l *
                        std::pow(r + rho, -2.0 * lambda);
    if (lambda >= 0.5) return base * std::pow(s, M) * std::pow(1.0 + s, 2.0 * lambda - 1.0);
    return base * std::pow(s, M - 1) * std::min(s, std::pow(s, 2.0 * lambda)) / lambda;
}

}  // namespace

double kernel_bound_first(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    check_params(p);
    if (p.M < 1) throw std::domain_error("kernel bound: requires M >= 1");
    return first_kind_bound(p.lambda, p.M, x.theta, x.r, yp.norm());
}

double kernel_bound_second(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    check_params(p);
    if (p.M < 1) throw std::domain_error("kernel bound: requires M >= 1");
    return first_kind_bound(p.lambda, p.M, x.theta, yp.norm(), x.r);
}

double kernel_eval(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp) {
    check_params(p);
    const KernelArgs a = kernel_args(x, yp);
    if (p.kind == KernelKind::second) {
        if (p.M < 1) throw std::domain_error("second-kind kernel: requires M >= 1");
        return km_second(p.lambda, p.M, a);
    }
    if (p.M >= 1 && a.rho == 0.0) throw std::domain_error("kernel: K_M singular at y' = 0");
    return km_first(p.lambda, p.M, a);
}

}  // namespace hs
