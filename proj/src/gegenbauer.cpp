#include "halfspace/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hs {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("gegenbauer: lambda must be positive");
}

}  // namespace

double gegenbauer(double lambda, int m, double t) {
    check_lambda(lambda);
    if (m < 0) return 0.0;
    if (m == 0) return 1.0;
    double c0 = 1.0;
    double c1 = 2.0 * lambda * t;
    for (int k = 2; k <= m; ++k) {
        const double c2 = (2.0 * (k - 1 + lambda) * t * c1 - (k - 2 + 2.0 * lambda) * c0) / k;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

double eval(const GegenbauerParams& p, double t) { return gegenbauer(p.lambda, p.degree, t); }

void gegenbauer_all(double lambda, int m_max, double t, double* out) {
    check_lambda(lambda);
    if (m_max < 0) return;
    out[0] = 1.0;
    if (m_max == 0) return;
    out[1] = 2.0 * lambda * t;
    for (int k = 2; k <= m_max; ++k)
        out[k] = (2.0 * (k - 1 + lambda) * t * out[k - 1] - (k - 2 + 2.0 * lambda) * out[k - 2]) / k;
}

double eval_at_one(const GegenbauerParams& p) {
    check_lambda(p.lambda);
    if (p.degree < 0) return 0.0;
    const double l2 = 2.0 * p.lambda;
    return std::exp(std::lgamma(l2 + p.degree) - std::lgamma(l2) - std::lgamma(p.degree + 1.0));
}

double derivative(const GegenbauerParams& p, double t) {
    check_lambda(p.lambda);
    if (p.degree <= 0) return 0.0;
    return 2.0 * p.lambda * gegenbauer(p.lambda + 1.0, p.degree - 1, t);
}

double generating_function_partial_sum(double lambda, double t, double z, int terms) {
    check_lambda(lambda);
    if (!(std::abs(z) < 1.0)) throw std::domain_error("generating function: |z| must be < 1");
    if (terms <= 0) return 0.0;
    std::vector<double> c(static_cast<std::size_t>(terms));
    gegenbauer_all(lambda, terms - 1, t, c.data());
    // Horner from the top keeps the sum free of explicit powers of z.
    double s = 0.0;
    for (int m = terms - 1; m >= 0; --m) s = s * z + c[static_cast<std::size_t>(m)];
    return s;
}

double generating_function(double lambda, double t, double z) {
    check_lambda(lambda);
    return std::pow(1.0 - 2.0 * t * z + z * z, -lambda);
}

std::vector<double> roots(const GegenbauerParams& p) {
    check_lambda(p.lambda);
    std::vector<double> out;
    const int m = p.degree;
    if (m <= 0) return out;
    const int grid = 8 * m;
    auto f = [&](double t) { return gegenbauer(p.lambda, m, t); };
    // Cosine-spaced grid from -1 to 1.
    double a = -1.0;
    double fa = f(a);
    for (int i = 1; i <= grid; ++i) {
        const double b = -std::cos(std::numbers::pi * i / grid);
        const double fb = f(b);
        if (fa == 0.0 && a > -1.0) {
            out.push_back(a);
        } else if (fa * fb < 0.0) {
            double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double r = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) {
                const double d = derivative(p, r);
                if (d == 0.0) break;
                const double step = f(r) / d;
                const double next = r - step;
                if (next <= a || next >= b) break;
                r = next;
            }
            out.push_back(r);
        }
        a = b;
        fa = fb;
    }
    std::sort(out.begin(), out.end());
    return out;
}

double phi_pm(double lambda, int M, double Theta, double zeta, Sign sign) {
    check_lambda(lambda);
    if (M < 1) throw std::domain_error("phi_pm: M must be >= 1");
    const double a = M * gegenbauer(lambda, M, Theta);
    const double b = (2.0 * lambda + M - 1) * gegenbauer(lambda, M - 1, Theta) * zeta;
    return sign == Sign::plus ? a + b : a - b;
}

double binom_real(double a, int k) {
    if (k < 0) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (a - i) / (i + 1);
    return r;
}

}  // namespace hs
