#pragma once

#include <vector>

namespace hs {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Cached rule with q points; thread safe.
const GaussRule& gauss_legendre(int q);

/// Fixed-order integral of g over [a, b] split into `panels` equal panels.
template <class G>
double gauss_integrate(G&& g, double a, double b, int q = 20, int panels = 1) {
    const GaussRule& r = gauss_legendre(q);
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double half = 0.5 * h;
        const double mid = lo + half;
        for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * half * g(mid + half * r.x[i]);
    }
    return s;
}

}  // namespace hs
