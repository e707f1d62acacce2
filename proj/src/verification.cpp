#include "halfspace/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "halfspace/gauss.hpp"
#include "halfspace/gegenbauer.hpp"
#include "halfspace/kernels.hpp"

namespace hs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double vnorm(const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

std::map<std::string, double> with(std::map<std::string, double> m) { return m; }

}  // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

CheckStatus status_for(double residual, double tolerance) {
    return residual <= tolerance ? CheckStatus::pass : CheckStatus::fail;
}

std::string to_json_line(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = params;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["status"] = to_string(r.status);
    j["pass"] = r.pass();
    if (r.refinement_order) j["refinement_order"] = *r.refinement_order;
    else j["refinement_order"] = nullptr;
    if (!r.note.empty()) j["note"] = r.note;
    return j.dump();
}

// ---------------------------------------------------------------------------
// Finite differences

double fd_laplacian(const Field& field, const std::vector<double>& x, double h) {
    const double f0 = field(x);
    std::vector<double> p = x;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        p[i] = x[i] + h;
        const double fp = field(p);
        p[i] = x[i] - h;
        const double fm = field(p);
        p[i] = x[i];
        s += (fp - 2.0 * f0) + fm;
    }
    return s / (h * h);
}

double fd_laplacian_richardson(const Field& field, const std::vector<double>& x, double h) {
    return (4.0 * fd_laplacian(field, x, 0.5 * h) - fd_laplacian(field, x, h)) / 3.0;
}

double fd_refinement_order(const Field& field, const std::vector<double>& x, double h) {
    const double l1 = fd_laplacian(field, x, h);
    const double l2 = fd_laplacian(field, x, 0.5 * h);
    const double l4 = fd_laplacian(field, x, 0.25 * h);
    return std::log2(std::abs(l1 - l2) / std::abs(l2 - l4));
}

CheckReport check_fd_refinement(const std::string& name, const Field& field,
                                const std::vector<std::vector<double>>& points, double h) {
    CheckReport r;
    r.name = name;
    r.parameters = with({{"h", h}, {"points", static_cast<double>(points.size())}});
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& x : points) {
        const double q = fd_refinement_order(field, x, h);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    r.refinement_order = lo;
    r.residual = std::max(std::abs(lo - 2.0), std::abs(hi - 2.0));
    r.tolerance = 0.2;
    r.status = status_for(r.residual, r.tolerance);
    return r;
}

// ---------------------------------------------------------------------------
// Harmonicity

const char* to_string(HarmonicTarget t) {
    switch (t) {
        case HarmonicTarget::harmonic_term: return "harmonic_term";
        case HarmonicTarget::D: return "D";
        case HarmonicTarget::N: return "N";
        case HarmonicTarget::D_M: return "D_M";
        case HarmonicTarget::N_M: return "N_M";
        case HarmonicTarget::u: return "u";
        case HarmonicTarget::v: return "v";
    }
    return "?";
}

namespace {

PotentialSpec potential_for(HarmonicTarget t, int n, int M) {
    PotentialSpec p;
    p.n = n;
    p.M = M;
    switch (t) {
        case HarmonicTarget::D: p.kind = Potential::D; p.M = 0; break;
        case HarmonicTarget::N: p.kind = Potential::N; p.M = 0; break;
        case HarmonicTarget::D_M: p.kind = Potential::D_M; break;
        case HarmonicTarget::N_M: p.kind = Potential::N_M; break;
        case HarmonicTarget::u: p.kind = Potential::u; break;
        case HarmonicTarget::v: p.kind = Potential::v; break;
        case HarmonicTarget::harmonic_term: throw std::logic_error("not a potential");
    }
    return p;
}

double term_scale(const HarmonicFamilyTerm& t) {
    if (t.m == 0) return 1.0;
    if (t.family == Family::neumann && t.n == 2) return 2.0 / t.m;
    const double lambda = t.family == Family::dirichlet ? t.n / 2.0 : (t.n - 2) / 2.0;
    return eval_at_one({lambda, t.m});
}

}  // namespace

CheckReport check_harmonicity(const HarmonicityCase& c, const std::vector<std::vector<double>>& points,
                              double h, double tolerance) {
    CheckReport r;
    r.tolerance = tolerance;
    r.parameters["h"] = h;
    r.parameters["points"] = static_cast<double>(points.size());
    double worst = 0.0, noise = 0.0;
    double order = std::numeric_limits<double>::infinity();  // min over points with signal

    if (c.target == HarmonicTarget::harmonic_term) {
        const HarmonicFamilyTerm& t = c.term;
        r.name = std::string("harmonicity/") + (t.family == Family::dirichlet ? "h0" : "h1");
        r.parameters["n"] = t.n;
        r.parameters["m"] = t.m;
        const Field field = [&](const std::vector<double>& x) { return harmonic_term(t, x); };
        const double c1 = term_scale(t);
        const int deg = degree(t);
        for (const auto& x : points) {
            const double rx = vnorm(x);
            const double scale = c1 * std::pow(rx, deg);
            const double l1 = fd_laplacian(field, x, h), l2 = fd_laplacian(field, x, 0.5 * h);
            const double lap = (4.0 * l2 - l1) / 3.0;
            worst = std::max(worst, std::abs(lap) * rx * rx / scale);
            noise = std::max(noise, 40.0 * t.n * kEps * rx * rx / (h * h));
            if (std::abs(l2) * rx * rx / scale > 100.0 * 40.0 * t.n * kEps * rx * rx / (h * h))
                order = std::min(order, std::log2(std::abs(l1) / std::abs(l2)));
        }
    } else {
        r.name = std::string("harmonicity/") + to_string(c.target);
        r.parameters["n"] = c.n;
        r.parameters["M"] = c.M;
        const PotentialSpec p = potential_for(c.target, c.n, c.M);
        std::vector<double> laps;
        double fmax = 0.0;
        for (const auto& x : points) {
            const QuadResult q = evaluate(p, c.f, HalfSpacePoint::from_cartesian(x), c.spec);
            const FrozenPotential frozen(p, c.f, x, c.spec, q.level);
            const Field field = [&](const std::vector<double>& z) { return frozen(z); };
            const double xn = x.back();
            const double ha = h * xn;
            const double l1 = fd_laplacian(field, x, ha), l2 = fd_laplacian(field, x, 0.5 * ha);
            laps.push_back((4.0 * l2 - l1) / 3.0 * xn * xn);
            fmax = std::max(fmax, std::abs(q.value));
            const double pt_noise = 40.0 * c.n * kEps * std::abs(q.value) / (h * h);
            noise = std::max(noise, pt_noise);
            if (std::abs(l2) * xn * xn > 100.0 * pt_noise)
                order = std::min(order, std::log2(std::abs(l1) / std::abs(l2)));
        }
        if (fmax == 0.0) fmax = 1.0;
        for (double l : laps) worst = std::max(worst, std::abs(l) / fmax);
        noise /= fmax;
    }
    r.residual = worst;
    r.parameters["noise_estimate"] = noise;
    if (std::isfinite(order)) r.refinement_order = order;
    if (noise > tolerance) {
        r.status = CheckStatus::inconclusive;
        r.note = "rounding noise of the stencil exceeds the tolerance";
    } else {
        r.status = status_for(worst, tolerance);
    }
    return r;
}

std::vector<std::vector<double>> sample_interior_points(int n, int count, double half_width, double xn_lo,
                                                        double xn_hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uy(-half_width, half_width), un(xn_lo, xn_hi);
    std::vector<std::vector<double>> pts;
    for (int k = 0; k < count; ++k) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int i = 0; i + 1 < n; ++i) x[static_cast<std::size_t>(i)] = uy(rng);
        x.back() = un(rng);
        pts.push_back(x);
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Boundary behaviour

CheckReport check_boundary(BoundaryProblem problem, const BoundaryData& f, const std::vector<double>& y,
                           const std::vector<double>& xn_sequence, const QuadratureSpec& spec,
                           double tolerance) {
    if (static_cast<int>(y.size()) != f.dim) throw std::domain_error("check_boundary: point dimension");
    if (xn_sequence.empty()) throw std::domain_error("check_boundary: empty sequence");
    const int n = f.dim + 1;
    CheckReport r;
    r.name = problem == BoundaryProblem::dirichlet ? "boundary/dirichlet" : "boundary/neumann";
    r.tolerance = tolerance;
    r.parameters["n"] = n;
    const double fy = f(y);
    r.parameters["f(y)"] = fy;
    std::vector<double> gaps;
    for (double xn : xn_sequence) {
        std::vector<double> x = y;
        x.push_back(xn);
        double gap = 0.0;
        if (problem == BoundaryProblem::dirichlet) {
            PotentialSpec p{Potential::D, n, 0, 1.0};
            gap = std::abs(evaluate(p, f, HalfSpacePoint::from_cartesian(x), spec).value - fy);
        } else {
            PotentialSpec p{Potential::N, n, 0, 1.0};
            const QuadResult q = evaluate(p, f, HalfSpacePoint::from_cartesian(x), spec);
            const FrozenPotential frozen(p, f, x, spec, q.level);
            const double delta = 0.25 * xn;
            std::vector<double> x1 = x, x2 = x;
            x1.back() += delta;
            x2.back() += 2.0 * delta;
            const double d = (-3.0 * frozen(x) + 4.0 * frozen(x1) - frozen(x2)) / (2.0 * delta);
            gap = std::abs(d + fy);
        }
        gaps.push_back(gap);
        r.parameters["gap@" + std::to_string(xn)] = gap;
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < gaps.size(); ++i)
        if (gaps[i] > gaps[i - 1] + 1e-14) decreasing = false;
    r.residual = gaps.back();
    r.status = decreasing ? status_for(r.residual, tolerance) : CheckStatus::fail;
    if (!decreasing) r.note = "gaps do not decrease along the sequence";
    return r;
}

// ---------------------------------------------------------------------------
// Derivative identities of K_M

namespace {

// K_m(lambda, x, y') with K_m = K for m <= 0.
double km_cart(double lambda, int m, const std::vector<double>& x, const std::vector<double>& yp) {
    const std::size_t d = yp.size();
    double r2 = 0.0, rho2 = 0.0, yy = 0.0, dist2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        r2 += x[i] * x[i];
        rho2 += yp[i] * yp[i];
        yy += x[i] * yp[i];
        dist2 += (yp[i] - x[i]) * (yp[i] - x[i]);
    }
    r2 += x[d] * x[d];
    dist2 += x[d] * x[d];
    KernelArgs a;
    a.r = std::sqrt(r2);
    a.rho = std::sqrt(rho2);
    a.Theta = (a.r > 0.0 && a.rho > 0.0) ? std::clamp(yy / (a.r * a.rho), -1.0, 1.0) : 0.0;
    a.dist2 = dist2;
    return km_first(lambda, std::max(m, 0), a);
}

std::vector<double> y_part(const std::vector<double>& x) { return {x.begin(), x.end() - 1}; }

std::vector<double> unit_or(const std::vector<double>& v, std::size_t d) {
    const double nv = vnorm(v);
    if (nv == 0.0) return unit_vector(static_cast<int>(d), 0);
    std::vector<double> u = v;
    for (double& a : u) a /= nv;
    return u;
}

// Unit vector orthogonal to u in the plane of u and v (any orthogonal one when parallel).
std::vector<double> orthogonal_in_plane(const std::vector<double>& u, const std::vector<double>& v) {
    std::vector<double> w = v;
    double c = dot(u, v);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * u[i];
    if (vnorm(w) < 1e-12 * std::max(1.0, vnorm(v))) {
        for (std::size_t k = 0; k < u.size(); ++k) {
            w = unit_vector(static_cast<int>(u.size()), static_cast<int>(k));
            c = dot(u, w);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * u[i];
            if (vnorm(w) > 0.5) break;
        }
    }
    return unit_or(w, u.size());
}

}  // namespace

Prop31Values prop31_values(int identity, double lambda, int M, const std::vector<double>& x,
                           const std::vector<double>& yp, double h) {
    const std::size_t d = yp.size();
    if (x.size() != d + 1) throw std::domain_error("prop31: dimension mismatch");
    if (!(x[d] > 0.0)) throw std::domain_error("prop31: x must lie in the open half space");
    if (!(lambda > 0.0)) throw std::domain_error("prop31: lambda must be positive");
    if (M >= 1 && vnorm(yp) == 0.0) throw std::domain_error("prop31: y' = 0 with M >= 1");
    const double L = lambda, L1 = lambda + 1.0;
    const std::vector<double> y = y_part(x);
    const std::vector<double> yh = unit_or(y, d);
    const double r = vnorm(x), ynorm = vnorm(y), xn = x[d], rho = vnorm(yp);
    const double theta = std::atan2(ynorm, xn);
    auto K = [&](int m, const std::vector<double>& a, const std::vector<double>& b) {
        return km_cart(L, m, a, b);
    };
    auto Kp = [&](int m) { return km_cart(L1, m, x, yp); };

    // Fourth-order central difference of K_M along a one-parameter family.
    auto central = [&](auto&& point) {
        auto at = [&](double t) {
            const auto [a, b] = point(t);
            return K(M, a, b);
        };
        return (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
    };
    using Pair = std::pair<std::vector<double>, std::vector<double>>;
    Prop31Values out;
    switch (identity) {
        case 1: {
            auto pt = [&](double t) {
                std::vector<double> z(d + 1);
                for (std::size_t i = 0; i < d; ++i) z[i] = r * std::sin(theta + t) * yh[i];
                z[d] = r * std::cos(theta + t);
                return Pair{z, yp};
            };
            out.fd = central(pt);
            out.closed_form = 2.0 * L * xn * dot(yh, yp) * Kp(M - 1);
            break;
        }
        case 2: {
            auto pt = [&](double t) {
                std::vector<double> z = x;
                for (double& a : z) a *= (r + t) / r;
                return Pair{z, yp};
            };
            out.fd = central(pt);
            out.closed_form = 2.0 * L * (std::sin(theta) * dot(yh, yp) * Kp(M - 1) - r * Kp(M - 2));
            break;
        }
        case 3: {
            auto pt = [&](double t) {
                std::vector<double> z = x;
                z[0] += t;
                return Pair{z, yp};
            };
            out.fd = central(pt);
            out.closed_form = 2.0 * L * (yp[0] * Kp(M - 1) - y[0] * Kp(M - 2));
            break;
        }
        case 4: {
            auto pt = [&](double t) {
                std::vector<double> z(d + 1);
                for (std::size_t i = 0; i < d; ++i) z[i] = (ynorm + t) * yh[i];
                z[d] = xn;
                return Pair{z, yp};
            };
            out.fd = central(pt);
            out.closed_form = 2.0 * L * (dot(yh, yp) * Kp(M - 1) - ynorm * Kp(M - 2));
            break;
        }
        case 5: {
            auto pt = [&](double t) {
                std::vector<double> z = x;
                z[d] += t;
                return Pair{z, yp};
            };
            out.fd = central(pt);
            out.closed_form = -2.0 * L * xn * Kp(M - 2);
            break;
        }
        case 6: {
            const std::vector<double> yph = unit_or(yp, d);
            auto pt = [&](double t) {
                std::vector<double> b(d);
                for (std::size_t i = 0; i < d; ++i) b[i] = (rho + t) * yph[i];
                return Pair{x, b};
            };
            out.fd = central(pt);
            out.closed_form = 2.0 * L * (dot(y, yph) * Kp(M - 1) - rho * Kp(M));
            break;
        }
        case 7: {
            auto pt = [&](double t) {
                std::vector<double> b = yp;
                b[0] += t;
                return Pair{x, b};
            };
            out.fd = central(pt);
            out.closed_form = 2.0 * L * (y[0] * Kp(M - 1) - yp[0] * Kp(M));
            break;
        }
        case 8: {
            if (d < 2) throw std::domain_error("prop31 (viii): needs n >= 3");
            const std::vector<double> eta = orthogonal_in_plane(yh, yp);
            const double tp = std::atan2(dot(eta, yp), dot(yh, yp));
            auto pt = [&](double t) {
                std::vector<double> b(d);
                for (std::size_t i = 0; i < d; ++i)
                    b[i] = rho * (std::cos(tp + t) * yh[i] + std::sin(tp + t) * eta[i]);
                return Pair{x, b};
            };
            out.fd = central(pt);
            out.closed_form = -2.0 * L * ynorm * rho * std::sin(tp) * Kp(M - 1);
            break;
        }
        default: throw std::domain_error("prop31: identity must be 1..8");
    }
    return out;
}

CheckReport check_prop31(int identity, double lambda, int M, const std::vector<double>& x,
                         const std::vector<double>& yp, double h, double tolerance) {
    const Prop31Values v = prop31_values(identity, lambda, M, x, yp, h);
    CheckReport r;
    r.name = "prop31/" + std::to_string(identity);
    r.parameters = with({{"lambda", lambda}, {"M", M}, {"h", h}, {"fd", v.fd}, {"closed_form", v.closed_form}});
    r.residual = std::abs(v.fd - v.closed_form) / std::max(1.0, std::abs(v.closed_form));
    r.tolerance = tolerance;
    r.status = status_for(r.residual, tolerance);
    return r;
}

CheckReport check_prop31_random(int identity, double lambda, int M, int n, int samples, std::uint64_t seed,
                                double h, double tolerance) {
    if (n < 3) throw std::domain_error("prop31: sampling needs n >= 3");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> radius(0.5, 3.0), unif(0.0, 1.0);
    const std::size_t d = static_cast<std::size_t>(n - 1);
    auto direction = [&](std::size_t dim) {
        std::vector<double> v(dim);
        for (double& a : v) a = gauss(rng);
        return unit_or(v, dim);
    };
    double worst = 0.0;
    int drawn = 0;
    while (drawn < samples) {
        const double r = radius(rng);
        std::vector<double> x = direction(d + 1);
        x[d] = std::abs(x[d]);
        for (double& a : x) a *= r;
        std::vector<double> yp = direction(d);
        const double rho = radius(rng);
        for (double& a : yp) a *= rho;
        if (x[d] < 0.5) continue;
        double dist2 = x[d] * x[d];
        for (std::size_t i = 0; i < d; ++i) dist2 += (x[i] - yp[i]) * (x[i] - yp[i]);
        if (dist2 < 0.25) continue;
        const Prop31Values v = prop31_values(identity, lambda, M, x, yp, h);
        worst = std::max(worst, std::abs(v.fd - v.closed_form) / std::max(1.0, std::abs(v.closed_form)));
        ++drawn;
    }
    CheckReport rep;
    rep.name = "prop31/" + std::to_string(identity);
    rep.parameters = with({{"lambda", lambda}, {"M", M}, {"n", n}, {"samples", samples}, {"h", h},
                           {"seed", static_cast<double>(seed)}});
    rep.residual = worst;
    rep.tolerance = tolerance;
    rep.status = status_for(worst, tolerance);
    return rep;
}

// ---------------------------------------------------------------------------
// Neumann potentials through Dirichlet potentials

CheckReport check_prop32(int representation, const BoundaryData& f, int M, const HalfSpacePoint& x,
                         const Prop32Anchor& anchor, const QuadratureSpec& spec, double tolerance,
                         int outer_order) {
    const int n = x.n;
    if (n < 3) throw std::domain_error("prop32: needs n >= 3");
    if (f.dim != n - 1) throw std::domain_error("prop32: data dimension must be n - 1");
    if (M < 0) throw std::domain_error("prop32: M must be nonnegative");
    if (!(f.support_min_radius > 0.0))
        throw std::domain_error("prop32: the origin must lie outside the closure of the support");
    const std::size_t d = static_cast<std::size_t>(n - 1);

    auto D = [&](int m, const BoundaryData& g, const std::vector<double>& pt) {
        PotentialSpec p{m <= 0 ? Potential::D : Potential::D_M, n, std::max(m, 0), 1.0};
        return evaluate(p, g, HalfSpacePoint::from_cartesian(pt), spec).value;
    };
    auto NM = [&](const std::vector<double>& pt) {
        PotentialSpec p{M == 0 ? Potential::N : Potential::N_M, n, M, 1.0};
        return evaluate(p, f, HalfSpacePoint::from_cartesian(pt), spec).value;
    };

    const std::vector<double> xc = x.cartesian();
    const std::vector<double> y = y_part(xc);
    std::vector<double> yh = x.y_hat.empty() ? unit_vector(static_cast<int>(d), 0) : x.y_hat;
    if (vnorm(y) > 0.0) yh = unit_or(y, d);
    const double xn = xc[d];
    const BoundaryData f_yh = directional_weight(f, yh);

    double integral = 0.0, anchor_value = 0.0;
    switch (representation) {
        case 1: {
            auto pt = [&](double t) { return HalfSpacePoint::polar(n, x.r, t, yh).cartesian(); };
            integral = gauss_integrate([&](double t) { return D(M - 1, f_yh, pt(t)); }, anchor.value, x.theta,
                                       outer_order);
            anchor_value = NM(pt(anchor.value));
            break;
        }
        case 2: {
            auto pt = [&](double t) {
                std::vector<double> z = xc;
                for (double& a : z) a *= t / x.r;
                return z;
            };
            const double tn = std::tan(x.theta), sc = 1.0 / std::cos(x.theta);
            integral = gauss_integrate(
                [&](double t) {
                    const std::vector<double> z = pt(t);
                    const double a = tn == 0.0 ? 0.0 : tn * D(M - 1, f_yh, z) / t;
                    return a - sc * D(M - 2, f, z);
                },
                anchor.value, x.r, outer_order);
            anchor_value = NM(pt(anchor.value));
            break;
        }
        case 3: {
            const std::size_t i = static_cast<std::size_t>(anchor.coordinate);
            if (i >= d) throw std::domain_error("prop32: coordinate out of range");
            const BoundaryData f_ei = directional_weight(f, unit_vector(static_cast<int>(d), anchor.coordinate));
            auto pt = [&](double t) {
                std::vector<double> z = xc;
                z[i] = t;
                return z;
            };
            integral = gauss_integrate(
                [&](double t) {
                    const std::vector<double> z = pt(t);
                    return (D(M - 1, f_ei, z) - t * D(M - 2, f, z)) / xn;
                },
                anchor.value, y[i], outer_order);
            anchor_value = NM(pt(anchor.value));
            break;
        }
        case 4: {
            auto pt = [&](double t) {
                std::vector<double> z(d + 1);
                for (std::size_t k = 0; k < d; ++k) z[k] = t * yh[k];
                z[d] = xn;
                return z;
            };
            integral = gauss_integrate(
                [&](double t) {
                    const std::vector<double> z = pt(t);
                    return (D(M - 1, f_yh, z) - t * D(M - 2, f, z)) / xn;
                },
                anchor.value, vnorm(y), outer_order);
            anchor_value = NM(pt(anchor.value));
            break;
        }
        case 5: {
            if (!(anchor.value > 0.0)) throw std::domain_error("prop32: t_n must be positive");
            auto pt = [&](double t) {
                std::vector<double> z = xc;
                z[d] = t;
                return z;
            };
            integral = -gauss_integrate([&](double t) { return D(M - 2, f, pt(t)); }, anchor.value, xn,
                                        outer_order);
            anchor_value = NM(pt(anchor.value));
            break;
        }
        default: throw std::domain_error("prop32: representation must be 1..5");
    }
    const double direct = NM(xc);
    const double rebuilt = integral + anchor_value;
    CheckReport r;
    r.name = "prop32/" + std::to_string(representation);
    r.parameters = with({{"n", n}, {"M", M}, {"anchor", anchor.value}, {"direct", direct}, {"rebuilt", rebuilt},
                         {"path_integral", integral}});
    r.residual = std::abs(rebuilt - direct) / std::max(std::abs(direct), 1e-300);
    r.tolerance = tolerance;
    r.status = status_for(r.residual, tolerance);
    return r;
}

// ---------------------------------------------------------------------------
// Growth sweeps

const char* to_string(GrowthTarget t) {
    switch (t) {
        case GrowthTarget::F: return "F";
        case GrowthTarget::u: return "u";
        case GrowthTarget::v: return "v";
        case GrowthTarget::F_second: return "F_second";
    }
    return "?";
}

std::vector<double> default_theta_grid() { return {0.0, 0.3, 0.6, 0.9, 1.2, 1.45}; }

GrowthSweep growth_sweep_values(const GrowthCase& c, const std::vector<double>& radii,
                                const std::vector<double>& thetas) {
    GrowthSweep s;
    s.radii = radii;
    double weight_power = 0.0;
    switch (c.target) {
        case GrowthTarget::F: weight_power = 2.0 * c.lambda; s.exponent = c.M; break;
        case GrowthTarget::u: weight_power = c.n - 1; s.exponent = c.M + 1; break;
        case GrowthTarget::v: weight_power = c.n - 2; s.exponent = c.M; break;
        case GrowthTarget::F_second:
            weight_power = 2.0 * c.lambda;
            s.exponent = -(c.M + 2.0 * c.lambda - 1.0);
            break;
    }
    for (double r : radii) {
        double mu = 0.0;
        for (double th : thetas) {
            const HalfSpacePoint x = HalfSpacePoint::polar(c.n, r, th);
            double val = 0.0;
            switch (c.target) {
                case GrowthTarget::F:
                    val = integral_F({c.lambda, c.M, KernelKind::first}, c.f, x, c.spec);
                    break;
                case GrowthTarget::u: val = solution_u(c.f, c.M, x, c.spec); break;
                case GrowthTarget::v: val = solution_v(c.f, c.M, x, c.spec); break;
                case GrowthTarget::F_second:
                    val = integral_F_second({c.lambda, c.M, KernelKind::second}, c.f, x, c.spec);
                    break;
            }
            mu = std::max(mu, std::abs(val) * std::pow(std::cos(th), weight_power));
        }
        s.mu.push_back(mu);
        s.scaled.push_back(mu / std::pow(r, s.exponent));
    }
    return s;
}

CheckReport growth_sweep(const GrowthCase& c, const std::vector<double>& radii,
                         const std::vector<double>& thetas, double ratio_tol, double wiggle) {
    if (radii.size() < 2) throw std::domain_error("growth_sweep: needs at least two radii");
    const GrowthSweep s = growth_sweep_values(c, radii, thetas);
    CheckReport r;
    r.name = std::string("growth/") + to_string(c.target);
    r.parameters = with({{"n", c.n}, {"M", c.M}, {"exponent", s.exponent}});
    if (c.target == GrowthTarget::F || c.target == GrowthTarget::F_second) r.parameters["lambda"] = c.lambda;
    for (std::size_t i = 0; i < s.radii.size(); ++i)
        r.parameters["scaled@" + std::to_string(static_cast<long>(s.radii[i]))] = s.scaled[i];
    r.tolerance = ratio_tol;
    if (s.scaled.front() == 0.0) {
        const bool all_zero = std::all_of(s.scaled.begin(), s.scaled.end(), [](double v) { return v == 0.0; });
        r.residual = all_zero ? 0.0 : std::numeric_limits<double>::infinity();
        r.status = status_for(r.residual, ratio_tol);
        return r;
    }
    r.residual = s.scaled.back() / s.scaled.front();
    bool monotone = true;
    for (std::size_t i = 1; i + 1 < s.scaled.size(); ++i)
        if (s.scaled[i + 1] > (1.0 + wiggle) * s.scaled[i]) monotone = false;
    r.status = monotone ? status_for(r.residual, ratio_tol) : CheckStatus::fail;
    if (!monotone) r.note = "weighted sequence increases beyond the allowed wiggle";
    return r;
}

// ---------------------------------------------------------------------------
// Suites

std::vector<CheckReport> run_checks(const std::vector<std::function<CheckReport()>>& checks, int jobs) {
    std::vector<CheckReport> out(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < checks.size(); i = next++) {
            try {
                out[i] = checks[i]();
            } catch (const std::exception& e) {
                out[i].name = "error/" + std::to_string(i);
                out[i].status = CheckStatus::fail;
                out[i].residual = std::numeric_limits<double>::infinity();
                out[i].note = e.what();
            }
        }
    };
    const int t = std::max(1, std::min<int>(jobs, static_cast<int>(checks.size())));
    std::vector<std::thread> pool;
    for (int k = 1; k < t; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    std::stable_sort(out.begin(), out.end(),
                     [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
    return out;
}

SuiteSummary summarize(const std::vector<CheckReport>& reports) {
    SuiteSummary s;
    for (const auto& r : reports) {
        if (r.status == CheckStatus::pass) ++s.passed;
        else if (r.status == CheckStatus::fail) ++s.failed;
        else ++s.inconclusive;
    }
    return s;
}

}  // namespace hs
