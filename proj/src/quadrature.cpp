#include "halfspace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "halfspace/gauss.hpp"

namespace hs {

namespace {

constexpr double kPi = std::numbers::pi;

double vnorm(const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

// Orthonormal basis of R^d whose first vector is `pole`.
std::vector<std::vector<double>> frame(const std::vector<double>& pole) {
    const std::size_t d = pole.size();
    std::vector<std::vector<double>> basis{pole};
    for (std::size_t k = 0; k < d && basis.size() < d; ++k) {
        std::vector<double> v(d, 0.0);
        v[k] = 1.0;
        for (const auto& b : basis) {
            double c = 0.0;
            for (std::size_t i = 0; i < d; ++i) c += v[i] * b[i];
            for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
        }
        const double l = vnorm(v);
        if (l < 1e-8) continue;
        for (double& a : v) a /= l;
        basis.push_back(v);
    }
    return basis;
}

void clean_breaks(std::vector<double>& b, double lo, double hi) {
    std::vector<double> in;
    for (double t : b)
        if (t >= lo && t <= hi) in.push_back(t);
    in.push_back(lo);
    in.push_back(hi);
    std::sort(in.begin(), in.end());
    b.clear();
    for (double t : in)
        if (b.empty() || t - b.back() > 1e-12 * std::max(1.0, std::abs(t))) b.push_back(t);
    if (b.back() < hi) b.back() = hi;
}

// Breakpoints clustering geometrically at `peak` with width `h`.
void add_geometric(std::vector<double>& b, double peak, double h, double lo, double hi) {
    if (!(h > 0.0)) return;
    b.push_back(peak);
    const double span = (hi - lo) + std::abs(peak - lo) + std::abs(peak - hi);
    for (int k = -3; k < 80; ++k) {
        const double t = h * std::ldexp(1.0, k);
        if (t > span) break;
        b.push_back(peak + t);
        b.push_back(peak - t);
    }
}

std::vector<double> radial_breaks(double lo, double hi, int panels, bool global, double scale,
                                  double peak, double h) {
    std::vector<double> b;
    if (!global) {
        for (int i = 1; i < panels; ++i) b.push_back(lo + (hi - lo) * i / panels);
    } else {
        const double core = std::min(hi, lo + 4.0 * scale);
        for (int i = 1; i < panels; ++i) b.push_back(lo + (core - lo) * i / panels);
        b.push_back(core);
        for (double t = core; t < hi; t *= 2.0) b.push_back(t);
    }
    add_geometric(b, peak, h, lo, hi);
    clean_breaks(b, lo, hi);
    return b;
}

struct SphereRule {
    // Directions of the complement sphere S^{d-2} in frame coordinates 1..d-1.
    std::vector<std::vector<double>> eta;
    std::vector<double> w;
};

SphereRule complement_rule(int d, int q) {
    SphereRule s;
    if (d == 2) {
        s.eta = {{1.0}, {-1.0}};
        s.w = {1.0, 1.0};
    } else if (d == 3) {
        const int nb = std::max(8, 2 * q);
        for (int j = 0; j < nb; ++j) {
            const double b = 2.0 * kPi * j / nb;
            s.eta.push_back({std::cos(b), std::sin(b)});
            s.w.push_back(2.0 * kPi / nb);
        }
    } else if (d == 4) {
        const GaussRule& g = gauss_legendre(q);
        const int nb = std::max(8, 2 * q);
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double t = g.x[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
            for (int j = 0; j < nb; ++j) {
                const double b = 2.0 * kPi * j / nb;
                s.eta.push_back({t, st * std::cos(b), st * std::sin(b)});
                s.w.push_back(g.w[i] * 2.0 * kPi / nb);
            }
        }
    } else if (d != 1) {
        throw std::domain_error("quadrature: boundary dimension must be 1..4");
    }
    return s;
}

struct PieceGeometry {
    std::vector<double> center;
    double lo;
    double hi;
    bool global;
    double scale;
    std::vector<double> pole;
    std::vector<double> angle_breaks;
    bool follow_peak;
    std::vector<double> radial_breaks;
};

void emit_piece(const BoundaryData& f, const PieceGeometry& pg, const NodeOptions& opt,
                const QuadratureSpec& spec, int level, bool keep_zero, NodeSet& out) {
    const int d = f.dim;
    const int q = spec.angular_order + 4 * level;
    const bool has_x = !opt.x_ref.empty();
    double peak = -1.0, h = -1.0;
    std::vector<double> rel(static_cast<std::size_t>(d), 0.0);
    if (has_x) {
        for (int i = 0; i < d; ++i) rel[static_cast<std::size_t>(i)] = opt.x_ref[static_cast<std::size_t>(i)] - pg.center[static_cast<std::size_t>(i)];
        peak = vnorm(rel);
        h = opt.x_ref[static_cast<std::size_t>(d)];
    }
    std::vector<double> pole = pg.pole;
    if (pole.empty()) {
        if (has_x && peak > 1e-14 * std::max(1.0, pg.scale)) {
            pole = rel;
            for (double& a : pole) a /= peak;
        } else {
            pole.assign(static_cast<std::size_t>(d), 0.0);
            pole[0] = 1.0;
        }
    }
    const int panels = std::max(1, spec.radial_panels) << level;
    std::vector<double> rb =
        radial_breaks(pg.lo, pg.hi, panels, pg.global, pg.scale, has_x ? peak : 0.0, has_x ? h : -1.0);
    if (!pg.radial_breaks.empty()) {
        rb.insert(rb.end(), pg.radial_breaks.begin(), pg.radial_breaks.end());
        clean_breaks(rb, pg.lo, pg.hi);
    }
    const GaussRule& g = gauss_legendre(q);

    // Radial nodes.
    std::vector<double> rr, rw;
    for (std::size_t k = 0; k + 1 < rb.size(); ++k) {
        const double a = rb[k], b = rb[k + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double r = mid + half * g.x[i];
            rr.push_back(r);
            rw.push_back(half * g.w[i] * std::pow(r, d - 1));
        }
    }

    auto push = [&](const std::vector<double>& yp, double weight) {
        if (opt.exclude_radius > 0.0 && vnorm(yp) <= opt.exclude_radius) return;
        const double fv = f.eval(yp.data());
        if (fv == 0.0 && !keep_zero) return;
        out.y.insert(out.y.end(), yp.begin(), yp.end());
        out.rho.push_back(vnorm(yp));
        out.w.push_back(weight);
        out.f.push_back(fv);
    };

    std::vector<double> yp(static_cast<std::size_t>(d));
    if (d == 1) {
        for (int sgn : {1, -1}) {
            for (std::size_t i = 0; i < rr.size(); ++i) {
                yp[0] = pg.center[0] + sgn * pole[0] * rr[i];
                push(yp, rw[i]);
            }
        }
        return;
    }

    // Angle from the pole.
    std::vector<double> ab;
    const int base_ang = 4 << level;
    for (int i = 1; i < base_ang; ++i) ab.push_back(kPi * i / base_ang);
    for (double t : pg.angle_breaks) ab.push_back(t);
    if (has_x && pg.follow_peak && peak > 0.0 && h > 0.0 && h < peak) add_geometric(ab, 0.0, h / peak, 0.0, kPi);
    clean_breaks(ab, 0.0, kPi);
    std::vector<double> aa, aw;
    for (std::size_t k = 0; k + 1 < ab.size(); ++k) {
        const double a = ab[k], b = ab[k + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double t = mid + half * g.x[i];
            aa.push_back(t);
            aw.push_back(half * g.w[i] * std::pow(std::sin(t), d - 2));
        }
    }
    const SphereRule sr = complement_rule(d, std::max(4, q / 2 + 2));
    const auto basis = frame(pole);
    std::vector<double> dir(static_cast<std::size_t>(d));
    for (std::size_t ia = 0; ia < aa.size(); ++ia) {
        const double ca = std::cos(aa[ia]), sa = std::sin(aa[ia]);
        for (std::size_t ie = 0; ie < sr.eta.size(); ++ie) {
            for (int c = 0; c < d; ++c) {
                double v = ca * basis[0][static_cast<std::size_t>(c)];
                for (int j = 1; j < d; ++j)
                    v += sa * sr.eta[ie][static_cast<std::size_t>(j - 1)] * basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
                dir[static_cast<std::size_t>(c)] = v;
            }
            const double wa = aw[ia] * sr.w[ie];
            for (std::size_t i = 0; i < rr.size(); ++i) {
                for (int c = 0; c < d; ++c)
                    yp[static_cast<std::size_t>(c)] = pg.center[static_cast<std::size_t>(c)] + rr[i] * dir[static_cast<std::size_t>(c)];
                push(yp, rw[i] * wa);
            }
        }
    }
}

double center_norm(const std::vector<double>& c) { return vnorm(c); }

// Fraction of harmonic measure outside the ball of radius R about the projection.
double exterior_mass(int n, double xn, double R) {
    const double phi = std::atan2(R, xn);
    const double I = gauss_integrate([n](double t) { return std::pow(std::sin(t), n - 2); }, phi,
                                     kPi / 2, 20, 2);
    return alpha_n(n) * sphere_area(n - 1) * I;
}

}  // namespace

double alpha_n(int n) { return 2.0 / (n * ball_volume(n)); }

double truncation_radius(const BoundaryData& f, const NodeOptions& opt, const QuadratureSpec& spec) {
    if (spec.truncation_radius > 0.0) return spec.truncation_radius;
    const int d = f.dim;
    if (f.exp_rate > 0.0)
        return (60.0 + 4.0 * (opt.moment + d + std::max(0.0, -opt.kernel_decay))) / f.exp_rate;
    const double e = f.growth_exponent + d + opt.moment - opt.kernel_decay;
    if (!(e < 0.0)) throw std::domain_error("quadrature: data growth too fast for this kernel");
    double xr = 1.0;
    if (!opt.x_ref.empty()) xr = std::max(1.0, vnorm(opt.x_ref));
    const double target = 0.1 * spec.abs_tol * (-e) / std::pow(1.0 + xr, opt.kernel_growth);
    double R = std::pow(target, 1.0 / e);
    return std::clamp(R, std::max(100.0, 100.0 * xr), 1e15);
}

NodeSet build_nodes(const BoundaryData& f, const NodeOptions& opt, const QuadratureSpec& spec,
                    int level) {
    NodeSet out;
    out.dim = f.dim;
    const int d = f.dim;
    const bool has_x = !opt.x_ref.empty();
    if (has_x && static_cast<int>(opt.x_ref.size()) != d + 1)
        throw std::domain_error("quadrature: point dimension does not match data");
    if (f.pieces.empty()) return out;

    // Near the boundary over compact data, integrate in polar form about the projection.
    if (has_x && f.compact()) {
        const double h = opt.x_ref[static_cast<std::size_t>(d)];
        double min_scale = std::numeric_limits<double>::infinity();
        bool near = false;
        std::vector<double> y(opt.x_ref.begin(), opt.x_ref.begin() + d);
        for (const auto& p : f.pieces) {
            min_scale = std::min(min_scale, p.scale);
            std::vector<double> rel(y);
            for (int i = 0; i < d; ++i) rel[static_cast<std::size_t>(i)] -= p.center[static_cast<std::size_t>(i)];
            if (vnorm(rel) < p.r_max + 0.5 * p.scale) near = true;
        }
        if (near && h < 0.1 * min_scale) {
            PieceGeometry pg;
            pg.center = y;
            pg.lo = 0.0;
            pg.hi = vnorm(y) + f.support_radius();
            pg.global = false;
            pg.scale = min_scale;
            pg.follow_peak = false;
            out.centered_on_projection = true;
            out.centered_radius = pg.hi;
            out.f_center = f.eval(y.data());
            emit_piece(f, pg, opt, spec, level, true, out);
            return out;
        }
    }

    double R = std::numeric_limits<double>::infinity();
    if (!f.compact()) R = truncation_radius(f, opt, spec);
    for (const auto& p : f.pieces) {
        PieceGeometry pg;
        pg.center = p.center;
        pg.lo = p.r_min;
        pg.global = !std::isfinite(p.r_max);
        pg.hi = pg.global ? R : p.r_max;
        pg.scale = p.scale;
        pg.pole = p.pole;
        pg.angle_breaks = p.angle_breaks;
        pg.follow_peak = p.pole.empty();
        NodeOptions o = opt;
        if (center_norm(p.center) < 1e-14) {
            pg.radial_breaks = opt.origin_breaks;
            if (opt.exclude_radius > 0.0) {
                pg.lo = std::max(pg.lo, opt.exclude_radius);
                o.exclude_radius = 0.0;
            }
        }
        if (pg.hi <= pg.lo) continue;
        emit_piece(f, pg, o, spec, level, false, out);
    }
    return out;
}

namespace {

struct Resolved {
    double lambda;
    int M;
    KernelKind kind;
    bool cutoff_split;
    double exclude;
    int n;
};

Resolved resolve(const PotentialSpec& p) {
    const int n = p.n;
    const double ld = n / 2.0;
    const double ln = (n - 2) / 2.0;
    auto need_neumann = [&] {
        if (n < 3) throw std::domain_error("Neumann integrals require n >= 3");
    };
    switch (p.kind) {
        case Potential::F: return {p.lambda, p.M, KernelKind::first, false, 1.0, n};
        case Potential::F_second: return {p.lambda, p.M, KernelKind::second, false, 0.0, n};
        case Potential::D: return {ld, 0, KernelKind::first, false, 0.0, n};
        case Potential::N: need_neumann(); return {ln, 0, KernelKind::first, false, 0.0, n};
        case Potential::D_M: return {ld, p.M, KernelKind::first, false, 0.0, n};
        case Potential::N_M: need_neumann(); return {ln, p.M, KernelKind::first, false, 0.0, n};
        case Potential::D_second: return {ld, p.M, KernelKind::second, false, 0.0, n};
        case Potential::N_second: need_neumann(); return {ln, p.M, KernelKind::second, false, 0.0, n};
        case Potential::u: return {ld, p.M, KernelKind::first, true, 0.0, n};
        case Potential::v: need_neumann(); return {ln, p.M, KernelKind::first, true, 0.0, n};
    }
    throw std::logic_error("unknown potential");
}

double prefactor(const PotentialSpec& p, double xn) {
    const int n = p.n;
    switch (p.kind) {
        case Potential::F:
        case Potential::F_second: return 1.0;
        case Potential::D:
        case Potential::D_M:
        case Potential::D_second:
        case Potential::u: return alpha_n(n) * xn;
        default: return alpha_n(n) / (n - 2);
    }
}

}  // namespace

NodeOptions node_options(const PotentialSpec& p, const BoundaryData& f, const std::vector<double>& x) {
    const Resolved r = resolve(p);
    if (f.dim != p.n - 1) throw std::domain_error("potential: data dimension must be n - 1");
    NodeOptions o;
    o.x_ref = x;
    o.exclude_radius = r.exclude;
    if (r.cutoff_split) o.origin_breaks = {1.0, 2.0};
    if (r.kind == KernelKind::first) {
        o.kernel_decay = r.M + 2.0 * r.lambda;
        o.kernel_growth = r.M;
    } else {
        o.kernel_decay = -(r.M - 1.0);
        o.kernel_growth = 0;
    }
    return o;
}

double potential_sum(const PotentialSpec& p, const NodeSet& nodes, const double* x) {
    const Resolved rs = resolve(p);
    const int d = rs.n - 1;
    if (nodes.dim != d) throw std::domain_error("potential: node dimension mismatch");
    const double xn = x[d];
    double r2 = xn * xn;
    for (int i = 0; i < d; ++i) r2 += x[i] * x[i];
    const double r = std::sqrt(r2);
    const bool subtract = nodes.centered_on_projection && p.kind == Potential::D;
    const double fc = nodes.f_center;
    double sum = 0.0;
    const std::size_t N = nodes.size();
    for (std::size_t k = 0; k < N; ++k) {
        double fv = nodes.f[k];
        if (subtract) fv -= fc;
        if (fv == 0.0) continue;
        const double* yp = &nodes.y[k * static_cast<std::size_t>(d)];
        const double rho = nodes.rho[k];
        double d2 = xn * xn, dot = 0.0;
        for (int i = 0; i < d; ++i) {
            const double t = yp[i] - x[i];
            d2 += t * t;
            dot += yp[i] * x[i];
        }
        KernelArgs a{r, rho, (r > 0.0 && rho > 0.0) ? dot / (r * rho) : 0.0, d2};
        double kv;
        if (rs.M == 0) {
            kv = inv_pow(d2, rs.lambda);
        } else if (rho == 0.0) {
            continue;
        } else if (rs.kind == KernelKind::second) {
            kv = km_second(rs.lambda, rs.M, a);
        } else if (rs.cutoff_split) {
            const double c = cutoff_w(yp, d);
            const double K = inv_pow(d2, rs.lambda);
            kv = c == 0.0 ? K : (c * km_first(rs.lambda, rs.M, a) + (1.0 - c) * K);
        } else {
            kv = km_first(rs.lambda, rs.M, a);
        }
        sum += nodes.w[k] * fv * kv;
    }
    double value = prefactor(p, xn) * sum;
    if (subtract) value += fc * (1.0 - exterior_mass(rs.n, xn, nodes.centered_radius));
    return value;
}

QuadResult evaluate(const PotentialSpec& p, const BoundaryData& f, const HalfSpacePoint& x,
                    const QuadratureSpec& spec) {
    if (x.n != p.n) throw std::domain_error("potential: point dimension mismatch");
    const Resolved rs = resolve(p);
    const bool modified_first = rs.kind == KernelKind::first && rs.M >= 1;
    if (modified_first && !rs.cutoff_split && rs.exclude == 0.0 && f.support_min_radius <= 0.0)
        throw std::domain_error("modified integral: data support must avoid a neighbourhood of 0");
    const std::vector<double> xc = x.cartesian();
    const NodeOptions opt = node_options(p, f, xc);
    double prev = 0.0, err = std::numeric_limits<double>::infinity();
    for (int L = spec.base_level; L <= spec.max_level; ++L) {
        const NodeSet nodes = build_nodes(f, opt, spec, L);
        const double val = potential_sum(p, nodes, xc.data());
        if (L > spec.base_level) {
            err = std::abs(val - prev);
            if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(val)))
                return {val, err, L, nodes.size()};
        }
        prev = val;
    }
    throw AccuracyError("quadrature: tolerance not met", err);
}

FrozenPotential::FrozenPotential(const PotentialSpec& p, const BoundaryData& f,
                                 const std::vector<double>& x_ref, const QuadratureSpec& spec,
                                 int level)
    : p_(p), nodes_(build_nodes(f, node_options(p, f, x_ref), spec, level)) {}

double FrozenPotential::operator()(const std::vector<double>& x) const {
    return potential_sum(p_, nodes_, x.data());
}

QuadResult integral_F_ex(const KernelParams& params, const BoundaryData& f, const HalfSpacePoint& x,
                         const QuadratureSpec& spec) {
    PotentialSpec p;
    p.kind = params.kind == KernelKind::first ? Potential::F : Potential::F_second;
    p.n = x.n;
    p.M = params.M;
    p.lambda = params.lambda;
    if (params.kind == KernelKind::second && params.M < 1)
        throw std::domain_error("second-kind integral requires M >= 1");
    if (f.integrability_M < params.M && params.kind == KernelKind::second && !f.compact())
        throw std::domain_error("integral_F: data does not satisfy the convergence condition for M");
    return evaluate(p, f, x, spec);
}

double integral_F(const KernelParams& params, const BoundaryData& f, const HalfSpacePoint& x,
                  const QuadratureSpec& spec) {
    KernelParams k = params;
    k.kind = KernelKind::first;
    return integral_F_ex(k, f, x, spec).value;
}

double integral_F_second(const KernelParams& params, const BoundaryData& f, const HalfSpacePoint& x,
                         const QuadratureSpec& spec) {
    KernelParams k = params;
    k.kind = KernelKind::second;
    return integral_F_ex(k, f, x, spec).value;
}

namespace {
double eval_kind(Potential kind, int M, const BoundaryData& f, const HalfSpacePoint& x,
                 const QuadratureSpec& spec) {
    PotentialSpec p;
    p.kind = kind;
    p.n = x.n;
    p.M = M;
    return evaluate(p, f, x, spec).value;
}
}  // namespace

double dirichlet_D(const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec) {
    return eval_kind(Potential::D, 0, f, x, spec);
}
double neumann_N(const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec) {
    return eval_kind(Potential::N, 0, f, x, spec);
}
double dirichlet_DM(int M, const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec) {
    return eval_kind(M == 0 ? Potential::D : Potential::D_M, M, f, x, spec);
}
double neumann_NM(int M, const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec) {
    return eval_kind(M == 0 ? Potential::N : Potential::N_M, M, f, x, spec);
}
double dirichlet_D_second(int M, const BoundaryData& f, const HalfSpacePoint& x,
                          const QuadratureSpec& spec) {
    return eval_kind(Potential::D_second, M, f, x, spec);
}
double neumann_N_second(int M, const BoundaryData& f, const HalfSpacePoint& x,
                        const QuadratureSpec& spec) {
    return eval_kind(Potential::N_second, M, f, x, spec);
}
double solution_u(const BoundaryData& f, int M, const HalfSpacePoint& x, const QuadratureSpec& spec) {
    return eval_kind(M == 0 ? Potential::D : Potential::u, M, f, x, spec);
}
double solution_v(const BoundaryData& f, int M, const HalfSpacePoint& x, const QuadratureSpec& spec) {
    return eval_kind(M == 0 ? Potential::N : Potential::v, M, f, x, spec);
}

QuadResult integrate_data(const BoundaryData& f, const std::function<double(const double*, double)>& g,
                          const QuadratureSpec& spec, int moment) {
    NodeOptions opt;
    opt.moment = moment;
    double prev = 0.0, err = std::numeric_limits<double>::infinity();
    for (int L = spec.base_level; L <= spec.max_level; ++L) {
        const NodeSet nodes = build_nodes(f, opt, spec, L);
        double s = 0.0;
        const std::size_t d = static_cast<std::size_t>(nodes.dim);
        for (std::size_t k = 0; k < nodes.size(); ++k)
            s += nodes.w[k] * nodes.f[k] * g(&nodes.y[k * d], nodes.rho[k]);
        if (L > spec.base_level) {
            err = std::abs(s - prev);
            if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(s))) return {s, err, L, nodes.size()};
        }
        prev = s;
    }
    throw AccuracyError("quadrature: tolerance not met", err);
}

BoundaryData directional_weight(const BoundaryData& f, const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != f.dim) throw std::domain_error("directional_weight: dimension");
    BoundaryData g = f;
    auto fe = f.eval;
    const int d = f.dim;
    g.eval = [fe, z, d](const double* y) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += z[static_cast<std::size_t>(i)] * y[i];
        return s == 0.0 ? 0.0 : s * fe(y);
    };
    g.name = f.name + "_directional";
    g.growth_exponent = f.growth_exponent + 1.0;
    return g;
}

}  // namespace hs
