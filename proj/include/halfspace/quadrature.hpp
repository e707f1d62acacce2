#pragma once

#include <cstddef>
#include <vector>

#include "halfspace/data.hpp"
#include "halfspace/geometry.hpp"
#include "halfspace/kernels.hpp"

namespace hs {

struct QuadratureSpec {
    /// Outer radius for data of global support; 0 selects it from the growth class.
    double truncation_radius = 0.0;
    /// Equal radial panels per compact piece before refinement.
    int radial_panels = 6;
    /// Gauss points per panel at level 0.
    int angular_order = 10;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int base_level = 0;
    int max_level = 3;
};

/// Quadrature nodes in R^{n-1}: coordinates, |y'|, geometric weight and data value.
struct NodeSet {
    int dim = 2;
    std::vector<double> y;
    std::vector<double> rho;
    std::vector<double> w;
    std::vector<double> f;
    /// Data value at the polar center when the set is centered on the projection of x.
    double f_center = 0.0;
    bool centered_on_projection = false;
    /// Radius of the ball about the projection covered by a centered set.
    double centered_radius = 0.0;
    std::size_t size() const { return rho.size(); }
};

struct NodeOptions {
    /// Cartesian evaluation point in R^n used to place refinement; empty for none.
    std::vector<double> x_ref;
    /// Drop the region |y'| <= exclude_radius.
    double exclude_radius = 0.0;
    /// Decay exponent of the kernel in |y'| (for automatic truncation).
    double kernel_decay = 0.0;
    /// Power of |x| multiplying the kernel majorant (for automatic truncation).
    int kernel_growth = 0;
    /// Moment power |y'|^m carried by the integrand (for automatic truncation).
    int moment = 0;
    /// Extra radial breakpoints for pieces centred at the origin (cutoff radii).
    std::vector<double> origin_breaks;
};

NodeSet build_nodes(const BoundaryData& f, const NodeOptions& opt, const QuadratureSpec& spec,
                    int level);

/// Automatic truncation radius for global data.
double truncation_radius(const BoundaryData& f, const NodeOptions& opt, const QuadratureSpec& spec);

double alpha_n(int n);

/// Integrals computable by the library.
enum class Potential {
    F,         // int_{|y'|>1} f K_M(lambda)
    F_second,  // int f K~_M(lambda)
    D,
    N,
    D_M,
    N_M,
    D_second,
    N_second,
    u,  // D_M[w f] + D[(1 - w) f]
    v,  // N_M[w f] + N[(1 - w) f]
};

struct PotentialSpec {
    Potential kind = Potential::D;
    int n = 3;
    int M = 0;
    /// Only used by F and F_second.
    double lambda = 1.0;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int level = 0;
    std::size_t nodes = 0;
};

/// Evaluates a potential at the Cartesian point x against a fixed node set.
double potential_sum(const PotentialSpec& p, const NodeSet& nodes, const double* x);

NodeOptions node_options(const PotentialSpec& p, const BoundaryData& f, const std::vector<double>& x);

/// Adaptive evaluation: raises the level until successive values agree to tolerance.
QuadResult evaluate(const PotentialSpec& p, const BoundaryData& f, const HalfSpacePoint& x,
                    const QuadratureSpec& spec);

/// Potential evaluated with nodes frozen at a reference point, for finite differences.
class FrozenPotential {
public:
    FrozenPotential(const PotentialSpec& p, const BoundaryData& f, const std::vector<double>& x_ref,
                    const QuadratureSpec& spec, int level);
    double operator()(const std::vector<double>& x) const;
    const NodeSet& nodes() const { return nodes_; }

private:
    PotentialSpec p_;
    NodeSet nodes_;
};

QuadResult integral_F_ex(const KernelParams& params, const BoundaryData& f, const HalfSpacePoint& x,
                         const QuadratureSpec& spec);
double integral_F(const KernelParams& params, const BoundaryData& f, const HalfSpacePoint& x,
                  const QuadratureSpec& spec);
double integral_F_second(const KernelParams& params, const BoundaryData& f, const HalfSpacePoint& x,
                         const QuadratureSpec& spec);
double dirichlet_D(const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec);
double neumann_N(const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec);
double dirichlet_DM(int M, const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec);
double neumann_NM(int M, const BoundaryData& f, const HalfSpacePoint& x, const QuadratureSpec& spec);
double dirichlet_D_second(int M, const BoundaryData& f, const HalfSpacePoint& x,
                          const QuadratureSpec& spec);
double neumann_N_second(int M, const BoundaryData& f, const HalfSpacePoint& x,
                        const QuadratureSpec& spec);
double solution_u(const BoundaryData& f, int M, const HalfSpacePoint& x, const QuadratureSpec& spec);
double solution_v(const BoundaryData& f, int M, const HalfSpacePoint& x, const QuadratureSpec& spec);

/// Integral of g(y') f(y') over R^{n-1} (moments, expansion coefficients).
QuadResult integrate_data(const BoundaryData& f, const std::function<double(const double*, double)>& g,
                          const QuadratureSpec& spec, int moment = 0);

/// Data z . y' f(y').
BoundaryData directional_weight(const BoundaryData& f, const std::vector<double>& z);

}  // namespace hs
