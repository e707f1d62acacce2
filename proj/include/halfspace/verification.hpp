#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "halfspace/data.hpp"
#include "halfspace/expansions.hpp"
#include "halfspace/geometry.hpp"
#include "halfspace/quadrature.hpp"

namespace hs {

enum class CheckStatus { pass, fail, inconclusive };

const char* to_string(CheckStatus s);

struct CheckReport {
    std::string name;
    std::map<std::string, double> parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::fail;
    std::optional<double> refinement_order;
    std::string note;

    bool pass() const { return status == CheckStatus::pass; }
};

/// pass when residual <= tolerance, fail otherwise (NaN fails).
CheckStatus status_for(double residual, double tolerance);

/// One JSON object per report, numbers written with round-trip precision.
std::string to_json_line(const CheckReport& r);

using Field = std::function<double(const std::vector<double>&)>;

/// Seven-point (2n + 1) second-difference Laplacian.
double fd_laplacian(const Field& field, const std::vector<double>& x, double h);

/// (4 L(h/2) - L(h)) / 3.
double fd_laplacian_richardson(const Field& field, const std::vector<double>& x, double h);

/// log2 of |L(h) - L(h/2)| / |L(h/2) - L(h/4)|.
double fd_refinement_order(const Field& field, const std::vector<double>& x, double h);

/// Order of the plain stencil on a smooth non-harmonic control; passes when the
/// smallest order over the points lies in [1.8, 2.2].
CheckReport check_fd_refinement(const std::string& name, const Field& field,
                                const std::vector<std::vector<double>>& points, double h);

enum class HarmonicTarget { harmonic_term, D, N, D_M, N_M, u, v };

const char* to_string(HarmonicTarget t);

struct HarmonicityCase {
    HarmonicTarget target = HarmonicTarget::harmonic_term;
    /// Used by harmonic_term.
    HarmonicFamilyTerm term;
    /// Used by the potentials.
    BoundaryData f = zero_data(2);
    int n = 3;
    int M = 0;
    QuadratureSpec spec;
};

/// Max normalized FD Laplacian over the points. Polynomials are normalized by
/// |x|^{2 - deg} / C(1); potentials by x_n^2 / max |field|. Potentials are frozen to
/// the node set chosen adaptively at each point. `h` is relative to x_n for potentials.
CheckReport check_harmonicity(const HarmonicityCase& c, const std::vector<std::vector<double>>& points,
                              double h, double tolerance);

/// Points in the box |y_i| <= half_width, x_n in [xn_lo, xn_hi].
std::vector<std::vector<double>> sample_interior_points(int n, int count, double half_width, double xn_lo,
                                                        double xn_hi, std::uint64_t seed);

enum class BoundaryProblem { dirichlet, neumann };

/// Dirichlet: |D[f](y, x_n) - f(y)| along the sequence. Neumann: |dN/dx_n + f(y)| with a
/// one-sided second-order difference of step x_n / 4. Passes when the gaps decrease and
/// the last is below tolerance.
CheckReport check_boundary(BoundaryProblem problem, const BoundaryData& f, const std::vector<double>& y,
                           const std::vector<double>& xn_sequence, const QuadratureSpec& spec,
                           double tolerance);

/// Derivative identities of K_M (1..8). x in R^n (x_n > 0), yp in R^{n-1}.
CheckReport check_prop31(int identity, double lambda, int M, const std::vector<double>& x,
                         const std::vector<double>& yp, double h, double tolerance);

/// Left side by central difference and right side in closed form.
struct Prop31Values {
    double fd = 0.0;
    double closed_form = 0.0;
};
Prop31Values prop31_values(int identity, double lambda, int M, const std::vector<double>& x,
                           const std::vector<double>& yp, double h);

/// Largest residual over random samples with |x|, |y'| in [0.5, 3], x_n >= 0.5 and
/// distance at least 0.5 between x and y'.
CheckReport check_prop31_random(int identity, double lambda, int M, int n, int samples, std::uint64_t seed,
                                double h, double tolerance);

/// Starting point of the path for the representation (1..5): theta_0, r_0, t_i,
/// rho or t_n. `coordinate` selects i for (3).
struct Prop32Anchor {
    double value = 0.0;
    int coordinate = 0;
};

/// N_M[f](x) rebuilt from D_{M-1} and D_{M-2} along a path, compared relative to
/// the direct value.
CheckReport check_prop32(int representation, const BoundaryData& f, int M, const HalfSpacePoint& x,
                         const Prop32Anchor& anchor, const QuadratureSpec& spec, double tolerance,
                         int outer_order = 20);

enum class GrowthTarget { F, u, v, F_second };

const char* to_string(GrowthTarget t);

struct GrowthCase {
    GrowthTarget target = GrowthTarget::F;
    BoundaryData f = zero_data(2);
    int n = 3;
    int M = 1;
    /// Used by F and F_second.
    double lambda = 1.0;
    QuadratureSpec spec;
};

struct GrowthSweep {
    std::vector<double> radii;
    std::vector<double> mu;
    /// mu(r) divided by the growth order (F, u, v) or multiplied by the decay order (F_second).
    std::vector<double> scaled;
    double exponent = 0.0;
};

std::vector<double> default_theta_grid();

GrowthSweep growth_sweep_values(const GrowthCase& c, const std::vector<double>& radii,
                                const std::vector<double>& thetas);

/// PASS when scaled[last] <= ratio_tol * scaled[0] and scaled[i + 1] <= (1 + wiggle) scaled[i]
/// for i >= 1.
CheckReport growth_sweep(const GrowthCase& c, const std::vector<double>& radii,
                         const std::vector<double>& thetas, double ratio_tol = 0.2, double wiggle = 0.05);

/// Runs jobs on up to `jobs` threads; results sorted by name.
std::vector<CheckReport> run_checks(const std::vector<std::function<CheckReport()>>& checks, int jobs);

struct SuiteSummary {
    int passed = 0;
    int failed = 0;
    int inconclusive = 0;
};
SuiteSummary summarize(const std::vector<CheckReport>& reports);

}  // namespace hs
