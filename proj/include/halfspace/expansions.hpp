#pragma once

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "halfspace/data.hpp"
#include "halfspace/geometry.hpp"
#include "halfspace/quadrature.hpp"

namespace hs {

enum class Family { dirichlet, neumann };

/// Dirichlet index m denotes h_{m+1}^{(0)} = x_n |x|^m C_m^{n/2}(Theta);
/// Neumann index m denotes h_m^{(1)} = |x|^m C_m^{(n-2)/2}(Theta).
struct HarmonicFamilyTerm {
    Family family = Family::dirichlet;
    int m = 0;
    int n = 3;
};

int degree(const HarmonicFamilyTerm& t);

/// Evaluates the harmonic polynomial at a Cartesian point of R^n. Theta is
/// taken against the boundary unit vector `pole` (e_1 when empty). The Neumann
/// family at n = 2 uses the limit (2/m) |x|^m T_m(Theta).
double harmonic_term(const HarmonicFamilyTerm& t, const std::vector<double>& x,
                     const std::vector<double>& pole = {});

/// |x|^{-(deg + n - 2)} times the spherical harmonic of the term, harmonic for x != 0.
double kelvin_term(const HarmonicFamilyTerm& t, const std::vector<double>& x,
                   const std::vector<double>& pole = {});

/// Y_{m+1}^{(0)} at the direction of x (only theta and y_hat are used).
double coefficient_Y0(int m, const BoundaryData& f, const HalfSpacePoint& x_hat,
                      const QuadratureSpec& spec);
/// Y_m^{(1)} at the direction of x; n >= 3.
double coefficient_Y1(int m, const BoundaryData& f, const HalfSpacePoint& x_hat,
                      const QuadratureSpec& spec);

struct ExpansionValue {
    double partial_sum = 0.0;
    /// Direct integral minus partial sum.
    double remainder = 0.0;
    /// Remainder computed independently from the second-kind kernel.
    double remainder_second = 0.0;
    double direct = 0.0;
};

/// Expansion of D[f] or N[f] in inverse powers of |x|, with a coefficient cache.
class AsymptoticExpansion {
public:
    AsymptoticExpansion(Family family, BoundaryData f, int n, QuadratureSpec spec);

    /// Coefficient of |x|^{-(m + n - 1)} (Dirichlet) or |x|^{-(m + n - 2)} (Neumann).
    double coefficient(int m, double theta, const std::vector<double>& y_hat) const;
    double partial_sum(int M, const HalfSpacePoint& x) const;
    double direct(const HalfSpacePoint& x) const;
    double remainder_second(int M, const HalfSpacePoint& x) const;
    ExpansionValue evaluate(int M, const HalfSpacePoint& x) const;

private:
    Family family_;
    BoundaryData f_;
    int n_;
    QuadratureSpec spec_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, double, std::vector<double>>, double> cache_;
};

ExpansionValue asymptotic_expansion(Family family, const BoundaryData& f, int M,
                                    const HalfSpacePoint& x, const QuadratureSpec& spec);

/// Coefficient gamma_{n,m,l}(theta) of the addition formula
/// C_m^{n/2}(sin(theta) t) = sum_l gamma_{n,m,l}(theta) C_{m-2l}^{(n-1)/2}(t).
double addition_gamma(int n, int m, int l, double theta);

/// delta_{n,m,l}(y_hat) = int f |y'|^m C_{m-2l}^{(n-1)/2}(y_hat . y_hat').
double addition_delta(int n, int m, int l, const std::vector<double>& y_hat, const BoundaryData& f,
                      const QuadratureSpec& spec);

/// Y_{m+1}^{(0)} reassembled from the addition formula.
double addition_separation(int n, int m, double theta, const std::vector<double>& y_hat,
                           const BoundaryData& f, const QuadratureSpec& spec);
/// Y_m^{(1)} reassembled from the addition formula with n - 2 in place of n (n >= 4).
double addition_separation_neumann(int n, int m, double theta, const std::vector<double>& y_hat,
                                   const BoundaryData& f, const QuadratureSpec& spec);

/// C_m^{n/2}(y1 . y2).
double zonal_harmonic(int n, int m, const std::vector<double>& y1, const std::vector<double>& y2);

/// Signed value stored as log|v| and sign; sign 0 encodes v = 0.
struct LogValue {
    double log_abs = 0.0;
    int sign = 0;
    double value() const;
};

/// Closed-form I_{n,m}^{(1)}(theta) = int_0^pi C_m^{(n-2)/2}(sin theta cos phi) sin^{n-3} phi dphi.
LogValue exp_example_I1(int n, int m, double theta);
/// Same integral by Gauss-Legendre quadrature.
double exp_example_I1_numeric(int n, int m, double theta);

/// Y_m^{(1)} for f = exp(-|y|), closed form; zero for odd m.
LogValue exp_example_Y1(int n, int m, double theta);
double example_exp_closed_form(int n, int m, double theta);

/// Y_{m+1}^{(0)} for f = exp(-|y|), n >= 5, from the derivative relation between the two families.
LogValue exp_example_Y0(int n, int m, double theta);
double exp_example_I0_numeric(int n, int m, double theta);

struct DivergenceTerm {
    int k = 0;
    /// log of |x|^{-(2k + n - 2)} |Y_{2k}^{(1)}|; -inf when the term vanishes.
    double log_magnitude = 0.0;
    double magnitude = 0.0;
};

/// Neumann-series term magnitudes for exp(-|y|) at |x| = r, k = 0..k_max.
std::vector<DivergenceTerm> divergence_demo(int n, double r, double theta, int k_max);

/// First k after which the term magnitudes increase strictly through the end of
/// the list; -1 when none.
int divergence_onset(const std::vector<DivergenceTerm>& terms);

}  // namespace hs
