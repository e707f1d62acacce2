#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "halfspace/data.hpp"
#include "halfspace/geometry.hpp"
#include "halfspace/quadrature.hpp"

namespace hs {

struct SharpnessConstants {
    double lambda = 0.0;
    int M = 1;
    int mu = 0;    // M = 2 mu + eps0
    int eps0 = 0;
    /// Smallest positive zero of C_M or C_{M-1}; 1 when M = 1.
    double beta1 = 1.0;
    /// Largest zero of C_M^{min(1, lambda)}.
    double beta2 = 0.0;
    double gamma_lm = 0.0;
    /// Largest positive root of A^4 + (1 - gamma) A^2 - 2.
    double r0 = 0.0;
    /// Upper limit min(2, r0, sec(pi / 2M)) for A.
    double A_max = 2.0;
    double A = 1.0;
    /// Reflection weight for the mirrored balls.
    double A_lambda = 1.0;
    /// min of C_{M-1}^lambda on [1/A, 1].
    double min_C_prev = 1.0;
    /// arcsin sqrt(A / (2A - 1)).
    double theta0 = 0.0;
    /// Smallest polar angle for which B_b(a e_1) lies in Omega_3.
    double theta_contain = 0.0;
};

SharpnessConstants compute_constants(double lambda, int M);

/// (-1)^{mu + eps0} = (-1)^{ceil(M/2)}.
int sign_factor(int M);

enum class Region { omega1, omega2, omega3, omega_gt, omega_lt };

/// Angular band used for the odd-M case of Omega_1.
/// `mirrored`: cos(theta') in [-beta1/2, -beta1/3], where the signed Phi_- is positive.
/// `literal`: arccos(beta1/3) <= theta' <= pi - arccos(beta1/2); contains Theta > 0
/// where the sign fails, kept as a control.
enum class OddBand { mirrored, literal };

struct RegionSpec {
    Region which = Region::omega1;
    int M = 1;
    SharpnessConstants constants;
    HalfSpacePoint x_ref;
    OddBand odd_band = OddBand::mirrored;
};

/// Range [lo, hi] of cos(theta') admitted by Omega_1.
std::pair<double, double> omega1_cos_band(int M, double beta1, OddBand band = OddBand::mirrored);

bool region_contains(const RegionSpec& region, const BoundaryPoint& yp);

/// Result of a sampling check.
struct SignReport {
    std::string check;
    std::map<std::string, double> params;
    long samples = 0;
    double min_value = 0.0;
    double max_value = 0.0;
    bool pass = false;
};

/// Samples theta, theta' in Omega_1, zeta in [0,1], s in [0,10] and reports the
/// minimum of (-1)^{ceil(M/2)} Phi_-(Theta, s zeta).
SignReport sign_check_phi(double lambda, int M, long samples, std::uint64_t seed,
                          OddBand band = OddBand::mirrored);

/// Same quantity with theta' = 0 and Theta near 1, outside Omega_1.
SignReport sign_check_phi_control(double lambda, int M, long samples, std::uint64_t seed);

/// Samples y' in Omega_3 for the point x and reports min K_M / (K s^M).
SignReport sign_check_KM_omega3(double lambda, int M, const HalfSpacePoint& x, long samples,
                                std::uint64_t seed);

/// Value of K_M / (K s^M) at s = Theta = 1 from the integral representation.
double omega3_corner_ratio(double lambda, int M);
/// Gamma(2 lambda + M) / (Gamma(2 lambda) Gamma(M)) * B(2 lambda, M).
double omega3_corner_closed_form(double lambda, int M);

/// Data on half balls B_1(c_i e_2), (-1)^M y_1 >= 0, with sign (-1)^{ceil(M/2)} and
/// profile f_i (1 - |y' - c_i e_2|) |y_1'|. dim >= 2.
BoundaryData data_half_balls(int dim, const std::vector<double>& amplitudes,
                             const std::vector<double>& centers, double lambda, int M);

/// f_i = d7 psi_i c_i^{2 lambda}.
std::vector<double> half_ball_amplitudes(const std::vector<double>& psi, const std::vector<double>& centers,
                                         double d7, double lambda);

/// Integral of (1 - |y|) |y_1| over a half unit ball of R^dim.
double half_ball_profile_integral(int dim);

/// Balls B_{b_i}(a_i e_1) with profile f_i (1 - |y' - a_i e_1| / b_i), mirrored to
/// -a_i e_1 with weight (-1)^M A_lambda.
BoundaryData data_balls_super_extension(int dim, const std::vector<double>& a, const std::vector<double>& b,
                                        const std::vector<double>& amplitudes, const SharpnessConstants& c);

/// f_i = psi_i b_i^{2 lambda - n + 1} / d9.
std::vector<double> super_ball_amplitudes(const std::vector<double>& psi, const std::vector<double>& b,
                                          int n, double d9, double lambda);

/// d9 = d8 2^{-M/2} |S^{n-2}| int_0^1 (1 - rho)(rho^2 + 1)^{-lambda} rho^{n-2} drho.
double d9_from_d8(double d8, int n, double lambda, int M);

struct LowerBoundRow {
    int j = 0;
    double x_norm = 0.0;
    double F = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct LowerBoundReport {
    std::string check;
    std::map<std::string, double> params;
    /// Measured constant entering the bound (d5 for half balls, d8 for super balls).
    double measured_constant = 0.0;
    std::vector<LowerBoundRow> rows;
    bool pass = false;
};

/// Half-ball construction evaluated at x_j = c_j (sin(theta) e_1 + cos(theta) e_n):
/// checks F[f](x_j) >= f_j c_j^{-2 lambda} / d7 with d7 built from a measured d5.
LowerBoundReport half_ball_lower_bound(int n, double lambda, int M, double theta,
                                       const std::vector<double>& centers,
                                       const std::vector<double>& amplitudes,
                                       const QuadratureSpec& spec, long samples, std::uint64_t seed);

/// Super-ball construction at x_j = a_j e_1 + b_j e_n: checks
/// F[f](x_j) >= d9 f_j b_j^{n-1-2 lambda} with d9 built from a measured d8.
LowerBoundReport super_ball_lower_bound(int n, double lambda, int M, const std::vector<double>& a,
                                        const std::vector<double>& b, const std::vector<double>& amplitudes,
                                        const QuadratureSpec& spec, long samples, std::uint64_t seed);

/// Integral of f K_M over Omega_< and Omega_> at x (mirrored-ball contributions).
double balanced_sign_integral(const BoundaryData& f, const SharpnessConstants& c, const HalfSpacePoint& x,
                              const QuadratureSpec& spec);

}  // namespace hs
