#pragma once

#include <stdexcept>

#include "halfspace/geometry.hpp"

namespace hs {

enum class KernelKind { first, second };

struct KernelParams {
    double lambda = 1.0;
    int M = 0;
    KernelKind kind = KernelKind::first;
};

/// Raised when an adaptive integral cannot reach its tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

/// Scalar description of a kernel evaluation: r = |x|, rho = |y'|,
/// Theta = sin(theta) cos(theta'), dist2 = |y' - y|^2 + x_n^2.
struct KernelArgs {
    double r;
    double rho;
    double Theta;
    double dist2;
};

KernelArgs kernel_args(const HalfSpacePoint& x, const BoundaryPoint& yp);

/// [|y' - y|^2 + x_n^2]^{-lambda}, Cartesian form.
double kernel_K(double lambda, const HalfSpacePoint& x, const BoundaryPoint& yp);
/// Same kernel through |y'|^2 - 2|y'||x|Theta + |x|^2.
double kernel_K_polar(double lambda, const HalfSpacePoint& x, const BoundaryPoint& yp);

/// K minus the first M terms of its expansion in powers of |x|/|y'|.
double kernel_KM_direct(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp);
/// Same quantity as the convergent tail sum over m >= M; requires |x| < |y'|.
double kernel_KM_series(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp);
/// Same quantity from the one-dimensional integral representation (M >= 1).
double kernel_KM_integral(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp,
                          double tol = 1e-10);
/// Integral representation at lambda = 1, where the weight is identically one.
double kernel_KM_integral_lambda_one(int M, const HalfSpacePoint& x, const BoundaryPoint& yp);

/// K minus the first M terms of its expansion in powers of |y'|/|x| (M >= 1).
double kernel_KM_second(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp);

/// Explicit majorant of |K_M| (first kind).
double kernel_bound_first(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp);
/// Majorant of |K~_M| obtained by exchanging |x| and |y'| in the first-kind bound.
double kernel_bound_second(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp);

/// Dispatching evaluator: first or second kind, switching to the tail
/// series where direct subtraction would cancel.
double kernel_eval(const KernelParams& p, const HalfSpacePoint& x, const BoundaryPoint& yp);

// Scalar kernels used by the quadrature layer.
double km_first(double lambda, int M, const KernelArgs& a);
double km_second(double lambda, int M, const KernelArgs& a);
double km_first_direct(double lambda, int M, const KernelArgs& a);
double km_first_series(double lambda, int M, const KernelArgs& a);
double km_second_direct(double lambda, int M, const KernelArgs& a);
double km_second_series(double lambda, int M, const KernelArgs& a);

/// Integral of (1 - 2 Theta z + z^2)^{lambda-1} Phi_-(Theta, z) z^{M-1} over [0, s].
double km_weight_integral(double lambda, int M, double Theta, double s, double rel_tol,
                          double* err = nullptr);

/// x^{-lambda} with fast paths for half-integer lambda.
double inv_pow(double x, double lambda);

/// 2 lambda binom(2 lambda + M, M - 1).
double bound_constant_d1(double lambda, int M);

}  // namespace hs
