#pragma once

#include <vector>

namespace hs {

/// Superscript and degree of a Gegenbauer polynomial C_m^lambda.
/// Negative degrees denote the zero polynomial.
struct GegenbauerParams {
    double lambda;
    int degree;
};

/// C_m^lambda(t) by the forward three-term recurrence.
double gegenbauer(double lambda, int m, double t);
double eval(const GegenbauerParams& p, double t);

/// All of C_0..C_{m_max} at t; out has size m_max + 1.
void gegenbauer_all(double lambda, int m_max, double t, double* out);

/// C_m^lambda(1) = Gamma(2 lambda + m) / (Gamma(2 lambda) m!), via lgamma.
double eval_at_one(const GegenbauerParams& p);

/// d/dt C_m^lambda(t) = 2 lambda C_{m-1}^{lambda+1}(t).
double derivative(const GegenbauerParams& p, double t);

/// Taylor partial sum of the generating function, sum_{m<terms} z^m C_m^lambda(t).
double generating_function_partial_sum(double lambda, double t, double z, int terms);

/// Closed form (1 - 2tz + z^2)^{-lambda}.
double generating_function(double lambda, double t, double z);

/// Zeros of C_m^lambda in (-1, 1), ascending.
std::vector<double> roots(const GegenbauerParams& p);

enum class Sign { plus, minus };

/// Phi_{+-}(Theta, zeta) = M C_M(Theta) +- (2 lambda + M - 1) C_{M-1}(Theta) zeta.
double phi_pm(double lambda, int M, double Theta, double zeta, Sign sign);

/// Generalized binomial coefficient binom(a, k) for real a, integer k >= 0.
double binom_real(double a, int k);

}  // namespace hs
