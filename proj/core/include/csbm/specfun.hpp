#pragma once

#include <span>

namespace csbm::specfun {

// Natural log of the Gamma function, x > 0.
// Stirling series for large x, recurrence lift otherwise; accurate to a few
// ulp across [1e-6, 1e8]. Throws std::domain_error on non-positive or
// non-finite input.
double log_gamma(double x);

// ln B(a,b) = log_gamma(a) + log_gamma(b) - log_gamma(a+b), a,b > 0.
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), 0 <= x <= 1, a,b > 0.
// Continued fraction with the symmetry switch at x > (a+1)/(a+b+2).
double reg_inc_beta(double x, double a, double b);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a),
// a > 0, x >= 0. Series for x < a+1, continued fraction otherwise.
double reg_lower_inc_gamma(double a, double x);

// ln sum_i e^{v_i}, max-shifted. Requires a nonempty span with at least one
// finite entry; throws std::invalid_argument otherwise.
double log_sum_exp(std::span<const double> values);

// Inverse of reg_inc_beta in x: returns x with I_x(a,b) = p, by bisection.
double inv_reg_inc_beta(double p, double a, double b);

}  // namespace csbm::specfun
