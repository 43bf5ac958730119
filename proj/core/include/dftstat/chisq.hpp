#pragma once

namespace dftstat {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// without cancellation in the tail.
double gamma_q(double a, double x);

/// P(chi^2_dof > x). Throws InvalidInputError for x < 0 or dof == 0.
double chisq_sf(double x, int dof);

/// Chi-square density at x (zero for x < 0).
double chisq_pdf(double x, int dof);

/// Smallest x with P(chi^2_dof <= x) = p, for p in [0, 1).
double chisq_quantile(double p, int dof);

}  // namespace dftstat
