#pragma once

#include <span>

namespace devperf {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, continued fraction (modified Lentz)
/// otherwise. Accurate to ~1e-14 over the ranges used here.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Upper tail of the chi-squared distribution with df degrees of freedom:
/// P(X >= stat) = Q(df/2, stat/2).
double chi2_sf(double stat, int df);

struct Chi2Gof {
  double stat = 0.0;
  int df = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of observed counts against a reference
/// distribution given as counts or proportions (normalized internally).
///
/// Cells with zero reference mass are excluded and must hold zero observed
/// count. expected_i = n * ref_i / sum(ref); stat = sum (obs - exp)^2 / exp;
/// df = (number of included cells) - 1. With pool_min_expected > 0, cells
/// whose expected count falls below the threshold are merged into a single
/// pseudo-cell before the statistic, and df shrinks accordingly.
///
/// df == 0 (reference concentrated in one cell) yields p = 1 by convention.
/// Negative counts and length mismatches are reported via std::invalid_argument.
Chi2Gof chi2_gof(std::span<const double> observed, std::span<const double> reference,
                 double pool_min_expected = 0.0);

}  // namespace devperf
