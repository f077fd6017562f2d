#include "devperf/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace devperf {

namespace {

// P(a,x) by its power series, x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a,x) by the Legendre continued fraction, modified Lentz iteration.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double mult = d * c;
    h *= mult;
    if (std::fabs(mult - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
    throw std::invalid_argument("gamma_p: requires a > 0 and finite x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
    throw std::invalid_argument("gamma_q: requires a > 0 and finite x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_sf(double stat, int df) {
  if (df < 1) throw std::invalid_argument("chi2_sf: df must be >= 1");
  if (stat <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * stat);
}

Chi2Gof chi2_gof(std::span<const double> observed, std::span<const double> reference,
                 double pool_min_expected) {
  if (observed.size() != reference.size())
    throw std::invalid_argument("chi2_gof: observed/reference length mismatch");
  double n = 0.0, ref_total = 0.0;
  for (double o : observed) {
    if (o < 0.0 || !std::isfinite(o))
      throw std::invalid_argument("chi2_gof: negative or non-finite observed count");
    n += o;
  }
  for (double r : reference) {
    if (r < 0.0 || !std::isfinite(r))
      throw std::invalid_argument("chi2_gof: negative or non-finite reference mass");
    ref_total += r;
  }
  if (n <= 0.0) throw std::invalid_argument("chi2_gof: observed total is zero");
  if (ref_total <= 0.0) throw std::invalid_argument("chi2_gof: reference total is zero");

  // Cells with reference mass define the expected counts.
  std::vector<double> obs_cells, exp_cells;
  obs_cells.reserve(observed.size());
  exp_cells.reserve(observed.size());
  for (size_t i = 0; i < observed.size(); ++i) {
    if (reference[i] > 0.0) {
      obs_cells.push_back(observed[i]);
      exp_cells.push_back(n * (reference[i] / ref_total));
    } else if (observed[i] > 0.0) {
      throw std::invalid_argument("chi2_gof: observed mass in a zero-reference cell");
    }
  }

  if (pool_min_expected > 0.0) {
    double pooled_obs = 0.0, pooled_exp = 0.0;
    size_t kept = 0;
    bool pooled_any = false;
    for (size_t i = 0; i < exp_cells.size(); ++i) {
      if (exp_cells[i] < pool_min_expected) {
        pooled_obs += obs_cells[i];
        pooled_exp += exp_cells[i];
        pooled_any = true;
      } else {
        obs_cells[kept] = obs_cells[i];
        exp_cells[kept] = exp_cells[i];
        ++kept;
      }
    }
    obs_cells.resize(kept);
    exp_cells.resize(kept);
    if (pooled_any) {
      obs_cells.push_back(pooled_obs);
      exp_cells.push_back(pooled_exp);
    }
  }

  Chi2Gof r;
  r.df = static_cast<int>(obs_cells.size()) - 1;
  if (r.df <= 0) {
    r.df = r.df < 0 ? 0 : r.df;
    r.stat = 0.0;
    r.p_value = 1.0;
    return r;
  }
  double stat = 0.0;
  for (size_t i = 0; i < obs_cells.size(); ++i) {
    double diff = obs_cells[i] - exp_cells[i];
    stat += diff * diff / exp_cells[i];
  }
  r.stat = stat;
  double p = chi2_sf(stat, r.df);
  // keep p in (0, 1] so rule invariants and the printed format stay sane
  r.p_value = std::min(1.0, std::max(p, std::numeric_limits<double>::min()));
  return r;
}

}  // namespace devperf
