#include "rig/rng.hpp"

namespace rig {

namespace {

std::int64_t binomial_inversion(CounterRng& rng, std::int64_t n, double p) {
  // Walk the CDF; expected cost O(np + 1).
  double q = 1.0 - p;
  double s = p / q;
  double f = std::exp(static_cast<double>(n) * std::log1p(-p));  // pmf(0)
  double u = rng.next_unit();
  std::int64_t k = 0;
  double cdf = f;
  while (u > cdf && k < n) {
    ++k;
    f *= s * static_cast<double>(n - k + 1) / static_cast<double>(k);
    cdf += f;
  }
  return k;
}

// BTRS (Hoermann 1993), valid for n*p >= 10 and p <= 0.5.
std::int64_t binomial_btrs(CounterRng& rng, std::int64_t n, double p) {
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double spq = std::sqrt(nd * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double m = std::floor((nd + 1.0) * p);
  const double lpq = std::log(p / q);
  const double h = std::lgamma(m + 1.0) + std::lgamma(nd - m + 1.0);

  for (;;) {
    double u = rng.next_unit() - 0.5;
    double v = rng.next_unit();
    double us = 0.5 - std::fabs(u);
    double kd = std::floor((2.0 * a / us + b) * u + c);
    if (kd < 0.0 || kd > nd) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kd);
    v = std::log(v * alpha / (a / (us * us) + b));
    double ub = h - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) + (kd - m) * lpq;
    if (v <= ub) return static_cast<std::int64_t>(kd);
  }
}

}  // namespace

std::int64_t binomial_draw(CounterRng& rng, std::int64_t n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("binomial_draw: bad arguments");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial_draw(rng, n, 1.0 - p);
  if (static_cast<double>(n) * p < 30.0) return binomial_inversion(rng, n, p);
  return binomial_btrs(rng, n, p);
}

}  // namespace rig
