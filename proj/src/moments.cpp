#include "rig/moments.hpp"

#include <algorithm>
#include <cmath>

#include "rig/dd.hpp"

namespace rig {

double edge_prob(std::int64_t m, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(m) * std::log1p(-p * p));
}

double edge_prob_complement(std::int64_t m, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  return std::exp(static_cast<double>(m) * std::log1p(-p * p));
}

double binom2(std::int64_t n) {
  if (n < 2) return 0.0;
  if (n <= 1000000) {
    unsigned __int128 v = static_cast<unsigned __int128>(n) * (n - 1) / 2;
    return static_cast<double>(v);
  }
  double nd = static_cast<double>(n);
  return nd * (nd - 1.0) / 2.0;
}

double binom3(std::int64_t n) {
  if (n < 3) return 0.0;
  if (n <= 1000000) {
    unsigned __int128 v = static_cast<unsigned __int128>(n) * (n - 1) * (n - 2) / 6;
    return static_cast<double>(v);
  }
  double nd = static_cast<double>(n);
  return nd * (nd - 1.0) * (nd - 2.0) / 6.0;
}

double expected_edges(const ModelParams& params) {
  params.validate();
  return binom2(params.n) * edge_prob(params);
}

double cherry_cov(std::int64_t m, double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  double md = static_cast<double>(m);
  // (1-2p^2+p^3)^m = exp(m log1p(-p^2(2-p)))
  double base = std::exp(md * std::log1p(-p * p * (2.0 - p)));
  // (1-p_hat)^2 / base = (1 - p^3/(1+p-p^2))^m, so the difference factors as
  // base * (1 - ratio^m) with both factors evaluated in log form.
  double ratio_log = std::log1p(-p * p * p / (1.0 + p * (1.0 - p)));
  return base * (-std::expm1(md * ratio_log));
}

VarianceReport variance_edges(const ModelParams& params) {
  params.validate();
  VarianceReport r;
  double ph = edge_prob(params);
  r.mean = binom2(params.n) * ph;
  r.term_pairwise = binom2(params.n) * ph * edge_prob_complement(params);
  r.term_cherry = 6.0 * binom3(params.n) * cherry_cov(params.m, params.p);
  r.variance = r.term_pairwise + r.term_cherry;
  r.regime_mp3 = static_cast<double>(params.m) * params.p * params.p * params.p;
  return r;
}

RegimeMagnitudes variance_regime(const ModelParams& params) {
  params.validate();
  RegimeMagnitudes r;
  double nd = static_cast<double>(params.n);
  double md = static_cast<double>(params.m);
  double p = params.p;
  double ph = edge_prob(params);
  double phc = edge_prob_complement(params);
  r.mp3 = md * p * p * p;
  r.pair_term = nd * nd * ph * phc;
  double base = (p >= 1.0) ? 0.0 : std::exp(md * std::log1p(-p * p * (2.0 - p)));
  r.cherry_term = nd * nd * nd * base * std::min(1.0, r.mp3);
  r.mp3_small = (r.mp3 <= 1.0);
  if (r.mp3_small) {
    r.pair_simple = r.pair_term;
    r.cherry_simple = nd * nd * nd * r.mp3 * phc * phc;
  }
  return r;
}

}  // namespace rig
