#pragma once

#include <cstdint>

#include "rig/model.hpp"

namespace rig {

// Marginal edge probability 1 - (1-p^2)^m, evaluated as -expm1(m*log1p(-p^2))
// so it stays accurate for m*p^2 << 1 and m up to 1e12.
double edge_prob(std::int64_t m, double p);
inline double edge_prob(const ModelParams& params) { return edge_prob(params.m, params.p); }

// (1-p^2)^m = 1 - p_hat, evaluated directly; 1 - edge_prob(...) would lose
// precision once p_hat is close to 1.
double edge_prob_complement(std::int64_t m, double p);
inline double edge_prob_complement(const ModelParams& params) {
  return edge_prob_complement(params.m, params.p);
}

// E[N_E] = C(n,2) * p_hat.
double expected_edges(const ModelParams& params);

// Covariance of two edge indicators sharing a vertex:
// (1-2p^2+p^3)^m - (1-p_hat)^2, computed without cancellation.
double cherry_cov(std::int64_t m, double p);

struct VarianceReport {
  double mean = 0.0;
  double variance = 0.0;
  double term_pairwise = 0.0;  // C(n,2) p_hat (1-p_hat)
  double term_cherry = 0.0;    // 6 C(n,3) [(1-2p^2+p^3)^m - (1-p_hat)^2]
  double regime_mp3 = 0.0;     // m p^3
};

VarianceReport variance_edges(const ModelParams& params);

// Order-of-magnitude summands of Var[N_E] used for diagnostics and ratio
// tests; the simplified pair applies when m p^3 <= 1.
struct RegimeMagnitudes {
  double mp3 = 0.0;
  double pair_term = 0.0;     // n^2 p_hat (1-p_hat)
  double cherry_term = 0.0;   // n^3 (1-2p^2+p^3)^m min(1, m p^3)
  bool mp3_small = false;
  double pair_simple = 0.0;   // n^2 p_hat (1-p_hat)           (only if mp3_small)
  double cherry_simple = 0.0; // n^3 m p^3 (1-p_hat)^2          (only if mp3_small)
};

RegimeMagnitudes variance_regime(const ModelParams& params);

// Binomial coefficients as reals: exact integer arithmetic for n <= 1e6,
// lgamma beyond.
double binom2(std::int64_t n);
double binom3(std::int64_t n);

}  // namespace rig
