#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>

#include "rig/contractions.hpp"
#include "rig/model.hpp"

namespace rig {

enum class Regime { mp3_small, mp3_large_p_small, p_moderate, p_large };

const char* regime_name(Regime r);

// Every bracket is constant-free: the absolute constants the theory leaves
// unspecified are set to 1, so brackets support rate comparisons only.
struct BoundReport {
  double bracket_main_quarter = 0.0;  // (1/(n^2 p_hat(1-p_hat)))^(1/4)
  double bracket_main_half = 0.0;     // (1/(n^2 p_hat(1-p_hat)) + 1/n + 1/m)^(1/2), m p^3 <= 1
  double bracket_k14 = 0.0;           // complement-star bracket, n >= 5 and m p^3 >= 1
  double bracket_dkw = 0.0;           // full five-norm combination
  Regime regime = Regime::mp3_small;
  double necessary_stat = 0.0;        // n^2 p_hat (1-p_hat)
  double threshold_ratio = 0.0;       // m / ln n
  std::string normality_outlook;
};

// Individual brackets; preconditions violated -> std::invalid_argument.
double bracket_quarter(const ModelParams& params);  // p in {0,1} -> +inf sentinel
double bracket_half(const ModelParams& params);     // requires m p^3 <= 1
double bracket_k14(const ModelParams& params);      // requires n >= 5, m p^3 >= 1

// Q(m,p) = ((1-p+p(1-p)^4) / (1-2p^2+p^3)^2)^m.
double q_ratio(std::int64_t m, double p);
// log of Q(m,p) * sqrt(1-p_hat); the inequality Q <= (1-p_hat)^(-1/2)
// holds iff this is <= 0. Stable for any m.
double q_stat_log(std::int64_t m, double p);

// Directly coded r = 2 bracket: (1/Var) * (n^2 n20 + n^3 n21 + n^5 n10 +
// n^4 n11 + n^5 n_mix)^(1/2).
double bracket_dkw(std::int64_t n, double variance, const NormTable& norms);

// General-r bracket evaluator with externally supplied squared norms.
// Key (j, i, kind): kind 0 = ||h_j *_j^i h_j||^2 for 0 <= i < j <= r,
// kind 1 = ||h_j *_i^i h_j||^2 and kind 2 = ||h_j *_i^i h_i||^2 for
// 1 <= i < j <= r. Missing or negative entries -> std::invalid_argument.
using NormKey = std::tuple<int, int, int>;
double general_bound_bracket(int r, double variance, std::int64_t n,
                             const std::map<NormKey, double>& norm_values);

struct RegimeReport {
  Regime regime = Regime::mp3_small;
  double mp3 = 0.0;
  double necessary_stat = 0.0;
  double threshold_ratio = 0.0;
  std::string normality_outlook;
};
RegimeReport classify_regime(const ModelParams& params);

// All brackets with sentinels (+inf for degenerate p, NaN outside a
// bracket's regime) so grid sweeps never abort.
BoundReport make_bound_report(const ModelParams& params);

}  // namespace rig
