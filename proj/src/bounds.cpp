#include "rig/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rig/moments.hpp"

namespace rig {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double necessary_stat_of(const ModelParams& params) {
  double nd = static_cast<double>(params.n);
  return nd * nd * edge_prob(params) * edge_prob_complement(params);
}
}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::mp3_small: return "mp3_small";
    case Regime::mp3_large_p_small: return "mp3_large_p_small";
    case Regime::p_moderate: return "p_moderate";
    case Regime::p_large: return "p_large";
  }
  return "?";
}

double bracket_quarter(const ModelParams& params) {
  params.validate();
  if (params.p <= 0.0 || params.p >= 1.0) return kInf;
  return std::pow(1.0 / necessary_stat_of(params), 0.25);
}

double bracket_half(const ModelParams& params) {
  params.validate();
  double mp3 = static_cast<double>(params.m) * std::pow(params.p, 3);
  if (mp3 > 1.0) throw std::invalid_argument("bracket_half: requires m p^3 <= 1");
  if (params.p <= 0.0 || params.p >= 1.0) return kInf;
  double s = 1.0 / necessary_stat_of(params) + 1.0 / static_cast<double>(params.n) +
             1.0 / static_cast<double>(params.m);
  return std::sqrt(s);
}

double bracket_k14(const ModelParams& params) {
  params.validate();
  if (params.n < 5) throw std::invalid_argument("bracket_k14: requires n >= 5");
  double mp3 = static_cast<double>(params.m) * std::pow(params.p, 3);
  if (mp3 < 1.0) throw std::invalid_argument("bracket_k14: requires m p^3 >= 1");
  if (params.p >= 1.0) return kInf;
  double var = variance_edges(params).variance;
  double comp = pi_complement(SmallGraph::star(4), params.m, params.p);
  double nd = static_cast<double>(params.n);
  double s = 1.0 / necessary_stat_of(params) + 1.0 / nd +
             std::pow(nd, 5) * comp / (var * var);
  return std::sqrt(s);
}

double q_ratio(std::int64_t m, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("q_ratio: requires 0 < p < 1");
  double q = 1.0 - p;
  double lnum = std::log1p(p * (q * q * q * q - 1.0));
  double lden = std::log1p(-p * p * (2.0 - p));
  return std::exp(static_cast<double>(m) * (lnum - 2.0 * lden));
}

double q_stat_log(std::int64_t m, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("q_stat_log: requires 0 < p < 1");
  double q = 1.0 - p;
  double lnum = std::log1p(p * (q * q * q * q - 1.0));
  double lden = std::log1p(-p * p * (2.0 - p));
  double lhat = std::log1p(-p * p);  // log(1 - p^2)
  return static_cast<double>(m) * (lnum - 2.0 * lden + 0.5 * lhat);
}

double bracket_dkw(std::int64_t n, double variance, const NormTable& t) {
  if (variance <= 0.0) return kInf;
  double nd = static_cast<double>(n);
  double n2 = nd * nd, n3 = n2 * nd, n4 = n3 * nd, n5 = n4 * nd;
  double s = n2 * t.n20 + n3 * t.n21 + n5 * t.n10 + n4 * t.n11 + n5 * t.n_mix;
  return std::sqrt(s) / variance;
}

double general_bound_bracket(int r, double variance, std::int64_t n,
                             const std::map<NormKey, double>& norm_values) {
  if (r < 1) throw std::invalid_argument("general_bound_bracket: r must be >= 1");
  if (variance <= 0.0) throw std::invalid_argument("general_bound_bracket: variance must be > 0");
  auto fetch = [&](int j, int i, int kind) {
    auto it = norm_values.find({j, i, kind});
    if (it == norm_values.end())
      throw std::invalid_argument("general_bound_bracket: missing norm entry");
    if (!(it->second >= 0.0))
      throw std::invalid_argument("general_bound_bracket: negative norm entry");
    return it->second;
  };
  double nd = static_cast<double>(n);
  double s = 0.0;
  for (int j = 1; j <= r; ++j)
    for (int i = 0; i < j; ++i)
      s += fetch(j, i, 0) / std::pow(nd, 3 * j - i);
  for (int j = 2; j <= r; ++j)
    for (int i = 1; i < j; ++i) {
      s += fetch(j, i, 1) / std::pow(nd, 2 * j);
      s += fetch(j, i, 2) / std::pow(nd, j + i);
    }
  return std::pow(nd, 2 * r) / variance * std::sqrt(s);
}

RegimeReport classify_regime(const ModelParams& params) {
  params.validate();
  RegimeReport rep;
  rep.mp3 = static_cast<double>(params.m) * std::pow(params.p, 3);
  rep.necessary_stat = necessary_stat_of(params);
  rep.threshold_ratio = static_cast<double>(params.m) / std::log(static_cast<double>(params.n));
  if (params.p > 0.1 && params.p < 0.9) {
    rep.regime = Regime::p_moderate;
    // The m ~ ln n boundary is open; report it as indeterminate.
    if (rep.threshold_ratio < 0.5)
      rep.normality_outlook = "normality expected (m/ln n small)";
    else if (rep.threshold_ratio <= 2.0)
      rep.normality_outlook = "indeterminate (m/ln n near 1)";
    else
      rep.normality_outlook = "normality expected to fail (m/ln n large)";
  } else if (params.p >= 0.9) {
    rep.regime = Regime::p_large;
    rep.normality_outlook = "suspected to fail (fourth moment blows up)";
  } else if (rep.mp3 <= 1.0) {
    rep.regime = Regime::mp3_small;
    rep.normality_outlook = "governed by n^2 p_hat (1-p_hat)";
  } else {
    rep.regime = Regime::mp3_large_p_small;
    rep.normality_outlook = "governed by n^2 p_hat (1-p_hat)";
  }
  return rep;
}

BoundReport make_bound_report(const ModelParams& params) {
  params.validate();
  BoundReport rep;
  RegimeReport rr = classify_regime(params);
  rep.regime = rr.regime;
  rep.necessary_stat = rr.necessary_stat;
  rep.threshold_ratio = rr.threshold_ratio;
  rep.normality_outlook = rr.normality_outlook;
  rep.bracket_main_quarter = bracket_quarter(params);
  rep.bracket_main_half = rr.mp3 <= 1.0 ? bracket_half(params) : kNaN;
  rep.bracket_k14 = (params.n >= 5 && rr.mp3 >= 1.0) ? bracket_k14(params) : kNaN;
  if (params.p > 0.0 && params.p < 1.0) {
    double var = variance_edges(params).variance;
    rep.bracket_dkw = bracket_dkw(params.n, var, norm_table(params.m, params.p));
  } else {
    rep.bracket_dkw = kInf;
  }
  return rep;
}

}  // namespace rig
