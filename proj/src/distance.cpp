#include "rig/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rig/dd.hpp"
#include "rig/edge_sampler.hpp"
#include "rig/moments.hpp"
#include "rig/normal.hpp"
#include "rig/parallel.hpp"
#include "rig/subgraphs.hpp"

namespace rig {

namespace {

constexpr double kDkwDelta = 1e-3;

double dkw_radius(std::uint64_t n) {
  return std::sqrt(std::log(2.0 / kDkwDelta) / (2.0 * static_cast<double>(n)));
}

ExactPmf finish_pmf(std::int64_t n, std::vector<dd>& buckets) {
  ExactPmf out;
  out.n = n;
  out.probs.resize(buckets.size());
  dd mean(0.0), second(0.0);
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    dd v = buckets[k];
    if (v.hi < 0.0) {
      if (v.hi < -1e-12) throw std::runtime_error("exact_pmf: negative probability");
      v = dd(0.0);  // transform noise
    }
    out.probs[k] = v.to_double();
    mean += v * dd(static_cast<double>(k));
    second += v * dd(static_cast<double>(k)) * dd(static_cast<double>(k));
  }
  out.mean = mean.to_double();
  out.variance = (second - mean * mean).to_double();
  return out;
}

}  // namespace

ExactPmf exact_pmf(const ModelParams& params) {
  params.validate();
  if (params.n > 6) throw budget_error("exact_pmf: n <= 6 required (2^C(n,2) states)");
  const int n = static_cast<int>(params.n);
  const int pairs = n * (n - 1) / 2;
  const std::size_t np = std::size_t{1} << pairs;
  const std::size_t nv = std::size_t{1} << n;

  // one-attribute law of the covered-pair mask
  std::vector<dd> q(np);
  {
    dd pw[7], qw[7];
    pw[0] = dd(1.0);
    qw[0] = dd(1.0);
    for (int i = 1; i <= n; ++i) {
      pw[i] = pw[i - 1] * dd(params.p);
      qw[i] = qw[i - 1] * (dd(1.0) - dd(params.p));
    }
    for (std::size_t S = 0; S < nv; ++S) {
      std::uint32_t mask = 0;
      for (int v = 1; v < n; ++v) {
        if (!((S >> v) & 1)) continue;
        for (int u = 0; u < v; ++u)
          if ((S >> u) & 1) mask |= 1u << pair_index(u, v);
      }
      q[mask] += pw[__builtin_popcountll(S)] * qw[n - __builtin_popcountll(S)];
    }
  }
  // zeta, pointwise power, Moebius
  for (int b = 0; b < pairs; ++b)
    for (std::size_t t = 0; t < np; ++t)
      if ((t >> b) & 1) q[t] += q[t ^ (std::size_t{1} << b)];
  for (std::size_t t = 0; t < np; ++t) q[t] = dd_pow(q[t], static_cast<std::uint64_t>(params.m));
  for (int b = 0; b < pairs; ++b)
    for (std::size_t t = 0; t < np; ++t)
      if ((t >> b) & 1) q[t] -= q[t ^ (std::size_t{1} << b)];

  std::vector<dd> buckets(pairs + 1);
  for (std::size_t t = 0; t < np; ++t) buckets[__builtin_popcountll(t)] += q[t];
  return finish_pmf(params.n, buckets);
}

ExactPmf exact_pmf_enumerated(const ModelParams& params) {
  params.validate();
  if (params.n * params.m > 20) throw budget_error("exact_pmf_enumerated: n*m <= 20 required");
  const int n = static_cast<int>(params.n);
  const int m = static_cast<int>(params.m);
  const int nm = n * m;
  const int pairs = n * (n - 1) / 2;
  std::vector<dd> buckets(pairs + 1);
  dd pw = dd(params.p), qw = dd(1.0) - dd(params.p);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << nm); ++bits) {
    int edges = 0;
    for (int l = 1; l < n; ++l) {
      std::uint64_t row_l = (bits >> (l * m)) & ((1ull << m) - 1);
      for (int k = 0; k < l; ++k) {
        std::uint64_t row_k = (bits >> (k * m)) & ((1ull << m) - 1);
        if (row_k & row_l) ++edges;
      }
    }
    int ones = __builtin_popcountll(bits);
    dd w(1.0);
    for (int i = 0; i < ones; ++i) w *= pw;
    for (int i = 0; i < nm - ones; ++i) w *= qw;
    buckets[edges] += w;
  }
  return finish_pmf(params.n, buckets);
}

namespace {

// W1 between a step CDF (levels[k] on [atoms[k], atoms[k+1])) and Phi.
double w1_step_vs_normal(std::span<const double> atoms, std::span<const double> levels) {
  const std::size_t K = atoms.size();
  double w = norm_cdf_antideriv(atoms[0]);  // F = 0 below the first atom
  for (std::size_t k = 0; k + 1 < K; ++k) {
    double a = atoms[k], b = atoms[k + 1], c = levels[k];
    double pa = norm_cdf(a), pb = norm_cdf(b);
    double ga = norm_cdf_antideriv(a), gb = norm_cdf_antideriv(b);
    if (c <= pa) {
      w += (gb - ga) - c * (b - a);
    } else if (c >= pb) {
      w += c * (b - a) - (gb - ga);
    } else {
      double t = std::min(b, std::max(a, norm_quantile(c)));
      double gt = norm_cdf_antideriv(t);
      w += c * (t - a) - (gt - ga);
      w += (gb - gt) - c * (b - t);
    }
  }
  w += norm_cdf_antideriv(atoms[K - 1]) - atoms[K - 1];  // F = 1 above the last atom
  return w;
}

}  // namespace

CdfDistances distances_vs_normal_counts(std::span<const double> atoms,
                                        std::span<const std::uint64_t> cum_counts,
                                        std::uint64_t total) {
  const std::size_t K = atoms.size();
  if (K == 0 || cum_counts.size() != K || cum_counts[K - 1] != total || total == 0)
    throw std::invalid_argument("distances_vs_normal_counts: inconsistent input");

  // Canonical orientation: reflect when the atom sum is positive. W1 and
  // the sup distance to the symmetric normal are reflection-invariant, and
  // reflection of (atoms, counts) is exact, so sample negation reproduces
  // the estimates bit-for-bit.
  double s = 0.0;
  for (double a : atoms) s += a;
  std::vector<double> catoms;
  std::vector<std::uint64_t> ccounts;
  bool flip = s > 0.0;
  if (flip) {
    catoms.resize(K);
    ccounts.resize(K);
    for (std::size_t k = 0; k < K; ++k) catoms[k] = -atoms[K - 1 - k];
    for (std::size_t k = 0; k + 1 < K; ++k) ccounts[k] = total - cum_counts[K - 2 - k];
    ccounts[K - 1] = total;
    atoms = catoms;
    cum_counts = ccounts;
  }

  const double n2 = 2.0 * static_cast<double>(total);
  double dk = 0.0;
  std::vector<double> levels(K);
  for (std::size_t k = 0; k < K; ++k) {
    double d = norm_cdf_centered(atoms[k]);
    double hi = (2.0 * static_cast<double>(cum_counts[k]) - static_cast<double>(total)) / n2;
    double prev = k == 0 ? 0.0 : static_cast<double>(cum_counts[k - 1]);
    double lo = (2.0 * prev - static_cast<double>(total)) / n2;
    dk = std::max(dk, std::max(hi - d, d - lo));
    levels[k] = static_cast<double>(cum_counts[k]) / static_cast<double>(total);
  }
  CdfDistances out;
  out.d_K = dk;
  out.d_W = w1_step_vs_normal(atoms, levels);
  return out;
}

CdfDistances distances_vs_normal_probs(std::span<const double> atoms,
                                       std::span<const double> cum_probs) {
  const std::size_t K = atoms.size();
  if (K == 0 || cum_probs.size() != K)
    throw std::invalid_argument("distances_vs_normal_probs: inconsistent input");
  double dk = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    double phi = norm_cdf(atoms[k]);
    double prev = k == 0 ? 0.0 : cum_probs[k - 1];
    dk = std::max(dk, std::max(cum_probs[k] - phi, phi - prev));
  }
  CdfDistances out;
  out.d_K = dk;
  out.d_W = w1_step_vs_normal(atoms, cum_probs);
  return out;
}

DistanceReport exact_distances(const ExactPmf& pmf, const ModelParams& params) {
  params.validate();
  VarianceReport vr = variance_edges(params);
  if (!(vr.variance > 0.0))
    throw std::invalid_argument("exact_distances: degenerate standardization (zero variance)");
  double sigma = std::sqrt(vr.variance);
  std::vector<double> atoms, cum;
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
    if (pmf.probs[k] == 0.0) continue;
    acc += pmf.probs[k];
    atoms.push_back((static_cast<double>(k) - vr.mean) / sigma);
    cum.push_back(acc);
  }
  if (!cum.empty()) cum.back() = 1.0;  // absorb summation roundoff in the top level
  CdfDistances d = distances_vs_normal_probs(atoms, cum);
  DistanceReport rep;
  rep.d_K = d.d_K;
  rep.d_W = d.d_W;
  rep.exact = true;
  return rep;
}

EmpiricalSample mc_sample_edges(const ModelParams& params, std::uint64_t samples,
                                std::uint64_t seed, int threads) {
  params.validate();
  if (samples < 100) throw std::invalid_argument("mc_sample_edges: need at least 100 samples");
  VarianceReport vr = variance_edges(params);
  if (!(vr.variance > 0.0))
    throw std::invalid_argument("mc_sample_edges: degenerate variance");
  double sigma = std::sqrt(vr.variance);

  EdgeCountSampler sampler(params);
  std::vector<std::int64_t> counts(samples);
  parallel_for(samples, threads, [&](std::uint64_t b, std::uint64_t e) {
    EdgeCountSampler::Scratch scratch;
    for (std::uint64_t r = b; r < e; ++r) counts[r] = sampler.sample(seed, r, scratch);
  });

  EmpiricalSample out;
  out.count = samples;
  out.mean = vr.mean;
  out.stddev = sigma;
  out.values.resize(samples);
  for (std::uint64_t r = 0; r < samples; ++r)
    out.values[r] = (static_cast<double>(counts[r]) - vr.mean) / sigma;
  std::sort(out.values.begin(), out.values.end());
  return out;
}

namespace {

DistanceReport distances_from_sorted(const std::vector<double>& sorted, std::uint64_t total) {
  // collapse ties into (atom, cumulative count)
  std::vector<double> atoms;
  std::vector<std::uint64_t> cum;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (atoms.empty() || sorted[i] != atoms.back()) {
      atoms.push_back(sorted[i]);
      cum.push_back(i + 1);
    } else {
      cum.back() = i + 1;
    }
  }
  CdfDistances d = distances_vs_normal_counts(atoms, cum, total);
  DistanceReport rep;
  rep.d_K = d.d_K;
  rep.d_W = d.d_W;
  rep.samples = total;
  rep.d_K_radius = dkw_radius(total);
  rep.d_W_radius = dkw_radius(total) * (atoms.back() - atoms.front());
  return rep;
}

}  // namespace

DistanceReport mc_sample_distances(const ModelParams& params, std::uint64_t samples,
                                   std::uint64_t seed, int threads) {
  EmpiricalSample s = mc_sample_edges(params, samples, seed, threads);
  return distances_from_sorted(s.values, s.count);
}

std::vector<SweepPoint> convergence_sweep(std::span<const ModelParams> curve,
                                          std::uint64_t samples_per_point, std::uint64_t seed,
                                          int threads) {
  if (curve.size() < 4) throw std::invalid_argument("convergence_sweep: need at least 4 points");
  for (const ModelParams& p : curve) p.validate();
  std::vector<SweepPoint> out;
  out.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    SweepPoint pt;
    pt.params = curve[i];
    pt.bounds = make_bound_report(curve[i]);
    std::uint64_t point_seed = CounterRng::mix(seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    try {
      pt.dist = mc_sample_distances(curve[i], samples_per_point, point_seed, threads);
    } catch (const std::invalid_argument&) {
      pt.dist.d_K = std::numeric_limits<double>::quiet_NaN();
      pt.dist.d_W = std::numeric_limits<double>::quiet_NaN();
      pt.dist.d_K_radius = std::numeric_limits<double>::quiet_NaN();
      pt.dist.d_W_radius = std::numeric_limits<double>::quiet_NaN();
      pt.dist.samples = 0;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace rig
