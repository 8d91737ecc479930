#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rig/bounds.hpp"
#include "rig/model.hpp"

namespace rig {

// Exact law of the edge count N_E; probs[k] = P(N_E = k), k = 0..C(n,2).
struct ExactPmf {
  std::int64_t n = 0;
  std::vector<double> probs;
  double mean = 0.0;
  double variance = 0.0;
};

// Covered-pair dynamic program: the distribution of the pair mask after m
// attributes is the m-fold OR-convolution of the one-attribute mask law,
// computed as a pointwise power between subset-sum (zeta) transforms in
// double-double. Feasible for n <= 6 (state space 2^C(n,2)) and any m.
ExactPmf exact_pmf(const ModelParams& params);

// Secondary oracle: full enumeration of all 2^(n m) assignment matrices;
// requires n*m <= 20. Validates the DP in the test suites.
ExactPmf exact_pmf_enumerated(const ModelParams& params);

struct DistanceReport {
  double d_K = 0.0;
  double d_K_radius = 0.0;
  double d_W = 0.0;
  double d_W_radius = 0.0;
  std::uint64_t samples = 0;
  bool exact = false;
};

// Standardized Monte Carlo edge counts, sorted ascending; standardization
// uses the exact moments, never sample moments.
struct EmpiricalSample {
  std::vector<double> values;
  std::uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

EmpiricalSample mc_sample_edges(const ModelParams& params, std::uint64_t samples,
                                std::uint64_t seed, int threads);

// sup-norm and L1 CDF distances of a standardized step law to N(0,1).
// Atoms strictly increasing; cum_counts out of `total` (Monte Carlo) or
// cum_probs ending at 1 (exact law). The Monte Carlo variant is evaluated
// in a canonical orientation, so negating every sample reproduces both
// distances bit-for-bit (W1 and Kolmogorov distance to a symmetric target
// are reflection-invariant).
struct CdfDistances {
  double d_K = 0.0;
  double d_W = 0.0;
};
CdfDistances distances_vs_normal_counts(std::span<const double> atoms,
                                        std::span<const std::uint64_t> cum_counts,
                                        std::uint64_t total);
CdfDistances distances_vs_normal_probs(std::span<const double> atoms,
                                       std::span<const double> cum_probs);

// Exact d_K (sup over atoms, both sides) and d_W (piecewise closed-form
// CDF integral) of the standardized pmf against N(0,1); radii are zero.
DistanceReport exact_distances(const ExactPmf& pmf, const ModelParams& params);

// Monte Carlo distances with the DKW radius sqrt(ln(2/delta)/(2N)),
// delta = 1e-3; deterministic for fixed (seed, N) at any thread count.
DistanceReport mc_sample_distances(const ModelParams& params, std::uint64_t samples,
                                   std::uint64_t seed, int threads);

struct SweepPoint {
  ModelParams params;
  DistanceReport dist;
  BoundReport bounds;
};

// Per-point Monte Carlo distances joined with the bound brackets; points
// with degenerate variance yield NaN distances instead of aborting the
// sweep. Requires at least 4 points.
std::vector<SweepPoint> convergence_sweep(std::span<const ModelParams> curve,
                                          std::uint64_t samples_per_point, std::uint64_t seed,
                                          int threads);

}  // namespace rig
