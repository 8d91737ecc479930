#pragma once

#include <cstdint>
#include <vector>

#include "rig/model.hpp"
#include "rig/rng.hpp"

namespace rig {

// Draws exact samples of the edge count N_E of G(n, m, p). Four exact
// strategies cover the parameter space; the constructor picks the cheapest
// feasible one from a cost model (deterministic in the parameters, so runs
// are reproducible):
//
//   dense_rows        sample the n x m bit matrix, test all C(n,2) pairs
//   sparse_attributes per attribute draw Binomial(n,p) members and count
//                     the distinct covered pairs (sparse graphs)
//   dense_complement  per vertex, union the member bitsets of its
//                     attributes until saturation; leftovers are non-edges
//                     (dense graphs, large n)
//   type_counts       multinomial counts over the 2^m attribute rows and a
//                     subset-sum transform for disjoint-row pairs (m <= 12)
//
// All four sample the same distribution exactly; they differ only in cost.
class EdgeCountSampler {
 public:
  enum class Strategy { dense_rows, sparse_attributes, dense_complement, type_counts };

  struct Scratch {
    AssignmentMatrix matrix;
    std::vector<std::uint64_t> attr_bits;    // dense_complement: m x words member bitsets
    std::vector<std::uint64_t> remaining;
    std::vector<std::uint32_t> active_words;
    std::vector<std::int64_t> members;       // sparse: one attribute's member list
    std::vector<std::uint64_t> pair_keys;    // sparse: open-addressing table
    std::vector<std::uint32_t> pair_epoch;
    std::uint32_t epoch = 0;
    std::vector<std::int64_t> cell_counts;   // type_counts
    std::vector<std::int64_t> cell_zeta;
  };

  explicit EdgeCountSampler(const ModelParams& params);
  EdgeCountSampler(const ModelParams& params, Strategy forced);

  std::int64_t sample(std::uint64_t seed, std::uint64_t replicate, Scratch& scratch) const;

  Strategy strategy() const { return strategy_; }
  const char* strategy_name() const;

 private:
  std::int64_t dense_rows(CounterRng& rng, Scratch& s) const;
  std::int64_t sparse_attributes(CounterRng& rng, Scratch& s) const;
  std::int64_t dense_complement(CounterRng& rng, Scratch& s) const;
  std::int64_t type_counts(CounterRng& rng, Scratch& s) const;

  ModelParams params_;
  Strategy strategy_;
  std::int64_t total_pairs_ = 0;
  std::vector<double> cell_mu_;      // type_counts: cell probabilities
  std::vector<double> cell_suffix_;  // type_counts: suffix sums for conditionals
};

}  // namespace rig
