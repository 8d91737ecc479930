#pragma once

#include <cstdint>
#include <vector>

#include "rig/rng.hpp"

namespace rig {

// Pair bitmask over the C(h,2) unordered vertex pairs, h <= 16 (120 bits).
using PairMask = unsigned __int128;

// Lower-triangular pair index: (u, v) with u < v maps to v(v-1)/2 + u.
inline int pair_index(int u, int v) {
  if (u > v) { int t = u; u = v; v = t; }
  return v * (v - 1) / 2 + u;
}

inline PairMask pair_bit(int u, int v) { return PairMask{1} << pair_index(u, v); }

inline int popcount128(PairMask m) {
  return __builtin_popcountll(static_cast<std::uint64_t>(m)) +
         __builtin_popcountll(static_cast<std::uint64_t>(m >> 64));
}

// Model parameters of the random intersection graph G(n, m, p): n vertices,
// m attributes, each vertex choosing each attribute independently with
// probability p; vertices are adjacent iff they share an attribute.
struct ModelParams {
  std::int64_t n = 2;
  std::int64_t m = 1;
  double p = 0.0;

  // Throws std::invalid_argument naming the violated bound.
  void validate() const;
};

// One sample of the n x m attribute-choice matrix, rows packed in 64-bit words.
struct AssignmentMatrix {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::size_t words_per_row = 0;
  std::vector<std::uint64_t> bits;

  const std::uint64_t* row(std::int64_t k) const { return bits.data() + k * words_per_row; }
  bool bit(std::int64_t k, std::int64_t i) const {
    return (row(k)[i >> 6] >> (i & 63)) & 1u;
  }
  bool rows_intersect(std::int64_t k, std::int64_t l) const {
    const std::uint64_t* a = row(k);
    const std::uint64_t* b = row(l);
    for (std::size_t w = 0; w < words_per_row; ++w)
      if (a[w] & b[w]) return true;
    return false;
  }
  std::int64_t row_popcount(std::int64_t k) const {
    std::int64_t c = 0;
    for (std::size_t w = 0; w < words_per_row; ++w) c += __builtin_popcountll(row(k)[w]);
    return c;
  }
};

struct SampleSummary {
  std::int64_t edge_count = 0;
  std::int64_t nonedge_count = 0;
};

// Independent Bernoulli(p) bits, row-major; identical (seed, replicate,
// params) reproduce the matrix bit-exactly, distinct replicates are
// independent streams.
AssignmentMatrix sample_assignment(const ModelParams& params, std::uint64_t seed,
                                   std::uint64_t replicate);

// Same draw, reusing the matrix storage (for tight Monte Carlo loops).
void sample_assignment_into(AssignmentMatrix& a, const ModelParams& params, std::uint64_t seed,
                            std::uint64_t replicate);

SampleSummary edge_count(const AssignmentMatrix& a);

// Adjacency as a pair bitmask; requires n <= 16.
PairMask adjacency(const AssignmentMatrix& a);

}  // namespace rig
