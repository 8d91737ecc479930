#include "rig/model.hpp"

#include <stdexcept>
#include <string>

namespace rig {

void ModelParams::validate() const {
  if (n < 2) throw std::invalid_argument("params: n must be >= 2 (got " + std::to_string(n) + ")");
  if (m < 1) throw std::invalid_argument("params: m must be >= 1 (got " + std::to_string(m) + ")");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("params: p must lie in [0,1] (got " + std::to_string(p) + ")");
}

void sample_assignment_into(AssignmentMatrix& a, const ModelParams& params, std::uint64_t seed,
                            std::uint64_t replicate) {
  params.validate();
  a.n = params.n;
  a.m = params.m;
  a.words_per_row = static_cast<std::size_t>((params.m + 63) / 64);
  a.bits.assign(static_cast<std::size_t>(a.n) * a.words_per_row, 0);
  CounterRng rng(seed, replicate);
  for (std::int64_t k = 0; k < a.n; ++k) {
    std::uint64_t* r = a.bits.data() + k * a.words_per_row;
    for (std::int64_t i = 0; i < a.m; ++i)
      if (rng.bernoulli(params.p)) r[i >> 6] |= 1ull << (i & 63);
  }
}

AssignmentMatrix sample_assignment(const ModelParams& params, std::uint64_t seed,
                                   std::uint64_t replicate) {
  AssignmentMatrix a;
  sample_assignment_into(a, params, seed, replicate);
  return a;
}

SampleSummary edge_count(const AssignmentMatrix& a) {
  SampleSummary s;
  for (std::int64_t l = 1; l < a.n; ++l)
    for (std::int64_t k = 0; k < l; ++k)
      if (a.rows_intersect(k, l)) ++s.edge_count;
  s.nonedge_count = a.n * (a.n - 1) / 2 - s.edge_count;
  return s;
}

PairMask adjacency(const AssignmentMatrix& a) {
  if (a.n > 16) throw std::invalid_argument("adjacency: n too large for pair bitmask (n <= 16)");
  PairMask mask = 0;
  for (std::int64_t l = 1; l < a.n; ++l)
    for (std::int64_t k = 0; k < l; ++k)
      if (a.rows_intersect(k, l)) mask |= pair_bit(static_cast<int>(k), static_cast<int>(l));
  return mask;
}

}  // namespace rig
