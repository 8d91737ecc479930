#include "rig/subgraphs_rational.hpp"

#include <stdexcept>
#include <vector>

namespace rig {

namespace {

void check_rational_args(std::int64_t m, std::int64_t p_num, std::int64_t p_den) {
  if (m < 1 || m > 10000) throw budget_error("rational path: m must lie in [1, 1e4]");
  if (p_den <= 0 || p_num < 0 || p_num > p_den)
    throw std::invalid_argument("rational path: p = num/den must lie in [0,1]");
}

std::vector<Rational> mu_by_popcount(int h, std::int64_t p_num, std::int64_t p_den) {
  Rational p(p_num, p_den);
  Rational q = Rational(1) - p;
  std::vector<Rational> mu(h + 1);
  for (int c = 0; c <= h; ++c) mu[c] = rational_pow(p, c) * rational_pow(q, h - c);
  return mu;
}

}  // namespace

Rational rational_pow(Rational base, std::uint64_t e) {
  Rational acc(1);
  while (e != 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Rational pi_subgraph_rational(const SmallGraph& H, std::int64_t m,
                              std::int64_t p_num, std::int64_t p_den) {
  check_rational_args(m, p_num, p_den);
  auto es = H.edge_list();
  int ne = static_cast<int>(es.size());
  if (ne > 20) throw budget_error("pi_subgraph_rational: more than 20 edges");
  if (ne == 0) return Rational(1);
  auto mu = mu_by_popcount(H.h, p_num, p_den);

  Rational acc(0);
  for (std::uint32_t F = 0; F < (std::uint32_t{1} << ne); ++F) {
    PairMask fmask = 0;
    for (int j = 0; j < ne; ++j)
      if ((F >> j) & 1) fmask |= pair_bit(es[j].first, es[j].second);
    Rational qf(0);
    for (VertexSet S = 0; S < (VertexSet{1} << H.h); ++S)
      if ((edges_inside(H, S) & fmask) == 0) qf += mu[__builtin_popcount(S)];
    Rational term = rational_pow(qf, static_cast<std::uint64_t>(m));
    if (__builtin_popcount(F) & 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

Rational pi_cover_exact_rational(const SmallGraph& H, const CoverSpec& spec, std::int64_t m,
                                 std::int64_t p_num, std::int64_t p_den) {
  validate_cover_spec(H, spec);
  check_rational_args(m, p_num, p_den);
  if (spec.plus.size() > 24) throw budget_error("pi_cover_exact_rational: |plus| > 24");
  auto mu = mu_by_popcount(H.h, p_num, p_den);

  Rational base(1);
  for (VertexSet S : spec.minus) base -= mu[__builtin_popcount(S)];
  Rational acc(0);
  for (std::uint32_t L = 0; L < (std::uint32_t{1} << spec.plus.size()); ++L) {
    Rational cur = base;
    for (std::size_t i = 0; i < spec.plus.size(); ++i)
      if ((L >> i) & 1) cur -= mu[__builtin_popcount(spec.plus[i])];
    Rational term = rational_pow(cur, static_cast<std::uint64_t>(m));
    if (__builtin_popcount(L) & 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

}  // namespace rig
