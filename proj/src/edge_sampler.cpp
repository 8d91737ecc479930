#include "rig/edge_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rig {

namespace {

constexpr double kMemCapBytes = 256.0 * 1024 * 1024;

double cost_dense_rows(double n, double m) {
  return n * m * 6.0 + 0.5 * n * (n - 1.0) * (m / 64.0 + 4.0);
}

double cost_sparse(double n, double m, double p) {
  double np = n * p;
  double pairs = m * 0.5 * np * np + m * np;
  return m * 24.0 + m * np * 12.0 + pairs * 8.0;
}

double cost_complement(double n, double m, double p) {
  double gen = (p == 0.5) ? n * m / 16.0 : n * m * 6.0;
  double per_u;
  if (p <= 0.0) {
    per_u = m;  // never saturates, scans everything with no unions
  } else {
    double sat = std::log(n + 1.0) / -std::log1p(-std::min(p, 0.999999));
    double scanned = std::min(m, sat / std::max(p, 1e-12));
    double orred = std::min(m, sat);
    per_u = scanned + orred * (n / 64.0) * 2.5;
  }
  return gen + n * per_u;
}

double cost_type_counts(double m) { return std::ldexp(1.0, static_cast<int>(m)) * 40.0; }

}  // namespace

EdgeCountSampler::EdgeCountSampler(const ModelParams& params) : params_(params) {
  params.validate();
  total_pairs_ = params.n * (params.n - 1) / 2;
  double n = static_cast<double>(params.n);
  double m = static_cast<double>(params.m);
  double p = params.p;

  double best = cost_dense_rows(n, m);
  strategy_ = Strategy::dense_rows;
  if (n * m / 8.0 > kMemCapBytes) best = 1e300;

  double cs = cost_sparse(n, m, p);
  double expected_pairs = m * 0.5 * n * p * n * p + 16.0;
  if (expected_pairs * 16.0 < kMemCapBytes && cs < best) {
    best = cs;
    strategy_ = Strategy::sparse_attributes;
  }
  double cc = cost_complement(n, m, p);
  if (m * (n / 8.0) < kMemCapBytes && cc < best) {
    best = cc;
    strategy_ = Strategy::dense_complement;
  }
  if (params.m <= 12) {
    double ct = cost_type_counts(m);
    if (ct < best) {
      best = ct;
      strategy_ = Strategy::type_counts;
    }
  }
  if (strategy_ == Strategy::type_counts) {
    std::size_t cells = std::size_t{1} << params.m;
    cell_mu_.resize(cells);
    for (std::size_t w = 0; w < cells; ++w) {
      int c = __builtin_popcountll(w);
      cell_mu_[w] = std::pow(p, c) * std::pow(1.0 - p, static_cast<int>(params.m) - c);
    }
    cell_suffix_.resize(cells);
    long double acc = 0.0L;
    for (std::size_t w = cells; w-- > 0;) {
      acc += cell_mu_[w];
      cell_suffix_[w] = static_cast<double>(acc);
    }
  }
}

EdgeCountSampler::EdgeCountSampler(const ModelParams& params, Strategy forced)
    : EdgeCountSampler(params) {
  if (forced == Strategy::type_counts && params.m > 12)
    throw std::invalid_argument("type_counts strategy requires m <= 12");
  if (forced == Strategy::type_counts && cell_mu_.empty()) {
    std::size_t cells = std::size_t{1} << params.m;
    cell_mu_.resize(cells);
    for (std::size_t w = 0; w < cells; ++w) {
      int c = __builtin_popcountll(w);
      cell_mu_[w] = std::pow(params.p, c) *
                    std::pow(1.0 - params.p, static_cast<int>(params.m) - c);
    }
    cell_suffix_.resize(cells);
    long double acc = 0.0L;
    for (std::size_t w = cells; w-- > 0;) {
      acc += cell_mu_[w];
      cell_suffix_[w] = static_cast<double>(acc);
    }
  }
  strategy_ = forced;
}

const char* EdgeCountSampler::strategy_name() const {
  switch (strategy_) {
    case Strategy::dense_rows: return "dense_rows";
    case Strategy::sparse_attributes: return "sparse_attributes";
    case Strategy::dense_complement: return "dense_complement";
    case Strategy::type_counts: return "type_counts";
  }
  return "?";
}

std::int64_t EdgeCountSampler::sample(std::uint64_t seed, std::uint64_t replicate,
                                      Scratch& s) const {
  CounterRng rng(seed, replicate);
  switch (strategy_) {
    case Strategy::dense_rows: return dense_rows(rng, s);
    case Strategy::sparse_attributes: return sparse_attributes(rng, s);
    case Strategy::dense_complement: return dense_complement(rng, s);
    case Strategy::type_counts: return type_counts(rng, s);
  }
  return 0;
}

std::int64_t EdgeCountSampler::dense_rows(CounterRng& rng, Scratch& s) const {
  AssignmentMatrix& a = s.matrix;
  a.n = params_.n;
  a.m = params_.m;
  a.words_per_row = static_cast<std::size_t>((params_.m + 63) / 64);
  a.bits.assign(static_cast<std::size_t>(a.n) * a.words_per_row, 0);
  for (std::int64_t k = 0; k < a.n; ++k) {
    std::uint64_t* r = a.bits.data() + k * a.words_per_row;
    for (std::int64_t i = 0; i < a.m; ++i)
      if (rng.bernoulli(params_.p)) r[i >> 6] |= 1ull << (i & 63);
  }
  std::int64_t count = 0;
  for (std::int64_t l = 1; l < a.n; ++l)
    for (std::int64_t k = 0; k < l; ++k)
      if (a.rows_intersect(k, l)) ++count;
  return count;
}

std::int64_t EdgeCountSampler::sparse_attributes(CounterRng& rng, Scratch& s) const {
  const std::int64_t n = params_.n;
  if (s.pair_keys.empty()) {
    double expected = static_cast<double>(params_.m) * 0.5 *
                      (static_cast<double>(n) * params_.p) *
                      (static_cast<double>(n) * params_.p);
    std::size_t cap = 64;
    while (static_cast<double>(cap) < 4.0 * (expected + 16.0)) cap <<= 1;
    s.pair_keys.assign(cap, 0);
    s.pair_epoch.assign(cap, 0);
  }
  ++s.epoch;
  if (s.epoch == 0) {  // epoch counter wrapped; reset tags
    std::fill(s.pair_epoch.begin(), s.pair_epoch.end(), 0u);
    s.epoch = 1;
  }
  std::size_t used = 0;
  std::int64_t count = 0;

  auto grow = [&] {
    std::vector<std::uint64_t> old_keys = std::move(s.pair_keys);
    std::vector<std::uint32_t> old_epoch = std::move(s.pair_epoch);
    s.pair_keys.assign(old_keys.size() * 2, 0);
    s.pair_epoch.assign(old_keys.size() * 2, 0);
    std::size_t nmask = s.pair_keys.size() - 1;
    for (std::size_t i = 0; i < old_keys.size(); ++i) {
      if (old_epoch[i] != s.epoch) continue;
      std::size_t idx = CounterRng::mix(old_keys[i]) & nmask;
      while (s.pair_epoch[idx] == s.epoch) idx = (idx + 1) & nmask;
      s.pair_epoch[idx] = s.epoch;
      s.pair_keys[idx] = old_keys[i];
    }
  };

  auto insert_pair = [&](std::int64_t u, std::int64_t v) {
    if (used * 4 >= s.pair_keys.size() * 3) grow();
    std::uint64_t key = static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
                        static_cast<std::uint64_t>(v) + 1;
    std::size_t mask = s.pair_keys.size() - 1;
    std::size_t idx = CounterRng::mix(key) & mask;
    for (;;) {
      if (s.pair_epoch[idx] != s.epoch) {
        s.pair_epoch[idx] = s.epoch;
        s.pair_keys[idx] = key;
        ++count;
        ++used;
        return;
      }
      if (s.pair_keys[idx] == key) return;
      idx = (idx + 1) & mask;
    }
  };

  for (std::int64_t attr = 0; attr < params_.m; ++attr) {
    std::int64_t k = binomial_draw(rng, n, params_.p);
    if (k < 2) continue;
    // Floyd's distinct sampling of k members from [0, n)
    s.members.clear();
    for (std::int64_t j = n - k; j < n; ++j) {
      std::int64_t t = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(j + 1)));
      bool dup = false;
      for (std::int64_t prev : s.members)
        if (prev == t) { dup = true; break; }
      s.members.push_back(dup ? j : t);
    }
    for (std::size_t i = 0; i < s.members.size(); ++i)
      for (std::size_t j = i + 1; j < s.members.size(); ++j) {
        std::int64_t u = s.members[i], v = s.members[j];
        if (u > v) std::swap(u, v);
        insert_pair(u, v);
      }
  }
  return count;
}

std::int64_t EdgeCountSampler::dense_complement(CounterRng& rng, Scratch& s) const {
  const std::int64_t n = params_.n;
  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
  s.attr_bits.assign(static_cast<std::size_t>(params_.m) * words, 0);
  const std::uint64_t tail_mask = (n % 64 == 0) ? ~0ull : ((1ull << (n % 64)) - 1);

  for (std::int64_t attr = 0; attr < params_.m; ++attr) {
    std::uint64_t* row = s.attr_bits.data() + attr * words;
    if (params_.p == 0.5) {
      for (std::size_t w = 0; w < words; ++w) row[w] = rng.next_u64();
      row[words - 1] &= tail_mask;
    } else {
      for (std::int64_t v = 0; v < n; ++v)
        if (rng.bernoulli(params_.p)) row[v >> 6] |= 1ull << (v & 63);
    }
  }

  s.remaining.assign(words, 0);
  // active[] lists the indices of nonzero words of the remaining set; it
  // collapses geometrically as the union saturates, so each vertex costs
  // O(words) rather than O(words * attributes).
  std::vector<std::uint32_t>& active = s.active_words;
  std::int64_t disjoint_double = 0;
  for (std::int64_t u = 0; u < n; ++u) {
    std::uint64_t* rem = s.remaining.data();
    for (std::size_t w = 0; w < words; ++w) rem[w] = ~0ull;
    rem[words - 1] &= tail_mask;
    active.resize(words);
    for (std::size_t w = 0; w < words; ++w) active[w] = static_cast<std::uint32_t>(w);
    bool any_attr = false;
    for (std::int64_t attr = 0; attr < params_.m && !active.empty(); ++attr) {
      const std::uint64_t* row = s.attr_bits.data() + attr * words;
      if (!((row[u >> 6] >> (u & 63)) & 1)) continue;
      any_attr = true;
      for (std::size_t i = active.size(); i-- > 0;) {
        std::uint32_t w = active[i];
        std::uint64_t v = rem[w] & ~row[w];
        rem[w] = v;
        if (v == 0) {
          active[i] = active.back();
          active.pop_back();
        }
      }
    }
    if (!active.empty()) {
      std::int64_t cnt = 0;
      for (std::uint32_t w : active) cnt += __builtin_popcountll(rem[w]);
      disjoint_double += cnt - (any_attr ? 0 : 1);
    }
  }
  return total_pairs_ - disjoint_double / 2;
}

std::int64_t EdgeCountSampler::type_counts(CounterRng& rng, Scratch& s) const {
  const std::size_t cells = std::size_t{1} << params_.m;
  s.cell_counts.assign(cells, 0);
  std::int64_t remaining = params_.n;
  for (std::size_t w = 0; w < cells && remaining > 0; ++w) {
    if (w == cells - 1) {
      s.cell_counts[w] = remaining;
      remaining = 0;
      break;
    }
    double q = cell_suffix_[w] > 0.0 ? cell_mu_[w] / cell_suffix_[w] : 1.0;
    q = std::min(1.0, std::max(0.0, q));
    std::int64_t c = binomial_draw(rng, remaining, q);
    s.cell_counts[w] = c;
    remaining -= c;
  }
  // zeta transform: cell_zeta[T] = number of vertices whose row is a subset of T
  s.cell_zeta.assign(s.cell_counts.begin(), s.cell_counts.end());
  for (std::int64_t b = 0; b < params_.m; ++b)
    for (std::size_t t = 0; t < cells; ++t)
      if ((t >> b) & 1) s.cell_zeta[t] += s.cell_zeta[t ^ (std::size_t{1} << b)];
  const std::size_t full = cells - 1;
  std::int64_t ordered_disjoint = 0;
  for (std::size_t w = 0; w < cells; ++w)
    if (s.cell_counts[w] != 0) ordered_disjoint += s.cell_counts[w] * s.cell_zeta[full ^ w];
  std::int64_t v_e = (ordered_disjoint - s.cell_counts[0]) / 2;
  return total_pairs_ - v_e;
}

}  // namespace rig
