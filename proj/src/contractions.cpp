#include "rig/contractions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rig/moments.hpp"
#include "rig/parallel.hpp"

namespace rig {

namespace {

struct BruteTables {
  std::int64_t m;
  std::vector<double> mu_pc;   // weight by popcount
  std::vector<double> g1;      // g1[x] = sum_y mu(y) [x & y != 0]
  double p_hat;                // enumerated, not closed-form

  BruteTables(std::int64_t m_, double p) : m(m_) {
    mu_pc.resize(m + 1);
    for (std::int64_t c = 0; c <= m; ++c)
      mu_pc[c] = std::pow(p, static_cast<double>(c)) *
                 std::pow(1.0 - p, static_cast<double>(m - c));
    const std::uint64_t n = 1ull << m;
    g1.assign(n, 0.0);
    for (std::uint64_t x = 0; x < n; ++x) {
      double s = 0.0;
      for (std::uint64_t y = 0; y < n; ++y)
        if (x & y) s += mu_pc[__builtin_popcountll(y)];
      g1[x] = s;
    }
    double ph = 0.0;
    for (std::uint64_t x = 0; x < n; ++x) ph += mu_pc[__builtin_popcountll(x)] * g1[x];
    p_hat = ph;
  }

  double mu(std::uint64_t x) const { return mu_pc[__builtin_popcountll(x)]; }

  double value2(KernelId k, std::uint64_t a0, std::uint64_t a1) const {
    double v = (a0 & a1) ? 1.0 : 0.0;
    if (k.base == KernelBase::non_edge) v = 1.0 - v;
    if (k.centered) v -= (k.base == KernelBase::edge ? p_hat : 1.0 - p_hat);
    return v;
  }

  double value1(KernelId k, std::uint64_t a0) const {
    double v = g1[a0];
    if (k.base == KernelBase::non_edge) v = 1.0 - v;
    if (k.centered) v -= (k.base == KernelBase::edge ? p_hat : 1.0 - p_hat);
    return v;
  }

  double value(KernelId k, const std::uint64_t* args) const {
    return k.arity == 2 ? value2(k, args[0], args[1]) : value1(k, args[0]);
  }
};

void decode(std::uint64_t idx, int count, std::int64_t m, std::uint64_t* out) {
  std::uint64_t mask = (1ull << m) - 1;
  for (int i = 0; i < count; ++i) {
    out[i] = idx & mask;
    idx >>= m;
  }
}

}  // namespace

double brute_force_norm(const ContractionSpec& spec, std::int64_t m, double p) {
  const int k = spec.left.arity, l = spec.right.arity;
  if (k < 1 || k > 2 || l < 1 || l > 2)
    throw std::invalid_argument("brute_force_norm: kernel arity must be 1 or 2");
  const int b = spec.shared, a = spec.integrated;
  if (!(0 <= a && a <= b && b <= std::min(k, l)))
    throw std::invalid_argument("brute_force_norm: need 0 <= a <= b <= min(arity)");
  if (m < 1 || !(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("brute_force_norm: bad m or p");

  const int n_shared = b - a;           // x: shared, not integrated
  const int n_left = k - b;             // y
  const int n_right = l - b;            // z
  const int n_free = n_shared + n_left + n_right;
  const int k_budget = std::max(2, 2 * a + n_free);
  if (m * k_budget > 24)
    throw budget_error("brute_force_norm: m*k exceeds 24-bit budget");

  BruteTables tab(m, p);
  const std::uint64_t outer_total = 1ull << (m * n_free);
  const std::uint64_t inner_total = 1ull << (m * a);

  dd acc(0.0);
  std::uint64_t fv[6], wv[2], largs[2], rargs[2];
  for (std::uint64_t oi = 0; oi < outer_total; ++oi) {
    decode(oi, n_free, m, fv);
    const std::uint64_t* xs = fv;
    const std::uint64_t* ys = fv + n_shared;
    const std::uint64_t* zs = fv + n_shared + n_left;
    double inner = 0.0;
    for (std::uint64_t wi = 0; wi < inner_total; ++wi) {
      decode(wi, a, m, wv);
      int li = 0, ri = 0;
      for (int j = 0; j < a; ++j) { largs[li++] = wv[j]; rargs[ri++] = wv[j]; }
      for (int j = 0; j < n_shared; ++j) { largs[li++] = xs[j]; rargs[ri++] = xs[j]; }
      for (int j = 0; j < n_left; ++j) largs[li++] = ys[j];
      for (int j = 0; j < n_right; ++j) rargs[ri++] = zs[j];
      double wmu = 1.0;
      for (int j = 0; j < a; ++j) wmu *= tab.mu(wv[j]);
      inner += wmu * tab.value(spec.left, largs) * tab.value(spec.right, rargs);
    }
    double fmu = 1.0;
    for (int j = 0; j < n_free; ++j) fmu *= tab.mu(fv[j]);
    acc += dd(fmu) * dd(inner) * dd(inner);
  }
  return acc.to_double();
}

double closed_norm_g2_20(std::int64_t m, double p) {
  double ph = edge_prob(m, p);
  double q = edge_prob_complement(m, p);
  return ph * q * q * q * q + q * ph * ph * ph * ph;
}

double closed_norm_g2_21(std::int64_t m, double p) {
  double ph = edge_prob(m, p);
  double cov = cherry_cov(m, p);
  double d = 1.0 - 2.0 * ph;
  double v = ph * edge_prob_complement(m, p);
  return d * d * cov + v * v;
}

SmallGraph leading_graph(int i) {
  switch (i) {
    case 1: return SmallGraph::star(4);               // centre 0, leaf of label ab = 1+ab
    case 2: return SmallGraph::from_edges(4, {{0, 1}, {0, 3}, {2, 1}, {2, 3}});  // C_4
    case 3: return SmallGraph::from_edges(5, {{1, 0}, {1, 3}, {2, 0}, {2, 4}});  // P_5
    default: throw std::invalid_argument("leading_graph: i must be 1, 2 or 3");
  }
}

namespace {

// endpoints of edge label ab (0..3) in the leading graph of family i
std::pair<int, int> leading_edge(int i, int lab) {
  switch (i) {
    case 1: return {0, 1 + lab};
    case 2: {
      static const std::pair<int, int> e[4] = {{0, 1}, {0, 3}, {2, 1}, {2, 3}};
      return e[lab];
    }
    case 3: {
      static const std::pair<int, int> e[4] = {{1, 0}, {1, 3}, {2, 0}, {2, 4}};
      return e[lab];
    }
    default: throw std::invalid_argument("leading_edge: i must be 1, 2 or 3");
  }
}

}  // namespace

FamilyEmbedding augmented_family_graph(int i, unsigned included) {
  if (included > 15u) throw std::invalid_argument("augmented_family_graph: label mask over 4 bits");
  FamilyEmbedding out;
  out.graph.h = 8;
  unsigned used = 0;
  for (int lab = 0; lab < 4; ++lab) {
    if (!((included >> lab) & 1)) continue;
    auto [u, v] = leading_edge(i, lab);
    out.label_pair[lab] = {u, v};
    out.graph.add_edge(u, v);
    used |= (1u << u) | (1u << v);
  }
  int fresh = 0;
  auto next_fresh = [&] {
    while ((used >> fresh) & 1) ++fresh;
    used |= 1u << fresh;
    return fresh;
  };
  for (int lab = 0; lab < 4; ++lab) {
    if ((included >> lab) & 1) continue;
    int u = next_fresh();
    int v = next_fresh();
    out.label_pair[lab] = {u, v};
    out.graph.add_edge(u, v);
  }
  return out;
}

double alternating_sum_norm(int i, std::int64_t m, double p) {
  if (i < 1 || i > 3) throw std::invalid_argument("alternating_sum_norm: i must be 1, 2 or 3");
  if (m < 1 || !(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("alternating_sum_norm: bad m or p");
  SmallGraph g = leading_graph(i);
  dd q = dd_pow(dd(1.0) - dd(p) * dd(p), static_cast<std::uint64_t>(m));
  dd ph = dd(1.0) - q;
  dd acc(0.0);
  for (unsigned I = 0; I < 16; ++I) {
    SmallGraph sub{g.h, 0};
    for (int lab = 0; lab < 4; ++lab)
      if ((I >> lab) & 1) {
        auto [u, v] = leading_edge(i, lab);
        sub.add_edge(u, v);
      }
    dd term = dd_pow(ph, 4 - __builtin_popcount(I)) * pi_subgraph_dd(sub, m, p);
    if (__builtin_popcount(I) & 1)
      acc -= term;
    else
      acc += term;
  }
  return std::max(0.0, acc.to_double());
}

NormTable norm_table(std::int64_t m, double p) {
  NormTable t;
  t.n20 = closed_norm_g2_20(m, p);
  t.n21 = closed_norm_g2_21(m, p);
  t.n10 = alternating_sum_norm(1, m, p);
  t.n11 = alternating_sum_norm(2, m, p);
  t.n_mix = alternating_sum_norm(3, m, p);
  return t;
}

ComplementNorms complement_norms(std::int64_t m, double p) {
  ComplementNorms c;
  c.k14 = pi_complement(SmallGraph::star(4), m, p);
  c.c4 = pi_complement(SmallGraph::cycle(4), m, p);
  c.p5 = pi_complement(SmallGraph::path(5), m, p);
  c.p3 = pi_complement(SmallGraph::path(3), m, p);
  return c;
}

McEstimate mc_cover_sum_check(int i, unsigned j_labels, std::int64_t m, double p,
                              std::uint64_t samples, std::uint64_t seed, int threads) {
  if (i < 1 || i > 3) throw std::invalid_argument("mc_cover_sum_check: i must be 1, 2 or 3");
  if (j_labels > 15u) throw std::invalid_argument("mc_cover_sum_check: J over 4 labels");
  if (samples < 100000) throw std::invalid_argument("mc_cover_sum_check: need >= 1e5 samples");
  ModelParams params{8, m, p};
  params.validate();

  // pair index of each labeled edge per included-label subset I
  int pr[16][4];
  for (unsigned I = 0; I < 16; ++I) {
    FamilyEmbedding emb = augmented_family_graph(i, I);
    for (int lab = 0; lab < 4; ++lab)
      pr[I][lab] = pair_index(emb.label_pair[lab].first, emb.label_pair[lab].second);
  }

  const std::uint64_t chunk = 65536;
  const std::uint64_t n_chunks = (samples + chunk - 1) / chunk;
  std::vector<std::int64_t> csum(n_chunks, 0), csum2(n_chunks, 0);

  parallel_for(n_chunks, threads, [&](std::uint64_t cb, std::uint64_t ce) {
    AssignmentMatrix a;
    for (std::uint64_t c = cb; c < ce; ++c) {
      std::int64_t s = 0, s2 = 0;
      std::uint64_t lo = c * chunk, hi = std::min(samples, lo + chunk);
      for (std::uint64_t r = lo; r < hi; ++r) {
        sample_assignment_into(a, params, seed, r);
        std::uint32_t covered = 0, built2 = 0;
        for (std::int64_t attr = 0; attr < m; ++attr) {
          unsigned built = 0;
          for (int kk = 0; kk < 8; ++kk)
            if (a.bit(kk, attr)) built |= 1u << kk;
          int pc = __builtin_popcount(built);
          if (pc < 2) continue;
          for (int v = 1; v < 8; ++v) {
            if (!((built >> v) & 1)) continue;
            for (int u = 0; u < v; ++u)
              if ((built >> u) & 1) covered |= 1u << pair_index(u, v);
          }
          if (pc == 2) {
            int v = 31 - __builtin_clz(built);
            int u = __builtin_ctz(built);
            built2 |= 1u << pair_index(u, v);
          }
        }
        std::int64_t sv = 0;
        for (unsigned I = 0; I < 16; ++I) {
          bool ok = true;
          for (int lab = 0; lab < 4 && ok; ++lab) {
            std::uint32_t bit = 1u << pr[I][lab];
            if (!(covered & bit)) ok = false;
            else if ((j_labels >> lab) & 1) ok = (built2 & bit) == 0;
            else ok = (built2 & bit) != 0;
          }
          if (ok) sv += (__builtin_popcount(I) & 1) ? -1 : 1;
        }
        s += sv;
        s2 += sv * sv;
      }
      csum[c] = s;
      csum2[c] = s2;
    }
  });

  std::int64_t S = 0, S2 = 0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) { S += csum[c]; S2 += csum2[c]; }
  double N = static_cast<double>(samples);
  McEstimate out;
  out.samples = samples;
  out.estimate = static_cast<double>(S) / N;
  double var = (static_cast<double>(S2) - static_cast<double>(S) * out.estimate) / (N - 1.0);
  out.radius = 4.0 * std::sqrt(std::max(0.0, var) / N);
  return out;
}

}  // namespace rig
