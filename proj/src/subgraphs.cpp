#include "rig/subgraphs.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace rig {

namespace {

void check_graph(const SmallGraph& H) {
  if (H.h < 0 || H.h > 16) throw std::invalid_argument("graph: vertex count must be in [0,16]");
  int pairs = H.h * (H.h - 1) / 2;
  PairMask full = pairs == 0 ? PairMask{0} : ((PairMask{1} << pairs) - 1);
  if ((H.edges & ~full) != 0) throw std::invalid_argument("graph: edge bit outside C(h,2) range");
}

// powers of p and (1-p) in double-double, exponents 0..h
struct PowTable {
  dd pp[17];
  dd qq[17];
  PowTable(double p, int h) {
    pp[0] = dd(1.0);
    qq[0] = dd(1.0);
    dd dp(p), dq = dd(1.0) - dd(p);
    for (int i = 1; i <= h; ++i) {
      pp[i] = pp[i - 1] * dp;
      qq[i] = qq[i - 1] * dq;
    }
  }
  dd mu(int ones, int h) const { return pp[ones] * qq[h - ones]; }
};

void check_mp(std::int64_t m, double p) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
}

}  // namespace

std::vector<std::pair<int, int>> SmallGraph::edge_list() const {
  std::vector<std::pair<int, int>> es;
  for (int v = 1; v < h; ++v)
    for (int u = 0; u < v; ++u)
      if (has_edge(u, v)) es.emplace_back(u, v);
  return es;
}

SmallGraph SmallGraph::from_edges(int h, std::initializer_list<std::pair<int, int>> es) {
  SmallGraph g;
  g.h = h;
  for (auto [u, v] : es) {
    if (u == v || u < 0 || v < 0 || u >= h || v >= h)
      throw std::invalid_argument("graph: bad edge endpoint");
    g.add_edge(u, v);
  }
  return g;
}

SmallGraph SmallGraph::single_edge() { return from_edges(2, {{0, 1}}); }

SmallGraph SmallGraph::path(int k) {
  SmallGraph g;
  g.h = k;
  for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
  return g;
}

SmallGraph SmallGraph::cycle(int k) {
  SmallGraph g = path(k);
  if (k >= 3) g.add_edge(k - 1, 0);
  return g;
}

SmallGraph SmallGraph::star(int leaves) {
  SmallGraph g;
  g.h = leaves + 1;
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

SmallGraph SmallGraph::complete(int k) {
  SmallGraph g;
  g.h = k;
  for (int v = 1; v < k; ++v)
    for (int u = 0; u < v; ++u) g.add_edge(u, v);
  return g;
}

SmallGraph SmallGraph::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("graph: expected \"h;u-v,u-v,...\""); };
  auto skip_ws = [&](std::size_t i) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    return i;
  };
  auto read_int = [&](std::size_t& i) {
    i = skip_ws(i);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{}) fail();
    i = static_cast<std::size_t>(ptr - text.data());
    return value;
  };
  std::size_t i = 0;
  SmallGraph g;
  g.h = read_int(i);
  if (g.h < 0 || g.h > 16) throw std::invalid_argument("graph: vertex count must be in [0,16]");
  i = skip_ws(i);
  if (i == text.size()) return g;
  if (text[i] != ';') fail();
  ++i;
  i = skip_ws(i);
  while (i < text.size()) {
    int u = read_int(i);
    i = skip_ws(i);
    if (i == text.size() || text[i] != '-') fail();
    ++i;
    int v = read_int(i);
    if (u == v || u < 0 || v < 0 || u >= g.h || v >= g.h)
      throw std::invalid_argument("graph: edge endpoint out of range");
    g.add_edge(u, v);
    i = skip_ws(i);
    if (i == text.size()) break;
    if (text[i] != ',') fail();
    ++i;
  }
  return g;
}

std::vector<VertexSet> parse_vertex_sets(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("cover: expected \"{0,1},{1,2},...\""); };
  std::vector<VertexSet> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '{') fail();
    ++i;
    VertexSet s = 0;
    for (;;) {
      skip_ws();
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc{} || v < 0 || v >= 16) fail();
      i = static_cast<std::size_t>(ptr - text.data());
      s |= VertexSet{1} << v;
      skip_ws();
      if (i == text.size()) fail();
      if (text[i] == '}') { ++i; break; }
      if (text[i] != ',') fail();
      ++i;
    }
    out.push_back(s);
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != ',') fail();
    ++i;
    skip_ws();
  }
  return out;
}

PairMask edges_inside(const SmallGraph& H, VertexSet S) {
  PairMask inside = 0;
  for (int v = 1; v < H.h; ++v) {
    if (!((S >> v) & 1)) continue;
    for (int u = 0; u < v; ++u)
      if ((S >> u) & 1) inside |= PairMask{1} << pair_index(u, v);
  }
  return inside & H.edges;
}

std::vector<VertexSet> powerset_family(const SmallGraph& H) {
  check_graph(H);
  std::vector<VertexSet> fam;
  for (VertexSet S = 0; S < (VertexSet{1} << H.h); ++S)
    if (edges_inside(H, S) != 0) fam.push_back(S);
  return fam;
}

void validate_cover_spec(const SmallGraph& H, const CoverSpec& spec) {
  check_graph(H);
  PairMask covered = 0;
  for (VertexSet S : spec.plus) {
    if (edges_inside(H, S) == 0)
      throw std::invalid_argument("cover: plus set contains no edge of H");
    covered |= edges_inside(H, S);
  }
  for (VertexSet S : spec.minus)
    if (edges_inside(H, S) == 0)
      throw std::invalid_argument("cover: minus set contains no edge of H");
  if (covered != H.edges) throw std::invalid_argument("cover: plus does not cover E(H)");
  for (VertexSet S : spec.plus)
    for (VertexSet T : spec.minus)
      if (S == T) throw std::invalid_argument("cover: plus and minus overlap");
}

AttributeClassProbs attribute_class_probs(const SmallGraph& H,
                                          std::span<const VertexSet> family, double p) {
  check_graph(H);
  PowTable pw(p, H.h);
  AttributeClassProbs out;
  dd rest(1.0);
  for (VertexSet S : family) {
    dd v = pw.mu(__builtin_popcount(S), H.h);
    out.p_sets.push_back(v.to_double());
    rest -= v;
  }
  out.p_rest = rest.to_double();
  return out;
}

dd pi_subgraph_dd(const SmallGraph& H, std::int64_t m, double p) {
  check_graph(H);
  check_mp(m, p);
  auto es = H.edge_list();
  int ne = static_cast<int>(es.size());
  if (ne > 20) throw budget_error("pi_subgraph: more than 20 edges");
  if (ne == 0) return dd(1.0);

  // w[T] = total attribute mass of vertex subsets whose induced H-edges are
  // exactly the edge subset T; its subset-sum transform evaluated at the
  // complement of F is q_F.
  PowTable pw(p, H.h);
  std::size_t nf = std::size_t{1} << ne;
  std::vector<dd> w(nf);
  for (VertexSet S = 0; S < (VertexSet{1} << H.h); ++S) {
    PairMask inside = edges_inside(H, S);
    std::uint32_t t = 0;
    for (int j = 0; j < ne; ++j)
      if ((inside >> pair_index(es[j].first, es[j].second)) & 1) t |= 1u << j;
    w[t] += pw.mu(__builtin_popcount(S), H.h);
  }
  for (int b = 0; b < ne; ++b)
    for (std::size_t T = 0; T < nf; ++T)
      if ((T >> b) & 1) w[T] += w[T ^ (std::size_t{1} << b)];

  dd acc(0.0);
  std::uint32_t full = static_cast<std::uint32_t>(nf - 1);
  for (std::uint32_t F = 0; F < nf; ++F) {
    dd term = dd_pow(w[full & ~F], static_cast<std::uint64_t>(m));
    if (__builtin_popcount(F) & 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

double pi_subgraph(const SmallGraph& H, std::int64_t m, double p) {
  double v = pi_subgraph_dd(H, m, p).to_double();
  return std::min(1.0, std::max(0.0, v));
}

dd complement_factor_dd(const SmallGraph& H, double p) {
  check_graph(H);
  PowTable pw(p, H.h);
  dd q(0.0);
  for (VertexSet S = 0; S < (VertexSet{1} << H.h); ++S)
    if (edges_inside(H, S) == 0) q += pw.mu(__builtin_popcount(S), H.h);
  return q;
}

double complement_factor(const SmallGraph& H, double p) {
  return complement_factor_dd(H, p).to_double();
}

double pi_complement(const SmallGraph& H, std::int64_t m, double p) {
  check_mp(m, p);
  return dd_pow(complement_factor_dd(H, p), static_cast<std::uint64_t>(m)).to_double();
}

dd pi_cover_exact_dd(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p) {
  validate_cover_spec(H, spec);
  check_mp(m, p);
  int np = static_cast<int>(spec.plus.size());
  if (np > 24) throw budget_error("pi_cover_exact: more than 24 sets in plus");

  PowTable pw(p, H.h);
  std::vector<dd> pc(spec.plus.size());
  for (std::size_t i = 0; i < spec.plus.size(); ++i)
    pc[i] = pw.mu(__builtin_popcount(spec.plus[i]), H.h);
  dd base(1.0);
  for (VertexSet S : spec.minus) base -= pw.mu(__builtin_popcount(S), H.h);

  // Gray-code walk over subsets L of plus; cur = base - sum_{i in L} p_i.
  dd acc = dd_pow(base, static_cast<std::uint64_t>(m));  // L = empty
  dd cur = base;
  std::uint32_t gray = 0;
  std::uint64_t total = std::uint64_t{1} << np;
  for (std::uint64_t k = 1; k < total; ++k) {
    std::uint32_t next = static_cast<std::uint32_t>(k ^ (k >> 1));
    std::uint32_t flipped = gray ^ next;
    int j = __builtin_ctz(flipped);
    if (next & flipped)
      cur -= pc[j];
    else
      cur += pc[j];
    gray = next;
    dd term = dd_pow(cur, static_cast<std::uint64_t>(m));
    if (__builtin_popcount(gray) & 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

double pi_cover_exact(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p) {
  double v = pi_cover_exact_dd(H, spec, m, p).to_double();
  return std::min(1.0, std::max(0.0, v));
}

double pi_cover_approx(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p) {
  validate_cover_spec(H, spec);
  check_mp(m, p);
  double md = static_cast<double>(m);
  double minus_mass = 0.0;
  for (VertexSet S : spec.minus)
    minus_mass += std::pow(p, __builtin_popcount(S)) *
                  std::pow(1.0 - p, H.h - __builtin_popcount(S));
  double out = pow1m(minus_mass, m);
  for (VertexSet S : spec.plus) {
    double pc = std::pow(p, __builtin_popcount(S)) *
                std::pow(1.0 - p, H.h - __builtin_popcount(S));
    out *= -std::expm1(-md * pc);
  }
  return out;
}

double pi_cover_order(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p) {
  validate_cover_spec(H, spec);
  check_mp(m, p);
  double md = static_cast<double>(m);
  double mp3 = md * p * p * p;
  if (mp3 > 1.0)
    throw std::invalid_argument("pi_cover_order: requires m p^3 <= 1");
  int minus2 = 0;
  for (VertexSet S : spec.minus)
    if (__builtin_popcount(S) == 2) ++minus2;
  int plus2 = 0;
  double out = 1.0;
  for (VertexSet S : spec.plus) {
    int c = __builtin_popcount(S);
    if (c == 2)
      ++plus2;
    else
      out *= md * std::pow(p, c);
  }
  double mp2 = md * p * p;
  out *= std::exp(-static_cast<double>(minus2) * mp2);
  out *= std::pow(-std::expm1(-mp2), plus2);
  return out;
}

bool classify_cover(const AssignmentMatrix& a, const SmallGraph& H,
                    std::span<const int> rows, PairMask j_edges) {
  check_graph(H);
  if (static_cast<int>(rows.size()) != H.h)
    throw std::invalid_argument("classify_cover: need one row per vertex of H");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= a.n)
      throw std::invalid_argument("classify_cover: row index out of range");
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[i] == rows[j]) throw std::invalid_argument("classify_cover: rows must be distinct");
  }
  if ((j_edges & ~H.edges) != 0)
    throw std::invalid_argument("classify_cover: J must be a subset of E(H)");

  PairMask covered = 0;
  PairMask built2 = 0;
  for (std::int64_t i = 0; i < a.m; ++i) {
    VertexSet built = 0;
    for (int k = 0; k < H.h; ++k)
      if (a.bit(rows[k], i)) built |= VertexSet{1} << k;
    int c = __builtin_popcount(built);
    if (c < 2) continue;
    for (int v = 1; v < H.h; ++v) {
      if (!((built >> v) & 1)) continue;
      for (int u = 0; u < v; ++u)
        if ((built >> u) & 1) covered |= pair_bit(u, v);
    }
    if (c == 2) {
      int v = 31 - __builtin_clz(built);
      int u = __builtin_ctz(built);
      built2 |= pair_bit(u, v);
    }
  }
  PairMask need2 = H.edges & ~j_edges;
  return (covered & H.edges) == H.edges && (built2 & j_edges) == 0 &&
         (built2 & need2) == need2;
}

std::vector<std::vector<VertexSet>> enumerate_clique_covers(const SmallGraph& H) {
  auto fam = powerset_family(H);
  if (fam.size() > 20) throw budget_error("enumerate_clique_covers: |P(H)| > 20");
  std::vector<PairMask> covers(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) covers[i] = edges_inside(H, fam[i]);
  std::vector<std::vector<VertexSet>> out;
  std::uint64_t total = std::uint64_t{1} << fam.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    PairMask got = 0;
    for (std::size_t i = 0; i < fam.size(); ++i)
      if ((mask >> i) & 1) got |= covers[i];
    if (got == H.edges) {
      std::vector<VertexSet> cc;
      for (std::size_t i = 0; i < fam.size(); ++i)
        if ((mask >> i) & 1) cc.push_back(fam[i]);
      out.push_back(std::move(cc));
    }
  }
  return out;
}

}  // namespace rig
