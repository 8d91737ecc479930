#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rig/dd.hpp"
#include "rig/model.hpp"

namespace rig {

// Thrown when an operation would exceed its enumeration budget
// (distinct from invalid parameters; the CLI maps it to exit code 3).
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Labeled graph H on h <= 16 vertices, edges as a pair bitmask.
struct SmallGraph {
  int h = 0;
  PairMask edges = 0;

  void add_edge(int u, int v) { edges |= pair_bit(u, v); }
  bool has_edge(int u, int v) const { return (edges >> pair_index(u, v)) & 1; }
  int edge_count() const { return popcount128(edges); }
  std::vector<std::pair<int, int>> edge_list() const;

  static SmallGraph from_edges(int h, std::initializer_list<std::pair<int, int>> es);
  static SmallGraph single_edge();
  static SmallGraph path(int k);      // P_k on k vertices
  static SmallGraph cycle(int k);     // C_k
  static SmallGraph star(int leaves); // K_{1,leaves}, centre = vertex 0
  static SmallGraph complete(int k);

  // Parses "h;u-v,u-v,..." with 0-based vertices; "h;" or "h" is edgeless.
  static SmallGraph parse(std::string_view text);
};

// Subset of V(H) as a bitmask over h <= 16 vertices.
using VertexSet = std::uint32_t;

// Edges of H with both endpoints inside S.
PairMask edges_inside(const SmallGraph& H, VertexSet S);

// The family P(H): subsets of V(H) containing both ends of at least one
// edge, in increasing mask order. Empty for edgeless H.
std::vector<VertexSet> powerset_family(const SmallGraph& H);

// Required (plus) and forbidden (minus) families of vertex subsets.
struct CoverSpec {
  std::vector<VertexSet> plus;
  std::vector<VertexSet> minus;
};

// Checks: every set lies in P(H), plus covers every edge, plus and minus
// are disjoint. Throws std::invalid_argument otherwise.
void validate_cover_spec(const SmallGraph& H, const CoverSpec& spec);

// Parses a family like "{0,1},{1,2,3}".
std::vector<VertexSet> parse_vertex_sets(std::string_view text);

// Per-set probabilities p_C = p^|C| (1-p)^(h-|C|) that one attribute builds
// exactly C within V(H), plus the leftover mass p_rest = 1 - sum.
struct AttributeClassProbs {
  std::vector<double> p_sets;
  double p_rest = 1.0;
};
AttributeClassProbs attribute_class_probs(const SmallGraph& H,
                                          std::span<const VertexSet> family, double p);

// P(H is a subgraph of G(n,m,p)), vertex-labeled, by edge-subset
// inclusion-exclusion over independent-set weights. Requires |E(H)| <= 20.
double pi_subgraph(const SmallGraph& H, std::int64_t m, double p);
dd pi_subgraph_dd(const SmallGraph& H, std::int64_t m, double p);

// Per-attribute factor q_{E(H)}: probability one attribute's choice set is
// independent in H.
dd complement_factor_dd(const SmallGraph& H, double p);
double complement_factor(const SmallGraph& H, double p);

// P(no edge of H appears) = q_{E(H)}^m.
double pi_complement(const SmallGraph& H, std::int64_t m, double p);

// Exact probability that H is given by a clique cover containing all of
// plus and none of minus: the alternating sum over subsets of plus of
// (1 - sum of p_C)^m, accumulated in double-double. Requires |plus| <= 24.
double pi_cover_exact(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p);
dd pi_cover_exact_dd(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p);

// First-order approximation (1 - sum_{C in minus} p_C)^m *
// prod_{C in plus} (1 - e^{-m p_C}).
double pi_cover_approx(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p);

// Order-of-magnitude value for m p^3 <= 1:
// e^{-|minus_2| m p^2} (1-e^{-m p^2})^{|plus_2|} prod_{|C|>=3 in plus} m p^|C|.
double pi_cover_order(const SmallGraph& H, const CoverSpec& spec, std::int64_t m, double p);

// True iff, with H embedded on the given rows of the sample: every edge of
// H is present, no edge in j_edges is built as an exact 2-set by any
// attribute, and every edge outside j_edges is. "Builds" restricts the
// attribute's choice set to the embedding rows.
bool classify_cover(const AssignmentMatrix& a, const SmallGraph& H,
                    std::span<const int> rows, PairMask j_edges);

// All clique covers of H (subsets of P(H) covering E(H)). Requires
// |P(H)| <= 20.
std::vector<std::vector<VertexSet>> enumerate_clique_covers(const SmallGraph& H);

}  // namespace rig
