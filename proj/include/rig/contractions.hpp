#pragma once

#include <array>
#include <cstdint>

#include "rig/dd.hpp"
#include "rig/subgraphs.hpp"

namespace rig {

// Kernels on attribute vectors: g(x,y) = [x and y intersect], rho = 1 - g,
// g1(x) = mean of g(x, .), rho1 = 1 - g1; "centered" subtracts the mean
// (g2bar = g - p_hat, g1bar = g1 - p_hat, and the rho bars are their
// negatives).
enum class KernelBase { edge, non_edge };

struct KernelId {
  KernelBase base = KernelBase::edge;
  int arity = 2;
  bool centered = false;
};

inline constexpr KernelId kG2{KernelBase::edge, 2, false};
inline constexpr KernelId kG2Bar{KernelBase::edge, 2, true};
inline constexpr KernelId kG1{KernelBase::edge, 1, false};
inline constexpr KernelId kG1Bar{KernelBase::edge, 1, true};
inline constexpr KernelId kRho2{KernelBase::non_edge, 2, false};
inline constexpr KernelId kRho2Bar{KernelBase::non_edge, 2, true};
inline constexpr KernelId kRho1{KernelBase::non_edge, 1, false};
inline constexpr KernelId kRho1Bar{KernelBase::non_edge, 1, true};

// Contraction f *_b^a g: the kernels share b arguments, a of which are
// integrated out.
struct ContractionSpec {
  KernelId left;
  KernelId right;
  int shared = 0;      // b
  int integrated = 0;  // a
};

// Squared L2 norms driving the r = 2 distance bracket.
struct NormTable {
  double n20 = 0.0;    // ||g2bar *_2^0 g2bar||^2
  double n21 = 0.0;    // ||g2bar *_2^1 g2bar||^2
  double n10 = 0.0;    // ||g1bar *_1^0 g1bar||^2
  double n11 = 0.0;    // ||g2bar *_1^1 g2bar||^2
  double n_mix = 0.0;  // ||g2bar *_1^1 g1bar||^2
};

// Exact squared norm by exhaustive weighted summation over all bit-vector
// assignments; everything (p_hat, the arity-1 kernel table) is enumerated
// from scratch, so this is an oracle independent of every closed form.
// Budget: m * k <= 24 with k = max(2, 2a + #free variables).
double brute_force_norm(const ContractionSpec& spec, std::int64_t m, double p);

// ||g2bar *_2^0 g2bar||^2 = p_hat (1-p_hat)^4 + (1-p_hat) p_hat^4.
double closed_norm_g2_20(std::int64_t m, double p);

// ||g2bar *_2^1 g2bar||^2 = (1-2 p_hat)^2 cov + (p_hat (1-p_hat))^2 with
// cov = (1-2p^2+p^3)^m - (1-p_hat)^2; an expansion of the defining
// integral, gated by the brute-force oracle in the test suite.
double closed_norm_g2_21(std::int64_t m, double p);

// The three *_1 norms via alternating sums of subgraph probabilities over
// the leading four-edge graphs (i = 1: K_{1,4} -> n10, i = 2: C_4 -> n11,
// i = 3: P_5 -> n_mix):  sum_I (-1)^|I| p_hat^(4-|I|) pi(G_{i,I}).
double alternating_sum_norm(int i, std::int64_t m, double p);

NormTable norm_table(std::int64_t m, double p);

// Uncentered complement-kernel norms, equal to complement containment
// probabilities: ||rho1 *_1^0 rho1||^2 = P(K_{1,4} in complement),
// ||rho2 *_1^1 rho2||^2 = P(C_4), ||rho2 *_1^1 rho1||^2 = P(P_5),
// ||rho1||^2 = P(P_3).
struct ComplementNorms {
  double k14 = 0.0;
  double c4 = 0.0;
  double p5 = 0.0;
  double p3 = 0.0;
};
ComplementNorms complement_norms(std::int64_t m, double p);

// The leading graph of family i with labeled edges 0..3, and its
// augmentation on 8 vertices: edges with labels in `included` keep the
// leading-graph endpoints, the others become pairwise-disjoint isolated
// edges on fresh rows.
SmallGraph leading_graph(int i);
struct FamilyEmbedding {
  SmallGraph graph;                                 // on 8 vertices
  std::array<std::pair<int, int>, 4> label_pair;    // endpoints of edge label ab
};
FamilyEmbedding augmented_family_graph(int i, unsigned included);

// Monte Carlo estimate of sum_I (-1)^|I| pi(H_{i,I}, covers with exactly
// the labels outside J built as 2-sets), via the classify_cover indicator
// on 8-row samples; radius is 4 pooled standard errors. The sum is exactly
// zero for every proper J.
struct McEstimate {
  double estimate = 0.0;
  double radius = 0.0;
  std::uint64_t samples = 0;
};
McEstimate mc_cover_sum_check(int i, unsigned j_labels, std::int64_t m, double p,
                              std::uint64_t samples, std::uint64_t seed, int threads);

}  // namespace rig
