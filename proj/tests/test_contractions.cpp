#include <cmath>

#include "doctest.h"
#include "rig/contractions.hpp"
#include "rig/moments.hpp"

using namespace rig;

namespace {

bool close_pair(double a, double b) {
  return std::fabs(a - b) <= std::max(1e-10 * std::max(std::fabs(a), std::fabs(b)), 1e-14);
}

}  // namespace

TEST_CASE("brute force reproduces the fourth-moment value") {
  double v = brute_force_norm({kG2Bar, kG2Bar, 2, 0}, 1, 0.5);
  CHECK(v == doctest::Approx(0.08203125).epsilon(1e-14));
  double ph = edge_prob(1, 0.5);
  CHECK(v == doctest::Approx(ph * std::pow(1 - ph, 4) + (1 - ph) * std::pow(ph, 4))
                 .epsilon(1e-14));
}

TEST_CASE("centered kernels vanish at p = 0") {
  for (ContractionSpec spec : {ContractionSpec{kG2Bar, kG2Bar, 2, 0},
                               ContractionSpec{kG2Bar, kG2Bar, 1, 1},
                               ContractionSpec{kG1Bar, kG1Bar, 1, 0},
                               ContractionSpec{kG2Bar, kG1Bar, 1, 1}}) {
    CHECK(brute_force_norm(spec, 3, 0.0) == doctest::Approx(0.0).epsilon(1e-30));
  }
  CHECK(closed_norm_g2_20(4, 0.0) == 0.0);
  CHECK(closed_norm_g2_20(4, 1.0) == 0.0);
  CHECK(closed_norm_g2_21(4, 0.0) == 0.0);
  for (int i = 1; i <= 3; ++i) CHECK(alternating_sum_norm(i, 5, 0.0) == 0.0);
}

TEST_CASE("brute-force budget enforcement") {
  CHECK_THROWS_AS(brute_force_norm({kG2Bar, kG2Bar, 1, 1}, 7, 0.5), budget_error);
  CHECK_THROWS_AS(brute_force_norm({kG1Bar, kG1Bar, 1, 0}, 13, 0.5), budget_error);
  CHECK_THROWS_AS(brute_force_norm({kG2Bar, kG2Bar, 3, 0}, 2, 0.5), std::invalid_argument);
}

TEST_CASE("method triangle on a small grid") {
  for (std::int64_t m = 1; m <= 4; ++m) {
    for (double p : {0.15, 0.5, 0.85}) {
      CHECK(close_pair(brute_force_norm({kG2Bar, kG2Bar, 2, 0}, m, p), closed_norm_g2_20(m, p)));
      CHECK(close_pair(brute_force_norm({kG2Bar, kG2Bar, 2, 1}, m, p), closed_norm_g2_21(m, p)));
      CHECK(close_pair(brute_force_norm({kG1Bar, kG1Bar, 1, 0}, m, p),
                       alternating_sum_norm(1, m, p)));
      CHECK(close_pair(brute_force_norm({kG2Bar, kG2Bar, 1, 1}, m, p),
                       alternating_sum_norm(2, m, p)));
      CHECK(close_pair(brute_force_norm({kG2Bar, kG1Bar, 1, 1}, m, p),
                       alternating_sum_norm(3, m, p)));
    }
  }
  // spec-level examples
  CHECK(close_pair(brute_force_norm({kG1Bar, kG1Bar, 1, 0}, 2, 0.5),
                   alternating_sum_norm(1, 2, 0.5)));
  CHECK(close_pair(brute_force_norm({kG2Bar, kG1Bar, 1, 1}, 2, 0.25),
                   alternating_sum_norm(3, 2, 0.25)));
  CHECK(close_pair(brute_force_norm({kG2Bar, kG2Bar, 2, 1}, 3, 0.3), closed_norm_g2_21(3, 0.3)));
}

TEST_CASE("centered complement kernels give the same norms") {
  for (std::int64_t m = 1; m <= 4; ++m) {
    double p = 0.3;
    CHECK(close_pair(brute_force_norm({kG2Bar, kG2Bar, 2, 0}, m, p),
                     brute_force_norm({kRho2Bar, kRho2Bar, 2, 0}, m, p)));
    CHECK(close_pair(brute_force_norm({kG2Bar, kG2Bar, 2, 1}, m, p),
                     brute_force_norm({kRho2Bar, kRho2Bar, 2, 1}, m, p)));
    CHECK(close_pair(brute_force_norm({kG1Bar, kG1Bar, 1, 0}, m, p),
                     brute_force_norm({kRho1Bar, kRho1Bar, 1, 0}, m, p)));
    CHECK(close_pair(brute_force_norm({kG2Bar, kG2Bar, 1, 1}, m, p),
                     brute_force_norm({kRho2Bar, kRho2Bar, 1, 1}, m, p)));
    CHECK(close_pair(brute_force_norm({kG2Bar, kG1Bar, 1, 1}, m, p),
                     brute_force_norm({kRho2Bar, kRho1Bar, 1, 1}, m, p)));
  }
}

TEST_CASE("complement norms: closed values, uncentered kernels, comparisons") {
  ComplementNorms c0 = complement_norms(3, 0.0);
  CHECK(c0.k14 == 1.0);
  CHECK(c0.c4 == 1.0);
  CHECK(c0.p5 == 1.0);
  CHECK(c0.p3 == 1.0);

  ComplementNorms c = complement_norms(1, 0.5);
  CHECK(c.k14 == doctest::Approx(0.53125).epsilon(1e-15));
  CHECK(c.c4 == doctest::Approx(0.4375).epsilon(1e-15));
  CHECK(c.p5 == doctest::Approx(0.40625).epsilon(1e-15));
  CHECK(c.p3 == doctest::Approx(0.625).epsilon(1e-15));

  // brute-force identity with the uncentered rho kernels
  for (std::int64_t m : {std::int64_t{2}, std::int64_t{4}}) {
    double p = 0.35;
    ComplementNorms cn = complement_norms(m, p);
    CHECK(close_pair(cn.k14, brute_force_norm({kRho1, kRho1, 1, 0}, m, p)));
    CHECK(close_pair(cn.c4, brute_force_norm({kRho2, kRho2, 1, 1}, m, p)));
    CHECK(close_pair(cn.p5, brute_force_norm({kRho2, kRho1, 1, 1}, m, p)));
    // rho1 *_1^1 rho1 is the scalar ||rho1||^2, so its squared norm is p3^2
    CHECK(close_pair(cn.p3 * cn.p3, brute_force_norm({kRho1, kRho1, 1, 1}, m, p)));
  }

  for (std::int64_t m : {std::int64_t{1}, std::int64_t{16}, std::int64_t{256}})
    for (double p = 0.05; p < 1.0; p += 0.1) {
      ComplementNorms cn = complement_norms(m, p);
      CHECK(cn.p5 <= cn.k14 + 1e-18);
    }
}

TEST_CASE("norm table composition") {
  NormTable t = norm_table(5, 0.2);
  CHECK(t.n20 == closed_norm_g2_20(5, 0.2));
  CHECK(t.n21 == closed_norm_g2_21(5, 0.2));
  CHECK(t.n10 == alternating_sum_norm(1, 5, 0.2));
  CHECK(t.n11 == alternating_sum_norm(2, 5, 0.2));
  CHECK(t.n_mix == alternating_sum_norm(3, 5, 0.2));
}

TEST_CASE("augmented family graphs are consistent with the leading graphs") {
  for (int i = 1; i <= 3; ++i) {
    SmallGraph g = leading_graph(i);
    CHECK(g.edge_count() == 4);
    for (unsigned I = 0; I < 16; ++I) {
      FamilyEmbedding emb = augmented_family_graph(i, I);
      CHECK(emb.graph.h == 8);
      CHECK(emb.graph.edge_count() == 4);
      // labels inside I keep the leading-graph pair structure; the rest are
      // pairwise disjoint isolated edges
      VertexSet used = 0;
      for (int lab = 0; lab < 4; ++lab) {
        auto [u, v] = emb.label_pair[lab];
        CHECK(emb.graph.has_edge(u, v));
        if (!((I >> lab) & 1)) {
          CHECK(((used >> u) & 1) == 0);
          CHECK(((used >> v) & 1) == 0);
          used |= (VertexSet{1} << u) | (VertexSet{1} << v);
        }
      }
      // the factorization pi(H_{i,I}) = p_hat^(4-|I|) pi(G_{i,I})
      std::int64_t m = 3;
      double p = 0.3;
      SmallGraph sub{g.h, 0};
      for (int lab = 0; lab < 4; ++lab)
        if ((I >> lab) & 1) {
          FamilyEmbedding full = augmented_family_graph(i, 15);
          sub.add_edge(full.label_pair[lab].first, full.label_pair[lab].second);
        }
      double lhs = pi_subgraph(emb.graph, m, p);
      double rhs = std::pow(edge_prob(m, p), 4 - __builtin_popcount(I)) * pi_subgraph(sub, m, p);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(leading_graph(4), std::invalid_argument);
}

TEST_CASE("regime envelopes bound the three alternating norms") {
  // single grid-wide constant, frozen from a sweep over m and p
  const double K = 200.0;
  for (std::int64_t m : {std::int64_t{8}, std::int64_t{32}, std::int64_t{128},
                         std::int64_t{512}, std::int64_t{2048}}) {
    for (double c : {0.1, 0.3, 0.6, 1.0}) {
      double p = c * std::pow(static_cast<double>(m), -1.0 / 3.0);
      double mp2 = static_cast<double>(m) * p * p;
      double mp3 = mp2 * p;
      REQUIRE(mp3 <= 1.0 + 1e-12);
      double env_odd = (static_cast<double>(m) * std::pow(p, 5) + mp3 * mp3) * std::exp(-4 * mp2);
      double env_even = (static_cast<double>(m) * std::pow(p, 4) + mp3 * mp3) * std::exp(-4 * mp2);
      CHECK(alternating_sum_norm(1, m, p) <= K * env_odd);
      CHECK(alternating_sum_norm(2, m, p) <= K * env_even);
      CHECK(alternating_sum_norm(3, m, p) <= K * env_odd);
    }
  }
}

TEST_CASE("mc_cover_sum_check validates input and vanishes for a proper J") {
  CHECK_THROWS_AS(mc_cover_sum_check(0, 0, 20, 0.1, 100000, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(mc_cover_sum_check(1, 16, 20, 0.1, 100000, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(mc_cover_sum_check(1, 0, 20, 0.1, 999, 1, 1), std::invalid_argument);
  McEstimate e = mc_cover_sum_check(1, 0, 20, 0.1, 100000, 7, 2);
  CHECK(e.samples == 100000);
  CHECK(std::fabs(e.estimate) <= e.radius);
}
