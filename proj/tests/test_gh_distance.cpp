#include <gtest/gtest.h>

#include "ghforge/embedding.hpp"
#include "ghforge/error.hpp"
#include "ghforge/gh_distance.hpp"
#include "test_support.hpp"

using namespace ghforge;
using ghforge::oracle::q;

namespace {

void expect_witness_consistent(const GhResult& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  EXPECT_EQ(distortion(r.witness, x, y), q(2) * r.value);
  EXPECT_EQ(r.witness.left_size(), x.size());
  EXPECT_EQ(r.witness.right_size(), y.size());
}

FiniteMetricSpace glued(const FiniteMetricSpace& block) {
  return embed(ProductPoint{{block}}, EmbeddingParams{q(1), 1}).space;
}

}  // namespace

TEST(GhBruteforce, Examples) {
  const auto x = make_space({{q(0), q(1), q(2)}, {q(1), q(0), q(3, 2)}, {q(2), q(3, 2), q(0)}});
  const auto self = gh_bruteforce(x, x);
  EXPECT_EQ(self.value, q(0));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(self.witness.contains(i, i));
  EXPECT_EQ(self.method, GhMethod::Bruteforce);

  // Single candidate {pt} x X: value diam(X) / 2.
  const auto anchor = anchor_space(q(1));
  EXPECT_EQ(oracle::naive_gh(one_point_space(), anchor), q(3, 2));
  EXPECT_EQ(gh_bruteforce(one_point_space(), anchor).value, q(3, 2));
  EXPECT_EQ(gh_bruteforce(one_point_space(), anchor).nodes_explored, 1u);

  EXPECT_EQ(oracle::naive_gh(two_point_space(q(1)), two_point_space(q(2))), q(1, 2));
  const auto two = gh_bruteforce(two_point_space(q(1)), two_point_space(q(2)));
  EXPECT_EQ(two.value, q(1, 2));
  EXPECT_EQ(two.nodes_explored, 7u);
  expect_witness_consistent(two, two_point_space(q(1)), two_point_space(q(2)));
}

TEST(GhBruteforce, CapExceeded) {
  std::mt19937_64 rng(3);
  const auto x = oracle::random_space(rng, 4);
  try {
    gh_bruteforce(x, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(GhBruteforce, MatchesDefinitionOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = oracle::random_space(rng, 1 + rng() % 3, 6);
    const auto y = oracle::random_space(rng, 1 + rng() % 3, 4);
    const auto r = gh_bruteforce(x, y);
    EXPECT_EQ(r.value, oracle::naive_gh(x, y));
    expect_witness_consistent(r, x, y);
  }
}

TEST(GhExact, GluedOnePointVersusGluedTwoPoint) {
  // 3-point vs 4-point gluings: small enough for the subset enumeration.
  const auto a = glued(one_point_space());
  const auto b = glued(two_point_space(q(1)));
  ASSERT_EQ(a.size() * b.size(), 12u);
  EXPECT_EQ(oracle::naive_gh(a, b), q(1, 2));
  EXPECT_EQ(gh_bruteforce(a, b).value, q(1, 2));
  const auto r = gh_exact(a, b);
  EXPECT_EQ(r.value, q(1, 2));
  EXPECT_TRUE(r.exact);
  expect_witness_consistent(r, a, b);
}

TEST(GhExact, SelfDistancePrunes) {
  std::mt19937_64 rng(8);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto x = oracle::random_space(rng, n);
    const auto r = gh_exact(x, x);
    EXPECT_EQ(r.value, q(0));
    EXPECT_LE(r.nodes_explored, unpruned_node_count(n, n));
  }
  EXPECT_EQ(unpruned_node_count(1, 1), 2u);
  EXPECT_EQ(unpruned_node_count(2, 2), 2u + 4u + 4u * (2u + 4u));
}

TEST(GhExact, AgreesWithBothOraclesOnSmallCorpus) {
  const auto corpus = oracle::small_corpus({q(1), q(2)});
  for (const auto& x : corpus)
    for (const auto& y : corpus) {
      const auto brute = gh_bruteforce(x, y);
      const auto pairs = gh_function_pairs(x, y);
      const auto fast = gh_exact(x, y);
      ASSERT_EQ(brute.value, pairs.value);
      ASSERT_EQ(brute.value, fast.value);
      expect_witness_consistent(fast, x, y);
      expect_witness_consistent(pairs, x, y);
    }
}

TEST(GhExact, AgreesWithFunctionPairsOnFourPoints) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_space(rng, 4, 6);
    const auto y = oracle::random_space(rng, 4, 10);
    EXPECT_EQ(gh_exact(x, y).value, gh_function_pairs(x, y).value);
  }
}

TEST(GhExact, AgreesWithFunctionPairsOnFivePoints) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    const auto x = oracle::random_space(rng, 5, 16);
    const auto y = oracle::random_space(rng, 5, 12);
    const auto fast = gh_exact(x, y);
    EXPECT_EQ(fast.value, gh_function_pairs(x, y).value);
  }
}

TEST(GhExact, SandwichSymmetryAndDiameterBound) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = oracle::random_space(rng, 1 + rng() % 4, 8);
    const auto y = oracle::random_space(rng, 1 + rng() % 4, 6);
    const Scalar v = gh_exact(x, y).value;
    EXPECT_LE(gh_lower_bound_diam(x, y), v);
    EXPECT_LE(v, gh_upper_bound_full_relation(x, y));
    EXPECT_LE(gh_upper_bound_full_relation(x, y), std::max(diameter(x), diameter(y)));
    EXPECT_EQ(v, gh_exact(y, x).value);
  }
}

TEST(GhExact, TriangleInequalityOnTriples) {
  const auto corpus = oracle::small_corpus({q(1), q(3, 2), q(2)});
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& x = corpus[rng() % corpus.size()];
    const auto& y = corpus[rng() % corpus.size()];
    const auto& z = corpus[rng() % corpus.size()];
    EXPECT_LE(gh_exact(x, z).value, gh_exact(x, y).value + gh_exact(y, z).value);
  }
}

TEST(GhExact, IsometryInvariance) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = oracle::random_space(rng, 4);
    const auto y = oracle::random_space(rng, 3);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto z = permute(x, perm);
    EXPECT_EQ(gh_exact(x, y).value, gh_exact(z, y).value);
    EXPECT_EQ(gh_exact(x, z).value, q(0));
    EXPECT_TRUE(find_isometry(x, z).has_value());
  }
}

TEST(GhExact, ZeroExactlyForIsometricSpaces) {
  const auto corpus = oracle::small_corpus({q(1), q(2)}, 3);
  for (const auto& x : corpus)
    for (const auto& y : corpus)
      EXPECT_EQ(gh_exact(x, y).value == q(0), find_isometry(x, y).has_value());
}

TEST(GhExact, ResultIndependentOfWorkerCount) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const auto x = oracle::random_space(rng, 3 + rng() % 4);
    const auto y = oracle::random_space(rng, 3 + rng() % 4);
    const auto one = gh_exact(x, y, GhOptions{std::nullopt, 1, std::nullopt});
    const auto four = gh_exact(x, y, GhOptions{std::nullopt, 4, std::nullopt});
    EXPECT_EQ(one.value, four.value);
    EXPECT_EQ(one.witness, four.witness);
    EXPECT_EQ(one.nodes_explored, four.nodes_explored);
  }
}

TEST(GhExact, BudgetGivesUpperBound) {
  std::mt19937_64 rng(13);
  const auto x = oracle::random_space(rng, 6, 24);
  const auto y = oracle::random_space(rng, 6, 20);
  const auto full = gh_exact(x, y);
  ASSERT_TRUE(full.exact);
  const auto cut = gh_exact(x, y, GhOptions{std::uint64_t{12}, 1, std::nullopt});
  EXPECT_FALSE(cut.exact);
  EXPECT_GE(cut.value, full.value);
  expect_witness_consistent(cut, x, y);
}

TEST(GhExact, HintDoesNotChangeTheAnswer) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = oracle::random_space(rng, 4);
    const auto y = oracle::random_space(rng, 4);
    const auto plain = gh_exact(x, y);
    const auto hinted = gh_exact(x, y, GhOptions{std::nullopt, 1, plain.witness});
    EXPECT_EQ(plain.value, hinted.value);
    EXPECT_LE(hinted.nodes_explored, plain.nodes_explored);
  }
  try {
    gh_exact(one_point_space(), one_point_space(), GhOptions{std::nullopt, 1, Correspondence::identity(2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeMismatch);
  }
}

// Denominators too large for the rescaled int64 kernel exercise the
// Rational fallback.
TEST(GhExact, HugeDenominatorsUseExactFallback) {
  const Scalar tiny = Scalar(mpq_class(mpz_class(1), mpz_class(1) << 80));
  const auto x = make_space({{q(0), q(1) + tiny, q(1)}, {q(1) + tiny, q(0), q(1)}, {q(1), q(1), q(0)}});
  const auto y = two_point_space(q(1));
  const auto r = gh_exact(x, y);
  EXPECT_EQ(r.value, gh_bruteforce(x, y).value);
  EXPECT_EQ(r.value, oracle::naive_gh(x, y));
  expect_witness_consistent(r, x, y);
}

TEST(GhBounds, Examples) {
  const auto two1 = two_point_space(q(1));
  EXPECT_EQ(gh_lower_bound_diam(two1, two1), q(0));
  EXPECT_EQ(gh_lower_bound_diam(two1, two_point_space(q(2))), q(1, 2));
  EXPECT_EQ(gh_lower_bound_diam(anchor_space(q(1)), one_point_space()), q(3, 2));
  // dis(X x X) = 1 from the mixed pair-pairs.
  EXPECT_EQ(oracle::naive_distortion(Correspondence::full(2, 2).pairs(), two1, two1), q(1));
  EXPECT_EQ(gh_upper_bound_full_relation(two1, two1), q(1, 2));
  EXPECT_EQ(gh_upper_bound_full_relation(one_point_space(), one_point_space()), q(0));
}

TEST(Workers, ReadsEnvironment) {
  ::setenv("GHFORGE_WORKERS", "3", 1);
  EXPECT_EQ(workers_from_env(), 3u);
  ::setenv("GHFORGE_WORKERS", "zero", 1);
  EXPECT_EQ(workers_from_env(), 1u);
  ::setenv("GHFORGE_WORKERS", "0", 1);
  EXPECT_EQ(workers_from_env(), 1u);
  ::unsetenv("GHFORGE_WORKERS");
  EXPECT_EQ(workers_from_env(), 1u);
}
