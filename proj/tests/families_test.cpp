#include <gtest/gtest.h>

#include <algorithm>

#include "fullreg/families.hpp"
#include "fullreg/oracle.hpp"
#include "support/family_corpus.hpp"

namespace fullreg {
namespace {

std::vector<ExactInteger> ints(std::initializer_list<long> xs) {
  return {xs.begin(), xs.end()};
}

TEST(FamilySpec, CanonicalStringSortsParts) {
  const FamilySpec spec({{2, 3}, {1, 4}, {1, 2}});
  EXPECT_EQ(spec.to_string(), "parts=1:2,1:4,2:3");
  EXPECT_EQ(spec, FamilySpec({{1, 2}, {2, 3}, {1, 4}}));
  EXPECT_EQ(spec.uniformity(), 4);
  EXPECT_EQ(spec.vertex_count(), 9);
}

TEST(FamilySpec, ParseRoundTrip) {
  EXPECT_EQ(parse_family("parts=1:2,1:3"), FamilySpec::complete_bipartite(2, 3));
  EXPECT_EQ(parse_family("2:4"), FamilySpec::complete_graph(4));
  const FamilySpec f = parse_family("parts=3:7,1:1,2:5");
  EXPECT_EQ(parse_family(f.to_string()), f);
}

TEST(FamilySpec, ParseErrors) {
  EXPECT_THROW(parse_family(""), ParseError);
  EXPECT_THROW(parse_family("parts="), ParseError);
  EXPECT_THROW(parse_family("parts=1:2,"), ParseError);
  EXPECT_THROW(parse_family("parts=12"), ParseError);
  EXPECT_THROW(parse_family("parts=0:3"), ParseError);
  EXPECT_THROW(parse_family("parts=1:-3"), ParseError);
  EXPECT_THROW(parse_family("parts=a:3"), ParseError);
}

TEST(DeriveParams, NamedFamilies) {
  EXPECT_EQ(derive_params(FamilySpec::complete_bipartite(2, 3)).values(), ints({6, 2, 0}));
  EXPECT_EQ(derive_params(FamilySpec::complete_graph(4)).values(), ints({6, 1, 0}));
  EXPECT_EQ(derive_params(FamilySpec::complete_tripartite(2, 2, 2)).values(), ints({8, 1, 0}));
  EXPECT_EQ(derive_params(FamilySpec::complete_3uniform(5)).values(), ints({10, 0}));
  EXPECT_EQ(derive_params(FamilySpec::complete_bipartite(3, 3)).values(), ints({9, 4, 1, 0}));
}

TEST(DeriveParams, DegenerateFamilyHasNoHyperedges) {
  const auto p = derive_params(FamilySpec({{2, 1}, {1, 5}}));
  EXPECT_EQ(p.values(), ints({0}));
  EXPECT_EQ(p.alpha(), 0U);
}

TEST(DeriveParams, MatchesClosedFormsForNamedFamilies) {
  for (long m = 1; m <= 12; ++m) {
    for (long n = 1; n <= 12; ++n) {
      const auto a = derive_params(FamilySpec::complete_bipartite(m, n));
      ASSERT_EQ(a.alpha(), static_cast<std::size_t>(std::min(m, n)));
      for (long i = 0; i <= std::min(m, n); ++i) EXPECT_EQ(a[i], (m - i) * (n - i));
    }
  }
  for (long n = 2; n <= 20; ++n) {
    const auto a = derive_params(FamilySpec::complete_graph(n));
    ASSERT_EQ(a.alpha(), static_cast<std::size_t>(n / 2));
    for (long i = 0; i <= n / 2; ++i) EXPECT_EQ(a[i], binomial(n - 2 * i, 2));
  }
}

TEST(DeriveParams, StrictlyDecreasingOverManyFamilies) {
  for (long d1 = 1; d1 <= 3; ++d1) {
    for (long d2 = 1; d2 <= 3; ++d2) {
      for (long s1 = 0; s1 <= 12; ++s1) {
        for (long s2 = 0; s2 <= 12; ++s2) {
          // The constructor enforces the invariants; derivation must not throw.
          const auto p = derive_params(FamilySpec({{d1, s1}, {d2, s2}}));
          EXPECT_EQ(p.values().back(), 0);
        }
      }
    }
  }
}

TEST(FullyRegularParams, RejectsBrokenSequences) {
  EXPECT_THROW(FullyRegularParams(ints({5, 5, 0})), InvariantViolation);
  EXPECT_THROW(FullyRegularParams(ints({5, 2})), InvariantViolation);
  EXPECT_THROW(FullyRegularParams(ints({})), InvariantViolation);
}

TEST(BSequence, Values) {
  EXPECT_EQ(b_sequence(2, 2, 2), ints({7, 4, 3, 4, 7}));
  EXPECT_EQ(b_sequence(8, 2, 2)[5], 0);  // b_6
}

TEST(BSequence, SymmetryAndQuotientIdentity) {
  for (long m = 1; m <= 9; ++m) {
    for (long n = 1; n <= 9; ++n) {
      for (long p = 1; p <= 9; ++p) {
        const auto b = b_sequence(m, n, p);
        const long total = m + n + p;
        const long a0 = m * n * p;
        for (long i = 1; i < total; ++i) {
          EXPECT_EQ(b[i - 1], b[total - i - 1]);
          const long ai = (m - i) * (n - i) * (p - i);
          EXPECT_EQ(b[i - 1] * i + ai, a0);
        }
      }
    }
  }
}

TEST(BuildHypergraph, EdgeCounts) {
  EXPECT_EQ(build_hypergraph(FamilySpec::complete_bipartite(2, 2)).edge_count(), 4U);
  EXPECT_EQ(build_hypergraph(FamilySpec::complete_3uniform(5)).edge_count(), 10U);
  EXPECT_EQ(build_hypergraph(FamilySpec::one_two(2, 3)).edge_count(), 6U);
  EXPECT_EQ(build_hypergraph(FamilySpec({{2, 1}})).edge_count(), 0U);
}

TEST(BuildHypergraph, HyperedgesMeetEachClassCorrectly) {
  const FamilySpec spec({{1, 3}, {2, 4}, {1, 2}});
  const Hypergraph h = build_hypergraph(spec, 64);
  EXPECT_EQ(h.edge_count(), 3U * 6U * 2U);
  EXPECT_EQ(h.uniformity(), 4U);
  auto sorted = h.hyperedges;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& e : h.hyperedges) {
    EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
    EXPECT_EQ(std::count_if(e.begin(), e.end(), [](Vertex v) { return v < 3; }), 1);
    EXPECT_EQ(std::count_if(e.begin(), e.end(), [](Vertex v) { return v >= 3 && v < 7; }), 2);
    EXPECT_EQ(std::count_if(e.begin(), e.end(), [](Vertex v) { return v >= 7; }), 1);
  }
}

TEST(BuildHypergraph, CapIsEnforced) {
  EXPECT_THROW(build_hypergraph(FamilySpec::complete_graph(7)), CapExceeded);  // 21 edges
  EXPECT_EQ(build_hypergraph(FamilySpec::complete_graph(7), 21).edge_count(), 21U);
  EXPECT_EQ(build_hypergraph(FamilySpec::complete_3uniform(6)).edge_count(), 20U);
}

TEST(LineGraph, SmallCases) {
  const SimpleGraph k3 = line_graph(build_hypergraph(FamilySpec::complete_graph(3)));
  EXPECT_EQ(k3.edge_count(), 3U);

  const SimpleGraph c4 = line_graph(build_hypergraph(FamilySpec::complete_bipartite(2, 2)));
  EXPECT_EQ(c4.vertex_count(), 4U);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(c4.degree(v), 2U);
  EXPECT_TRUE(c4.connected());

  Hypergraph c5{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}};
  const SimpleGraph l5 = line_graph(c5);
  EXPECT_EQ(l5.edge_count(), 5U);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(l5.degree(v), 2U);
  EXPECT_TRUE(l5.connected());
}

TEST(LineGraph, CapIsEnforced) {
  const Hypergraph h = build_hypergraph(FamilySpec::complete_graph(7), 30);
  EXPECT_THROW(line_graph(h), CapExceeded);
  EXPECT_EQ(line_graph(h, 30).vertex_count(), 21U);
}

TEST(Families, ParamsMatchDefinitionLevelExtraction) {
  const auto corpus = testing::small_families(20);
  ASSERT_GT(corpus.size(), 100U);
  for (const FamilySpec& spec : corpus) {
    const auto params = derive_params(spec);
    const auto h = build_hypergraph(spec);
    ASSERT_EQ(params.vertex_count(), h.edge_count()) << spec.to_string();
    const auto cert = oracle::check_fully_regular(line_graph(h));
    ASSERT_TRUE(cert.is_fully_regular) << spec.to_string();
    EXPECT_EQ(*cert.params, params) << spec.to_string();
  }
}

}  // namespace
}  // namespace fullreg
