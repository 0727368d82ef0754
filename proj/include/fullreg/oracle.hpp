#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "fullreg/errors.hpp"
#include "fullreg/families.hpp"
#include "fullreg/numerics.hpp"

// Brute-force ground truth. Everything here works from the definitions and
// never consults the closed formulas.
namespace fullreg::oracle {

// Counts in the subset DPs are bounded by cap! and 26! < 2^128.
inline constexpr std::size_t kMaxDpCap = 26;

using Count = unsigned __int128;

inline ExactInteger to_exact(Count c) {
  ExactInteger hi(static_cast<unsigned long>(static_cast<std::uint64_t>(c >> 64)));
  ExactInteger lo(static_cast<unsigned long>(static_cast<std::uint64_t>(c)));
  return (hi << 64) + lo;
}

namespace detail {

inline void check_dp_cap(const char* what, std::size_t size, std::size_t cap) {
  if (cap > kMaxDpCap) throw InvalidArgument("oracle cap above " + std::to_string(kMaxDpCap));
  if (size > cap) throw CapExceeded(what, size, cap);
}

inline std::vector<Vertex> mask_to_vertices(VertexMask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(static_cast<Vertex>(std::countr_zero(m)));
  return out;
}

// Calls visit(I, closed_neighborhood(I), |I|) for every independent set I,
// the empty set included.
template <typename Visit>
void for_each_independent_set(const SimpleGraph& g, Visit&& visit) {
  const std::size_t n = g.vertex_count();
  struct Frame {
    VertexMask set, closed, candidates;
    std::size_t size;
  };
  std::vector<Frame> stack{{0, 0, g.all_vertices(), 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (!visit(f.set, f.closed, f.size)) return;
    // Push in reverse so sets come out in lexicographic order of their members.
    for (std::size_t v = n; v-- > 0;) {
      const VertexMask bit = VertexMask{1} << v;
      if (!(f.candidates & bit)) continue;
      const VertexMask later = f.candidates & ~((bit << 1) - 1);
      stack.push_back({f.set | bit, f.closed | bit | g.neighbors(static_cast<Vertex>(v)),
                       later & ~g.neighbors(static_cast<Vertex>(v)), f.size + 1});
    }
  }
}

}  // namespace detail

/// Number of vertex orderings in which every vertex after the first has an
/// earlier neighbour (equivalently every prefix induces a connected subgraph).
/// Subset DP: g(S) = sum over v in S with a neighbour in S - v of g(S - v).
inline ExactInteger count_successive_orderings(const SimpleGraph& g,
                                               std::size_t cap = kDefaultOracleCap) {
  const std::size_t n = g.vertex_count();
  detail::check_dp_cap("successive-ordering oracle vertex count", n, cap);
  if (n == 0) return 1;
  std::vector<Count> ways(std::size_t{1} << n, 0);
  for (std::size_t v = 0; v < n; ++v) ways[std::size_t{1} << v] = 1;
  for (std::size_t s = 1; s < ways.size(); ++s) {
    if (std::has_single_bit(s)) continue;
    Count total = 0;
    for (std::size_t rest = s; rest; rest &= rest - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(rest));
      const std::size_t without = s & ~(std::size_t{1} << v);
      if (g.neighbors(v) & without) total += ways[without];
    }
    ways[s] = total;
  }
  return to_exact(ways.back());
}

/// Number of independent sets of each size 0..alpha(G).
inline std::vector<ExactInteger> independent_set_counts(const SimpleGraph& g) {
  std::vector<std::uint64_t> counts;
  detail::for_each_independent_set(g, [&](VertexMask, VertexMask, std::size_t size) {
    if (counts.size() <= size) counts.resize(size + 1, 0);
    ++counts[size];
    return true;
  });
  return {counts.begin(), counts.end()};
}

struct RegularityWitness {
  std::vector<Vertex> first;
  std::size_t first_count = 0;
  std::vector<Vertex> second;
  std::size_t second_count = 0;
};

struct RegularityCertificate {
  bool is_fully_regular = false;
  std::optional<FullyRegularParams> params;
  std::optional<RegularityWitness> witness;
};

/// Checks that the number of vertices outside I and not adjacent to I depends
/// only on |I|, over every independent set I. On failure returns the first two
/// same-size sets found with different counts.
inline RegularityCertificate check_fully_regular(const SimpleGraph& g) {
  struct Bucket {
    std::size_t count;
    VertexMask example;
  };
  std::vector<std::optional<Bucket>> buckets;
  std::optional<RegularityWitness> witness;
  const VertexMask all = g.all_vertices();
  detail::for_each_independent_set(g, [&](VertexMask set, VertexMask closed, std::size_t size) {
    const auto outside = static_cast<std::size_t>(std::popcount(all & ~closed));
    if (buckets.size() <= size) buckets.resize(size + 1);
    auto& bucket = buckets[size];
    if (!bucket) {
      bucket = Bucket{outside, set};
    } else if (bucket->count != outside) {
      witness = RegularityWitness{detail::mask_to_vertices(bucket->example), bucket->count,
                                  detail::mask_to_vertices(set), outside};
      return false;
    }
    return true;
  });

  RegularityCertificate cert;
  if (witness) {
    cert.witness = std::move(witness);
    return cert;
  }
  std::vector<ExactInteger> a;
  for (const auto& b : buckets) a.emplace_back(static_cast<unsigned long>(b->count));
  cert.is_fully_regular = true;
  cert.params = FullyRegularParams(std::move(a));
  return cert;
}

/// (d, lambda, nu) of a graph whose edges are the objects being ordered:
/// every edge is adjacent to d others, every independent pair of edges is
/// joined by lambda edges, and nu is the matching number. lambda is reported
/// as 0 when no independent pair exists.
struct EdgeRegularity {
  std::int64_t d = 0;
  std::int64_t lambda = 0;
  std::int64_t nu = 0;

  friend bool operator==(const EdgeRegularity&, const EdgeRegularity&) = default;
};

inline std::int64_t matching_number(const SimpleGraph& g) {
  // Branch on the lowest non-isolated vertex: match it to a neighbour or drop it.
  auto best_from = [&](auto&& self, VertexMask avail) -> std::int64_t {
    while (avail && !(g.neighbors(static_cast<Vertex>(std::countr_zero(avail))) & avail)) {
      avail &= avail - 1;
    }
    if (!avail) return 0;
    const std::int64_t ceiling = std::popcount(avail) / 2;
    const auto v = static_cast<Vertex>(std::countr_zero(avail));
    const VertexMask rest = avail & ~(VertexMask{1} << v);
    std::int64_t best = 0;
    for (VertexMask nb = g.neighbors(v) & rest; nb && best < ceiling; nb &= nb - 1) {
      best = std::max(best, 1 + self(self, rest & ~(VertexMask{1} << std::countr_zero(nb))));
    }
    if (best < ceiling) best = std::max(best, self(self, rest));
    return best;
  };
  return best_from(best_from, g.all_vertices());
}

inline std::optional<EdgeRegularity> extract_edge_regularity(const SimpleGraph& g,
                                                             std::size_t cap = kDefaultOracleCap) {
  const auto edges = g.edges();
  if (edges.size() > cap) throw CapExceeded("edge-regularity edge count", edges.size(), cap);
  if (edges.empty()) return std::nullopt;

  EdgeRegularity r;
  r.d = static_cast<std::int64_t>(g.degree(edges[0].first) + g.degree(edges[0].second)) - 2;
  for (auto [u, v] : edges) {
    if (static_cast<std::int64_t>(g.degree(u) + g.degree(v)) - 2 != r.d) return std::nullopt;
  }
  std::optional<std::int64_t> lambda;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      auto [u, v] = edges[i];
      auto [x, y] = edges[j];
      if (u == x || u == y || v == x || v == y) continue;
      const std::int64_t joining = g.adjacent(u, x) + g.adjacent(u, y) + g.adjacent(v, x) +
                                   g.adjacent(v, y);
      if (lambda && *lambda != joining) return std::nullopt;
      lambda = joining;
    }
  }
  r.lambda = lambda.value_or(0);
  r.nu = matching_number(g);
  return r;
}

enum class ShellingMode { shelling, weak };

/// Counts hyperedge orderings E_1..E_n of a d-uniform hypergraph such that for
/// every j > 1:
///   weak:     some earlier E_k meets E_j in exactly d-1 vertices;
///   shelling: for every earlier E_i there is an earlier E_k with
///             E_i ∩ E_j ⊆ E_k ∩ E_j and |E_k ∩ E_j| = d-1.
/// Both conditions depend only on the set of earlier hyperedges, so a subset
/// DP over predecessor sets is exact.
inline ExactInteger count_hypergraph_shellings(const Hypergraph& h, ShellingMode mode,
                                               std::size_t cap = kDefaultOracleCap) {
  const std::size_t m = h.edge_count();
  detail::check_dp_cap("shelling oracle hyperedge count", m, cap);
  if (m == 0) return 1;
  const std::size_t d = h.uniformity();
  if (d == 0) throw InvalidArgument("shelling oracle needs a uniform hypergraph");

  auto meet = [&](std::size_t a, std::size_t b) {
    std::vector<Vertex> out;
    std::set_intersection(h.hyperedges[a].begin(), h.hyperedges[a].end(),
                          h.hyperedges[b].begin(), h.hyperedges[b].end(),
                          std::back_inserter(out));
    return out;
  };

  // facet_neighbors[j]: hyperedges meeting E_j in d-1 vertices.
  // covers[j][i]: those among them whose trace on E_j contains E_i ∩ E_j.
  std::vector<std::uint32_t> facet_neighbors(m, 0);
  std::vector<std::vector<std::uint32_t>> covers(m, std::vector<std::uint32_t>(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      if (k != j && meet(k, j).size() == d - 1) facet_neighbors[j] |= 1U << k;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      const auto trace = meet(i, j);
      for (std::uint32_t fk = facet_neighbors[j]; fk; fk &= fk - 1) {
        const auto k = static_cast<std::size_t>(std::countr_zero(fk));
        const auto facet = meet(k, j);
        if (std::includes(facet.begin(), facet.end(), trace.begin(), trace.end())) {
          covers[j][i] |= 1U << k;
        }
      }
    }
  }

  auto may_follow = [&](std::uint32_t before, std::size_t j) {
    if (!(facet_neighbors[j] & before)) return false;
    if (mode == ShellingMode::weak) return true;
    for (std::uint32_t rest = before; rest; rest &= rest - 1) {
      if (!(covers[j][static_cast<std::size_t>(std::countr_zero(rest))] & before)) return false;
    }
    return true;
  };

  std::vector<Count> ways(std::size_t{1} << m, 0);
  for (std::size_t e = 0; e < m; ++e) ways[std::size_t{1} << e] = 1;
  for (std::uint32_t s = 1; s < ways.size(); ++s) {
    if (std::has_single_bit(s)) continue;
    Count total = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(rest));
      const std::uint32_t before = s & ~(1U << j);
      if (ways[before] && may_follow(before, j)) total += ways[before];
    }
    ways[s] = total;
  }
  return to_exact(ways.back());
}

}  // namespace fullreg::oracle
