#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fullreg/errors.hpp"
#include "fullreg/numerics.hpp"

namespace fullreg {

// Default cap on oracle inputs: 20 line-graph vertices, i.e. 2^20 DP states.
inline constexpr std::size_t kDefaultOracleCap = 20;

// Hard limit of the bitmask graph representation.
inline constexpr std::size_t kMaxGraphVertices = 64;

using Vertex = std::uint32_t;
using VertexMask = std::uint64_t;

/// One vertex class of a complete multipartite uniform hypergraph: every
/// hyperedge meets the class in exactly `degree` of its `size` vertices.
struct Part {
  std::int64_t degree = 1;
  std::int64_t size = 0;

  friend bool operator==(const Part&, const Part&) = default;
  friend auto operator<=>(const Part&, const Part&) = default;
};

/// A complete multipartite d-uniform hypergraph family: t vertex classes with
/// per-class degrees d_j summing to the uniformity d.
class FamilySpec {
 public:
  FamilySpec() = default;

  explicit FamilySpec(std::vector<Part> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidArgument("family needs at least one part");
    for (const Part& p : parts_) {
      if (p.degree < 1) throw InvalidArgument("part degree must be positive");
      if (p.size < 0) throw InvalidArgument("class size must be nonnegative");
    }
  }

  // Convenience constructors for the named families.
  static FamilySpec complete_graph(std::int64_t n) { return FamilySpec({{2, n}}); }
  static FamilySpec complete_bipartite(std::int64_t m, std::int64_t n) {
    return FamilySpec({{1, m}, {1, n}});
  }
  static FamilySpec complete_tripartite(std::int64_t m, std::int64_t n,
                                        std::int64_t p) {
    return FamilySpec({{1, m}, {1, n}, {1, p}});
  }
  static FamilySpec complete_3uniform(std::int64_t n) { return FamilySpec({{3, n}}); }
  // K_{m,n}^{(1,2)}: one vertex from the m-class, two from the n-class.
  static FamilySpec one_two(std::int64_t m, std::int64_t n) {
    return FamilySpec({{1, m}, {2, n}});
  }

  const std::vector<Part>& parts() const noexcept { return parts_; }
  std::size_t part_count() const noexcept { return parts_.size(); }

  std::int64_t uniformity() const {
    std::int64_t d = 0;
    for (const Part& p : parts_) d += p.degree;
    return d;
  }

  std::int64_t vertex_count() const {
    std::int64_t v = 0;
    for (const Part& p : parts_) v += p.size;
    return v;
  }

  // Parts sorted by (degree, size); equal families compare equal.
  FamilySpec canonical() const {
    std::vector<Part> sorted = parts_;
    std::sort(sorted.begin(), sorted.end());
    return FamilySpec(std::move(sorted));
  }

  // "parts=d1:s1,d2:s2,..." in canonical order.
  std::string to_string() const {
    std::string out = "parts=";
    const FamilySpec c = canonical();
    for (std::size_t j = 0; j < c.parts_.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(c.parts_[j].degree) + ':' +
             std::to_string(c.parts_[j].size);
    }
    return out;
  }

  friend bool operator==(const FamilySpec& a, const FamilySpec& b) {
    return a.canonical().parts_ == b.canonical().parts_;
  }

 private:
  std::vector<Part> parts_;
};

namespace detail {

inline std::int64_t parse_small_int(std::string_view text) {
  if (text.empty() || text.size() > 12) {
    throw ParseError("bad number '" + std::string(text) + "'");
  }
  std::int64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError("bad number '" + std::string(text) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace detail

/// Parses "parts=d1:s1,d2:s2,...". The "parts=" prefix is optional.
inline FamilySpec parse_family(std::string_view text) {
  constexpr std::string_view prefix = "parts=";
  if (text.substr(0, prefix.size()) == prefix) text.remove_prefix(prefix.size());
  if (text.empty()) throw ParseError("empty family string");
  std::vector<Part> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("part '" + std::string(item) + "' is not degree:size");
    }
    const std::int64_t degree = detail::parse_small_int(item.substr(0, colon));
    const std::int64_t size = detail::parse_small_int(item.substr(colon + 1));
    if (degree < 1) throw ParseError("part degree must be positive");
    parts.push_back({degree, size});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw ParseError("trailing comma in family string");
  }
  return FamilySpec(std::move(parts));
}

/// Parameters a_0 > a_1 > ... > a_alpha = 0 of a fully regular graph: a_i is
/// the number of vertices outside, and not adjacent to, any independent set of
/// size i.
class FullyRegularParams {
 public:
  FullyRegularParams() : a_{ExactInteger(0)} {}

  explicit FullyRegularParams(std::vector<ExactInteger> a) : a_(std::move(a)) {
    validate();
  }

  const std::vector<ExactInteger>& values() const noexcept { return a_; }
  const ExactInteger& operator[](std::size_t i) const { return a_.at(i); }
  std::size_t alpha() const noexcept { return a_.size() - 1; }
  const ExactInteger& vertex_count() const noexcept { return a_.front(); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i) out += ", ";
      out += a_[i].get_str();
    }
    return out;
  }

  friend bool operator==(const FullyRegularParams&, const FullyRegularParams&) = default;

 private:
  void validate() const {
    if (a_.empty()) throw InvariantViolation("parameter sequence is empty");
    if (a_.back() != 0) throw InvariantViolation("last parameter must be 0");
    for (std::size_t i = 0; i + 1 < a_.size(); ++i) {
      if (a_[i] <= a_[i + 1]) {
        throw InvariantViolation("parameters must strictly decrease: " + to_string());
      }
    }
  }

  std::vector<ExactInteger> a_;
};

/// a_i = prod_j C(s_j - i*d_j, d_j) for 0 <= i <= alpha = min_j floor(s_j/d_j).
/// A family with some s_j < d_j has no hyperedges and yields (0).
inline FullyRegularParams derive_params(const FamilySpec& spec) {
  std::int64_t alpha = -1;
  for (const Part& p : spec.parts()) {
    const std::int64_t q = p.size / p.degree;
    alpha = alpha < 0 ? q : std::min(alpha, q);
  }
  std::vector<ExactInteger> a;
  a.reserve(static_cast<std::size_t>(alpha) + 1);
  for (std::int64_t i = 0; i <= alpha; ++i) {
    ExactInteger prod = 1;
    for (const Part& p : spec.parts()) prod *= binomial(p.size - i * p.degree, p.degree);
    a.push_back(std::move(prod));
  }
  return FullyRegularParams(std::move(a));
}

/// b_i = mn + np + mp - i(m+n+p-i) for 1 <= i <= m+n+p-1, the quotient
/// (a_0 - a_i)/i with a_i = (m-i)(n-i)(p-i) extended to every i.
inline ExactInteger b_value(std::int64_t m, std::int64_t n, std::int64_t p,
                            std::int64_t i) {
  ExactInteger b = ExactInteger(static_cast<long>(m * n + n * p + m * p));
  b -= ExactInteger(static_cast<long>(i)) * static_cast<long>(m + n + p - i);
  return b;
}

inline std::vector<ExactInteger> b_sequence(std::int64_t m, std::int64_t n,
                                            std::int64_t p) {
  if (m < 1 || n < 1 || p < 1) throw InvalidArgument("b_sequence needs m, n, p >= 1");
  std::vector<ExactInteger> b;
  for (std::int64_t i = 1; i <= m + n + p - 1; ++i) b.push_back(b_value(m, n, p, i));
  return b;
}

/// Explicit hypergraph; hyperedges are sorted vertex lists.
struct Hypergraph {
  std::size_t vertex_count = 0;
  std::vector<std::vector<Vertex>> hyperedges;

  std::size_t edge_count() const noexcept { return hyperedges.size(); }

  // Uniform size of the hyperedges, or 0 if empty or mixed.
  std::size_t uniformity() const {
    if (hyperedges.empty()) return 0;
    const std::size_t d = hyperedges.front().size();
    for (const auto& e : hyperedges) {
      if (e.size() != d) return 0;
    }
    return d;
  }
};

/// Small simple graph with bitmask adjacency (at most 64 vertices).
class SimpleGraph {
 public:
  SimpleGraph() = default;

  explicit SimpleGraph(std::size_t vertex_count) : adj_(vertex_count, 0) {
    if (vertex_count > kMaxGraphVertices) {
      throw CapExceeded("graph vertex count", vertex_count, kMaxGraphVertices);
    }
  }

  std::size_t vertex_count() const noexcept { return adj_.size(); }

  void add_edge(Vertex u, Vertex v) {
    if (u == v) throw InvalidArgument("self-loop " + std::to_string(u));
    if (u >= adj_.size() || v >= adj_.size()) {
      throw InvalidArgument("edge endpoint out of range");
    }
    adj_[u] |= VertexMask{1} << v;
    adj_[v] |= VertexMask{1} << u;
  }

  bool adjacent(Vertex u, Vertex v) const { return (adj_[u] >> v) & 1U; }
  VertexMask neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const {
    return static_cast<std::size_t>(std::popcount(adj_[v]));
  }

  VertexMask all_vertices() const {
    return adj_.size() == 64 ? ~VertexMask{0}
                             : (VertexMask{1} << adj_.size()) - 1;
  }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v = u + 1; v < adj_.size(); ++v) {
        if (adjacent(u, v)) out.emplace_back(u, v);
      }
    }
    return out;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (VertexMask m : adj_) twice += static_cast<std::size_t>(std::popcount(m));
    return twice / 2;
  }

  bool connected() const {
    if (adj_.empty()) return true;
    VertexMask seen = 1, frontier = 1;
    while (frontier) {
      VertexMask next = 0;
      for (VertexMask f = frontier; f; f &= f - 1) {
        next |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == all_vertices();
  }

  // The graph viewed as a 2-uniform hypergraph.
  Hypergraph as_hypergraph() const {
    Hypergraph h;
    h.vertex_count = vertex_count();
    for (auto [u, v] : edges()) h.hyperedges.push_back({u, v});
    return h;
  }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<VertexMask> adj_;
};

namespace detail {

inline void check_cap(const char* what, std::size_t size, std::size_t cap) {
  if (size > cap) throw CapExceeded(what, size, cap);
}

// Appends every k-subset of [first, first + n) to `out` in lexicographic order.
inline void choose_subsets(Vertex first, std::int64_t n, std::int64_t k,
                           std::vector<std::vector<Vertex>>& out) {
  if (k > n) return;
  std::vector<Vertex> pick(static_cast<std::size_t>(k));
  std::iota(pick.begin(), pick.end(), first);
  while (true) {
    out.push_back(pick);
    std::int64_t i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                         first + static_cast<Vertex>(n - k + i)) {
      --i;
    }
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < k; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace detail

/// All hyperedges meeting class j in exactly d_j vertices. Classes occupy
/// consecutive 0-based vertex ranges in part order.
inline Hypergraph build_hypergraph(const FamilySpec& spec,
                                   std::size_t cap = kDefaultOracleCap) {
  ExactInteger expected = 1;
  for (const Part& p : spec.parts()) expected *= binomial(p.size, p.degree);
  if (expected > static_cast<unsigned long>(cap)) {
    throw CapExceeded("hyperedge count", expected.fits_ulong_p() ? expected.get_ui() : ~0UL,
                      cap);
  }

  Hypergraph h;
  h.vertex_count = static_cast<std::size_t>(spec.vertex_count());
  h.hyperedges.push_back({});
  Vertex offset = 0;
  for (const Part& p : spec.parts()) {
    std::vector<std::vector<Vertex>> choices;
    detail::choose_subsets(offset, p.size, p.degree, choices);
    std::vector<std::vector<Vertex>> next;
    for (const auto& base : h.hyperedges) {
      for (const auto& c : choices) {
        auto e = base;
        e.insert(e.end(), c.begin(), c.end());
        next.push_back(std::move(e));
      }
    }
    h.hyperedges = std::move(next);
    offset += static_cast<Vertex>(p.size);
  }
  return h;
}

inline bool intersects(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

/// One vertex per hyperedge; two are adjacent iff the hyperedges intersect.
inline SimpleGraph line_graph(const Hypergraph& h, std::size_t cap = kDefaultOracleCap) {
  detail::check_cap("line graph vertex count", h.edge_count(),
                    std::min(cap, kMaxGraphVertices));
  SimpleGraph g(h.edge_count());
  for (Vertex i = 0; i < h.edge_count(); ++i) {
    for (Vertex j = i + 1; j < h.edge_count(); ++j) {
      if (intersects(h.hyperedges[i], h.hyperedges[j])) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace fullreg
