#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fullreg/errors.hpp"
#include "fullreg/families.hpp"

// Labeled enumeration of small graphs and an exact canonical form for
// deduplicating them up to isomorphism.
namespace fullreg::graphs {

inline constexpr std::size_t kMaxEnumVertices = 10;

// Upper-triangle adjacency bits in the order (0,1), (0,2), ..., (1,2), ...
using GraphCode = std::uint64_t;

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

inline SimpleGraph from_code(std::size_t n, GraphCode code) {
  SimpleGraph g(n);
  std::size_t bit = 0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j, ++bit) {
      if ((code >> bit) & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

inline GraphCode to_code(const SimpleGraph& g) {
  GraphCode code = 0;
  std::size_t bit = 0;
  const auto n = static_cast<Vertex>(g.vertex_count());
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j, ++bit) {
      if (g.adjacent(i, j)) code |= GraphCode{1} << bit;
    }
  }
  return code;
}

namespace detail {

// Colour refinement started from degrees; colours are ranks of signatures so
// the final partition is invariant under relabeling.
inline std::vector<std::size_t> refine_colors(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> color(n);
  for (Vertex v = 0; v < n; ++v) color[v] = g.degree(v);
  std::size_t classes = 0;
  while (true) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].first = color[v];
      for (Vertex u = 0; u < n; ++u) {
        if (g.adjacent(u, v)) sig[v].second.push_back(color[u]);
      }
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Vertex v = 0; v < n; ++v) {
      color[v] = static_cast<std::size_t>(
          std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    }
    if (distinct.size() == classes) return color;
    classes = distinct.size();
  }
}

}  // namespace detail

/// Minimum code over all relabelings that list vertices cell by cell in
/// refined-colour order. Two graphs get the same value iff they are isomorphic.
inline GraphCode canonical_code(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxEnumVertices) throw CapExceeded("canonical form vertex count", n, kMaxEnumVertices);
  if (n <= 1) return 0;
  const auto color = detail::refine_colors(g);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return std::pair(color[a], a) < std::pair(color[b], b);
  });
  // cells[k] = [begin, end) ranges of equal colour within `order`.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && color[order[j]] == color[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  GraphCode best = ~GraphCode{0};
  auto evaluate = [&] {
    GraphCode code = 0;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++bit) {
        if (g.adjacent(order[i], order[j])) code |= GraphCode{1} << bit;
      }
    }
    best = std::min(best, code);
  };
  auto permute_cells = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      evaluate();
      return;
    }
    auto first = order.begin() + static_cast<std::ptrdiff_t>(cells[cell].first);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(cells[cell].second);
    std::sort(first, last);
    do {
      self(self, cell + 1);
    } while (std::next_permutation(first, last));
  };
  permute_cells(permute_cells, 0);
  return best;
}

inline SimpleGraph complete_graph(std::size_t n) {
  SimpleGraph g(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

inline SimpleGraph complete_bipartite(std::size_t m, std::size_t n) {
  SimpleGraph g(m + n);
  for (Vertex i = 0; i < m; ++i) {
    for (Vertex j = 0; j < n; ++j) g.add_edge(i, static_cast<Vertex>(m + j));
  }
  return g;
}

inline SimpleGraph cycle(std::size_t n) {
  SimpleGraph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, static_cast<Vertex>((i + 1) % n));
  return g;
}

inline SimpleGraph path(std::size_t n) {
  SimpleGraph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// "n=5;edges=0-1,1-2", re-parseable by parse_graph_id().
inline std::string graph_id(const SimpleGraph& g) {
  std::string out = "n=" + std::to_string(g.vertex_count()) + ";edges=";
  bool first = true;
  for (auto [u, v] : g.edges()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(u) + '-' + std::to_string(v);
  }
  return out;
}

inline SimpleGraph parse_graph_id(const std::string& id) {
  const auto semi = id.find(';');
  if (id.rfind("n=", 0) != 0 || semi == std::string::npos ||
      id.compare(semi + 1, 6, "edges=") != 0) {
    throw ParseError("bad graph id '" + id + "'");
  }
  const std::size_t n = std::stoul(id.substr(2, semi - 2));
  SimpleGraph g(n);
  std::string rest = id.substr(semi + 7);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string item = rest.substr(0, comma);
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw ParseError("bad edge '" + item + "' in graph id");
    g.add_edge(static_cast<Vertex>(std::stoul(item.substr(0, dash))),
               static_cast<Vertex>(std::stoul(item.substr(dash + 1))));
    if (comma == std::string::npos) break;
    rest.erase(0, comma + 1);
  }
  return g;
}

}  // namespace fullreg::graphs
