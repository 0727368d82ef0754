#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fullreg/families.hpp"
#include "fullreg/formulas.hpp"
#include "fullreg/graph_enum.hpp"
#include "fullreg/numerics.hpp"
#include "fullreg/oracle.hpp"

namespace fullreg::verify {

struct Mismatch {
  std::string id;
  std::string expected;
  std::string got;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

/// Outcome of one verification campaign. Every mismatch id can be passed to
/// run_instance() to reproduce that single comparison.
struct VerificationReport {
  std::string campaign;
  std::size_t instances_checked = 0;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> findings;
  std::chrono::milliseconds elapsed{0};

  bool passed() const noexcept { return mismatches.empty(); }
};

struct Options {
  // 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::size_t oracle_cap = kDefaultOracleCap;
};

namespace detail {

inline unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs fn(i) for i in [0, count) on a worker pool; results keep index order.
template <typename Result>
std::vector<Result> parallel_map(std::size_t count, unsigned threads,
                                 const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count && !failed;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = worker_count(threads, count);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Per-instance outcome: nullopt for agreement.
using Outcome = std::optional<Mismatch>;

inline Outcome compare(const std::string& id, const std::string& expected,
                       const std::function<std::string()>& compute) {
  std::string got;
  try {
    got = compute();
  } catch (const Error& e) {
    got = std::string("error: ") + e.what();
  }
  if (got == expected) return std::nullopt;
  return Mismatch{id, expected, got};
}

inline VerificationReport assemble(std::string campaign, const std::vector<std::vector<Outcome>>& outcomes,
                                   std::chrono::steady_clock::time_point start) {
  VerificationReport report;
  report.campaign = std::move(campaign);
  for (const auto& instance : outcomes) {
    ++report.instances_checked;
    for (const auto& o : instance) {
      if (o) report.mismatches.push_back(*o);
    }
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

inline std::string kv(const char* key, std::int64_t value) {
  return std::string(key) + "=" + std::to_string(value);
}

}  // namespace detail

/// Compares every applicable closed form, and the subset-DP oracle when the
/// line graph fits under the cap, against the summation formula.
inline std::vector<detail::Outcome> crosscheck_outcomes(const FamilySpec& family,
                                                        const Options& options) {
  const FamilySpec spec = family.canonical();
  const std::string base = "family:" + spec.to_string();
  std::vector<detail::Outcome> outcomes;

  const FormulaResult reference = evaluate(spec, Method::theorem2);
  const std::string expected_sigma = to_string(*reference.sigma);
  for (Method m : applicable_methods(spec)) {
    if (m == Method::theorem2) continue;
    outcomes.push_back(detail::compare(base + "#" + std::string(method_name(m)), expected_sigma,
                                       [&] { return to_string(*evaluate(spec, m).sigma); }));
  }
  const ExactInteger edges = derive_params(spec).vertex_count();
  if (edges <= static_cast<unsigned long>(options.oracle_cap)) {
    outcomes.push_back(detail::compare(base + "#oracle", expected_sigma, [&] {
      const auto g = line_graph(build_hypergraph(spec, options.oracle_cap), options.oracle_cap);
      return to_string(oracle::count_successive_orderings(g, options.oracle_cap));
    }));
  }
  return outcomes;
}

inline VerificationReport crosscheck_family(const FamilySpec& spec, const Options& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto report = detail::assemble("family", {crosscheck_outcomes(spec, options)}, start);
  report.findings.push_back(spec.canonical().to_string() + " sigma=" +
                            to_string(*evaluate(spec, Method::theorem2).sigma));
  return report;
}

inline detail::Outcome conjecture_c_instance(std::int64_t n) {
  const std::string expected = to_string(sigma_prime_fully_regular(derive_params(FamilySpec::complete_3uniform(n))));
  return detail::compare("conjecture-c:" + detail::kv("n", n), expected,
                         [&] { return to_string(conjecture_c_value(n)); });
}

inline VerificationReport sweep_conjecture_c(std::int64_t n_max, const Options& options = {}) {
  if (n_max < 3) throw InvalidArgument("conjecture-c sweep needs n_max >= 3");
  const auto start = std::chrono::steady_clock::now();
  auto outcomes = detail::parallel_map<std::vector<detail::Outcome>>(
      static_cast<std::size_t>(n_max - 2), options.threads,
      [](std::size_t i) { return std::vector{conjecture_c_instance(static_cast<std::int64_t>(i) + 3)}; });
  return detail::assemble("conjecture-c", outcomes, start);
}

inline detail::Outcome conjecture_d_instance(std::int64_t m, std::int64_t n) {
  const std::string expected = to_string(sigma_prime_fully_regular(derive_params(FamilySpec::one_two(m, n))));
  return detail::compare("conjecture-d:" + detail::kv("m", m) + "," + detail::kv("n", n), expected,
                         [&] { return to_string(conjecture_d_value(m, n)); });
}

inline VerificationReport sweep_conjecture_d(std::int64_t m_max, std::int64_t n_max,
                                             const Options& options = {}) {
  if (m_max < 1 || n_max < 2) throw InvalidArgument("conjecture-d sweep needs m_max >= 1, n_max >= 2");
  const auto rows = static_cast<std::size_t>(m_max);
  const auto cols = static_cast<std::size_t>(n_max - 1);
  const auto start = std::chrono::steady_clock::now();
  auto outcomes = detail::parallel_map<std::vector<detail::Outcome>>(
      rows * cols, options.threads, [&](std::size_t i) {
        return std::vector{conjecture_d_instance(static_cast<std::int64_t>(i / cols) + 1,
                                                 static_cast<std::int64_t>(i % cols) + 2)};
      });
  return detail::assemble("conjecture-d", outcomes, start);
}

// The bipartite and complete sweeps compare sigma' = sigma / |E|!; equality of
// sigma' is equality of sigma and avoids |E|! when m, n run into the thousands.
inline detail::Outcome bipartite_instance(std::int64_t m, std::int64_t n) {
  const std::string expected =
      to_string(sigma_prime_fully_regular(derive_params(FamilySpec::complete_bipartite(m, n))));
  return detail::compare("bipartite:" + detail::kv("m", m) + "," + detail::kv("n", n), expected,
                         [&] { return to_string(gao_peng_ratio(m, n)); });
}

inline VerificationReport sweep_bipartite(std::int64_t max_mn, const Options& options = {}) {
  if (max_mn < 1) throw InvalidArgument("bipartite sweep needs box >= 1");
  const auto side = static_cast<std::size_t>(max_mn);
  const auto start = std::chrono::steady_clock::now();
  auto outcomes = detail::parallel_map<std::vector<detail::Outcome>>(
      side * side, options.threads, [&](std::size_t i) {
        return std::vector{bipartite_instance(static_cast<std::int64_t>(i / side) + 1,
                                              static_cast<std::int64_t>(i % side) + 1)};
      });
  return detail::assemble("bipartite", outcomes, start);
}

inline ExactRational stanley_ratio(std::int64_t n) {
  return make_rational(factorial(n), 2 * double_factorial(2 * n - 3));
}

inline detail::Outcome complete_instance(std::int64_t n) {
  const std::string expected =
      to_string(sigma_prime_fully_regular(derive_params(FamilySpec::complete_graph(n))));
  return detail::compare("complete:" + detail::kv("n", n), expected,
                         [&] { return to_string(stanley_ratio(n)); });
}

inline VerificationReport sweep_complete(std::int64_t n_max, const Options& options = {}) {
  if (n_max < 2) throw InvalidArgument("complete sweep needs n_max >= 2");
  const auto start = std::chrono::steady_clock::now();
  auto outcomes = detail::parallel_map<std::vector<detail::Outcome>>(
      static_cast<std::size_t>(n_max - 1), options.threads,
      [](std::size_t i) { return std::vector{complete_instance(static_cast<std::int64_t>(i) + 2)}; });
  return detail::assemble("complete", outcomes, start);
}

inline std::vector<detail::Outcome> theorem4_instance(std::int64_t m, std::int64_t n, std::int64_t p) {
  const std::string id = "theorem4:" + detail::kv("m", m) + "," + detail::kv("n", n) + "," + detail::kv("p", p);
  const std::string expected =
      to_string(sigma_fully_regular(derive_params(FamilySpec::complete_tripartite(m, n, p))));
  std::vector<detail::Outcome> out;
  out.push_back(detail::compare(id + "#form1", expected,
                                [&] { return to_string(theorem4_count(m, n, p, 1)); }));
  if (!(p > m && p > n)) {
    out.push_back(detail::compare(id + "#form2", expected,
                                  [&] { return to_string(theorem4_count(m, n, p, 2)); }));
  }
  return out;
}

inline VerificationReport sweep_theorem4(std::int64_t box, const Options& options = {}) {
  if (box < 1) throw InvalidArgument("theorem4 sweep needs box >= 1");
  const auto side = static_cast<std::size_t>(box);
  const auto start = std::chrono::steady_clock::now();
  auto outcomes = detail::parallel_map<std::vector<detail::Outcome>>(
      side * side * side, options.threads, [&](std::size_t i) {
        return theorem4_instance(static_cast<std::int64_t>(i / (side * side)) + 1,
                                 static_cast<std::int64_t>(i / side % side) + 1,
                                 static_cast<std::int64_t>(i % side) + 1);
      });
  return detail::assemble("theorem4", outcomes, start);
}

/// Names the graphs whose line graphs are expected to be fully regular:
/// K_n, K_{m,n} and C_5, keyed by canonical code per vertex count.
inline std::map<std::pair<std::size_t, graphs::GraphCode>, std::string> expected_positives(
    std::size_t max_vertices) {
  std::map<std::pair<std::size_t, graphs::GraphCode>, std::string> out;
  auto add = [&](const SimpleGraph& g, std::string name) {
    out.try_emplace({g.vertex_count(), graphs::canonical_code(g)}, std::move(name));
  };
  for (std::size_t n = 1; n <= max_vertices; ++n) add(graphs::complete_graph(n), "K_" + std::to_string(n));
  for (std::size_t m = 1; 2 * m <= max_vertices; ++m) {
    for (std::size_t n = m; m + n <= max_vertices; ++n) {
      add(graphs::complete_bipartite(m, n), "K_{" + std::to_string(m) + "," + std::to_string(n) + "}");
    }
  }
  if (max_vertices >= 5) add(graphs::cycle(5), "C_5");
  return out;
}

inline bool line_graph_fully_regular(const SimpleGraph& g) {
  return oracle::check_fully_regular(line_graph(g.as_hypergraph(), kMaxGraphVertices)).is_fully_regular;
}

inline detail::Outcome classify_instance(const SimpleGraph& g, bool expected_regular) {
  auto verdict = [](bool regular) { return regular ? "fully regular" : "not fully regular"; };
  return detail::compare("graph:" + graphs::graph_id(g), verdict(expected_regular),
                         [&] { return std::string(verdict(line_graph_fully_regular(g))); });
}

/// Enumerates every connected graph on 1..max_vertices vertices up to
/// isomorphism and checks which have fully regular line graphs. The positive
/// set must be exactly {K_n} ∪ {K_{m,n}} ∪ {C_5}.
inline VerificationReport classify_fully_regular_line_graphs(std::size_t max_vertices,
                                                             const Options& options = {}) {
  if (max_vertices < 1 || max_vertices > 8) throw InvalidArgument("classify needs 1 <= max_vertices <= 8");
  const auto start = std::chrono::steady_clock::now();

  // Distinct connected graphs, ordered by (vertex count, canonical code).
  std::vector<std::pair<std::size_t, graphs::GraphCode>> classes;
  constexpr std::size_t kChunkBits = 14;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    const std::size_t bits = graphs::pair_count(n);
    const std::size_t chunk_bits = std::min(bits, kChunkBits);
    const std::size_t chunks = std::size_t{1} << (bits - chunk_bits);
    auto found = detail::parallel_map<std::vector<graphs::GraphCode>>(
        chunks, options.threads, [&](std::size_t chunk) {
          std::set<graphs::GraphCode> local;
          const graphs::GraphCode base = static_cast<graphs::GraphCode>(chunk) << chunk_bits;
          for (graphs::GraphCode low = 0; low < (graphs::GraphCode{1} << chunk_bits); ++low) {
            const SimpleGraph g = graphs::from_code(n, base | low);
            if (g.connected()) local.insert(graphs::canonical_code(g));
          }
          return std::vector<graphs::GraphCode>(local.begin(), local.end());
        });
    std::set<graphs::GraphCode> merged;
    for (const auto& f : found) merged.insert(f.begin(), f.end());
    for (auto code : merged) classes.emplace_back(n, code);
  }

  const auto expected = expected_positives(max_vertices);
  auto outcomes = detail::parallel_map<std::vector<detail::Outcome>>(
      classes.size(), options.threads, [&](std::size_t i) {
        const SimpleGraph g = graphs::from_code(classes[i].first, classes[i].second);
        return std::vector{classify_instance(g, expected.contains(classes[i]))};
      });

  auto report = detail::assemble("classify", outcomes, start);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const bool flagged = outcomes[i][0].has_value();
    const bool positive = expected.contains(classes[i]) != flagged;
    if (!positive) continue;
    const auto it = expected.find(classes[i]);
    report.findings.push_back(it != expected.end()
                                  ? it->second
                                  : "other:" + graphs::graph_id(graphs::from_code(classes[i].first,
                                                                                  classes[i].second)));
  }
  return report;
}

namespace detail {

// Parses "k1=v1,k2=v2" into integers.
inline std::map<std::string, std::int64_t> parse_fields(const std::string& text) {
  std::map<std::string, std::int64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("bad field '" + item + "'");
    try {
      out[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad value in field '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::int64_t field(const std::map<std::string, std::int64_t>& f, const char* key) {
  const auto it = f.find(key);
  if (it == f.end()) throw ParseError(std::string("instance id lacks field '") + key + "'");
  return it->second;
}

}  // namespace detail

/// Re-runs the single comparison named by a mismatch id (a trailing "#method"
/// suffix is accepted and ignored: the whole instance is re-run).
inline VerificationReport run_instance(const std::string& raw_id, const Options& options = {}) {
  const std::string id = raw_id.substr(0, raw_id.find('#'));
  const auto colon = id.find(':');
  if (colon == std::string::npos) throw ParseError("instance id needs a 'kind:' prefix: " + raw_id);
  const std::string kind = id.substr(0, colon);
  const std::string body = id.substr(colon + 1);
  const auto start = std::chrono::steady_clock::now();

  std::vector<detail::Outcome> outcomes;
  if (kind == "family") {
    outcomes = crosscheck_outcomes(parse_family(body), options);
  } else if (kind == "graph") {
    const SimpleGraph g = graphs::parse_graph_id(body);
    const auto expected = expected_positives(g.vertex_count());
    outcomes.push_back(classify_instance(
        g, expected.contains({g.vertex_count(), graphs::canonical_code(g)})));
  } else {
    const auto f = detail::parse_fields(body);
    if (kind == "conjecture-c") {
      outcomes.push_back(conjecture_c_instance(detail::field(f, "n")));
    } else if (kind == "conjecture-d") {
      outcomes.push_back(conjecture_d_instance(detail::field(f, "m"), detail::field(f, "n")));
    } else if (kind == "bipartite") {
      outcomes.push_back(bipartite_instance(detail::field(f, "m"), detail::field(f, "n")));
    } else if (kind == "complete") {
      outcomes.push_back(complete_instance(detail::field(f, "n")));
    } else if (kind == "theorem4") {
      outcomes = theorem4_instance(detail::field(f, "m"), detail::field(f, "n"), detail::field(f, "p"));
    } else {
      throw ParseError("unknown instance kind '" + kind + "'");
    }
  }
  return detail::assemble("instance:" + id, {outcomes}, start);
}

}  // namespace fullreg::verify
