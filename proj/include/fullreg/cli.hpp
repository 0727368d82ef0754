#pragma once

#include <sys/file.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fullreg/families.hpp"
#include "fullreg/formulas.hpp"
#include "fullreg/oracle.hpp"
#include "fullreg/verify.hpp"
#include "json.hpp"

// Command implementations behind the fullreg executable. Each command returns
// its exit code and the text it would print, so tests can drive them directly.
namespace fullreg::cli {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kSuccess = 0,
  kMismatch = 1,
  kUsageError = 2,
  kCapExceeded = 3,
};

struct CommandOutput {
  int exit_code = kSuccess;
  std::string out;
  std::string err;
};

// nlohmann's default object type is an std::map, so keys come out sorted.
using Json = nlohmann::json;

inline std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Result cache: one JSON object per line, appended as results are computed.

struct CacheEntry {
  std::string key;
  std::string sigma;
  std::string sigma_prime_num;
  std::string sigma_prime_den;
  std::string created_at;
  std::string library_version;
};

inline std::string cache_key(const FamilySpec& spec, Method method) {
  return spec.canonical().to_string() + "|" + std::string(method_name(method));
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class ResultCache {
 public:
  // Loads existing entries; unreadable lines are skipped with a warning.
  explicit ResultCache(std::string path, std::ostream& warnings = std::cerr)
      : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        const Json j = Json::parse(line);
        CacheEntry e{j.at("key").get<std::string>(),
                     j.at("sigma").get<std::string>(),
                     j.at("sigma_prime_num").get<std::string>(),
                     j.at("sigma_prime_den").get<std::string>(),
                     j.at("created_at").get<std::string>(),
                     j.at("library_version").get<std::string>()};
        // Validate the payload parses as numbers before trusting it.
        parse_integer(e.sigma);
        parse_integer(e.sigma_prime_num);
        parse_integer(e.sigma_prime_den);
        if (e.library_version == kLibraryVersion) entries_[e.key] = std::move(e);
      } catch (const std::exception&) {
        warnings << "warning: skipping corrupt cache line " << line_no << " in " << path_ << "\n";
        ++skipped_;
      }
    }
  }

  std::optional<CacheEntry> lookup(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(CacheEntry entry) {
    const Json j = {{"key", entry.key},
                    {"sigma", entry.sigma},
                    {"sigma_prime_num", entry.sigma_prime_num},
                    {"sigma_prime_den", entry.sigma_prime_den},
                    {"created_at", entry.created_at},
                    {"library_version", entry.library_version}};
    const std::string line = j.dump() + "\n";
    std::FILE* f = std::fopen(path_.c_str(), "a");
    if (!f) throw Error("cannot open cache file " + path_);
    ::flock(::fileno(f), LOCK_EX);
    std::fwrite(line.data(), 1, line.size(), f);
    std::fflush(f);
    ::flock(::fileno(f), LOCK_UN);
    std::fclose(f);
    entries_[entry.key] = std::move(entry);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t skipped_lines() const noexcept { return skipped_; }

 private:
  std::string path_;
  std::map<std::string, CacheEntry> entries_;
  std::size_t skipped_ = 0;
};

// ---------------------------------------------------------------------------
// Graph / hypergraph input files: first line is the vertex count, then one
// edge or hyperedge per line as space-separated 0-based vertex indices.
// Blank lines and lines starting with '#' are ignored.

inline Hypergraph parse_hypergraph(std::istream& in) {
  Hypergraph h;
  std::string line;
  bool have_count = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<long long> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad token '" + token + "'");
      }
    }
    if (!have_count) {
      if (values.size() != 1 || values[0] < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": expected the vertex count");
      }
      h.vertex_count = static_cast<std::size_t>(values[0]);
      have_count = true;
      continue;
    }
    std::vector<Vertex> edge;
    for (long long v : values) {
      if (v < 0 || static_cast<std::size_t>(v) >= h.vertex_count) {
        throw ParseError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                         " out of range");
      }
      edge.push_back(static_cast<Vertex>(v));
    }
    std::sort(edge.begin(), edge.end());
    if (edge.empty() || std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty edge or repeated vertex");
    }
    if (std::find(h.hyperedges.begin(), h.hyperedges.end(), edge) != h.hyperedges.end()) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate edge");
    }
    h.hyperedges.push_back(std::move(edge));
  }
  if (!have_count) throw ParseError("missing vertex count");
  return h;
}

inline SimpleGraph to_simple_graph(const Hypergraph& h) {
  SimpleGraph g(h.vertex_count);
  for (const auto& e : h.hyperedges) {
    if (e.size() != 2) throw ParseError("graph input needs exactly two vertices per edge");
    g.add_edge(e[0], e[1]);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Commands.

namespace detail {

inline std::vector<std::string> strings(const std::vector<ExactInteger>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

inline std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

template <typename Body>
CommandOutput guarded(Body&& body) {
  try {
    return body();
  } catch (const CapExceeded& e) {
    return {kCapExceeded, "", std::string("error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {kUsageError, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace detail

inline CommandOutput cmd_params(const std::string& family_text) {
  return detail::guarded([&]() -> CommandOutput {
    const FamilySpec spec = parse_family(family_text);
    const FullyRegularParams params = derive_params(spec);
    const Json doc = {{"schema_version", kSchemaVersion},
                      {"family", spec.to_string()},
                      {"alpha", params.alpha()},
                      {"a", detail::strings(params.values())}};
    return {kSuccess, render(doc), ""};
  });
}

struct CountOptions {
  std::optional<std::string> method;
  std::optional<std::string> cache_path;
  bool timing = false;
};

inline CommandOutput cmd_count(const std::string& family_text, const CountOptions& options = {}) {
  return detail::guarded([&]() -> CommandOutput {
    const auto start = std::chrono::steady_clock::now();
    const FamilySpec spec = parse_family(family_text).canonical();
    Method method = Method::theorem2;
    if (options.method) {
      const auto parsed = parse_method(*options.method);
      if (!parsed) throw InvalidArgument("unknown method '" + *options.method + "'");
      method = *parsed;
    }
    if (!method_applies(spec, method)) {
      throw InvalidArgument(std::string(method_name(method)) + " does not apply to " +
                            spec.to_string());
    }

    std::string err;
    std::optional<CacheEntry> entry;
    std::optional<ResultCache> cache;
    const std::string key = cache_key(spec, method);
    if (options.cache_path) {
      std::ostringstream warnings;
      cache.emplace(*options.cache_path, warnings);
      err += warnings.str();
      entry = cache->lookup(key);
    }
    if (!entry) {
      const FormulaResult r = evaluate(spec, method);
      entry = CacheEntry{key,
                         to_string(*r.sigma),
                         to_string(r.sigma_prime.get_num()),
                         to_string(r.sigma_prime.get_den()),
                         utc_timestamp(),
                         kLibraryVersion};
      if (cache) cache->append(*entry);
    }
    Json doc = {{"schema_version", kSchemaVersion},
                {"family", spec.to_string()},
                {"method", method_name(method)},
                {"sigma", entry->sigma},
                {"sigma_prime_num", entry->sigma_prime_num},
                {"sigma_prime_den", entry->sigma_prime_den}};
    if (options.timing) doc["elapsed_ms"] = detail::elapsed_ms(start);
    return {kSuccess, render(doc), err};
  });
}

inline Json report_to_json(const verify::VerificationReport& report, bool timing) {
  Json mismatches = Json::array();
  for (const auto& m : report.mismatches) {
    mismatches.push_back({{"id", m.id}, {"expected", m.expected}, {"got", m.got}});
  }
  Json doc = {{"schema_version", kSchemaVersion},
              {"campaign", report.campaign},
              {"instances_checked", report.instances_checked},
              {"status", report.passed() ? "pass" : "fail"},
              {"mismatches", mismatches},
              {"findings", report.findings}};
  if (timing) doc["elapsed_ms"] = report.elapsed.count();
  return doc;
}

struct VerifyOptions {
  std::optional<std::int64_t> n_max;
  std::optional<std::int64_t> m_max;
  std::optional<std::int64_t> box;
  std::optional<std::int64_t> max_vertices;
  std::optional<std::string> family;
  std::optional<std::string> id;
  std::optional<std::string> out_path;
  unsigned threads = 0;
  std::size_t oracle_cap = kDefaultOracleCap;
  bool timing = false;
};

inline const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = {"bipartite",    "classify", "complete",
                                                 "conjecture-c", "conjecture-d", "family",
                                                 "instance",     "theorem4"};
  return names;
}

inline CommandOutput cmd_verify(const std::string& campaign, const VerifyOptions& options = {}) {
  return detail::guarded([&]() -> CommandOutput {
    const verify::Options run{options.threads, options.oracle_cap};
    verify::VerificationReport report;
    if (campaign == "conjecture-c") {
      report = verify::sweep_conjecture_c(options.n_max.value_or(100), run);
    } else if (campaign == "conjecture-d") {
      const std::int64_t box = options.box.value_or(50);
      report = verify::sweep_conjecture_d(options.m_max.value_or(box), options.n_max.value_or(box), run);
    } else if (campaign == "bipartite") {
      report = verify::sweep_bipartite(options.box.value_or(200), run);
    } else if (campaign == "complete") {
      report = verify::sweep_complete(options.n_max.value_or(60), run);
    } else if (campaign == "theorem4") {
      report = verify::sweep_theorem4(options.box.value_or(20), run);
    } else if (campaign == "classify") {
      report = verify::classify_fully_regular_line_graphs(
          static_cast<std::size_t>(options.max_vertices.value_or(7)), run);
    } else if (campaign == "family") {
      if (!options.family) throw InvalidArgument("campaign 'family' needs --family");
      report = verify::crosscheck_family(parse_family(*options.family), run);
    } else if (campaign == "instance") {
      if (!options.id) throw InvalidArgument("campaign 'instance' needs --id");
      report = verify::run_instance(*options.id, run);
    } else {
      throw InvalidArgument("unknown campaign '" + campaign + "'");
    }
    const std::string text = render(report_to_json(report, options.timing));
    const int code = report.passed() ? kSuccess : kMismatch;
    if (options.out_path) {
      std::ofstream out(*options.out_path);
      if (!out) throw Error("cannot write " + *options.out_path);
      out << text;
      return {code, "", ""};
    }
    return {code, text, ""};
  });
}

inline CommandOutput cmd_oracle(std::istream& input, const std::string& mode,
                                std::size_t cap = kDefaultOracleCap) {
  return detail::guarded([&]() -> CommandOutput {
    const Hypergraph h = parse_hypergraph(input);
    Json doc = {{"schema_version", kSchemaVersion}, {"mode", mode}};
    if (mode == "successive") {
      doc["count"] = to_string(oracle::count_successive_orderings(to_simple_graph(h), cap));
    } else if (mode == "shelling" || mode == "weak") {
      const auto m = mode == "weak" ? oracle::ShellingMode::weak : oracle::ShellingMode::shelling;
      doc["count"] = to_string(oracle::count_hypergraph_shellings(h, m, cap));
    } else if (mode == "line-successive") {
      doc["count"] = to_string(oracle::count_successive_orderings(line_graph(h, cap), cap));
    } else if (mode == "regular") {
      const auto cert = oracle::check_fully_regular(to_simple_graph(h));
      doc["fully_regular"] = cert.is_fully_regular;
      if (cert.params) doc["params"] = detail::strings(cert.params->values());
      if (cert.witness) {
        doc["witness"] = {{"first", cert.witness->first},
                          {"first_count", cert.witness->first_count},
                          {"second", cert.witness->second},
                          {"second_count", cert.witness->second_count}};
      }
    } else {
      throw InvalidArgument("unknown oracle mode '" + mode +
                            "' (successive, line-successive, shelling, weak, regular)");
    }
    return {kSuccess, render(doc), ""};
  });
}

}  // namespace fullreg::cli
