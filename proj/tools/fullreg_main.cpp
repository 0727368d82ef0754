#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fullreg/cli.hpp"

namespace {

int emit(const fullreg::cli::CommandOutput& result) {
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

template <typename T>
std::optional<T> opt(bool given, const T& value) {
  return given ? std::optional<T>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fullreg::cli;

  CLI::App app{"Exact successive-ordering and shelling counts for fully regular graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  std::string family;
  std::string method;
  std::string cache_path;
  bool timing = false;

  auto* params = app.add_subcommand("params", "Print the parameter sequence a_0..a_alpha of a family");
  params->add_option("--family", family, "Family, e.g. parts=1:2,1:3")->required();

  auto* count = app.add_subcommand("count", "Exact sigma and sigma' of a family's line graph");
  count->add_option("--family", family, "Family, e.g. parts=1:2,1:3")->required();
  auto* method_opt = count->add_option("--method", method,
                                       "theorem2 (default), stanley, gao_peng, together, "
                                       "theorem4[_form1|_form2], conjecture_c, conjecture_d");
  auto* cache_opt = count->add_option("--cache", cache_path, "Result cache file (env FULLREG_CACHE)");
  count->add_flag("--timing", timing, "Include elapsed_ms in the output");

  std::string campaign;
  VerifyOptions vopts;
  std::int64_t n_max = 0, m_max = 0, box = 0, max_vertices = 0;
  std::string id, out_path;
  std::size_t cap = fullreg::kDefaultOracleCap;
  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->add_option("campaign", campaign, "bipartite, classify, complete, conjecture-c, "
                                           "conjecture-d, family, instance, theorem4")
      ->required()
      ->check(CLI::IsMember(campaign_names()));
  auto* n_max_opt = verify->add_option("--n-max", n_max, "Upper bound on n");
  auto* m_max_opt = verify->add_option("--m-max", m_max, "Upper bound on m (conjecture-d)");
  auto* box_opt = verify->add_option("--box", box, "Side of the parameter box");
  auto* mv_opt = verify->add_option("--max-vertices", max_vertices, "Largest graph for classify");
  auto* vfamily_opt = verify->add_option("--family", family, "Family for the 'family' campaign");
  auto* id_opt = verify->add_option("--id", id, "Instance id for the 'instance' campaign");
  auto* out_opt = verify->add_option("--out", out_path, "Write the report here instead of stdout");
  verify->add_option("--threads", vopts.threads, "Worker threads (0 = all cores)");
  verify->add_option("--cap", vopts.oracle_cap, "Oracle size cap");
  verify->add_flag("--timing", vopts.timing, "Include elapsed_ms in the report");

  std::string input, mode = "successive";
  auto* oracle = app.add_subcommand("oracle", "Brute-force count on a graph or hypergraph file");
  oracle->add_option("input", input, "Input file ('-' for stdin)")->required();
  oracle->add_option("--mode", mode, "successive, line-successive, shelling, weak, regular");
  oracle->add_option("--cap", cap, "Oracle size cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (params->parsed()) return emit(cmd_params(family));
  if (count->parsed()) {
    CountOptions copts;
    copts.method = opt(method_opt->count() > 0, method);
    copts.cache_path = opt(cache_opt->count() > 0, cache_path);
    if (!copts.cache_path) {
      if (const char* env = std::getenv("FULLREG_CACHE"); env && *env) copts.cache_path = env;
    }
    copts.timing = timing;
    return emit(cmd_count(family, copts));
  }
  if (verify->parsed()) {
    vopts.n_max = opt(n_max_opt->count() > 0, n_max);
    vopts.m_max = opt(m_max_opt->count() > 0, m_max);
    vopts.box = opt(box_opt->count() > 0, box);
    vopts.max_vertices = opt(mv_opt->count() > 0, max_vertices);
    vopts.family = opt(vfamily_opt->count() > 0, family);
    vopts.id = opt(id_opt->count() > 0, id);
    vopts.out_path = opt(out_opt->count() > 0, out_path);
    return emit(cmd_verify(campaign, vopts));
  }
  if (input == "-") return emit(cmd_oracle(std::cin, mode, cap));
  std::ifstream file(input);
  if (!file) {
    std::cerr << "error: cannot open " << input << "\n";
    return kUsageError;
  }
  return emit(cmd_oracle(file, mode, cap));
}
