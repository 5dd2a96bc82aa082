// Command-line driver for the experiment suites.
//
// Subcommands: convergence, longtime, scaling, tensor-suite, counting-suite,
// report.  Config is a JSON file; --seed/--threads/--out override it.

#include <CLI11.hpp>
#include <iostream>

#include <nlslab/experiments.hpp>

using namespace nlslab;

namespace {

struct CommonFlags {
  std::string configPath;
  std::string outDir;
  std::uint64_t seed = 0;
  int threads = 0;
  bool seedSet = false, threadsSet = false;
};

void addCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.configPath, "JSON config file");
  cmd->add_option("--out", f.outDir, "output directory (manifest/results/summary)");
  cmd->add_option("--seed", f.seed, "master seed override")->each([&](const std::string&) {
    f.seedSet = true;
  });
  cmd->add_option("--threads", f.threads, "worker thread count override")
      ->each([&](const std::string&) { f.threadsSet = true; });
}

ExperimentConfig loadConfig(const CommonFlags& f, const std::string& kind) {
  ExperimentConfig cfg;
  if (!f.configPath.empty()) {
    std::ifstream in(f.configPath);
    if (!in) throw std::runtime_error("cannot open config " + f.configPath);
    cfg = ExperimentConfig::fromJson(json::parse(in));
  }
  cfg.kind = kind;
  if (!f.outDir.empty()) cfg.outDir = f.outDir;
  if (f.seedSet) cfg.seed = f.seed;
  if (f.threadsSet) cfg.threads = f.threads;
  return cfg;
}

int runKind(const CommonFlags& f, const std::string& kind) {
  ExperimentConfig cfg = loadConfig(f, kind);
  RunRecord rec = runExperiment(cfg);
  std::cout << report(rec);
  if (rec.summary.contains("pass") && !rec.summary["pass"].get<bool>()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for random-data NLS experiments"};
  app.require_subcommand(1);

  std::map<std::string, CommonFlags> flags;
  for (const char* kind :
       {"convergence", "longtime", "scaling", "tensor-suite", "counting-suite"}) {
    CLI::App* cmd = app.add_subcommand(kind, std::string("run the ") + kind + " experiment");
    addCommon(cmd, flags[kind]);
  }
  CLI::App* rep = app.add_subcommand("report", "re-render a finished run directory");
  std::string repDir;
  rep->add_option("--out", repDir, "run directory containing manifest/summary")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (auto& [kind, f] : flags)
      if (app.get_subcommand(kind)->parsed()) return runKind(f, kind);
    if (rep->parsed()) {
      std::ifstream mIn(repDir + "/manifest.json"), sIn(repDir + "/summary.json");
      if (!mIn || !sIn) throw std::runtime_error("incomplete run directory " + repDir);
      json manifest = json::parse(mIn);
      RunRecord rec;
      rec.config = manifest["config"];
      rec.sampleSeeds =
          manifest.value("sampleSeeds", std::vector<std::uint64_t>{});
      rec.summary = json::parse(sIn);
      std::cout << report(rec);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
