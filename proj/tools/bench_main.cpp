// bench: run the NSTC / CFWS comparison and write the result tables.
//
//   bench run [--config FILE] [--dataset X]... [--algorithm nstc|cfws|both]
//             [--min-support 0.05,0.06,0.07] [--k-mismatch 2] [--min-df 2]
//             [--seed N] [--out DIR] [--format csv,txt] [--stoplist FILE]
//   bench generate --preset NAME [--seed N] --out FILE
//   bench presets

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "stclust/bench.hpp"
#include "stclust/corpus.hpp"

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suffix-tree document clustering benchmark"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the benchmark and write tables");
  std::string config_path;
  std::vector<std::string> datasets;
  std::string algorithm, min_support, format, out_dir, stoplist;
  std::optional<std::size_t> k_mismatch, min_df;
  std::optional<std::uint64_t> seed;
  run->add_option("--config", config_path, "Config file (key = value lines)");
  run->add_option("--dataset", datasets, "Preset name or corpus file (repeatable, comma lists ok)");
  run->add_option("--algorithm", algorithm, "nstc, cfws or both");
  run->add_option("--min-support", min_support, "CFWS minimum supports, comma separated");
  run->add_option("--k-mismatch", k_mismatch, "CFWS k-mismatch edit distance");
  run->add_option("--min-df", min_df, "NSTC minimum document frequency of a phrase");
  run->add_option("--seed", seed, "Seed for every synthetic preset");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", format, "csv, txt or csv,txt");
  run->add_option("--stoplist", stoplist, "Stopword file, one word per line");

  auto* gen = app.add_subcommand("generate", "Write a synthetic preset as a corpus file");
  std::string preset, gen_out;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--preset", preset, "Preset name")->required();
  gen->add_option("--seed", gen_seed, "Override the preset seed");
  gen->add_option("--out", gen_out, "Output file")->required();

  auto* presets = app.add_subcommand("presets", "List synthetic presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*presets) {
      auto names = stclust::benchmark_preset_names();
      names.push_back("separable-3x30");
      for (const auto& name : names) {
        const auto p = *stclust::synthetic_preset(name);
        std::cout << name << '\t' << p.num_classes * p.docs_per_class << " documents\n";
      }
      return 0;
    }

    if (*gen) {
      auto params = stclust::synthetic_preset(preset);
      if (!params) {
        std::cerr << "unknown preset '" << preset << "'\n";
        return 2;
      }
      if (gen_seed) params->seed = *gen_seed;
      const auto corpus = stclust::generate_synthetic(*params);
      std::ofstream out(gen_out);
      if (!out) {
        std::cerr << "cannot write " << gen_out << '\n';
        return 1;
      }
      stclust::write_raw_documents(out, corpus.raw);
      return 0;
    }

    stclust::ExperimentConfig config;
    if (!config_path.empty()) config = stclust::load_config(config_path, config);
    if (!datasets.empty()) stclust::apply_config_value(config, "dataset", join(datasets));
    if (!algorithm.empty()) stclust::apply_config_value(config, "algorithm", algorithm);
    if (!min_support.empty()) stclust::apply_config_value(config, "min_support", min_support);
    if (k_mismatch) config.k_mismatch = *k_mismatch;
    if (min_df) config.min_df = *min_df;
    if (seed) config.seed = *seed;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!format.empty()) stclust::apply_config_value(config, "format", format);
    if (!stoplist.empty()) config.stoplist = stoplist;
    config.validate();

    const auto report = stclust::run_benchmark(config);
    const auto files = stclust::emit_tables(report, config.out_dir, config.formats);

    std::ifstream f(config.out_dir / "fscore.txt");
    if (f) std::cout << f.rdbuf();
    bool failures = false;
    for (const auto& c : report.cells) {
      if (!c.ok) {
        failures = true;
        std::cerr << c.dataset << " / " << stclust::algorithm_name(c.algorithm)
                  << ": " << c.error << '\n';
      }
    }
    std::cout << "wrote " << files.size() << " files to " << config.out_dir.string() << '\n';
    return failures ? 3 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
