// Command-line driver for the subset sentiment pipeline.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "subsent/report/pipeline.hpp"

namespace {

using subsent::report::OutputFiles;
using subsent::report::Pipeline;
using subsent::report::PipelineConfig;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> workers;
  std::optional<std::string> normalization;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "pipeline configuration (JSON)")->required();
  cmd->add_option("--seed", o.seed, "random seed for both embedding models");
  cmd->add_option("--workers", o.workers, "training threads (1 is deterministic)")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--normalization", o.normalization, "none, stem or lemma")
      ->check(CLI::IsMember({"none", "stem", "lemma"}));
  cmd->add_option("--out", o.out, "output directory");
}

PipelineConfig load(const Overrides& o) {
  PipelineConfig cfg;
  try {
    cfg = subsent::report::load_config(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.workers) cfg.workers = *o.workers;
    if (o.normalization) cfg.normalization = *subsent::preprocess::normalization_from_string(*o.normalization);
    if (o.out) cfg.output_dir = *o.out;
    cfg.apply_globals();
    cfg.validate();
  } catch (const subsent::Error& e) {
    throw subsent::report::StageError("config", e);
  }
  return cfg;
}

void report_files(const OutputFiles& files, const std::filesystem::path& dir) {
  for (const auto& [rel, _] : files) std::clog << "wrote " << (dir / rel).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset sentiment comparison: lexicon scoring, embeddings and Welch tests"};
  app.require_subcommand(1);

  Overrides o;
  using Stage = void (Pipeline::*)(OutputFiles&);
  const std::pair<const char*, Stage> stages[] = {
      {"preprocess", &Pipeline::preprocess}, {"score", &Pipeline::score},
      {"train", &Pipeline::train},           {"similarity", &Pipeline::similarity},
      {"welch", &Pipeline::welch},           {"report", &Pipeline::report},
  };
  const char* descriptions[] = {
      "tokenize and normalize the corpus, evaluate subsets",
      "lexicon match rates, sentiment scores and ratios",
      "train the word and document embedding models",
      "subset cosine similarity matrices",
      "pairwise Welch t-test p-value matrices",
      "pair dossiers for the headline subset pairs",
  };
  std::vector<std::pair<CLI::App*, Stage>> commands;
  for (std::size_t i = 0; i < std::size(stages); ++i) {
    auto* cmd = app.add_subcommand(stages[i].first, descriptions[i]);
    add_common(cmd, o);
    commands.emplace_back(cmd, stages[i].second);
  }
  auto* run = app.add_subcommand("run", "run every stage and write all outputs");
  add_common(run, o);

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = load(o);
    if (run->parsed()) {
      auto summary = subsent::report::run_pipeline(cfg);
      std::clog << "run: " << summary.documents << " documents, " << summary.tokens << " terms, "
                << summary.subsets << " subsets, " << summary.files.size() << " files in "
                << cfg.output_dir.string() << '\n';
      return EXIT_SUCCESS;
    }
    for (auto& [cmd, stage] : commands) {
      if (!cmd->parsed()) continue;
      Pipeline pipeline(cfg);
      OutputFiles out;
      (pipeline.*stage)(out);
      subsent::report::commit_files(cfg.output_dir, out);
      report_files(out, cfg.output_dir);
    }
    return EXIT_SUCCESS;
  } catch (const subsent::report::StageError& e) {
    std::cerr << "subsent: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "subsent: stage 'io': " << e.what() << '\n';
  }
  return EXIT_FAILURE;
}
