#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "subsent/embeddings/model.hpp"
#include "subsent/error.hpp"
#include "subsent/lexicon.hpp"
#include "subsent/preprocess.hpp"
#include "subsent/report/expression.hpp"

namespace subsent::report {

struct SubsetDefinition {
  std::string id;
  std::string name;
  std::string expression;
};

struct PipelineConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path annotations_path;
  std::filesystem::path lexicon_path;
  std::filesystem::path morphology_dir;
  std::filesystem::path stopwords_path;
  preprocess::NormalizationMode normalization = preprocess::NormalizationMode::Lemmatize;
  lexicon::Aggregation aggregation = lexicon::Aggregation::Mean;
  std::vector<SubsetDefinition> subsets;
  embeddings::Hyperparams word;
  embeddings::Hyperparams document;
  std::uint64_t seed = 42;
  std::uint32_t workers = 1;
  std::filesystem::path output_dir = "out";

  /// Pushes the top-level seed and worker count into both model blocks.
  void apply_globals() {
    word.seed = document.seed = seed;
    word.workers = document.workers = workers;
  }

  void validate() const {
    auto need = [](const std::filesystem::path& p, bool dir, const char* key) {
      if (p.empty()) throw Error(ErrorKind::InvalidConfig, std::string(key) + " is not set");
      if (dir ? !std::filesystem::is_directory(p) : !std::filesystem::is_regular_file(p)) {
        throw Error(ErrorKind::InvalidConfig, std::string(key) + " not found: " + p.string());
      }
    };
    need(corpus_dir, true, "corpus_dir");
    need(annotations_path, false, "annotations");
    need(lexicon_path, false, "lexicon");
    need(morphology_dir, true, "morphology_dir");
    need(stopwords_path, false, "stopwords");
    if (subsets.size() < 2) throw Error(ErrorKind::InvalidConfig, "at least 2 subsets are required");
    std::set<std::string> ids;
    for (const auto& s : subsets) {
      if (s.id.empty()) throw Error(ErrorKind::InvalidConfig, "subset with empty id");
      if (!ids.insert(s.id).second) throw Error(ErrorKind::InvalidConfig, "duplicate subset id '" + s.id + "'");
      try {
        parse_subset_expression(s.expression);
      } catch (const Error& e) {
        throw Error(ErrorKind::InvalidConfig, "subset " + s.id + " expression '" + s.expression + "': " + e.what());
      }
    }
    word.validate();
    document.validate();
  }
};

namespace detail_config {

using nlohmann::json;

inline void reject_unknown(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known |= k == key;
    if (!known) throw Error(ErrorKind::InvalidConfig, "unknown key '" + k + "' in " + where);
  }
}

inline embeddings::Hyperparams read_hyperparams(const json& j, const std::string& where) {
  embeddings::Hyperparams hp;
  if (j.is_null()) return hp;
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, where + " must be an object");
  reject_unknown(j, {"dim", "window", "epochs", "negative", "initial_lr", "final_lr", "min_count", "sample",
                     "infer_epochs"},
                 where);
  hp.dim = j.value("dim", hp.dim);
  hp.window = j.value("window", hp.window);
  hp.epochs = j.value("epochs", hp.epochs);
  hp.negative = j.value("negative", hp.negative);
  hp.initial_lr = j.value("initial_lr", hp.initial_lr);
  hp.final_lr = j.value("final_lr", hp.final_lr);
  hp.min_count = j.value("min_count", hp.min_count);
  hp.sample = j.value("sample", hp.sample);
  hp.infer_epochs = j.value("infer_epochs", hp.infer_epochs);
  return hp;
}

}  // namespace detail_config

/// Reads a JSON configuration. Relative paths resolve against `base_dir`.
inline PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  using detail_config::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "configuration must be a JSON object");
  detail_config::reject_unknown(j, {"corpus_dir", "annotations", "lexicon", "morphology_dir", "stopwords",
                                    "normalization", "aggregation", "subsets", "word2vec", "doc2vec", "seed",
                                    "workers", "output_dir"},
                                "configuration");
  PipelineConfig cfg;
  try {
    auto path = [&](const char* key) -> std::filesystem::path {
      if (!j.contains(key)) return {};
      std::filesystem::path p = j.at(key).get<std::string>();
      return p.is_absolute() ? p : base_dir / p;
    };
    cfg.corpus_dir = path("corpus_dir");
    cfg.annotations_path = path("annotations");
    cfg.lexicon_path = path("lexicon");
    cfg.morphology_dir = path("morphology_dir");
    cfg.stopwords_path = path("stopwords");
    if (j.contains("output_dir")) cfg.output_dir = path("output_dir");

    if (j.contains("normalization")) {
      auto mode = preprocess::normalization_from_string(j.at("normalization").get<std::string>());
      if (!mode) throw Error(ErrorKind::InvalidConfig, "normalization must be none, stem or lemma");
      cfg.normalization = *mode;
    }
    if (j.contains("aggregation")) {
      auto agg = j.at("aggregation").get<std::string>();
      if (agg == "mean") cfg.aggregation = lexicon::Aggregation::Mean;
      else if (agg == "rank_weighted") cfg.aggregation = lexicon::Aggregation::RankWeighted;
      else throw Error(ErrorKind::InvalidConfig, "aggregation must be mean or rank_weighted");
    }
    if (!j.contains("subsets") || !j.at("subsets").is_array()) {
      throw Error(ErrorKind::InvalidConfig, "subsets must be an array");
    }
    for (const auto& s : j.at("subsets")) {
      detail_config::reject_unknown(s, {"id", "name", "expr"}, "subset");
      SubsetDefinition def;
      const auto& id = s.at("id");
      def.id = id.is_number_integer() ? std::to_string(id.get<long long>()) : id.get<std::string>();
      def.expression = s.at("expr").get<std::string>();
      def.name = s.value("name", def.expression);
      cfg.subsets.push_back(std::move(def));
    }
    cfg.word = detail_config::read_hyperparams(j.value("word2vec", json{}), "word2vec");
    cfg.document = detail_config::read_hyperparams(j.value("doc2vec", json{}), "doc2vec");
    cfg.seed = j.value("seed", cfg.seed);
    cfg.workers = j.value("workers", cfg.workers);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  cfg.apply_globals();
  return cfg;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  auto text = detail::read_file(path);
  return parse_config(text, path.parent_path());
}

}  // namespace subsent::report
