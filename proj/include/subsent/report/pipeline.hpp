#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "subsent/corpus.hpp"
#include "subsent/embeddings/model_io.hpp"
#include "subsent/embeddings/similarity.hpp"
#include "subsent/embeddings/training.hpp"
#include "subsent/error.hpp"
#include "subsent/lexicon.hpp"
#include "subsent/match_rate.hpp"
#include "subsent/preprocess.hpp"
#include "subsent/report/config.hpp"
#include "subsent/report/dossier.hpp"
#include "subsent/report/expression.hpp"
#include "subsent/report/tables.hpp"
#include "subsent/welch.hpp"

namespace subsent::report {

/// A failure attributed to one pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), "stage '" + stage + "': " + cause.what(), Verbatim{}), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Documented output names.
namespace files {
inline constexpr const char* kMatchRates = "match_rates.csv";
inline constexpr const char* kSentimentScores = "sentiment_scores.csv";
inline constexpr const char* kSentimentRatios = "sentiment_ratios.csv";
inline constexpr const char* kW2vSimilarity = "w2v_similarity.csv";
inline constexpr const char* kD2vSimilarity = "d2v_similarity.csv";
inline constexpr const char* kWelchPositive = "welch_positive.csv";
inline constexpr const char* kWelchNegative = "welch_negative.csv";
inline constexpr const char* kWelchOverall = "welch_overall.csv";
inline constexpr const char* kPairDossiers = "pair_dossiers.csv";
inline constexpr const char* kFullPrecisionDir = "full_precision";
inline constexpr const char* kWorkDir = "work";
inline constexpr const char* kSubsets = "work/subsets.tsv";
inline constexpr const char* kWordModel = "work/word2vec.bin";
inline constexpr const char* kDocModel = "work/doc2vec.bin";
inline constexpr const char* kMetadata = "run.json";

inline constexpr std::array<const char*, 9> kTables = {kMatchRates,     kSentimentScores, kSentimentRatios,
                                                       kW2vSimilarity,  kD2vSimilarity,   kWelchPositive,
                                                       kWelchNegative,  kWelchOverall,    kPairDossiers};

inline std::string tokens(preprocess::NormalizationMode mode) {
  return "work/tokens_" + std::string(preprocess::to_string(mode)) + ".tsv";
}
}  // namespace files

using Logger = std::function<void(std::string_view)>;

inline Logger stderr_logger() {
  return [](std::string_view msg) { std::clog << msg << '\n'; };
}

/// Output files keyed by path relative to the output directory.
using OutputFiles = std::map<std::string, std::string>;

inline constexpr std::array<preprocess::NormalizationMode, 3> kModes = {
    preprocess::NormalizationMode::None, preprocess::NormalizationMode::Stem,
    preprocess::NormalizationMode::Lemmatize};

using TermMap = std::map<std::string, std::vector<Term>>;

struct CorpusData {
  std::vector<std::string> doc_ids;  // ascending
  std::array<TermMap, 3> terms;      // indexed by NormalizationMode
  std::vector<corpus::Subset> subsets;
  std::vector<std::string> expressions;

  const TermMap& terms_for(preprocess::NormalizationMode mode) const { return terms[static_cast<std::size_t>(mode)]; }
};

struct Models {
  embeddings::EmbeddingModel word;
  embeddings::EmbeddingModel document;
};

struct SimilarityResults {
  embeddings::SimilarityMatrix w2v;
  embeddings::SimilarityMatrix d2v;
};

struct RunSummary {
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::size_t subsets = 0;
  std::vector<std::string> files;
};

// ---------------------------------------------------------------------------
// work-file formats

namespace detail_work {

// doc_id <TAB> text|p text|p ...
inline std::string write_terms(const TermMap& terms) {
  std::ostringstream out;
  for (const auto& [id, list] : terms) {
    out << id << '\t';
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out << ' ';
      out << list[i].text << '|' << pos_letter(list[i].pos);
    }
    out << '\n';
  }
  return out.str();
}

inline TermMap read_terms(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  TermMap terms;
  std::size_t line_no = 0;
  for (auto& line : detail::read_lines(in)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path.string(), line_no, "missing tab");
    auto& list = terms[line.substr(0, tab)];
    for (auto item : detail::split_whitespace(std::string_view(line).substr(tab + 1))) {
      auto bar = item.rfind('|');
      std::optional<Pos> pos;
      if (bar != std::string_view::npos && bar + 2 == item.size()) pos = pos_from_letter(item[bar + 1]);
      if (!pos || bar == 0) throw ParseError(path.string(), line_no, "malformed term '" + std::string(item) + "'");
      list.push_back({std::string(item.substr(0, bar)), *pos});
    }
  }
  return terms;
}

// id <TAB> name <TAB> expression <TAB> doc ids (space separated)
inline std::string write_subsets(const CorpusData& data) {
  std::ostringstream out;
  for (std::size_t i = 0; i < data.subsets.size(); ++i) {
    const auto& s = data.subsets[i];
    out << s.id << '\t' << s.name << '\t' << data.expressions[i] << '\t';
    for (std::size_t d = 0; d < s.doc_ids.size(); ++d) out << (d ? " " : "") << s.doc_ids[d];
    out << '\n';
  }
  return out.str();
}

inline void read_subsets(const std::filesystem::path& path, CorpusData& data) {
  auto in = detail::open_input(path);
  std::size_t line_no = 0;
  for (auto& line : detail::read_lines(in)) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = detail::split(line, '\t');
    if (cols.size() != 4) throw ParseError(path.string(), line_no, "expected 4 tab-separated columns");
    corpus::Subset s;
    s.id = cols[0];
    s.name = cols[1];
    for (auto id : detail::split_whitespace(cols[3])) s.doc_ids.emplace_back(id);
    data.expressions.emplace_back(cols[2]);
    data.subsets.push_back(std::move(s));
  }
}

inline std::string model_bytes(const embeddings::EmbeddingModel& model) {
  std::ostringstream out(std::ios::binary);
  embeddings::save_model(out, model);
  return out.str();
}

}  // namespace detail_work

// ---------------------------------------------------------------------------

/// Stage-by-stage driver. Each stage either reuses state computed earlier in
/// the same process or reloads it from the output directory's work files,
/// so stages can be run separately.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg, Logger log = stderr_logger()) : cfg_(std::move(cfg)), log_(std::move(log)) {}

  const PipelineConfig& config() const { return cfg_; }

  void preprocess(OutputFiles& out) {
    staged("preprocess", [&] { do_preprocess(out); });
  }
  void score(OutputFiles& out) {
    staged("score", [&] { do_score(out); });
  }
  void train(OutputFiles& out) {
    staged("train", [&] { do_train(out); });
  }
  void similarity(OutputFiles& out) {
    staged("similarity", [&] { do_similarity(out); });
  }
  void welch(OutputFiles& out) {
    staged("welch", [&] { do_welch(out); });
  }
  void report(OutputFiles& out) {
    staged("report", [&] { do_report(out); });
  }

  /// Every stage in order.
  OutputFiles run_all() {
    OutputFiles out;
    staged("config", [&] { cfg_.validate(); });
    preprocess(out);
    score(out);
    train(out);
    similarity(out);
    welch(out);
    report(out);
    return out;
  }

  const CorpusData& data() {
    if (!data_) {
      // Inside a stage, a failed load belongs to that stage.
      if (stage_.empty()) staged("load", [&] { load_work_data(); });
      else load_work_data();
    }
    return *data_;
  }

  const std::vector<SentimentRow>& sentiment() {
    if (!sentiment_) compute_sentiment();
    return *sentiment_;
  }
  const std::vector<MatchRateRow>& match_rates() {
    if (!match_rates_) compute_sentiment();
    return *match_rates_;
  }
  const Models& models() {
    if (!models_) load_models();
    return *models_;
  }
  const SimilarityResults& similarities() {
    if (!similarity_) compute_similarity();
    return *similarity_;
  }
  const std::array<stats::WelchMatrix, 3>& welch_matrices() {
    if (!welch_) compute_welch();
    return *welch_;
  }
  const std::vector<PairDossier>& dossiers() {
    if (!dossiers_) compute_dossiers();
    return *dossiers_;
  }

 private:
  template <typename Fn>
  void staged(const std::string& stage, Fn&& fn) {
    const auto saved = stage_;
    stage_ = stage;
    try {
      fn();
    } catch (const StageError&) {
      stage_ = saved;
      throw;
    } catch (const Error& e) {
      stage_ = saved;
      throw StageError(stage, e);
    } catch (const std::exception& e) {
      stage_ = saved;
      throw StageError(stage, Error(ErrorKind::Io, e.what()));
    }
    stage_ = saved;
  }

  void log(const std::string& msg) {
    if (log_) log_("[" + stage_ + "] " + msg);
  }

  std::filesystem::path work(const std::string& rel) const { return cfg_.output_dir / rel; }

  const lexicon::SwnLexicon& lex() {
    if (!lexicon_) {
      lexicon_ = lexicon::parse_sentiwordnet(cfg_.lexicon_path);
      log("lexicon: " + std::to_string(lexicon_->size()) + " synsets");
    }
    return *lexicon_;
  }

  std::vector<Term> stream(std::size_t subset, preprocess::NormalizationMode mode) {
    return corpus::subset_token_stream(data().subsets[subset], data().terms_for(mode));
  }

  std::vector<std::string> texts(const std::vector<Term>& terms) const {
    std::vector<std::string> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(t.text);
    return out;
  }

  // -- preprocess ------------------------------------------------------------

  void do_preprocess(OutputFiles& out) {
    auto docs = corpus::load_documents(cfg_.corpus_dir, [&](const std::string& m) { log("warning: " + m); });
    auto table = corpus::parse_annotations(cfg_.annotations_path);
    log(std::to_string(docs.size()) + " documents, " + std::to_string(table.size()) + " annotation records");
    preprocess::Preprocessor pre(preprocess::load_stoplist(cfg_.stopwords_path),
                                 preprocess::load_morphology(cfg_.morphology_dir));

    CorpusData data;
    std::size_t tokens = 0;
    for (const auto& doc : docs) {
      data.doc_ids.push_back(doc.id);
      auto toks = pre.tokens(doc.raw_text);
      tokens += toks.size();
      for (auto mode : kModes) {
        data.terms[static_cast<std::size_t>(mode)][doc.id] = preprocess::normalize(toks, mode, pre.morphology());
      }
    }
    log(std::to_string(tokens) + " tokens after stop-word removal");

    {
      const auto saved = stage_;
      stage_ = "subsets";
      try {
        for (const auto& def : cfg_.subsets) {
          auto expr = parse_subset_expression(def.expression);
          auto subset = corpus::evaluate_subset(table, expr, def.id, def.name);
          subset.token_stream = corpus::subset_token_stream(subset, data.terms_for(cfg_.normalization));
          log("subset " + def.id + " (" + def.name + "): " + std::to_string(subset.doc_ids.size()) +
              " documents, " + std::to_string(subset.token_stream.size()) + " terms");
          data.subsets.push_back(std::move(subset));
          data.expressions.push_back(def.expression);
        }
      } catch (const Error& e) {
        stage_ = saved;
        throw StageError("subsets", e);
      }
      stage_ = saved;
    }

    for (auto mode : kModes) out[files::tokens(mode)] = detail_work::write_terms(data.terms_for(mode));
    out[files::kSubsets] = detail_work::write_subsets(data);
    out[files::kMetadata] = metadata(data, tokens);
    data_ = std::move(data);
  }

  std::string metadata(const CorpusData& data, std::size_t tokens) const {
    nlohmann::ordered_json j;
    j["normalization"] = std::string(preprocess::to_string(cfg_.normalization));
    j["aggregation"] = cfg_.aggregation == lexicon::Aggregation::Mean ? "mean" : "rank_weighted";
    j["seed"] = cfg_.seed;
    j["workers"] = cfg_.workers;
    j["documents"] = data.doc_ids.size();
    j["tokens"] = tokens;
    auto hp = [](const embeddings::Hyperparams& h) {
      nlohmann::ordered_json b;
      b["dim"] = h.dim;
      b["window"] = h.window;
      b["epochs"] = h.epochs;
      b["negative"] = h.negative;
      b["initial_lr"] = h.initial_lr;
      b["final_lr"] = h.final_lr;
      b["min_count"] = h.min_count;
      b["sample"] = h.sample;
      b["infer_epochs"] = h.infer_epochs;
      return b;
    };
    j["word2vec"] = hp(cfg_.word);
    j["doc2vec"] = hp(cfg_.document);
    auto& subsets = j["subsets"];
    subsets = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < data.subsets.size(); ++i) {
      nlohmann::ordered_json s;
      s["id"] = data.subsets[i].id;
      s["name"] = data.subsets[i].name;
      s["expr"] = data.expressions[i];
      s["documents"] = data.subsets[i].doc_ids.size();
      s["terms"] = data.subsets[i].token_stream.size();
      subsets.push_back(std::move(s));
    }
    return j.dump(2) + "\n";
  }

  void load_work_data() {
    CorpusData data;
    for (auto mode : kModes) {
      auto path = work(files::tokens(mode));
      if (!std::filesystem::exists(path)) {
        throw Error(ErrorKind::Io, "missing " + path.string() + " (run the preprocess stage first)");
      }
      data.terms[static_cast<std::size_t>(mode)] = detail_work::read_terms(path);
    }
    for (const auto& [id, _] : data.terms_for(cfg_.normalization)) data.doc_ids.push_back(id);
    detail_work::read_subsets(work(files::kSubsets), data);
    for (auto& s : data.subsets) s.token_stream = corpus::subset_token_stream(s, data.terms_for(cfg_.normalization));
    log("loaded " + std::to_string(data.doc_ids.size()) + " documents and " + std::to_string(data.subsets.size()) +
        " subsets from " + (cfg_.output_dir / files::kWorkDir).string());
    data_ = std::move(data);
  }

  // -- lexicon scoring -----------------------------------------------------

  void compute_sentiment() {
    const auto& d = data();
    std::vector<SentimentRow> rows;
    std::vector<MatchRateRow> rates;
    for (std::size_t i = 0; i < d.subsets.size(); ++i) {
      const auto& s = d.subsets[i];
      MatchRateRow rate{s.id, 0, 0, 0};
      rate.original = preprocess::match_rate(stream(i, preprocess::NormalizationMode::None), lex());
      rate.stemmed = preprocess::match_rate(stream(i, preprocess::NormalizationMode::Stem), lex());
      rate.lemmatized = preprocess::match_rate(stream(i, preprocess::NormalizationMode::Lemmatize), lex());
      rates.push_back(rate);
      SentimentRow row{s.id, s.name, {}, preprocess::match_rate(s.token_stream, lex())};
      try {
        row.sentiment = lexicon::score_subset(s.token_stream, lex(), cfg_.aggregation);
      } catch (const Error& e) {
        throw Error(e.kind(), "subset " + s.id + ": " + e.what());
      }
      log("subset " + s.id + ": " + std::to_string(row.sentiment.n_matched_terms) + " matched terms, " +
          std::to_string(row.sentiment.n_pos_terms) + " positive, " + std::to_string(row.sentiment.n_neg_terms) +
          " negative");
      rows.push_back(std::move(row));
    }
    sentiment_ = std::move(rows);
    match_rates_ = std::move(rates);
  }

  void do_score(OutputFiles& out) {
    std::ostringstream rates, scores, ratios;
    emit_match_rate_table(rates, match_rates());
    emit_sentiment_scores(scores, sentiment());
    emit_sentiment_ratios(ratios, sentiment());
    out[files::kMatchRates] = rates.str();
    out[files::kSentimentScores] = scores.str();
    out[files::kSentimentRatios] = ratios.str();
    log(std::to_string(sentiment().size()) + " rows per sentiment table");
  }

  // -- embeddings ----------------------------------------------------------

  void do_train(OutputFiles& out) {
    const auto& d = data();
    const auto& terms = d.terms_for(cfg_.normalization);
    std::vector<std::vector<std::string>> corpus;
    std::vector<embeddings::TaggedDocument> tagged;
    for (const auto& [id, list] : terms) {
      corpus.push_back(texts(list));
      tagged.push_back({id, corpus.back()});
    }
    embeddings::TrainingStats word_stats, doc_stats;
    Models m;
    m.word = embeddings::train_cbow(corpus, cfg_.word, &word_stats);
    log("word2vec: vocabulary " + std::to_string(m.word.vocabulary.size()) + ", " +
        std::to_string(word_stats.examples) + " examples" + loss_note(word_stats));
    m.document = embeddings::train_doc2vec(tagged, cfg_.document, &doc_stats);
    log("doc2vec: vocabulary " + std::to_string(m.document.vocabulary.size()) + ", " +
        std::to_string(m.document.doc_ids.size()) + " documents, " + std::to_string(doc_stats.examples) +
        " examples" + loss_note(doc_stats));
    out[files::kWordModel] = detail_work::model_bytes(m.word);
    out[files::kDocModel] = detail_work::model_bytes(m.document);
    models_ = std::move(m);
  }

  static std::string loss_note(const embeddings::TrainingStats& s) {
    if (s.epoch_loss.empty()) return "";
    return ", loss " + detail::fixed(s.epoch_loss.front(), 4) + " -> " + detail::fixed(s.epoch_loss.back(), 4);
  }

  void load_models() {
    for (const char* rel : {files::kWordModel, files::kDocModel}) {
      if (!std::filesystem::exists(work(rel))) {
        throw Error(ErrorKind::Io, "missing " + work(rel).string() + " (run the train stage first)");
      }
    }
    models_ = Models{embeddings::load_model(work(files::kWordModel)), embeddings::load_model(work(files::kDocModel))};
    log("loaded models from " + (cfg_.output_dir / files::kWorkDir).string());
  }

  void compute_similarity() {
    const auto& d = data();
    const auto& m = models();
    std::vector<embeddings::LabeledVector> w2v, d2v;
    for (std::size_t i = 0; i < d.subsets.size(); ++i) {
      const auto& s = d.subsets[i];
      auto words = texts(s.token_stream);
      try {
        w2v.push_back({s.id, embeddings::subset_vector_w2v(m.word, words)});
        d2v.push_back({s.id, embeddings::subset_vector_d2v(m.document, words, m.document.hyperparams.infer_epochs)});
      } catch (const Error& e) {
        throw Error(e.kind(), "subset " + s.id + ": " + e.what());
      }
    }
    SimilarityResults r{embeddings::pairwise_similarity_matrix(w2v), embeddings::pairwise_similarity_matrix(d2v)};
    auto pair = [](const embeddings::SimilarityMatrix& sm, const CellRef& c) {
      return sm.matrix.labels[c.row] + "/" + sm.matrix.labels[c.col] + " " + detail::fixed(c.value, 4);
    };
    log("word2vec most similar " + pair(r.w2v, r.w2v.most_similar) + ", least " + pair(r.w2v, r.w2v.least_similar));
    log("doc2vec most similar " + pair(r.d2v, r.d2v.most_similar) + ", least " + pair(r.d2v, r.d2v.least_similar));
    similarity_ = std::move(r);
  }

  void do_similarity(OutputFiles& out) {
    std::ostringstream w, d;
    write_matrix_csv(w, similarities().w2v.matrix, kSimilarityDecimals);
    write_matrix_csv(d, similarities().d2v.matrix, kSimilarityDecimals);
    out[files::kW2vSimilarity] = w.str();
    out[files::kD2vSimilarity] = d.str();
  }

  // -- statistics ----------------------------------------------------------

  void compute_welch() {
    const auto& d = data();
    std::array<stats::WelchMatrix, 3> result;
    const std::array<stats::Channel, 3> channels = {stats::Channel::Positive, stats::Channel::Negative,
                                                    stats::Channel::Overall};
    std::vector<std::vector<lexicon::SentimentScore>> scores;
    for (const auto& s : d.subsets) scores.push_back(lexicon::matched_scores(s.token_stream, lex(), cfg_.aggregation));
    for (std::size_t c = 0; c < 3; ++c) {
      std::vector<stats::ScoreSample> samples;
      for (std::size_t i = 0; i < d.subsets.size(); ++i)
        samples.push_back(stats::make_sample(d.subsets[i].id, channels[c], scores[i]));
      result[c] = stats::pairwise_welch_matrix(samples, channels[c]);
      const auto& mp = result[c].min_pair;
      log(std::string(stats::to_string(channels[c])) + ": lowest p " + detail::fixed(mp.value, 3) + " between " +
          result[c].p_values.labels[mp.row] + " and " + result[c].p_values.labels[mp.col]);
    }
    welch_ = std::move(result);
  }

  void do_welch(OutputFiles& out) {
    const std::array<const char*, 3> names = {files::kWelchPositive, files::kWelchNegative, files::kWelchOverall};
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& m = welch_matrices()[c].p_values;
      std::ostringstream rounded, full;
      write_matrix_csv(rounded, m, kPValueDecimals);
      write_matrix_csv(full, m, [](double v) { return detail::significant(v, kFullPrecisionDigits); });
      out[names[c]] = rounded.str();
      out[std::string(files::kFullPrecisionDir) + "/" + names[c]] = full.str();
    }
  }

  // -- report --------------------------------------------------------------

  void compute_dossiers() {
    const auto& w = welch_matrices();
    DossierInputs in{sentiment(),     similarities().w2v.matrix, similarities().d2v.matrix,
                     w[0].p_values,   w[1].p_values,             w[2].p_values};
    dossiers_ = build_pair_dossiers(in);
  }

  void do_report(OutputFiles& out) {
    std::ostringstream ss;
    emit_pair_dossiers(ss, dossiers());
    out[files::kPairDossiers] = ss.str();
    log(std::to_string(dossiers().size()) + " pair dossiers");
  }

  PipelineConfig cfg_;
  Logger log_;
  std::string stage_ = "pipeline";
  std::optional<lexicon::SwnLexicon> lexicon_;
  std::optional<CorpusData> data_;
  std::optional<std::vector<SentimentRow>> sentiment_;
  std::optional<std::vector<MatchRateRow>> match_rates_;
  std::optional<Models> models_;
  std::optional<SimilarityResults> similarity_;
  std::optional<std::array<stats::WelchMatrix, 3>> welch_;
  std::optional<std::vector<PairDossier>> dossiers_;
};

// ---------------------------------------------------------------------------
// committing outputs

namespace detail_commit {

inline void write_tree(const std::filesystem::path& root, const OutputFiles& files) {
  for (const auto& [rel, content] : files) {
    auto path = root / rel;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  }
}

}  // namespace detail_commit

/// Replaces `dir` with exactly `files`, via a sibling staging directory.
inline void commit_directory(const std::filesystem::path& dir, const OutputFiles& files) {
  auto staging = dir;
  staging += ".partial";
  std::filesystem::remove_all(staging);
  try {
    detail_commit::write_tree(staging, files);
    std::filesystem::remove_all(dir);
    if (dir.has_parent_path()) std::filesystem::create_directories(dir.parent_path());
    std::filesystem::rename(staging, dir);
  } catch (...) {
    std::filesystem::remove_all(staging);
    throw;
  }
}

/// Adds `files` into `dir`, each through a temporary then rename.
inline void commit_files(const std::filesystem::path& dir, const OutputFiles& files) {
  std::vector<std::filesystem::path> written;
  try {
    for (const auto& [rel, content] : files) {
      auto path = dir / rel;
      std::filesystem::create_directories(path.parent_path());
      auto tmp = path;
      tmp += ".partial";
      {
        std::ofstream out(tmp, std::ios::binary);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
      }
      written.push_back(tmp);
    }
    for (const auto& [rel, _] : files) {
      auto path = dir / rel;
      auto tmp = path;
      tmp += ".partial";
      std::filesystem::rename(tmp, path);
    }
  } catch (...) {
    for (const auto& tmp : written) std::filesystem::remove(tmp);
    throw;
  }
}

/// Full pipeline; on success the output directory holds every artifact, on
/// failure it is left untouched.
inline RunSummary run_pipeline(const PipelineConfig& cfg, Logger log = stderr_logger()) {
  const auto& dir = cfg.output_dir;
  if (std::filesystem::exists(dir) && !std::filesystem::is_empty(dir) &&
      !std::filesystem::exists(dir / files::kMetadata)) {
    // Never replace a directory the pipeline did not create.
    throw StageError("config", Error(ErrorKind::InvalidConfig, "output directory " + dir.string() +
                                                                   " is not empty and holds no previous run"));
  }
  Pipeline pipeline(cfg, std::move(log));
  auto out = pipeline.run_all();
  commit_directory(cfg.output_dir, out);
  RunSummary summary;
  summary.documents = pipeline.data().doc_ids.size();
  for (const auto& [id, terms] : pipeline.data().terms_for(cfg.normalization)) summary.tokens += terms.size();
  summary.subsets = pipeline.data().subsets.size();
  for (const auto& [rel, _] : out) summary.files.push_back(rel);
  return summary;
}

}  // namespace subsent::report
