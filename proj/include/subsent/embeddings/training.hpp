#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "subsent/embeddings/matrix.hpp"
#include "subsent/embeddings/model.hpp"
#include "subsent/embeddings/objective.hpp"
#include "subsent/embeddings/random.hpp"
#include "subsent/embeddings/vocabulary.hpp"
#include "subsent/error.hpp"

namespace subsent::embeddings {

/// A document for paragraph-vector training.
struct TaggedDocument {
  std::string id;
  std::vector<std::string> tokens;
};

struct TrainingStats {
  std::vector<double> epoch_loss;  // mean loss per trained example, one per epoch
  std::uint64_t examples = 0;
};

namespace detail_train {

// Derived stream seeds, so initialization and sampling never share a stream.
inline constexpr std::uint64_t kTrainStream = 0x5DEECE66DULL;
inline constexpr std::uint64_t kInferStream = 0xD1B54A32D192ED03ULL;

template <bool Shared>
inline float load(const float& x) {
  if constexpr (Shared) {
    return std::atomic_ref<float>(const_cast<float&>(x)).load(std::memory_order_relaxed);
  } else {
    return x;
  }
}

// Lock-free accumulate; concurrent updates to the same cell may be lost.
template <bool Shared>
inline void add(float& x, float delta) {
  if constexpr (Shared) {
    std::atomic_ref<float> ref(x);
    ref.store(ref.load(std::memory_order_relaxed) + delta, std::memory_order_relaxed);
  } else {
    x += delta;
  }
}

struct Workspace {
  std::vector<float> hidden;
  std::vector<float> error;
  std::vector<float*> rows;  // context rows; the first `n_update` receive gradient
};

/// One SGD step on the negative-sampling objective; returns the example loss.
template <bool Shared>
double sgd_step(Workspace& ws, std::size_t n_update, Matrix<float>& output, bool update_output,
                const Vocabulary& vocab, std::size_t center, std::uint32_t negative, float lr, Rng& rng) {
  const std::size_t dim = output.cols();
  std::fill(ws.hidden.begin(), ws.hidden.end(), 0.0f);
  std::fill(ws.error.begin(), ws.error.end(), 0.0f);
  for (float* r : ws.rows)
    for (std::size_t k = 0; k < dim; ++k) ws.hidden[k] += load<Shared>(r[k]);
  const float inv = 1.0f / static_cast<float>(ws.rows.size());
  for (auto& x : ws.hidden) x *= inv;

  double loss = 0.0;
  for (std::uint32_t d = 0; d <= negative; ++d) {
    std::size_t target;
    float label;
    if (d == 0) {
      target = center;
      label = 1.0f;
    } else {
      target = vocab.sample(rng);
      if (target == center) continue;
      label = 0.0f;
    }
    float* out = output.row(target).data();
    float f = 0.0f;
    for (std::size_t k = 0; k < dim; ++k) f += ws.hidden[k] * load<Shared>(out[k]);
    loss += label > 0 ? neg_log_sigmoid<double>(f) : neg_log_sigmoid<double>(-f);
    const float g = (label - sigmoid(f)) * lr;
    for (std::size_t k = 0; k < dim; ++k) ws.error[k] += g * load<Shared>(out[k]);
    if (update_output)
      for (std::size_t k = 0; k < dim; ++k) add<Shared>(out[k], g * ws.hidden[k]);
  }
  for (std::size_t i = 0; i < n_update; ++i) {
    float* r = ws.rows[i];
    for (std::size_t k = 0; k < dim; ++k) add<Shared>(r[k], ws.error[k] * inv);
  }
  return loss;
}

inline std::vector<std::uint32_t> encode(const Vocabulary& vocab, const auto& tokens) {
  std::vector<std::uint32_t> ids;
  for (const auto& t : tokens)
    if (auto i = vocab.find(t)) ids.push_back(static_cast<std::uint32_t>(*i));
  return ids;
}

inline void init_input(Matrix<float>& input, std::uint64_t seed) {
  Rng rng(seed);
  const float half = 0.5f / static_cast<float>(input.cols());
  for (auto& x : input.data()) x = static_cast<float>((rng.uniform() * 2.0 - 1.0) * half);
}

inline float learning_rate(const Hyperparams& hp, std::uint64_t done, std::uint64_t total) {
  if (total == 0) return static_cast<float>(hp.initial_lr);
  const double progress = std::min(1.0, static_cast<double>(done) / static_cast<double>(total));
  return static_cast<float>(hp.initial_lr - (hp.initial_lr - hp.final_lr) * progress);
}

// word2vec keep probability for frequent-word subsampling.
inline bool keep_word(const Vocabulary& vocab, std::size_t w, double sample, Rng& rng) {
  if (sample <= 0) return true;
  const double threshold = sample * static_cast<double>(vocab.total_token_count());
  const double f = static_cast<double>(vocab.frequency(w));
  const double keep = (std::sqrt(f / threshold) + 1.0) * threshold / f;
  return keep >= 1.0 || rng.uniform() < keep;
}

struct Job {
  Matrix<float>& input;
  Matrix<float>& output;
  const Vocabulary& vocab;
  const Hyperparams& hp;
  const std::vector<std::vector<std::uint32_t>>& docs;
  std::size_t doc_row_offset;  // input row of document 0, or 0 when words only
  bool with_doc_vectors;
  std::uint64_t total_positions;
};

/// One pass of one worker over documents [begin, end).
template <bool Shared>
double run_shard(const Job& job, std::size_t begin, std::size_t end, Rng& rng,
                 std::atomic<std::uint64_t>& progress, std::uint64_t& examples) {
  const std::size_t dim = job.input.cols();
  Workspace ws{std::vector<float>(dim), std::vector<float>(dim), {}};
  std::vector<std::uint32_t> sentence;
  double loss = 0.0;
  for (std::size_t d = begin; d < end; ++d) {
    const auto& doc = job.docs[d];
    sentence.clear();
    for (auto w : doc)
      if (keep_word(job.vocab, w, job.hp.sample, rng)) sentence.push_back(w);
    const std::size_t n = sentence.size();
    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::size_t radius = job.hp.window - rng.below(job.hp.window);
      ws.rows.clear();
      const std::size_t lo = pos >= radius ? pos - radius : 0;
      const std::size_t hi = std::min(n - 1, pos + radius);
      for (std::size_t j = lo; j <= hi; ++j)
        if (j != pos) ws.rows.push_back(job.input.row(sentence[j]).data());
      if (job.with_doc_vectors) ws.rows.push_back(job.input.row(job.doc_row_offset + d).data());
      const std::uint64_t done = progress.fetch_add(1, std::memory_order_relaxed);
      if (ws.rows.empty()) continue;
      const float lr = learning_rate(job.hp, done, job.total_positions);
      loss += sgd_step<Shared>(ws, ws.rows.size(), job.output, true, job.vocab, sentence[pos],
                               job.hp.negative, lr, rng);
      ++examples;
    }
  }
  return loss;
}

inline void run_epochs(const Job& job, TrainingStats* stats) {
  std::atomic<std::uint64_t> progress{0};
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(job.hp.workers, job.docs.size()));
  if (workers == 1) {
    Rng rng(job.hp.seed ^ kTrainStream);
    for (std::uint32_t epoch = 0; epoch < job.hp.epochs; ++epoch) {
      std::uint64_t examples = 0;
      const double loss = run_shard<false>(job, 0, job.docs.size(), rng, progress, examples);
      if (stats) {
        stats->epoch_loss.push_back(examples ? loss / static_cast<double>(examples) : 0.0);
        stats->examples += examples;
      }
    }
    return;
  }
  std::vector<Rng> rngs;
  for (std::size_t w = 0; w < workers; ++w) rngs.emplace_back(job.hp.seed ^ kTrainStream ^ (0x9E3779B97F4A7C15ULL * (w + 1)));
  for (std::uint32_t epoch = 0; epoch < job.hp.epochs; ++epoch) {
    std::vector<double> losses(workers, 0.0);
    std::vector<std::uint64_t> counts(workers, 0);
    {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = job.docs.size() * w / workers;
        const std::size_t end = job.docs.size() * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] {
          losses[w] = run_shard<true>(job, begin, end, rngs[w], progress, counts[w]);
        });
      }
    }
    if (stats) {
      double loss = 0.0;
      std::uint64_t examples = 0;
      for (std::size_t w = 0; w < workers; ++w) {
        loss += losses[w];
        examples += counts[w];
      }
      stats->epoch_loss.push_back(examples ? loss / static_cast<double>(examples) : 0.0);
      stats->examples += examples;
    }
  }
}

inline std::uint64_t count_positions(const std::vector<std::vector<std::uint32_t>>& docs, std::uint32_t epochs) {
  std::uint64_t n = 0;
  for (const auto& d : docs) n += d.size();
  return n * epochs;
}

}  // namespace detail_train

/// Continuous bag-of-words with negative sampling. Learning rate decays
/// linearly from initial_lr to final_lr over all epochs. Single-worker runs
/// are bit-reproducible for a given seed.
template <typename Corpus>
EmbeddingModel train_cbow(const Corpus& corpus, const Hyperparams& hp, TrainingStats* stats = nullptr) {
  hp.validate();
  EmbeddingModel model;
  model.kind = ModelKind::Word;
  model.hyperparams = hp;
  model.vocabulary = build_vocabulary(corpus, hp.min_count);
  const std::size_t V = model.vocabulary.size();
  model.input = Matrix<float>(V, hp.dim);
  model.output = Matrix<float>(V, hp.dim, 0.0f);
  detail_train::init_input(model.input, hp.seed);

  std::vector<std::vector<std::uint32_t>> docs;
  for (const auto& doc : corpus) docs.push_back(detail_train::encode(model.vocabulary, doc));
  detail_train::Job job{model.input, model.output, model.vocabulary, hp, docs, 0, false,
                        detail_train::count_positions(docs, hp.epochs)};
  detail_train::run_epochs(job, stats);
  return model;
}

/// Paragraph vectors, distributed-memory variant: the document's own row
/// joins the averaged word context. Word and document rows are both trained.
inline EmbeddingModel train_doc2vec(const std::vector<TaggedDocument>& corpus, const Hyperparams& hp,
                                    TrainingStats* stats = nullptr) {
  hp.validate();
  std::set<std::string> seen;
  std::vector<std::vector<std::string>> token_lists;
  for (const auto& doc : corpus) {
    if (!seen.insert(doc.id).second) throw Error(ErrorKind::InvalidInput, "duplicate document id '" + doc.id + "'");
    token_lists.push_back(doc.tokens);
  }
  EmbeddingModel model;
  model.kind = ModelKind::Document;
  model.hyperparams = hp;
  model.vocabulary = build_vocabulary(token_lists, hp.min_count);
  const std::size_t V = model.vocabulary.size();
  for (const auto& doc : corpus) model.doc_ids.push_back(doc.id);
  model.input = Matrix<float>(V + corpus.size(), hp.dim);
  model.output = Matrix<float>(V, hp.dim, 0.0f);
  detail_train::init_input(model.input, hp.seed);

  std::vector<std::vector<std::uint32_t>> docs;
  for (const auto& tokens : token_lists) docs.push_back(detail_train::encode(model.vocabulary, tokens));
  detail_train::Job job{model.input, model.output, model.vocabulary, hp, docs, V, true,
                        detail_train::count_positions(docs, hp.epochs)};
  detail_train::run_epochs(job, stats);
  return model;
}

/// Fits a fresh document vector to `tokens` with every model weight frozen.
/// Out-of-vocabulary tokens are skipped; the result depends only on the
/// model, the tokens and `infer_epochs`.
template <typename Tokens>
std::vector<float> infer_doc_vector(const EmbeddingModel& model, const Tokens& tokens, std::uint32_t infer_epochs) {
  if (model.kind != ModelKind::Document) throw Error(ErrorKind::InvalidModel, "inference needs a document model");
  const auto& hp = model.hyperparams;
  auto sentence = detail_train::encode(model.vocabulary, tokens);
  if (sentence.empty()) throw Error(ErrorKind::NoKnownTokens, "no token of the stream is in the vocabulary");

  const std::size_t dim = model.dim();
  Rng rng(hp.seed ^ detail_train::kInferStream);
  std::vector<float> doc(dim);
  const float half = 0.5f / static_cast<float>(dim);
  for (auto& x : doc) x = static_cast<float>((rng.uniform() * 2.0 - 1.0) * half);

  // Weights are read-only here; the kernel's output update is disabled.
  auto& input = const_cast<Matrix<float>&>(model.input);
  auto& output = const_cast<Matrix<float>&>(model.output);
  detail_train::Workspace ws{std::vector<float>(dim), std::vector<float>(dim), {}};
  const std::size_t n = sentence.size();
  const std::uint64_t total = static_cast<std::uint64_t>(n) * infer_epochs;
  std::uint64_t done = 0;
  for (std::uint32_t epoch = 0; epoch < infer_epochs; ++epoch) {
    for (std::size_t pos = 0; pos < n; ++pos, ++done) {
      const std::size_t radius = hp.window - rng.below(hp.window);
      ws.rows.clear();
      ws.rows.push_back(doc.data());
      const std::size_t lo = pos >= radius ? pos - radius : 0;
      const std::size_t hi = std::min(n - 1, pos + radius);
      for (std::size_t j = lo; j <= hi; ++j)
        if (j != pos) ws.rows.push_back(input.row(sentence[j]).data());
      detail_train::sgd_step<false>(ws, 1, output, false, model.vocabulary, sentence[pos], hp.negative,
                                    detail_train::learning_rate(hp, done, total), rng);
    }
  }
  return doc;
}

}  // namespace subsent::embeddings
