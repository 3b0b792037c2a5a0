#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "subsent/embeddings/model_io.hpp"
#include "subsent/embeddings/objective.hpp"
#include "subsent/embeddings/similarity.hpp"
#include "subsent/embeddings/training.hpp"

using namespace subsent;
using namespace subsent::embeddings;

namespace {

Hyperparams toy_params() {
  Hyperparams hp;
  hp.dim = 16;
  hp.window = 3;
  hp.epochs = 15;
  hp.negative = 5;
  hp.min_count = 2;
  hp.seed = 42;
  hp.infer_epochs = 60;
  return hp;
}

double mean_cosine(const EmbeddingModel& m, const std::vector<std::string>& a, const std::vector<std::string>& b) {
  double sum = 0;
  int n = 0;
  for (const auto& u : a)
    for (const auto& v : b) {
      if (u == v) continue;
      sum += cosine_similarity(*m.word_vector(u), *m.word_vector(v));
      ++n;
    }
  return sum / n;
}

// Random double-precision instance for the gradient checks.
struct Instance {
  Matrix<double> input, output;
  std::vector<std::size_t> context, negatives;
  std::size_t center;
};

Instance random_instance(std::mt19937_64& rng, std::size_t extra_rows) {
  std::uniform_int_distribution<std::size_t> udim(1, 8), uv(2, 20);
  const std::size_t dim = udim(rng), V = uv(rng);
  std::uniform_real_distribution<double> w(-0.8, 0.8);
  Instance in{Matrix<double>(V + extra_rows, dim), Matrix<double>(V, dim), {}, {}, 0};
  for (auto& x : in.input.data()) x = w(rng);
  for (auto& x : in.output.data()) x = w(rng);
  std::uniform_int_distribution<std::size_t> word(0, V - 1);
  for (std::size_t k = 1 + rng() % 6; k > 0; --k) in.context.push_back(word(rng));  // repeats allowed
  in.center = word(rng);
  for (std::size_t k = 1 + rng() % 5; k > 0; --k) in.negatives.push_back(word(rng));
  return in;
}

template <typename Loss>
void check_gradients(Instance& in, const LossGrad<double>& g, Loss loss) {
  const double h = 1e-5;
  auto numeric = [&](double& x) {
    const double keep = x;
    x = keep + h;
    const double up = loss();
    x = keep - h;
    const double down = loss();
    x = keep;
    return (up - down) / (2 * h);
  };
  auto analytic = [](const RowGradients<double>& grads, std::size_t row, std::size_t k) {
    for (const auto& [r, v] : grads)
      if (r == row) return v[k];
    return 0.0;
  };
  // Every parameter of both matrices, touched or not.
  for (std::size_t r = 0; r < in.input.rows(); ++r)
    for (std::size_t k = 0; k < in.input.cols(); ++k)
      ASSERT_LT(oracle::relative_error(analytic(g.grad_input, r, k), numeric(in.input(r, k))), 1e-4)
          << "input " << r << "," << k;
  for (std::size_t r = 0; r < in.output.rows(); ++r)
    for (std::size_t k = 0; k < in.output.cols(); ++k)
      ASSERT_LT(oracle::relative_error(analytic(g.grad_output, r, k), numeric(in.output(r, k))), 1e-4)
          << "output " << r << "," << k;
}

}  // namespace

TEST(Vocabulary, CountsAndFloor) {
  std::vector<std::vector<std::string>> c = {{"a", "a", "b"}};
  auto v1 = build_vocabulary(c, 1);
  EXPECT_EQ(v1.size(), 2u);
  EXPECT_EQ(v1.frequency(*v1.find("a")), 2u);
  EXPECT_EQ(build_vocabulary(c, 2).size(), 1u);
  EXPECT_THROW(build_vocabulary(c, 3), Error);
  EXPECT_THROW(build_vocabulary(std::vector<std::vector<std::string>>{{}}, 1), Error);
}

TEST(Vocabulary, OrderAndSamplingDistribution) {
  auto v = Vocabulary::from_counts({{"b", 1}, {"a", 4}, {"c", 1}});
  EXPECT_EQ(v.words(), (std::vector<std::string>{"a", "b", "c"}));
  auto two = Vocabulary::from_counts({{"a", 4}, {"b", 1}});
  EXPECT_NEAR(two.sampling_probability(0), std::pow(4.0, 0.75) / (std::pow(4.0, 0.75) + 1), 1e-15);
  EXPECT_NEAR(two.sampling_probability(0), 0.7387, 1e-4);
  Rng rng(1);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += two.sample(rng) == 0;
  EXPECT_NEAR(hits / 100000.0, 0.7387, 0.01);
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(9), b(9);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(a.next(), b.next());
    const double u = a.uniform();
    b.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(a.below(7), 7u);
    b.below(7);
  }
}

TEST(Objective, AllZeroParameters) {
  Matrix<double> in(5, 3), out(5, 3);
  const std::vector<std::size_t> ctx = {0, 1}, neg = {2, 3, 4};
  auto g = cbow_loss_grad<double>(in, out, ctx, 1, neg);
  EXPECT_NEAR(g.loss, 4 * std::log(2.0), 1e-15);
}

TEST(Objective, SingleContextWordIsHidden) {
  Matrix<double> in(3, 4), out(3, 4);
  for (std::size_t k = 0; k < 4; ++k) in(2, k) = 0.1 * k - 0.3;
  const std::vector<std::size_t> ctx = {2}, neg = {0};
  auto g = cbow_loss_grad<double>(in, out, ctx, 1, neg);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(g.hidden[k], in(2, k));
  EXPECT_THROW(cbow_loss_grad<double>(in, out, std::span<const std::size_t>(), 1, neg), Error);
}

TEST(Objective, CbowGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 150; ++trial) {
    auto in = random_instance(rng, 0);
    auto g = cbow_loss_grad<double>(in.input, in.output, in.context, in.center, in.negatives);
    check_gradients(in, g, [&] {
      return cbow_loss_grad<double>(in.input, in.output, in.context, in.center, in.negatives).loss;
    });
  }
}

TEST(Objective, PvdmGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(200);
  for (int trial = 0; trial < 150; ++trial) {
    auto in = random_instance(rng, 3);
    const std::size_t doc_row = in.output.rows() + rng() % 3;
    auto g = pvdm_loss_grad<double>(in.input, in.output, doc_row, in.context, in.center, in.negatives);
    check_gradients(in, g, [&] {
      return pvdm_loss_grad<double>(in.input, in.output, doc_row, in.context, in.center, in.negatives).loss;
    });
  }
}

TEST(Training, ZeroEpochsIsInitialization) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  hp.epochs = 0;
  auto m = train_cbow(toy.sentences(), hp);
  Matrix<float> init(m.vocabulary.size(), hp.dim);
  detail_train::init_input(init, hp.seed);
  EXPECT_TRUE(m.input == init);
  for (float x : m.output.data()) EXPECT_EQ(x, 0.0f);
  for (float x : m.input.data()) EXPECT_LE(std::fabs(x), 0.5f / hp.dim);

  auto d = train_doc2vec(toy.documents, hp);
  Matrix<float> dinit(d.vocabulary.size() + toy.documents.size(), hp.dim);
  detail_train::init_input(dinit, hp.seed);
  EXPECT_TRUE(d.input == dinit);
}

TEST(Training, CbowLearnsClustersAndIsReproducible) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  TrainingStats stats;
  auto m = train_cbow(toy.sentences(), hp, &stats);
  ASSERT_EQ(stats.epoch_loss.size(), hp.epochs);
  EXPECT_LT(stats.epoch_loss.back(), stats.epoch_loss.front());
  for (float x : m.input.data()) ASSERT_TRUE(std::isfinite(x));
  for (float x : m.output.data()) ASSERT_TRUE(std::isfinite(x));
  const double intra = (mean_cosine(m, toy.cluster_a, toy.cluster_a) + mean_cosine(m, toy.cluster_b, toy.cluster_b)) / 2;
  const double inter = mean_cosine(m, toy.cluster_a, toy.cluster_b);
  EXPECT_GT(intra, inter);
  EXPECT_TRUE(train_cbow(toy.sentences(), hp) == m);
  hp.seed = 43;
  EXPECT_FALSE(train_cbow(toy.sentences(), hp) == m);
}

TEST(Training, MultipleWorkersProduceFiniteModels) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  hp.workers = 4;
  TrainingStats stats;
  auto m = train_cbow(toy.sentences(), hp, &stats);
  for (float x : m.input.data()) ASSERT_TRUE(std::isfinite(x));
  EXPECT_LT(stats.epoch_loss.back(), stats.epoch_loss.front());
  const double intra = (mean_cosine(m, toy.cluster_a, toy.cluster_a) + mean_cosine(m, toy.cluster_b, toy.cluster_b)) / 2;
  EXPECT_GT(intra, mean_cosine(m, toy.cluster_a, toy.cluster_b));
}

TEST(Training, SubsamplingStillLearns) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  hp.sample = 1e-2;
  TrainingStats stats;
  auto m = train_cbow(toy.sentences(), hp, &stats);
  EXPECT_LT(stats.epoch_loss.back(), stats.epoch_loss.front());
  EXPECT_TRUE(train_cbow(toy.sentences(), hp) == m);
}

TEST(Training, RejectsBadHyperparams) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  hp.initial_lr = hp.final_lr;
  EXPECT_THROW(train_cbow(toy.sentences(), hp), Error);
  hp = toy_params();
  hp.dim = 0;
  EXPECT_THROW(train_cbow(toy.sentences(), hp), Error);
}

TEST(Doc2Vec, DuplicateDocumentsAreClosest) {
  auto toy = fixtures::toy_corpus(3, 4, 50);
  std::vector<TaggedDocument> docs = {toy.documents[0], toy.documents[0], toy.documents[4], toy.documents[5]};
  docs[1].id = "copy";
  auto hp = toy_params();
  hp.epochs = 40;
  hp.min_count = 1;
  auto m = train_doc2vec(docs, hp);
  const double twins = cosine_similarity(m.doc_vector(0), m.doc_vector(1));
  for (std::size_t d = 2; d < docs.size(); ++d) {
    EXPECT_GT(twins, cosine_similarity(m.doc_vector(0), m.doc_vector(d)));
    EXPECT_GT(twins, cosine_similarity(m.doc_vector(1), m.doc_vector(d)));
  }
  docs[1].id = docs[0].id;
  EXPECT_THROW(train_doc2vec(docs, hp), Error);
}

TEST(Doc2Vec, InferredVectorIsNearestOwnDocument) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  // Document rows see one update per position per epoch, so they need a
  // longer schedule than the word vectors before they separate.
  hp.epochs = 100;
  hp.infer_epochs = 100;
  hp.initial_lr = 0.05;
  TrainingStats stats;
  auto m = train_doc2vec(toy.documents, hp, &stats);
  EXPECT_LT(stats.epoch_loss.back(), stats.epoch_loss.front());
  EXPECT_EQ(m.doc_row(toy.documents[3].id), m.vocabulary.size() + 3);
  EXPECT_FALSE(m.doc_row("missing"));
  std::size_t hits = 0;
  for (std::size_t d = 0; d < toy.documents.size(); ++d) {
    auto inferred = infer_doc_vector(m, toy.documents[d].tokens, hp.infer_epochs);
    std::size_t best = 0;
    double best_cos = -2;
    for (std::size_t e = 0; e < toy.documents.size(); ++e) {
      const double c = cosine_similarity(std::span<const float>(inferred), m.doc_vector(e));
      if (c > best_cos) best_cos = c, best = e;
    }
    hits += best == d;
  }
  EXPECT_EQ(hits, toy.documents.size());
}

TEST(Doc2Vec, InferenceEdgeCases) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  hp.epochs = 3;
  auto m = train_doc2vec(toy.documents, hp);
  const auto before = m;
  auto v0 = infer_doc_vector(m, toy.documents[0].tokens, 0);
  auto v0_again = infer_doc_vector(m, toy.documents[1].tokens, 0);
  EXPECT_EQ(v0, v0_again);  // seeded initialization only
  for (float x : v0) EXPECT_LE(std::fabs(x), 0.5f / hp.dim);
  auto a = infer_doc_vector(m, toy.documents[0].tokens, 10);
  EXPECT_EQ(a, infer_doc_vector(m, toy.documents[0].tokens, 10));
  EXPECT_NE(a, v0);
  EXPECT_TRUE(m == before);  // weights stay frozen
  try {
    infer_doc_vector(m, std::vector<std::string>{"zzz", "qqq"}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoKnownTokens);
  }
  auto w = train_cbow(toy.sentences(), hp);
  EXPECT_THROW(infer_doc_vector(w, toy.documents[0].tokens, 5), Error);
}

TEST(SubsetVector, MeanOfKnownTokens) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  hp.epochs = 2;
  auto m = train_cbow(toy.sentences(), hp);
  auto u = *m.word_vector("apple"), v = *m.word_vector("car");
  auto one = subset_vector_w2v(m, std::vector<std::string>{"apple"});
  for (std::size_t k = 0; k < u.size(); ++k) EXPECT_EQ(one[k], u[k]);
  EXPECT_EQ(subset_vector_w2v(m, std::vector<std::string>{"apple", "apple", "unknown"}), one);
  auto mix = subset_vector_w2v(m, std::vector<std::string>{"apple", "car"});
  for (std::size_t k = 0; k < u.size(); ++k) EXPECT_NEAR(mix[k], (double(u[k]) + v[k]) / 2, 1e-15);
  EXPECT_THROW(subset_vector_w2v(m, std::vector<std::string>{"nope"}), Error);

  // Partition additivity.
  std::mt19937 rng(1);
  const auto& stream = toy.documents[0].tokens;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t cut = 1 + rng() % (stream.size() - 1);
    std::vector<std::string> left(stream.begin(), stream.begin() + cut), right(stream.begin() + cut, stream.end());
    auto count = [&](const auto& s) { return std::count_if(s.begin(), s.end(), [&](auto& t) { return m.vocabulary.find(t).has_value(); }); };
    const double nl = count(left), nr = count(right);
    if (nl == 0 || nr == 0) continue;
    auto whole = subset_vector_w2v(m, stream), l = subset_vector_w2v(m, left), r = subset_vector_w2v(m, right);
    for (std::size_t k = 0; k < whole.size(); ++k) EXPECT_NEAR(whole[k], (nl * l[k] + nr * r[k]) / (nl + nr), 1e-12);
  }
}

TEST(Cosine, Basics) {
  const std::vector<double> u = {1, 0}, v = {1, 1}, w = {0, 3};
  EXPECT_NEAR(cosine_similarity(u, v), 0.707107, 1e-6);
  EXPECT_EQ(cosine_similarity(u, w), 0.0);
  EXPECT_NEAR(cosine_similarity(v, v), 1.0, 1e-15);
  EXPECT_THROW(cosine_similarity(u, std::vector<double>{0, 0}), Error);
  EXPECT_THROW(cosine_similarity(u, std::vector<double>{1, 0, 0}), Error);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> s(0.001, 1000);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> a(1 + rng() % 10), b;
    for (auto& x : a) x = n(rng);
    for (double x : a) b.push_back(n(rng) + 0 * x);
    const double c = cosine_similarity(a, b);
    EXPECT_GE(c, -1.0);
    EXPECT_LE(c, 1.0);
    EXPECT_NEAR(c, oracle::cosine(a, b), 1e-12);
    const double alpha = s(rng), beta = s(rng);
    auto as = a, bs = b;
    for (auto& x : as) x *= alpha;
    for (auto& x : bs) x *= beta;
    EXPECT_NEAR(cosine_similarity(as, bs), c, 1e-9);
  }
}

TEST(SimilarityMatrix, InvariantsAndRecount) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + rng() % 6, dim = 1 + rng() % 8;
    std::vector<LabeledVector> vs;
    for (std::size_t i = 0; i < k; ++i) {
      LabeledVector lv{std::to_string(i + 1), std::vector<double>(dim)};
      for (auto& x : lv.values) x = n(rng);
      vs.push_back(lv);
    }
    auto sm = pairwise_similarity_matrix(vs);
    double hi = -2, lo = 2;
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_NEAR(sm.matrix.at(i, i), 1.0, 1e-9);
      for (std::size_t j = 0; j < k; ++j) {
        EXPECT_NEAR(sm.matrix.at(i, j), sm.matrix.at(j, i), 1e-9);
        EXPECT_LE(std::fabs(sm.matrix.at(i, j)), 1.0);
        if (i != j) {
          EXPECT_NEAR(sm.matrix.at(i, j), oracle::cosine(vs[i].values, vs[j].values), 1e-12);
        }
        if (i < j) hi = std::max(hi, sm.matrix.at(i, j)), lo = std::min(lo, sm.matrix.at(i, j));
      }
    }
    EXPECT_EQ(sm.most_similar.value, hi);
    EXPECT_EQ(sm.least_similar.value, lo);
  }
}

TEST(SimilarityMatrix, EdgeCases) {
  std::vector<LabeledVector> same = {{"a", {1, 2}}, {"b", {1, 2}}};
  auto sm = pairwise_similarity_matrix(same);
  for (double x : sm.matrix.values) EXPECT_NEAR(x, 1.0, 1e-15);
  EXPECT_THROW(pairwise_similarity_matrix({same[0]}), Error);
  try {
    pairwise_similarity_matrix({same[0], {"zero", {0, 0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroVector);
    EXPECT_NE(std::string(e.what()).find("zero"), std::string::npos);
  }
}

TEST(ModelIo, RoundTripIsBitExact) {
  auto toy = fixtures::toy_corpus();
  auto hp = toy_params();
  hp.epochs = 2;
  for (bool doc : {false, true}) {
    auto m = doc ? train_doc2vec(toy.documents, hp) : train_cbow(toy.sentences(), hp);
    std::stringstream buf;
    save_model(buf, m);
    const auto bytes = buf.str();
    EXPECT_EQ(bytes.substr(0, 8), std::string("SBSENT1\0", 8));
    auto back = load_model(buf);
    EXPECT_TRUE(back == m);
    std::stringstream again;
    save_model(again, back);
    EXPECT_EQ(again.str(), bytes);

    for (std::size_t cut : {std::size_t{4}, std::size_t{40}, bytes.size() / 2, bytes.size() - 1}) {
      std::stringstream truncated(bytes.substr(0, cut));
      EXPECT_THROW(load_model(truncated), Error) << cut;
    }
    auto bad = bytes;
    bad[0] = 'X';
    std::stringstream wrong(bad);
    EXPECT_THROW(load_model(wrong), Error);
  }
}
