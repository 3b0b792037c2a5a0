#pragma once
// Synthetic inputs shared by the unit and acceptance tests.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "subsent/corpus.hpp"
#include "subsent/embeddings/training.hpp"

namespace fixtures {

inline std::filesystem::path source_dir() { return SUBSENT_SOURCE_DIR; }
inline std::filesystem::path test_data_dir() { return SUBSENT_TEST_DATA_DIR; }
inline std::filesystem::path bundled_data_dir() { return source_dir() / "data"; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("subsent-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

  void write(const std::string& rel, const std::string& content) const {
    auto p = path_ / rel;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << content;
  }

 private:
  std::filesystem::path path_;
};

/// Annotation table whose subset sizes reproduce the twelve published counts.
/// Venn regions with |H & D & O| = 200:
///   H&D only 395, H&O only 132, D&O only 58, H only 89, D only 84, O only 53,
/// padded to 1237 documents with no Present label.
inline subsent::corpus::AnnotationTable table2_annotations() {
  struct Region {
    bool h, d, o;
    int count;
  };
  const Region regions[] = {{true, true, true, 200},   {true, true, false, 395}, {true, false, true, 132},
                            {false, true, true, 58},   {true, false, false, 89}, {false, true, false, 84},
                            {false, false, true, 53},  {false, false, false, 226}};
  subsent::corpus::AnnotationTable table;
  using subsent::corpus::Occurrence;
  const Occurrence others[] = {Occurrence::Absent, Occurrence::Questionable, Occurrence::Unknown};
  int n = 0;
  for (const auto& r : regions) {
    for (int i = 0; i < r.count; ++i, ++n) {
      const std::string id = "s" + std::to_string(n);
      auto cls = [&](bool present, int salt) { return present ? Occurrence::Present : others[(n + salt) % 3]; };
      table.add({id, "Hypertension", cls(r.h, 0)});
      table.add({id, "Diabetes", cls(r.d, 1)});
      table.add({id, "Obesity", cls(r.o, 2)});
    }
  }
  return table;
}

/// Expressions in the order of the published subset-size table.
inline std::vector<std::pair<std::string, subsent::corpus::SubsetExpression>> table2_expressions() {
  using E = subsent::corpus::SubsetExpression;
  const auto h = E::leaf("Hypertension"), d = E::leaf("Diabetes"), o = E::leaf("Obesity");
  return {{"Hypertension", h},
          {"Diabetes", d},
          {"Obesity", o},
          {"Hypertension and Diabetes", E::both(h, d)},
          {"Diabetes and not Hypertension", E::minus(d, h)},
          {"Hypertension and not Diabetes", E::minus(h, d)},
          {"Obesity and Diabetes", E::both(o, d)},
          {"Diabetes and not Obesity", E::minus(d, o)},
          {"Obesity and not Diabetes", E::minus(o, d)},
          {"Obesity and Hypertension", E::both(o, h)},
          {"Hypertension and not Obesity", E::minus(h, o)},
          {"Obesity and not Hypertension", E::minus(o, h)}};
}

/// Two topical clusters with disjoint vocabularies. Every document also
/// repeats two words of its own so that documents are distinguishable.
struct ToyCorpus {
  std::vector<std::string> cluster_a, cluster_b;
  std::vector<subsent::embeddings::TaggedDocument> documents;  // first half from cluster a
  std::vector<std::vector<std::string>> sentences() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& d : documents) out.push_back(d.tokens);
    return out;
  }
};

inline ToyCorpus toy_corpus(std::uint32_t seed = 7, int docs_per_cluster = 30, int length = 60) {
  ToyCorpus c;
  c.cluster_a = {"apple", "banana", "cherry", "grape", "lemon", "mango", "peach", "pear", "plum", "melon"};
  c.cluster_b = {"car", "truck", "bus", "train", "plane", "boat", "bike", "taxi", "tram", "ferry"};
  std::mt19937 rng(seed);
  for (int cluster = 0; cluster < 2; ++cluster) {
    const auto& words = cluster == 0 ? c.cluster_a : c.cluster_b;
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int d = 0; d < docs_per_cluster; ++d) {
      subsent::embeddings::TaggedDocument doc;
      doc.id = (cluster == 0 ? "a" : "b") + std::to_string(100 + d);
      for (int t = 0; t < length; ++t) doc.tokens.push_back(words[pick(rng)]);
      for (const char* tag : {"x", "y"})
        for (int r = 0; r < 4; ++r) {
          auto at = doc.tokens.begin() + static_cast<std::ptrdiff_t>(rng() % (doc.tokens.size() + 1));
          doc.tokens.insert(at, doc.id + tag);
        }
      c.documents.push_back(std::move(doc));
    }
  }
  return c;
}

}  // namespace fixtures
