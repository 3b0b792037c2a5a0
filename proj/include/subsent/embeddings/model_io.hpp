#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "subsent/embeddings/model.hpp"
#include "subsent/error.hpp"

// Binary model container, all integers and floats little-endian:
//   magic    8 bytes  "SBSENT1\0"
//   u32 kind (0 word, 1 document), u32 dim, u64 V, u64 D
//   u32 window, epochs, negative, min_count, workers, infer_epochs
//   f64 initial_lr, final_lr, sample; u64 seed
//   V x { u32 byte length, UTF-8 word, u64 frequency }
//   D x { u32 byte length, UTF-8 document id }
//   f32 input matrix  (V + D) x dim, row-major
//   f32 output matrix V x dim, row-major

namespace subsent::embeddings {

inline constexpr std::array<char, 8> kModelMagic = {'S', 'B', 'S', 'E', 'N', 'T', '1', '\0'};

namespace detail_io {

template <typename U>
void put(std::ostream& out, U value) {
  static_assert(std::is_unsigned_v<U>);
  for (std::size_t i = 0; i < sizeof(U); ++i) out.put(static_cast<char>((value >> (8 * i)) & 0xFF));
}

inline void put_f32(std::ostream& out, float v) { put(out, std::bit_cast<std::uint32_t>(v)); }
inline void put_f64(std::ostream& out, double v) { put(out, std::bit_cast<std::uint64_t>(v)); }

inline void put_string(std::ostream& out, const std::string& s) {
  put(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename U>
U get(std::istream& in) {
  std::array<unsigned char, sizeof(U)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) throw Error(ErrorKind::InvalidModel, "truncated model");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
  return v;
}

inline float get_f32(std::istream& in) { return std::bit_cast<float>(get<std::uint32_t>(in)); }
inline double get_f64(std::istream& in) { return std::bit_cast<double>(get<std::uint64_t>(in)); }

inline std::string get_string(std::istream& in) {
  const auto n = get<std::uint32_t>(in);
  if (n > (1u << 20)) throw Error(ErrorKind::InvalidModel, "implausible string length");
  std::string s(n, '\0');
  if (n && !in.read(s.data(), n)) throw Error(ErrorKind::InvalidModel, "truncated model");
  return s;
}

}  // namespace detail_io

inline void save_model(std::ostream& out, const EmbeddingModel& m) {
  using namespace detail_io;
  const auto& hp = m.hyperparams;
  out.write(kModelMagic.data(), kModelMagic.size());
  put(out, static_cast<std::uint32_t>(m.kind));
  put(out, static_cast<std::uint32_t>(m.dim()));
  put(out, static_cast<std::uint64_t>(m.vocabulary.size()));
  put(out, static_cast<std::uint64_t>(m.doc_ids.size()));
  for (auto v : {hp.window, hp.epochs, hp.negative, hp.min_count, hp.workers, hp.infer_epochs}) put(out, v);
  put_f64(out, hp.initial_lr);
  put_f64(out, hp.final_lr);
  put_f64(out, hp.sample);
  put(out, hp.seed);
  for (std::size_t i = 0; i < m.vocabulary.size(); ++i) {
    put_string(out, m.vocabulary.word(i));
    put(out, m.vocabulary.frequency(i));
  }
  for (const auto& id : m.doc_ids) put_string(out, id);
  for (float x : m.input.data()) put_f32(out, x);
  for (float x : m.output.data()) put_f32(out, x);
  if (!out) throw Error(ErrorKind::Io, "failed writing model");
}

inline EmbeddingModel load_model(std::istream& in) {
  using namespace detail_io;
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kModelMagic) {
    throw Error(ErrorKind::InvalidModel, "bad magic, not a model file");
  }
  EmbeddingModel m;
  const auto kind = get<std::uint32_t>(in);
  if (kind > 1) throw Error(ErrorKind::InvalidModel, "unknown model kind");
  m.kind = static_cast<ModelKind>(kind);
  const auto dim = get<std::uint32_t>(in);
  const auto V = get<std::uint64_t>(in);
  const auto D = get<std::uint64_t>(in);
  if (dim == 0 || V == 0) throw Error(ErrorKind::InvalidModel, "empty model");
  if (m.kind == ModelKind::Word && D != 0) throw Error(ErrorKind::InvalidModel, "word model with documents");
  auto& hp = m.hyperparams;
  hp.dim = dim;
  hp.window = get<std::uint32_t>(in);
  hp.epochs = get<std::uint32_t>(in);
  hp.negative = get<std::uint32_t>(in);
  hp.min_count = get<std::uint32_t>(in);
  hp.workers = get<std::uint32_t>(in);
  hp.infer_epochs = get<std::uint32_t>(in);
  hp.initial_lr = get_f64(in);
  hp.final_lr = get_f64(in);
  hp.sample = get_f64(in);
  hp.seed = get<std::uint64_t>(in);

  std::vector<std::pair<std::string, std::uint64_t>> counts;
  for (std::uint64_t i = 0; i < V; ++i) {
    auto w = get_string(in);
    counts.emplace_back(std::move(w), get<std::uint64_t>(in));
  }
  m.vocabulary = Vocabulary::from_counts(counts);
  for (std::uint64_t i = 0; i < V; ++i) {
    if (m.vocabulary.word(i) != counts[i].first) throw Error(ErrorKind::InvalidModel, "vocabulary is not in canonical order");
  }
  for (std::uint64_t d = 0; d < D; ++d) m.doc_ids.push_back(get_string(in));
  m.input = Matrix<float>(V + D, dim);
  m.output = Matrix<float>(V, dim);
  for (auto& x : m.input.data()) x = get_f32(in);
  for (auto& x : m.output.data()) x = get_f32(in);
  return m;
}

inline void save_model(const std::filesystem::path& path, const EmbeddingModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  save_model(out, m);
}

inline EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return load_model(in);
}

}  // namespace subsent::embeddings
