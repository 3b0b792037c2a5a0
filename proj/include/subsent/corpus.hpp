#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "subsent/detail/text.hpp"
#include "subsent/error.hpp"
#include "subsent/types.hpp"

namespace subsent::corpus {

struct Document {
  std::string id;
  std::string raw_text;
};

enum class Occurrence { Present, Absent, Questionable, Unknown };

constexpr std::string_view to_string(Occurrence occ) {
  switch (occ) {
    case Occurrence::Present: return "Present";
    case Occurrence::Absent: return "Absent";
    case Occurrence::Questionable: return "Questionable";
    case Occurrence::Unknown: return "Unknown";
  }
  return "Unknown";
}

/// Case-insensitive class name lookup.
inline std::optional<Occurrence> occurrence_from_string(std::string_view s) {
  auto lower = detail::to_lower(detail::trim(s));
  if (lower == "present") return Occurrence::Present;
  if (lower == "absent") return Occurrence::Absent;
  if (lower == "questionable") return Occurrence::Questionable;
  if (lower == "unknown") return Occurrence::Unknown;
  return std::nullopt;
}

struct AnnotationRecord {
  std::string doc_id;
  std::string disease;
  Occurrence occurrence = Occurrence::Unknown;
};

/// Occurrence class per (document, disease). Pairs are unique.
class AnnotationTable {
 public:
  /// Throws DuplicateAnnotation if the (doc_id, disease) pair already exists.
  void add(AnnotationRecord record) {
    auto key = std::make_pair(record.doc_id, record.disease);
    if (index_.contains(key)) {
      throw Error(ErrorKind::DuplicateAnnotation,
                  "(" + record.doc_id + ", " + record.disease + ") annotated twice");
    }
    index_.emplace(std::move(key), record.occurrence);
    diseases_.insert(record.disease);
    records_.push_back(std::move(record));
  }

  std::optional<Occurrence> find(std::string_view doc_id, std::string_view disease) const {
    auto it = index_.find(std::make_pair(std::string(doc_id), std::string(disease)));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_disease(std::string_view disease) const {
    return diseases_.contains(std::string(disease));
  }

  /// Documents whose class for `disease` is Present, ascending by id.
  std::vector<std::string> present(std::string_view disease) const {
    std::vector<std::string> ids;
    for (const auto& [key, occ] : index_) {
      if (key.second == disease && occ == Occurrence::Present) ids.push_back(key.first);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  const std::vector<AnnotationRecord>& records() const { return records_; }
  const std::set<std::string>& diseases() const { return diseases_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<AnnotationRecord> records_;
  std::map<std::pair<std::string, std::string>, Occurrence> index_;
  std::set<std::string> diseases_;
};

struct AnnotationFormat {
  char delimiter = ',';
};

inline AnnotationTable parse_annotations(std::istream& in, std::string_view source = "<stream>",
                                         AnnotationFormat format = {}) {
  AnnotationTable table;
  auto lines = detail::read_lines(in);
  std::size_t first = 0;
  while (first < lines.size() && detail::trim(lines[first]).empty()) ++first;
  if (first == lines.size()) return table;

  auto header = detail::split_record(lines[first], format.delimiter);
  std::vector<std::string> names;
  for (auto& h : header) names.push_back(detail::to_lower(detail::trim(h)));
  if (names != std::vector<std::string>{"doc_id", "disease", "class"}) {
    throw ParseError(source, first + 1, "expected header doc_id,disease,class");
  }

  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (detail::trim(lines[i]).empty()) continue;
    auto fields = detail::split_record(lines[i], format.delimiter);
    if (fields.size() != 3) {
      throw ParseError(source, line_no,
                       "expected 3 fields, found " + std::to_string(fields.size()));
    }
    std::string doc_id(detail::trim(fields[0]));
    std::string disease(detail::trim(fields[1]));
    if (doc_id.empty() || disease.empty()) {
      throw ParseError(source, line_no, "missing doc_id or disease");
    }
    if (detail::trim(fields[2]).empty()) throw ParseError(source, line_no, "missing class");
    auto occ = occurrence_from_string(fields[2]);
    if (!occ) {
      throw Error(ErrorKind::InvalidClass, std::string(source) + ":" + std::to_string(line_no) +
                                               ": unknown occurrence class '" + fields[2] + "'");
    }
    try {
      table.add({std::move(doc_id), std::move(disease), *occ});
    } catch (const Error& e) {
      throw Error(ErrorKind::DuplicateAnnotation,
                  std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

inline AnnotationTable parse_annotations(const std::filesystem::path& path, AnnotationFormat format = {}) {
  auto in = detail::open_input(path);
  return parse_annotations(in, path.string(), format);
}

/// Writes the canonical form: header plus records sorted by (doc_id, disease).
inline void write_annotations(std::ostream& out, const AnnotationTable& table) {
  auto records = table.records();
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.doc_id, a.disease) < std::tie(b.doc_id, b.disease);
  });
  out << "doc_id,disease,class\n";
  for (const auto& r : records) {
    out << detail::quote_csv(r.doc_id) << ',' << detail::quote_csv(r.disease) << ','
        << to_string(r.occurrence) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Subset expressions

/// Immutable expression tree over disease labels: Leaf | And | Diff.
class SubsetExpression {
 public:
  enum class Kind { Leaf, And, Diff };

  static SubsetExpression leaf(std::string disease) {
    return SubsetExpression(std::make_shared<const Node>(Node{Kind::Leaf, std::move(disease), {}, {}}));
  }
  static SubsetExpression both(SubsetExpression lhs, SubsetExpression rhs) {
    return SubsetExpression(std::make_shared<const Node>(Node{Kind::And, {}, lhs.node_, rhs.node_}));
  }
  static SubsetExpression minus(SubsetExpression lhs, SubsetExpression rhs) {
    return SubsetExpression(std::make_shared<const Node>(Node{Kind::Diff, {}, lhs.node_, rhs.node_}));
  }

  Kind kind() const { return node_->kind; }
  const std::string& disease() const { return node_->disease; }
  SubsetExpression lhs() const { return SubsetExpression(node_->lhs); }
  SubsetExpression rhs() const { return SubsetExpression(node_->rhs); }

  /// Leaf labels in left-to-right order.
  std::vector<std::string> diseases() const {
    std::vector<std::string> out;
    collect(*node_, out);
    return out;
  }

  std::string to_string() const { return render(*node_); }

  friend bool operator==(const SubsetExpression& a, const SubsetExpression& b) {
    return equal(*a.node_, *b.node_);
  }

 private:
  struct Node {
    Kind kind;
    std::string disease;
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit SubsetExpression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static void collect(const Node& n, std::vector<std::string>& out) {
    if (n.kind == Kind::Leaf) {
      out.push_back(n.disease);
      return;
    }
    collect(*n.lhs, out);
    collect(*n.rhs, out);
  }

  static std::string render(const Node& n) {
    switch (n.kind) {
      case Kind::Leaf: return "Leaf(" + n.disease + ")";
      case Kind::And: return "And(" + render(*n.lhs) + ", " + render(*n.rhs) + ")";
      case Kind::Diff: return "Diff(" + render(*n.lhs) + ", " + render(*n.rhs) + ")";
    }
    return {};
  }

  static bool equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Leaf) return a.disease == b.disease;
    return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }

  std::shared_ptr<const Node> node_;
};

struct Subset {
  std::string id;
  std::string name;
  std::vector<std::string> doc_ids;  // ascending
  std::vector<Term> token_stream;
};

namespace detail_eval {

inline std::vector<std::string> eval(const AnnotationTable& table, const SubsetExpression& expr) {
  using Kind = SubsetExpression::Kind;
  if (expr.kind() == Kind::Leaf) {
    if (!table.has_disease(expr.disease())) {
      throw Error(ErrorKind::UnknownDisease, "'" + expr.disease() + "' is not annotated");
    }
    return table.present(expr.disease());
  }
  auto a = eval(table, expr.lhs());
  auto b = eval(table, expr.rhs());
  std::vector<std::string> out;
  if (expr.kind() == Kind::And) {
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  } else {
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace detail_eval

/// Leaf(D) is the set of documents annotated Present for D; a missing
/// (doc, D) record counts as not Present.
inline Subset evaluate_subset(const AnnotationTable& table, const SubsetExpression& expr,
                              std::string id = {}, std::string name = {}) {
  Subset subset;
  subset.id = std::move(id);
  subset.name = name.empty() ? expr.to_string() : std::move(name);
  subset.doc_ids = detail_eval::eval(table, expr);
  return subset;
}

/// Concatenates member documents' token lists in ascending doc_id order.
template <typename Token>
std::vector<Token> subset_token_stream(const Subset& subset,
                                       const std::map<std::string, std::vector<Token>>& processed) {
  std::vector<std::string> ids = subset.doc_ids;
  std::sort(ids.begin(), ids.end());
  std::vector<Token> stream;
  for (const auto& id : ids) {
    auto it = processed.find(id);
    if (it == processed.end()) {
      throw Error(ErrorKind::MissingDocument, "no processed tokens for document '" + id + "'");
    }
    stream.insert(stream.end(), it->second.begin(), it->second.end());
  }
  return stream;
}

/// Loads every `*.txt` file of a directory; the filename stem is the id.
/// Empty documents are kept and reported through `warn`.
template <typename Warn>
std::vector<Document> load_documents(const std::filesystem::path& dir, Warn&& warn) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::Io, "corpus directory not found: " + dir.string());
  }
  std::vector<Document> docs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    Document doc{entry.path().stem().string(), detail::read_file(entry.path())};
    if (doc.raw_text.empty()) warn("document '" + doc.id + "' is empty");
    docs.push_back(std::move(doc));
  }
  std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return docs;
}

inline std::vector<Document> load_documents(const std::filesystem::path& dir) {
  return load_documents(dir, [](const std::string& msg) { std::clog << "warning: " << msg << '\n'; });
}

}  // namespace subsent::corpus
