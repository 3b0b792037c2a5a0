#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "published_tables.hpp"
#include "subsent/corpus.hpp"

using namespace subsent;
using namespace subsent::corpus;

namespace {

AnnotationTable parse(const std::string& text) {
  std::istringstream in(text);
  return parse_annotations(in, "test.csv");
}

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

std::size_t line_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Occurrence, ParsesCaseInsensitively) {
  EXPECT_EQ(occurrence_from_string("present"), Occurrence::Present);
  EXPECT_EQ(occurrence_from_string("ABSENT"), Occurrence::Absent);
  EXPECT_EQ(occurrence_from_string(" Questionable "), Occurrence::Questionable);
  EXPECT_EQ(occurrence_from_string("unknown"), Occurrence::Unknown);
  EXPECT_FALSE(occurrence_from_string("maybe"));
}

TEST(Annotations, ParsesRecords) {
  auto t = parse("doc_id,disease,class\nd1,Obesity,Present\nd1,Diabetes,Absent\n\nd2,Obesity,questionable\n");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.find("d1", "Obesity"), Occurrence::Present);
  EXPECT_EQ(t.find("d2", "Obesity"), Occurrence::Questionable);
  EXPECT_FALSE(t.find("d2", "Diabetes"));
  EXPECT_EQ(t.diseases(), (std::set<std::string>{"Diabetes", "Obesity"}));
}

TEST(Annotations, QuotedFieldsAndCrlf) {
  auto t = parse("doc_id,disease,class\r\n\"d,1\",\"Heart \"\"failure\"\"\",Present\r\n");
  EXPECT_EQ(t.find("d,1", "Heart \"failure\""), Occurrence::Present);
}

TEST(Annotations, TabDelimited) {
  std::istringstream in("doc_id\tdisease\tclass\nd1\tObesity\tPresent\n");
  auto t = parse_annotations(in, "x.tsv", AnnotationFormat{'\t'});
  EXPECT_EQ(t.find("d1", "Obesity"), Occurrence::Present);
}

TEST(Annotations, EmptyInputIsEmptyTable) { EXPECT_TRUE(parse("").empty()); }

TEST(Annotations, Errors) {
  EXPECT_EQ(kind_of([] { parse("doc,disease,class\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse("doc_id,disease,class\nd1,Obesity\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse("doc_id,disease,class\nd1,Obesity,Maybe\n"); }), ErrorKind::InvalidClass);
  EXPECT_EQ(kind_of([] { parse("doc_id,disease,class\nd1,Obesity,\n"); }), ErrorKind::Parse);
  EXPECT_EQ(line_of("doc_id,disease,class\nd1,Obesity,Present\n\nd2,Obesity\n"), 4u);
}

TEST(Annotations, DuplicatePairReportsLine) {
  try {
    parse("doc_id,disease,class\nd1,Obesity,Present\nd1,Obesity,Absent\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateAnnotation);
    EXPECT_NE(std::string(e.what()).find("test.csv:3"), std::string::npos) << e.what();
  }
}

TEST(Annotations, WriteParseRoundTrip) {
  std::mt19937 rng(3);
  const char* diseases[] = {"A", "B b", "C,\"x\""};
  for (int trial = 0; trial < 20; ++trial) {
    AnnotationTable t;
    for (int d = 0; d < 30; ++d)
      for (const char* dis : diseases)
        if (rng() % 3) t.add({"doc" + std::to_string(rng() % 1000 * 100 + d), dis, Occurrence(rng() % 4)});
    std::ostringstream out;
    write_annotations(out, t);
    auto back = parse(out.str());
    ASSERT_EQ(back.size(), t.size());
    for (const auto& r : t.records()) EXPECT_EQ(back.find(r.doc_id, r.disease), r.occurrence);
    std::ostringstream again;
    write_annotations(again, back);
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST(SubsetExpression, Structure) {
  auto e = SubsetExpression::minus(SubsetExpression::both(SubsetExpression::leaf("A"), SubsetExpression::leaf("B")),
                                   SubsetExpression::leaf("C"));
  EXPECT_EQ(e.kind(), SubsetExpression::Kind::Diff);
  EXPECT_EQ(e.to_string(), "Diff(And(Leaf(A), Leaf(B)), Leaf(C))");
  EXPECT_EQ(e.diseases(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(e.lhs().rhs().disease(), "B");
  EXPECT_FALSE(e == e.lhs());
}

TEST(SubsetAlgebra, PublishedSubsetSizes) {
  const auto table = fixtures::table2_annotations();
  const auto exprs = fixtures::table2_expressions();
  ASSERT_EQ(exprs.size(), published::kTable2.size());
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    auto s = evaluate_subset(table, exprs[i].second, std::to_string(i + 1), exprs[i].first);
    EXPECT_EQ(s.doc_ids.size(), static_cast<std::size_t>(published::kTable2[i])) << exprs[i].first;
    sizes.push_back(s.doc_ids.size());
  }
  // Each leaf splits into its intersection and difference with another label.
  EXPECT_EQ(sizes[0], sizes[3] + sizes[5]);   // H = H&D + H-D
  EXPECT_EQ(sizes[1], sizes[3] + sizes[4]);   // D = H&D + D-H
  EXPECT_EQ(sizes[1], sizes[6] + sizes[7]);   // D = O&D + D-O
  EXPECT_EQ(sizes[2], sizes[6] + sizes[8]);   // O = O&D + O-D
  EXPECT_EQ(sizes[2], sizes[9] + sizes[11]);  // O = O&H + O-H
  EXPECT_EQ(sizes[0], sizes[9] + sizes[10]);  // H = O&H + H-O
}

TEST(SubsetAlgebra, OnlyPresentCounts) {
  auto t = parse(
      "doc_id,disease,class\nd1,A,Present\nd2,A,Questionable\nd3,A,Absent\nd4,A,Unknown\nd1,B,Absent\nd2,B,Present\n");
  auto a = evaluate_subset(t, SubsetExpression::leaf("A"));
  EXPECT_EQ(a.doc_ids, std::vector<std::string>{"d1"});
  EXPECT_EQ(a.name, "Leaf(A)");
  // d3 has no B record: it is simply not Present for B.
  auto a_not_b = evaluate_subset(t, SubsetExpression::minus(SubsetExpression::leaf("A"), SubsetExpression::leaf("B")));
  EXPECT_EQ(a_not_b.doc_ids, std::vector<std::string>{"d1"});
}

TEST(SubsetAlgebra, UnknownDisease) {
  auto t = parse("doc_id,disease,class\nd1,A,Present\n");
  EXPECT_EQ(kind_of([&] { evaluate_subset(t, SubsetExpression::leaf("Z")); }), ErrorKind::UnknownDisease);
  EXPECT_EQ(kind_of([&] {
              evaluate_subset(t, SubsetExpression::both(SubsetExpression::leaf("A"), SubsetExpression::leaf("Z")));
            }),
            ErrorKind::UnknownDisease);
}

// Random tables checked against a direct per-document recount.
TEST(SubsetAlgebra, MatchesBruteForceRecount) {
  std::mt19937 rng(11);
  const std::vector<std::string> labels = {"A", "B", "C"};
  for (int trial = 0; trial < 50; ++trial) {
    AnnotationTable t;
    std::map<std::string, std::set<std::string>> present;
    const int docs = 1 + static_cast<int>(rng() % 60);
    for (int d = 0; d < docs; ++d) {
      const std::string id = "x" + std::to_string(d);
      for (const auto& l : labels) {
        if (rng() % 5 == 0) continue;
        auto occ = Occurrence(rng() % 4);
        t.add({id, l, occ});
        if (occ == Occurrence::Present) present[l].insert(id);
      }
    }
    for (const auto& l : labels)
      if (!t.has_disease(l)) t.add({"pad", l, Occurrence::Absent});
    for (const auto& p : labels) {
      for (const auto& q : labels) {
        if (p == q) continue;
        auto both = evaluate_subset(t, SubsetExpression::both(SubsetExpression::leaf(p), SubsetExpression::leaf(q)));
        auto minus = evaluate_subset(t, SubsetExpression::minus(SubsetExpression::leaf(p), SubsetExpression::leaf(q)));
        std::vector<std::string> want_both, want_minus;
        for (const auto& id : present[p]) (present[q].contains(id) ? want_both : want_minus).push_back(id);
        EXPECT_EQ(both.doc_ids, want_both);
        EXPECT_EQ(minus.doc_ids, want_minus);
        EXPECT_TRUE(std::is_sorted(both.doc_ids.begin(), both.doc_ids.end()));
        EXPECT_EQ(both.doc_ids.size() + minus.doc_ids.size(), present[p].size());
        // A AND B is symmetric; evaluation is pure.
        auto swapped = evaluate_subset(t, SubsetExpression::both(SubsetExpression::leaf(q), SubsetExpression::leaf(p)));
        EXPECT_EQ(swapped.doc_ids, both.doc_ids);
        EXPECT_EQ(evaluate_subset(t, SubsetExpression::leaf(p)).doc_ids,
                  evaluate_subset(t, SubsetExpression::leaf(p)).doc_ids);
      }
    }
  }
}

TEST(SubsetTokens, ConcatenatesInDocumentOrder) {
  Subset s{"1", "x", {"b", "a"}, {}};
  std::map<std::string, std::vector<std::string>> tokens = {{"a", {"one", "two"}}, {"b", {"three"}}, {"c", {"x"}}};
  EXPECT_EQ(subset_token_stream(s, tokens), (std::vector<std::string>{"one", "two", "three"}));
  s.doc_ids.push_back("zz");
  EXPECT_EQ(kind_of([&] { subset_token_stream(s, tokens); }), ErrorKind::MissingDocument);
}

TEST(Documents, LoadsTxtFilesSortedAndWarnsOnEmpty) {
  fixtures::TempDir dir("docs");
  dir.write("b.txt", "second");
  dir.write("a.txt", "first");
  dir.write("e.txt", "");
  dir.write("notes.md", "ignored");
  std::vector<std::string> warnings;
  auto docs = load_documents(dir.path(), [&](const std::string& w) { warnings.push_back(w); });
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].id, "a");
  EXPECT_EQ(docs[0].raw_text, "first");
  EXPECT_EQ(docs[2].id, "e");
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_EQ(kind_of([&] { load_documents(dir / "missing"); }), ErrorKind::Io);
}
