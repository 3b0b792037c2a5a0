// Scores two notes against the bundled lexicon and tests whether their
// per-term overall sentiment differs.
//
//   compare_notes [a.txt b.txt]
#include <cstdlib>
#include <iostream>

#include "subsent/detail/text.hpp"
#include "subsent/lexicon.hpp"
#include "subsent/preprocess.hpp"
#include "subsent/welch.hpp"

using namespace subsent;

int main(int argc, char** argv) {
  const std::filesystem::path data = SUBSENT_DATA_DIR;
  std::filesystem::path a = data / "corpus" / "doc001.txt", b = data / "corpus" / "doc002.txt";
  if (argc == 3) a = argv[1], b = argv[2];

  try {
    preprocess::Preprocessor pre(preprocess::load_stoplist(data / "stopwords.txt"),
                                 preprocess::load_morphology(data / "morphology"));
    auto lex = lexicon::parse_sentiwordnet(data / "lexicon" / "sentiwordnet_mini.txt");

    std::vector<stats::ScoreSample> samples;
    for (const auto& path : {a, b}) {
      auto terms = pre.process(detail::read_file(path), preprocess::NormalizationMode::Lemmatize);
      auto s = lexicon::score_subset(terms, lex);
      std::cout << path.filename().string() << ": " << terms.size() << " terms, " << s.n_matched_terms
                << " matched, pos " << s.avg_pos << ", neg " << s.avg_neg << ", overall " << s.overall << '\n';
      samples.push_back(stats::make_sample(path.filename().string(), stats::Channel::Overall,
                                           lexicon::matched_scores(terms, lex)));
    }
    auto w = stats::welch_t_test(samples[0], samples[1]);
    std::cout << "welch: t " << w.t << ", df " << w.df << ", p " << w.p_two_sided << '\n';
  } catch (const Error& e) {
    std::cerr << "compare_notes: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
