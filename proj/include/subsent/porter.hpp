#pragma once

#include <string>
#include <string_view>

namespace subsent::preprocess {

/// Porter (1980) suffix-stripping stemmer, following the reference C
/// implementation: steps 1a-5b with measure conditions, including its two
/// documented departures in step 2 ("bli" -> "ble", "logi" -> "log").
/// Expects a lowercase word; words of length <= 2 are returned unchanged.
class PorterStemmer {
 public:
  std::string operator()(std::string_view word) const {
    State s{std::string(word), 0, 0};
    if (s.b.size() <= 2) return s.b;
    s.k = static_cast<int>(s.b.size()) - 1;
    step1ab(s);
    if (s.k > 0) {
      step1c(s);
      step2(s);
      step3(s);
      step4(s);
      step5(s);
    }
    s.b.resize(static_cast<std::size_t>(s.k) + 1);
    return s.b;
  }

 private:
  struct State {
    std::string b;
    int k;  // end of current word
    int j;  // end of stem under test
  };

  static bool cons(const State& s, int i) {
    switch (s.b[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(s, i - 1);
      default: return true;
    }
  }

  // m() counts VC sequences in b[0..j]: [C](VC)^m[V].
  static int measure(const State& s) {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > s.j) return n;
      if (!cons(s, i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > s.j) return n;
        if (cons(s, i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > s.j) return n;
        if (!cons(s, i)) break;
        ++i;
      }
      ++i;
    }
  }

  static bool vowel_in_stem(const State& s) {
    for (int i = 0; i <= s.j; ++i)
      if (!cons(s, i)) return true;
    return false;
  }

  static bool double_consonant(const State& s, int j) {
    if (j < 1) return false;
    if (s.b[j] != s.b[j - 1]) return false;
    return cons(s, j);
  }

  // cvc(i): b[i-2..i] is consonant-vowel-consonant and the last is not w, x or y.
  static bool cvc(const State& s, int i) {
    if (i < 2 || !cons(s, i) || cons(s, i - 1) || !cons(s, i - 2)) return false;
    char ch = s.b[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  static bool ends(State& s, std::string_view suffix) {
    const int len = static_cast<int>(suffix.size());
    if (len > s.k + 1) return false;
    if (std::string_view(s.b).substr(static_cast<std::size_t>(s.k - len + 1), suffix.size()) != suffix)
      return false;
    s.j = s.k - len;
    return true;
  }

  static void set_to(State& s, std::string_view replacement) {
    s.b.replace(static_cast<std::size_t>(s.j + 1), static_cast<std::size_t>(s.k - s.j), replacement);
    s.k = s.j + static_cast<int>(replacement.size());
  }

  static void replace_if_measured(State& s, std::string_view replacement) {
    if (measure(s) > 0) set_to(s, replacement);
  }

  static void step1ab(State& s) {
    if (s.b[s.k] == 's') {
      if (ends(s, "sses")) {
        s.k -= 2;
      } else if (ends(s, "ies")) {
        set_to(s, "i");
      } else if (s.b[s.k - 1] != 's') {
        --s.k;
      }
    }
    if (ends(s, "eed")) {
      if (measure(s) > 0) --s.k;
    } else if ((ends(s, "ed") || ends(s, "ing")) && vowel_in_stem(s)) {
      s.k = s.j;
      if (ends(s, "at")) {
        set_to(s, "ate");
      } else if (ends(s, "bl")) {
        set_to(s, "ble");
      } else if (ends(s, "iz")) {
        set_to(s, "ize");
      } else if (double_consonant(s, s.k)) {
        --s.k;
        char ch = s.b[s.k];
        if (ch == 'l' || ch == 's' || ch == 'z') ++s.k;
      } else if (measure_to(s, s.k) == 1 && cvc(s, s.k)) {
        s.j = s.k;
        set_to(s, "e");
      }
    }
  }

  // measure of b[0..end], used where the reference sets j = k first.
  static int measure_to(State& s, int end) {
    s.j = end;
    return measure(s);
  }

  static void step1c(State& s) {
    if (ends(s, "y") && vowel_in_stem(s)) s.b[s.k] = 'i';
  }

  static void step2(State& s) {
    if (s.k < 1) return;
    switch (s.b[s.k - 1]) {
      case 'a':
        if (ends(s, "ational")) { replace_if_measured(s, "ate"); break; }
        if (ends(s, "tional")) { replace_if_measured(s, "tion"); break; }
        break;
      case 'c':
        if (ends(s, "enci")) { replace_if_measured(s, "ence"); break; }
        if (ends(s, "anci")) { replace_if_measured(s, "ance"); break; }
        break;
      case 'e':
        if (ends(s, "izer")) { replace_if_measured(s, "ize"); break; }
        break;
      case 'l':
        if (ends(s, "bli")) { replace_if_measured(s, "ble"); break; }
        if (ends(s, "alli")) { replace_if_measured(s, "al"); break; }
        if (ends(s, "entli")) { replace_if_measured(s, "ent"); break; }
        if (ends(s, "eli")) { replace_if_measured(s, "e"); break; }
        if (ends(s, "ousli")) { replace_if_measured(s, "ous"); break; }
        break;
      case 'o':
        if (ends(s, "ization")) { replace_if_measured(s, "ize"); break; }
        if (ends(s, "ation")) { replace_if_measured(s, "ate"); break; }
        if (ends(s, "ator")) { replace_if_measured(s, "ate"); break; }
        break;
      case 's':
        if (ends(s, "alism")) { replace_if_measured(s, "al"); break; }
        if (ends(s, "iveness")) { replace_if_measured(s, "ive"); break; }
        if (ends(s, "fulness")) { replace_if_measured(s, "ful"); break; }
        if (ends(s, "ousness")) { replace_if_measured(s, "ous"); break; }
        break;
      case 't':
        if (ends(s, "aliti")) { replace_if_measured(s, "al"); break; }
        if (ends(s, "iviti")) { replace_if_measured(s, "ive"); break; }
        if (ends(s, "biliti")) { replace_if_measured(s, "ble"); break; }
        break;
      case 'g':
        if (ends(s, "logi")) { replace_if_measured(s, "log"); break; }
        break;
      default:
        break;
    }
  }

  static void step3(State& s) {
    switch (s.b[s.k]) {
      case 'e':
        if (ends(s, "icate")) { replace_if_measured(s, "ic"); break; }
        if (ends(s, "ative")) { replace_if_measured(s, ""); break; }
        if (ends(s, "alize")) { replace_if_measured(s, "al"); break; }
        break;
      case 'i':
        if (ends(s, "iciti")) { replace_if_measured(s, "ic"); break; }
        break;
      case 'l':
        if (ends(s, "ical")) { replace_if_measured(s, "ic"); break; }
        if (ends(s, "ful")) { replace_if_measured(s, ""); break; }
        break;
      case 's':
        if (ends(s, "ness")) { replace_if_measured(s, ""); break; }
        break;
      default:
        break;
    }
  }

  static void step4(State& s) {
    if (s.k < 1) return;
    bool hit = false;
    switch (s.b[s.k - 1]) {
      case 'a': hit = ends(s, "al"); break;
      case 'c': hit = ends(s, "ance") || ends(s, "ence"); break;
      case 'e': hit = ends(s, "er"); break;
      case 'i': hit = ends(s, "ic"); break;
      case 'l': hit = ends(s, "able") || ends(s, "ible"); break;
      case 'n': hit = ends(s, "ant") || ends(s, "ement") || ends(s, "ment") || ends(s, "ent"); break;
      case 'o':
        if (ends(s, "ion") && s.j >= 0 && (s.b[s.j] == 's' || s.b[s.j] == 't')) {
          hit = true;
        } else {
          hit = ends(s, "ou");
        }
        break;
      case 's': hit = ends(s, "ism"); break;
      case 't': hit = ends(s, "ate") || ends(s, "iti"); break;
      case 'u': hit = ends(s, "ous"); break;
      case 'v': hit = ends(s, "ive"); break;
      case 'z': hit = ends(s, "ize"); break;
      default: break;
    }
    if (hit && measure(s) > 1) s.k = s.j;
  }

  static void step5(State& s) {
    s.j = s.k;
    if (s.b[s.k] == 'e') {
      int m = measure(s);
      if (m > 1 || (m == 1 && !cvc(s, s.k - 1))) --s.k;
    }
    // j still marks the pre-step end here, as in the reference.
    if (s.b[s.k] == 'l' && double_consonant(s, s.k) && measure(s) > 1) --s.k;
  }
};

inline std::string porter_stem(std::string_view word) { return PorterStemmer{}(word); }

}  // namespace subsent::preprocess
