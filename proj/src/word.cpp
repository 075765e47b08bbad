#include "tracewick/word.hpp"

#include <algorithm>
#include <cctype>

namespace tracewick {

char ensemble_symbol(Ensemble e) {
  switch (e) {
    case Ensemble::GinibreComplex: return 'G';
    case Ensemble::GinibreReal: return 'R';
    case Ensemble::GUE: return 'H';
    case Ensemble::GOE: return 'S';
  }
  return '?';
}

const char* ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::GinibreComplex: return "GinibreComplex";
    case Ensemble::GinibreReal: return "GinibreReal";
    case Ensemble::GUE: return "GUE";
    case Ensemble::GOE: return "GOE";
  }
  return "?";
}

Letter normalized(Letter l) {
  switch (l.ensemble) {
    case Ensemble::GinibreComplex:
      break;
    case Ensemble::GinibreReal:
      l.conjugated = false;
      break;
    case Ensemble::GUE:
      if (l.transposed) {
        l.transposed = false;
        l.conjugated = !l.conjugated;
      }
      break;
    case Ensemble::GOE:
      l.transposed = false;
      l.conjugated = false;
      break;
  }
  return l;
}

SyntaxError::SyntaxError(std::size_t pos, std::string expected_token)
    : std::runtime_error("syntax error at position " + std::to_string(pos) +
                         ": expected " + expected_token),
      position(pos),
      expected(std::move(expected_token)) {}

EmptyWordError::EmptyWordError()
    : std::runtime_error("word expands to zero letters") {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Word parse() {
    Word w = parse_word_body();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
    if (w.letters.empty()) throw EmptyWordError();
    return w;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  long parse_integer(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000) throw SyntaxError(start, "smaller integer");
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError(pos_, what);
    return value;
  }

  Word parse_word_body() {
    Word result;
    // word := term+, so at least one term must follow.
    parse_term(result);
    while (!at_end() && peek() != ')') parse_term(result);
    return result;
  }

  void parse_term(Word& out) {
    Word atom = parse_atom();
    long power = 1;
    if (peek() == '^') {
      ++pos_;
      power = parse_integer("integer exponent");
    }
    for (long i = 0; i < power; ++i)
      out.letters.insert(out.letters.end(), atom.letters.begin(),
                         atom.letters.end());
  }

  Word parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Word inner = parse_word_body();
      if (peek() != ')') throw SyntaxError(pos_, "')'");
      ++pos_;
      return inner;
    }
    return Word{{parse_letter()}};
  }

  Letter parse_letter() {
    char c = peek();
    Letter l;
    switch (c) {
      case 'G': l.ensemble = Ensemble::GinibreComplex; break;
      case 'R': l.ensemble = Ensemble::GinibreReal; break;
      case 'H': l.ensemble = Ensemble::GUE; break;
      case 'S': l.ensemble = Ensemble::GOE; break;
      default: throw SyntaxError(pos_, "letter (G, R, H or S)");
    }
    ++pos_;
    std::size_t index_pos = pos_;
    long index = parse_integer("matrix index");
    if (index < 1) throw SyntaxError(index_pos, "positive matrix index");
    l.index = static_cast<int>(index);
    // Modifiers bind without whitespace; "G1 t" is a syntax error at 't',
    // not a transposed G1.
    for (;;) {
      char m = pos_ < text_.size() ? text_[pos_] : '\0';
      if (m == '*') {
        l.transposed = !l.transposed;
        l.conjugated = !l.conjugated;
      } else if (m == 't') {
        l.transposed = !l.transposed;
      } else if (m == '~') {
        l.conjugated = !l.conjugated;
      } else {
        break;
      }
      ++pos_;
    }
    return normalized(l);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return Parser(text).parse(); }

std::string render(const Letter& l) {
  std::string s;
  s += ensemble_symbol(l.ensemble);
  s += std::to_string(l.index);
  if (l.transposed && l.conjugated)
    s += '*';
  else if (l.transposed)
    s += 't';
  else if (l.conjugated)
    s += '~';
  return s;
}

std::string render(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += ' ';
    s += render(w.letters[i]);
  }
  return s;
}

Word star(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Letter l = *it;
    l.transposed = !l.transposed;
    l.conjugated = !l.conjugated;
    out.letters.push_back(normalized(l));
  }
  return out;
}

int coperiod(const Word& w) {
  const int n = static_cast<int>(w.letters.size());
  for (int k = n; k >= 2; --k) {
    if (n % k != 0) continue;
    const int period = n / k;
    bool ok = true;
    for (int i = period; i < n && ok; ++i)
      ok = w.letters[i] == w.letters[i - period];
    if (ok) return k;
  }
  return 1;
}

Word cyclic_canonical(const Word& w) {
  const std::size_t n = w.letters.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    // Compare rotation r against rotation best lexicographically.
    for (std::size_t i = 0; i < n; ++i) {
      const Letter& a = w.letters[(r + i) % n];
      const Letter& b = w.letters[(best + i) % n];
      if (a < b) {
        best = r;
        break;
      }
      if (b < a) break;
    }
  }
  Word out;
  out.letters.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.letters.push_back(w.letters[(best + i) % n]);
  return out;
}

bool trace_distinct(const Word& w1, const Word& w2) {
  return !(cyclic_canonical(w1) == cyclic_canonical(w2));
}

bool is_star_free(const Word& w) {
  return std::all_of(w.letters.begin(), w.letters.end(), [](const Letter& l) {
    return l.ensemble == Ensemble::GinibreComplex && !l.transposed &&
           !l.conjugated;
  });
}

bool is_balanced(const Word& w) {
  // Per (ensemble, index): complex Ginibre needs equal conjugated and
  // non-conjugated counts; the other ensembles need an even total.
  std::vector<std::pair<std::pair<Ensemble, int>, int>> tally;
  auto bump = [&](Ensemble e, int index, int delta) {
    for (auto& [key, count] : tally)
      if (key.first == e && key.second == index) {
        count += delta;
        return;
      }
    tally.push_back({{e, index}, delta});
  };
  for (const Letter& l : w.letters) {
    if (l.ensemble == Ensemble::GinibreComplex)
      bump(l.ensemble, l.index, l.conjugated ? -1 : 1);
    else
      bump(l.ensemble, l.index, 1);
  }
  for (const auto& [key, count] : tally) {
    if (key.first == Ensemble::GinibreComplex) {
      if (count != 0) return false;
    } else {
      if (count % 2 != 0) return false;
    }
  }
  return true;
}

bool is_star_stable(const Word& w) {
  return cyclic_canonical(w) == cyclic_canonical(star(w));
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

Word repeat(const Word& w, int k) {
  Word out;
  out.letters.reserve(w.letters.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

}  // namespace tracewick
