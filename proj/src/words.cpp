#include "locfree/words.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace locfree {

Word parse_word(const std::string& text, int m) {
  if (m < 4) throw std::invalid_argument("words need at least 4 generators");
  Word word{m, {}};
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    bool inverted = false;
    if (tok.size() >= 3 && tok.substr(tok.size() - 3) == "^-1") {
      inverted = true;
      tok.resize(tok.size() - 3);
    }
    if (tok.size() < 2 || tok[0] != 'g')
      throw std::invalid_argument("malformed token '" + tok + "'");
    int index = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw std::invalid_argument("malformed token '" + tok + "'");
      index = index * 10 + (tok[i] - '0');
      if (index >= m) throw std::invalid_argument("generator index out of range in '" + tok + "'");
    }
    word.tokens.push_back({index, inverted});
  }
  return word;
}

std::string format_word(const Word& word) {
  std::string out;
  for (const Token& t : word.tokens) {
    if (!out.empty()) out += ' ';
    out += 'g';
    out += std::to_string(t.index);
    if (t.inverted) out += "^-1";
  }
  return out;
}

Heap word_to_heap(const Word& word) {
  Heap h(word.m);
  for (const Token& t : word.tokens)
    h.drop(t.index, t.inverted ? Sign::minus : Sign::plus);
  return h;
}

Word heap_to_word(const Heap& heap) {
  const RoofLevels levels = heap.level_decomposition();
  Word word{heap.columns(), {}};
  for (auto it = levels.levels.rbegin(); it != levels.levels.rend(); ++it)
    for (const auto& [column, sign] : *it)
      word.tokens.push_back({column, sign == Sign::minus});
  return word;
}

Word normalize(const Word& word) { return heap_to_word(word_to_heap(word)); }

bool words_equal(const Word& a, const Word& b) {
  if (a.m != b.m) throw std::invalid_argument("words over different generator counts");
  return normalize(a).tokens == normalize(b).tokens;
}

}  // namespace locfree
