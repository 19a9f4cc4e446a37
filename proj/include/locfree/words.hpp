#pragma once

#include <string>
#include <vector>

#include "locfree/heap.hpp"

namespace locfree {

// One instance of a generator g_k or its inverse.
struct Token {
  int index;      // in [0, m)
  bool inverted;  // true for g_k^-1

  friend bool operator==(const Token&, const Token&) = default;
};

struct Word {
  int m;
  std::vector<Token> tokens;

  friend bool operator==(const Word&, const Word&) = default;
};

// Grammar: whitespace-separated tokens, token = "g" digits optionally
// suffixed "^-1". The empty string is the identity. Throws
// std::invalid_argument on malformed tokens or indices >= m.
Word parse_word(const std::string& text, int m);

std::string format_word(const Word& word);

// Sequential drops, left to right: g_k drops (+, k), g_k^-1 drops (-, k).
Heap word_to_heap(const Word& word);

// The unique normal form: roof levels emitted deepest level first, each
// level's letters in ascending generator index.
Word heap_to_word(const Heap& heap);

Word normalize(const Word& word);

// Throws std::invalid_argument when the words disagree on m.
bool words_equal(const Word& a, const Word& b);

}  // namespace locfree
