#include "locfree/config_chain.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace locfree {

namespace {

const char* offset_str(int offset) {
  switch (offset) {
    case -1: return "-1";
    case 0: return "0";
    case 1: return "+1";
  }
  throw std::logic_error("bad offset");
}

}  // namespace

ConfigChain ConfigChain::path(const std::vector<int>& offsets) {
  ConfigChain c;
  int parent = 0;
  for (int off : offsets) parent = c.add_child(parent, off);
  return c;
}

ConfigChain ConfigChain::k_chain(int k) {
  if (k < 1) throw std::invalid_argument("k-chain needs k >= 1");
  return path(std::vector<int>(static_cast<std::size_t>(k - 1), 1));
}

int ConfigChain::add_child(int parent, int offset) {
  if (parent < 0 || parent >= size())
    throw std::invalid_argument("chain parent out of range");
  if (offset < -1 || offset > 1)
    throw std::invalid_argument("chain offsets must be -1, 0 or +1");
  if (parent == 0 && offset == 0)
    throw std::invalid_argument("a piece cannot sit directly on the blocked piece's column");
  nodes_.push_back({parent, offset});
  return size() - 1;
}

namespace {

// Recursive canonical serialization; children ordered by (offset, subtree).
std::string canon(const std::vector<ConfigChain::Node>& nodes,
                  const std::vector<std::vector<int>>& children, int node) {
  std::vector<std::string> parts;
  for (int ch : children[static_cast<std::size_t>(node)]) {
    std::string s = offset_str(nodes[static_cast<std::size_t>(ch)].offset);
    std::string sub = canon(nodes, children, ch);
    if (!sub.empty()) s += "{" + sub + "}";
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end(), [&](const std::string& a, const std::string& b) {
    auto rank = [](const std::string& s) { return s[0] == '-' ? 0 : (s[0] == '0' ? 1 : 2); };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    return a < b;
  });
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string ConfigChain::canonical_key() const {
  std::vector<std::vector<int>> children(nodes_.size());
  for (int i = 1; i < size(); ++i)
    children[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(i)].parent)].push_back(i);
  return canon(nodes_, children, 0);
}

std::string ConfigChain::to_string() const { return "{" + canonical_key() + "}"; }

std::string ConfigChain::name() const {
  if (empty()) return "empty";
  bool plus_path = true;
  for (int i = 1; i < size(); ++i) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.parent != i - 1 || n.offset != 1) {
      plus_path = false;
      break;
    }
  }
  if (plus_path) return std::to_string(size()) + "-chain";
  return to_string();
}

namespace {

int parse_offset(const std::string& text, std::size_t* pos) {
  if (*pos >= text.size()) throw std::invalid_argument("chain: expected offset");
  if (text[*pos] == '0') {
    ++*pos;
    return 0;
  }
  const bool neg = text[*pos] == '-';
  if ((text[*pos] != '+' && text[*pos] != '-') || *pos + 1 >= text.size() || text[*pos + 1] != '1')
    throw std::invalid_argument("chain: offsets are -1, 0 or +1");
  *pos += 2;
  return neg ? -1 : 1;
}

void parse_children(const std::string& text, std::size_t* pos, ConfigChain* chain, int parent) {
  while (true) {
    int off = parse_offset(text, pos);
    int node = chain->add_child(parent, off);
    if (*pos < text.size() && text[*pos] == '{') {
      ++*pos;
      parse_children(text, pos, chain, node);
      if (*pos >= text.size() || text[*pos] != '}')
        throw std::invalid_argument("chain: unbalanced braces");
      ++*pos;
    }
    if (*pos < text.size() && text[*pos] == ',') {
      ++*pos;
      continue;
    }
    return;
  }
}

}  // namespace

ConfigChain ConfigChain::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "empty" || s == "{}") return ConfigChain();

  if (s.size() > 6 && s.substr(s.size() - 6) == "-chain") {
    const std::string digits = s.substr(0, s.size() - 6);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      return k_chain(std::stoi(digits));
  }

  if (s.front() == '{') {
    if (s.back() != '}') throw std::invalid_argument("chain: unbalanced braces");
    ConfigChain chain;
    std::size_t pos = 1;
    parse_children(s, &pos, &chain, 0);
    if (pos != s.size() - 1) throw std::invalid_argument("chain: trailing input");
    return chain;
  }

  // Comma list of offsets, interpreted as a path.
  std::vector<int> offsets;
  std::size_t pos = 0;
  while (pos < s.size()) {
    offsets.push_back(parse_offset(s, &pos));
    if (pos < s.size()) {
      if (s[pos] != ',') throw std::invalid_argument("chain: expected ','");
      ++pos;
    }
  }
  return path(offsets);
}

}  // namespace locfree
