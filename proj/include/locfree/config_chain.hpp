#pragma once

#include <string>
#include <vector>

namespace locfree {

// A blocking configuration: a rooted tree of column offsets. Node 0 is the
// blocked piece (column 0 of the heap); every other node sits one level above
// its parent at a column offset of -1, 0 or +1. A plain chain of k boxes is
// the path with k-1 offsets; branched configurations carry real trees.
//
// Two chains compare equal when their trees are isomorphic with matching
// offsets; relative heights between branches are not part of the
// configuration.
class ConfigChain {
 public:
  struct Node {
    int parent;  // -1 for the root
    int offset;  // column offset from the parent; 0 for the root
  };

  ConfigChain() : nodes_{{-1, 0}} {}

  // Path with the given offsets, first offset attached to the root.
  static ConfigChain path(const std::vector<int>& offsets);

  // The straight "k-chain": k pieces total, offsets all +1.
  static ConfigChain k_chain(int k);

  // Accepts "empty", "k-chain" (k >= 1), a comma list of offsets
  // ("+1,0,-1"), or the brace form produced by to_string().
  static ConfigChain parse(const std::string& text);

  // Returns the index of the new node.
  int add_child(int parent, int offset);

  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.size() == 1; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Canonical brace form, e.g. "{}", "{+1{+1}}", "{-1,+1{0}}".
  std::string to_string() const;

  // "empty", "2-chain", ... for +1 paths, otherwise the brace form.
  std::string name() const;

  friend bool operator==(const ConfigChain& a, const ConfigChain& b) {
    return a.canonical_key() == b.canonical_key();
  }
  friend bool operator!=(const ConfigChain& a, const ConfigChain& b) {
    return !(a == b);
  }

 private:
  std::vector<Node> nodes_;

  std::string canonical_key() const;
};

}  // namespace locfree
