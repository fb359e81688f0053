#pragma once

#include <numeric>
#include <vector>

namespace cofact {

// Union-find with path compression. Block representatives are canonicalised
// to the least member so downstream labellings are deterministic.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // keep the least id as root
  }

  int size() const { return static_cast<int>(parent_.size()); }

  // Blocks in increasing order of their least member; also fills block_of.
  std::vector<std::vector<int>> blocks(std::vector<int>* block_of = nullptr) {
    const int n = size();
    std::vector<int> index(n, -1);
    std::vector<std::vector<int>> out;
    if (block_of) block_of->assign(n, -1);
    for (int x = 0; x < n; ++x) {
      const int r = find(x);
      if (index[r] < 0) {
        index[r] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[index[r]].push_back(x);
      if (block_of) (*block_of)[x] = index[r];
    }
    return out;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace cofact
