#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpsum/widereal.hpp"

namespace fpsum {

// A summation ordering as a binary computational tree. Leaves are the inputs
// x_1..x_n; internal nodes are the additions, indexed k = 2..n in execution
// order, so an index doubles as a timestamp: both children of node k were
// available strictly before k runs, and node n is the root. The exact partial
// sum s_k of node k is the sum of the leaves below it.
//
// Sequential summation is the left-spine tree (node k adds x_k to node k-1),
// pairwise summation pairs adjacent elements level by level (an odd leftover
// is promoted unchanged), and random trees merge two uniformly chosen
// elements of the working multiset until one remains.

struct NodeRef {
    enum Kind { Leaf, Internal } kind = Leaf;
    int index = 0;  // leaf: 1..n, internal: 2..n

    bool operator==(const NodeRef&) const = default;
};

class SumTree {
  public:
    struct Node {
        NodeRef left, right;
    };

    // nodes[k-2] describes internal node k; children must predate k.
    SumTree(int leaf_count, std::vector<Node> nodes);

    static SumTree sequential(int n);
    static SumTree pairwise(int n);
    static SumTree random(int n, std::uint64_t seed);

    int leaf_count() const { return n_; }
    int internal_count() const { return n_ > 1 ? n_ - 1 : 0; }
    const Node& node(int k) const { return nodes_[static_cast<std::size_t>(k) - 2]; }

    int height() const { return height_; }
    int node_height(int k) const { return node_height_[static_cast<std::size_t>(k) - 2]; }

    // 0 for the root, otherwise the unique internal node consuming k's result
    int parent(int k) const { return parent_[static_cast<std::size_t>(k) - 2]; }
    // strict partial order: true iff node j's result feeds (transitively) into node k
    bool is_descendant(int j, int k) const;
    // the chain from parent(k) up to the root, in increasing execution order
    std::vector<int> ancestors(int k) const;

    // s_k for k = 2..n, stored at index k (entries 0 and 1 are zero filler;
    // for n = 1 the vector holds the lone input at index 1).
    std::vector<WideReal> exact_partial_sums(std::span<const WideReal> x) const;

    std::string to_json() const;
    static SumTree from_json(const std::string& text);

    bool operator==(const SumTree& o) const { return n_ == o.n_ && same_nodes(o); }

  private:
    bool same_nodes(const SumTree& o) const;

    int n_;
    std::vector<Node> nodes_;        // [k-2] for k in 2..n
    std::vector<int> parent_;        // [k-2], 0 at root
    std::vector<int> node_height_;   // [k-2]
    int height_ = 0;
};

}  // namespace fpsum
