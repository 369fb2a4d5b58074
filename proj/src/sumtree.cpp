#include "fpsum/sumtree.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

#include "fpsum/rng.hpp"

namespace fpsum {

SumTree::SumTree(int leaf_count, std::vector<Node> nodes) : n_(leaf_count), nodes_(std::move(nodes)) {
    if (n_ < 1) throw std::invalid_argument("a summation tree needs at least one leaf");
    if (nodes_.size() != static_cast<std::size_t>(n_ > 1 ? n_ - 1 : 0))
        throw std::invalid_argument("a tree over n leaves has exactly n-1 additions");

    std::vector<int> leaf_uses(static_cast<std::size_t>(n_) + 1, 0);
    parent_.assign(nodes_.size(), 0);
    std::vector<int> internal_uses(nodes_.size(), 0);
    node_height_.assign(nodes_.size(), 0);

    for (int k = 2; k <= n_; ++k) {
        int hk = 0;
        for (const NodeRef& c : {node(k).left, node(k).right}) {
            if (c.kind == NodeRef::Leaf) {
                if (c.index < 1 || c.index > n_) throw std::invalid_argument("leaf index out of range");
                ++leaf_uses[static_cast<std::size_t>(c.index)];
            } else {
                if (c.index < 2 || c.index >= k)
                    throw std::invalid_argument("node " + std::to_string(k) +
                                                " consumes a result not yet computed");
                ++internal_uses[static_cast<std::size_t>(c.index) - 2];
                parent_[static_cast<std::size_t>(c.index) - 2] = k;
                hk = std::max(hk, node_height(c.index));
            }
        }
        node_height_[static_cast<std::size_t>(k) - 2] = hk + 1;
    }
    for (int i = 1; i <= n_; ++i)
        if (n_ > 1 && leaf_uses[static_cast<std::size_t>(i)] != 1)
            throw std::invalid_argument("leaf " + std::to_string(i) + " must be consumed exactly once");
    for (int k = 2; k < n_; ++k)
        if (internal_uses[static_cast<std::size_t>(k) - 2] != 1)
            throw std::invalid_argument("node " + std::to_string(k) + " must be consumed exactly once");
    if (n_ > 1 && internal_uses.back() != 0)
        throw std::invalid_argument("the last node is the root and feeds nothing");
    height_ = n_ > 1 ? node_height(n_) : 0;
}

SumTree SumTree::sequential(int n) {
    std::vector<Node> nodes;
    nodes.reserve(n > 1 ? static_cast<std::size_t>(n) - 1 : 0);
    for (int k = 2; k <= n; ++k) {
        NodeRef left = k == 2 ? NodeRef{NodeRef::Leaf, 1} : NodeRef{NodeRef::Internal, k - 1};
        nodes.push_back({left, {NodeRef::Leaf, k}});
    }
    return SumTree(n, std::move(nodes));
}

SumTree SumTree::pairwise(int n) {
    std::vector<Node> nodes;
    std::vector<NodeRef> level;
    level.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) level.push_back({NodeRef::Leaf, i});
    int next_id = 2;
    while (level.size() > 1) {
        std::vector<NodeRef> up;
        std::size_t i = 0;
        for (; i + 1 < level.size(); i += 2) {
            nodes.push_back({level[i], level[i + 1]});
            up.push_back({NodeRef::Internal, next_id++});
        }
        if (i < level.size()) up.push_back(level[i]);  // odd one rides up unchanged
        level.swap(up);
    }
    return SumTree(n, std::move(nodes));
}

SumTree SumTree::random(int n, std::uint64_t seed) {
    RngStream rng(seed, /*stream=*/0x7265657274ULL);
    std::vector<Node> nodes;
    std::vector<NodeRef> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) pool.push_back({NodeRef::Leaf, i});
    int next_id = 2;
    while (pool.size() > 1) {
        auto pick = [&](std::size_t m) { return static_cast<std::size_t>(rng.next() % m); };
        std::size_t a = pick(pool.size());
        NodeRef ra = pool[a];
        pool[a] = pool.back();
        pool.pop_back();
        std::size_t b = pick(pool.size());
        NodeRef rb = pool[b];
        pool[b] = pool.back();
        pool.pop_back();
        nodes.push_back({ra, rb});
        pool.push_back({NodeRef::Internal, next_id++});
    }
    return SumTree(n, std::move(nodes));
}

bool SumTree::is_descendant(int j, int k) const {
    // parents have larger indices, so the walk is short and monotone
    for (int p = parent(j); p != 0; p = parent(p)) {
        if (p == k) return true;
        if (p > k) return false;
    }
    return false;
}

std::vector<int> SumTree::ancestors(int k) const {
    std::vector<int> chain;
    for (int p = parent(k); p != 0; p = parent(p)) chain.push_back(p);
    return chain;
}

std::vector<WideReal> SumTree::exact_partial_sums(std::span<const WideReal> x) const {
    if (x.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("input length does not match the tree's leaf count");
    std::vector<WideReal> s(static_cast<std::size_t>(n_) + 1);
    if (n_ == 1) {
        s[1] = x[0];
        return s;
    }
    auto value = [&](const NodeRef& c) -> const WideReal& {
        return c.kind == NodeRef::Leaf ? x[static_cast<std::size_t>(c.index) - 1]
                                       : s[static_cast<std::size_t>(c.index)];
    };
    for (int k = 2; k <= n_; ++k)
        s[static_cast<std::size_t>(k)] = value(node(k).left) + value(node(k).right);
    return s;
}

bool SumTree::same_nodes(const SumTree& o) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!(nodes_[i].left == o.nodes_[i].left) || !(nodes_[i].right == o.nodes_[i].right))
            return false;
    return true;
}

namespace {

std::string ref_str(const NodeRef& r) {
    return (r.kind == NodeRef::Leaf ? "x" : "s") + std::to_string(r.index);
}

NodeRef ref_parse(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'x' && s[0] != 's'))
        throw std::invalid_argument("bad node reference '" + s + "' (want x<i> or s<j>)");
    NodeRef r;
    r.kind = s[0] == 'x' ? NodeRef::Leaf : NodeRef::Internal;
    r.index = std::stoi(s.substr(1));
    return r;
}

}  // namespace

std::string SumTree::to_json() const {
    nlohmann::json j;
    j["leaves"] = n_;
    auto& arr = j["nodes"] = nlohmann::json::array();
    for (int k = 2; k <= n_; ++k)
        arr.push_back({{"id", k}, {"left", ref_str(node(k).left)}, {"right", ref_str(node(k).right)}});
    return j.dump();
}

SumTree SumTree::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("leaves").get<int>();
    std::vector<Node> nodes(j.at("nodes").size());
    for (const auto& item : j.at("nodes")) {
        int id = item.at("id").get<int>();
        if (id < 2 || static_cast<std::size_t>(id - 2) >= nodes.size())
            throw std::invalid_argument("node id out of range in tree JSON");
        nodes[static_cast<std::size_t>(id) - 2] = {ref_parse(item.at("left").get<std::string>()),
                                                   ref_parse(item.at("right").get<std::string>())};
    }
    return SumTree(n, std::move(nodes));
}

}  // namespace fpsum
