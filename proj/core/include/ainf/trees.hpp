#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ainf {

// Preorder code of a planar rooted tree: an internal node of arity k is -k,
// a leaf is its label (>= 0). Unlabeled shapes use label 0 everywhere. The
// one-leaf tree is the single code {label}.
using Code = std::vector<std::int32_t>;

std::size_t subtree_end(const Code& c, std::size_t pos);
std::vector<std::size_t> child_positions(const Code& c, std::size_t pos);
// Leaves in written order (leftmost first).
std::vector<std::int32_t> leaf_labels(const Code& c);
// Code of the tree obtained by splitting the node at pos: an outer node of
// arity a-m+1 whose input with d inputs to its right is a new m-ary node.
Code split_node(const Code& c, std::size_t pos, int m, int d);
Code graft_codes(const std::vector<Code>& children);

class PlanarTree {
public:
    PlanarTree() : code_{0} {}
    explicit PlanarTree(Code c);
    static PlanarTree leaf() { return PlanarTree(); }
    static PlanarTree corolla(int n);
    static PlanarTree parse(const std::string& text);

    const Code& code() const { return code_; }
    bool is_leaf() const { return code_.size() == 1; }
    int leaves() const;
    // The one-leaf tree counts its root as a (trivial) node.
    int nodes() const;
    int co_node_index() const { return leaves() - nodes(); }
    std::vector<PlanarTree> children() const;
    std::string to_string() const;

    bool operator==(const PlanarTree& o) const { return code_ == o.code_; }
    bool operator!=(const PlanarTree& o) const { return code_ != o.code_; }
    bool operator<(const PlanarTree& o) const { return code_ < o.code_; }

private:
    Code code_;
};

// All trees with n leaves, or with n - l nodes when l is given.
std::vector<PlanarTree> enumerate_trees(int n, std::optional<int> l = std::nullopt);
// Independent count: sum over root arities of products of subtree counts.
std::uint64_t count_trees(int n);

PlanarTree graft(const std::vector<PlanarTree>& trees);

struct Splitting {
    PlanarTree tree;
    int node = 0; // preorder position of the split node in the input
    int m = 0;
    int d = 0;
};
std::vector<Splitting> node_splittings(const PlanarTree& t);

} // namespace ainf
