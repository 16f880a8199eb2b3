#include "ainf/trees.hpp"

#include <doctest.h>

#include <functional>
#include <map>
#include <set>

using namespace ainf;

namespace {

// Oracle: trees as strings, built by choosing a root arity k >= 2 and a
// composition of n into k positive parts.
struct Shape {
    std::string text;
    int nodes;
};

std::vector<Shape> shapes(int n, std::map<int, std::vector<Shape>>& memo)
{
    if (auto it = memo.find(n); it != memo.end())
        return it->second;
    std::vector<Shape> out;
    if (n == 1)
        out.push_back({"*", 0});
    std::function<void(int, std::vector<int>&)> compose = [&](int left, std::vector<int>& parts) {
        if (left == 0) {
            if (parts.size() < 2)
                return;
            std::vector<Shape> acc{{"", 1}};
            for (int part : parts) {
                std::vector<Shape> next;
                for (const auto& a : acc)
                    for (const auto& s : shapes(part, memo))
                        next.push_back({a.text + (a.text.empty() ? "" : ",") + s.text, a.nodes + s.nodes});
                acc = std::move(next);
            }
            for (auto& a : acc)
                out.push_back({"(" + a.text + ")", a.nodes});
            return;
        }
        for (int p = 1; p <= left; ++p) {
            parts.push_back(p);
            compose(left - p, parts);
            parts.pop_back();
        }
    };
    std::vector<int> parts;
    if (n >= 2)
        compose(n, parts);
    memo[n] = out;
    return out;
}

} // namespace

TEST_CASE("tree counts 1, 1, 3, 11, 45 against the composition oracle")
{
    std::map<int, std::vector<Shape>> memo;
    const std::uint64_t expected[] = {1, 1, 3, 11, 45, 197};
    for (int n = 1; n <= 6; ++n) {
        auto trees = enumerate_trees(n);
        auto oracle = shapes(n, memo);
        CHECK(trees.size() == expected[n - 1]);
        CHECK(oracle.size() == expected[n - 1]);
        CHECK(count_trees(n) == expected[n - 1]);
        std::set<PlanarTree> distinct(trees.begin(), trees.end());
        CHECK(distinct.size() == trees.size());
        // graded by co-node index l = leaves - nodes
        std::size_t sum = 0;
        for (int l = n == 1 ? 0 : 1; l < n; ++l) {
            auto level = enumerate_trees(n, l);
            std::size_t oracle_level = 0;
            for (const auto& s : oracle)
                if (n - std::max(s.nodes, 1) == l)
                    ++oracle_level;
            CHECK(level.size() == oracle_level);
            for (const auto& t : level)
                CHECK(t.co_node_index() == l);
            sum += level.size();
        }
        CHECK(sum == trees.size());
    }
}

TEST_CASE("corollas and the one-leaf tree")
{
    auto t = PlanarTree::corolla(3);
    CHECK(t.leaves() == 3);
    CHECK(t.nodes() == 1);
    CHECK(t.co_node_index() == 2);
    CHECK(PlanarTree::leaf().nodes() == 1);
    CHECK(PlanarTree::leaf().co_node_index() == 0);
    CHECK(enumerate_trees(3, 2).size() == 1);
}

TEST_CASE("text round trip")
{
    for (int n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_trees(n))
            CHECK(PlanarTree::parse(t.to_string()) == t);
    CHECK(PlanarTree::parse("((*,*),*)").leaves() == 3);
    CHECK_THROWS(PlanarTree::parse("(*)"));
    CHECK_THROWS(PlanarTree::parse("((*,*)"));
}

TEST_CASE("grafting adds leaves and one node")
{
    for (const auto& a : enumerate_trees(2))
        for (const auto& b : enumerate_trees(3)) {
            auto g = graft({a, b});
            CHECK(g.leaves() == 5);
            CHECK(g.nodes() == a.nodes() + b.nodes() + 1);
            auto kids = g.children();
            REQUIRE(kids.size() == 2);
            CHECK(kids[0] == a);
            CHECK(kids[1] == b);
        }
}

TEST_CASE("node splittings of a corolla")
{
    // the 3-corolla splits into exactly the two binary trees
    auto s3 = node_splittings(PlanarTree::corolla(3));
    std::set<PlanarTree> binaries;
    for (const auto& s : s3)
        binaries.insert(s.tree);
    CHECK(s3.size() == 2);
    CHECK(binaries == std::set<PlanarTree>{PlanarTree::parse("((*,*),*)"), PlanarTree::parse("(*,(*,*))")});
    // corolla T_n: pairs (m, d) with 2 <= m <= n - 1 and 0 <= d <= n - m
    for (int n = 2; n <= 6; ++n) {
        std::size_t expect = 0;
        for (int m = 2; m <= n - 1; ++m)
            expect += static_cast<std::size_t>(n - m + 1);
        CHECK(node_splittings(PlanarTree::corolla(n)).size() == expect);
    }
    // every splitting adds one node and keeps the leaves
    for (const auto& t : enumerate_trees(5))
        for (const auto& s : node_splittings(t)) {
            CHECK(s.tree.leaves() == 5);
            CHECK(s.tree.nodes() == t.nodes() + 1);
        }
}
