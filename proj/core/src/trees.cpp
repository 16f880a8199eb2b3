#include "ainf/trees.hpp"

#include "ainf/errors.hpp"

#include <functional>
#include <map>

namespace ainf {

std::size_t subtree_end(const Code& c, std::size_t pos)
{
    std::size_t open = 1;
    while (open > 0) {
        if (pos >= c.size())
            throw ArgumentError("truncated tree code");
        if (c[pos] < 0)
            open += static_cast<std::size_t>(-c[pos]);
        --open;
        ++pos;
    }
    return pos;
}

std::vector<std::size_t> child_positions(const Code& c, std::size_t pos)
{
    std::vector<std::size_t> out;
    if (c[pos] >= 0)
        return out;
    int k = -c[pos];
    std::size_t p = pos + 1;
    for (int i = 0; i < k; ++i) {
        out.push_back(p);
        p = subtree_end(c, p);
    }
    return out;
}

std::vector<std::int32_t> leaf_labels(const Code& c)
{
    std::vector<std::int32_t> out;
    for (auto v : c)
        if (v >= 0)
            out.push_back(v);
    return out;
}

Code split_node(const Code& c, std::size_t pos, int m, int d)
{
    auto ch = child_positions(c, pos);
    int a = static_cast<int>(ch.size());
    std::size_t end = subtree_end(c, pos);
    Code out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(pos));
    out.push_back(-(a - m + 1));
    auto span = [&](int i) {
        std::size_t b = ch[i];
        std::size_t e = (i + 1 < a) ? ch[i + 1] : end;
        out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(b),
                   c.begin() + static_cast<std::ptrdiff_t>(e));
    };
    for (int i = 0; i < a - d - m; ++i)
        span(i);
    out.push_back(-m);
    for (int i = a - d - m; i < a - d; ++i)
        span(i);
    for (int i = a - d; i < a; ++i)
        span(i);
    out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(end), c.end());
    return out;
}

Code graft_codes(const std::vector<Code>& children)
{
    Code out{-static_cast<std::int32_t>(children.size())};
    for (const auto& ch : children)
        out.insert(out.end(), ch.begin(), ch.end());
    return out;
}

PlanarTree::PlanarTree(Code c) : code_(std::move(c))
{
    if (code_.empty() || subtree_end(code_, 0) != code_.size())
        throw ArgumentError("malformed tree code");
    for (auto v : code_) {
        if (v == -1)
            throw ArgumentError("internal nodes must have arity >= 2");
        if (v > 0)
            throw ArgumentError("unlabeled tree code expected");
    }
}

PlanarTree PlanarTree::corolla(int n)
{
    if (n < 1)
        throw ArgumentError("corolla needs n >= 1");
    if (n == 1)
        return leaf();
    Code c{-n};
    c.insert(c.end(), static_cast<std::size_t>(n), 0);
    return PlanarTree(c);
}

int PlanarTree::leaves() const
{
    int n = 0;
    for (auto v : code_)
        n += v >= 0;
    return n;
}

int PlanarTree::nodes() const
{
    if (is_leaf())
        return 1;
    int n = 0;
    for (auto v : code_)
        n += v < 0;
    return n;
}

std::vector<PlanarTree> PlanarTree::children() const
{
    std::vector<PlanarTree> out;
    if (is_leaf())
        return out;
    auto ch = child_positions(code_, 0);
    for (std::size_t i = 0; i < ch.size(); ++i) {
        std::size_t e = subtree_end(code_, ch[i]);
        out.emplace_back(Code(code_.begin() + static_cast<std::ptrdiff_t>(ch[i]),
                              code_.begin() + static_cast<std::ptrdiff_t>(e)));
    }
    return out;
}

std::string PlanarTree::to_string() const
{
    std::string s;
    std::function<std::size_t(std::size_t)> go = [&](std::size_t p) -> std::size_t {
        if (code_[p] >= 0) {
            s += '*';
            return p + 1;
        }
        int k = -code_[p];
        s += '(';
        std::size_t q = p + 1;
        for (int i = 0; i < k; ++i) {
            if (i)
                s += ',';
            q = go(q);
        }
        s += ')';
        return q;
    };
    go(0);
    return s;
}

PlanarTree PlanarTree::parse(const std::string& text)
{
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t'))
            ++i;
    };
    std::function<Code()> node = [&]() -> Code {
        skip();
        if (i >= text.size())
            throw ArgumentError("unexpected end of tree text");
        if (text[i] == '*') {
            ++i;
            return Code{0};
        }
        if (text[i] != '(')
            throw ArgumentError("unexpected character in tree text: '" + text.substr(i, 1) + "'");
        ++i;
        std::vector<Code> kids;
        for (;;) {
            kids.push_back(node());
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            throw ArgumentError("expected ',' or ')' in tree text");
        }
        if (kids.size() < 2)
            throw ArgumentError("internal nodes must have arity >= 2");
        return graft_codes(kids);
    };
    Code c = node();
    skip();
    if (i != text.size())
        throw ArgumentError("trailing characters in tree text");
    return PlanarTree(c);
}

namespace {

// Ordered sequences of k positive integers summing to n.
void compositions(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (k == 0) {
        if (n == 0)
            out.push_back(cur);
        return;
    }
    for (int first = 1; first <= n - (k - 1); ++first) {
        cur.push_back(first);
        compositions(n - first, k - 1, cur, out);
        cur.pop_back();
    }
}

const std::vector<Code>& all_codes(int n)
{
    static std::map<int, std::vector<Code>> memo;
    auto it = memo.find(n);
    if (it != memo.end())
        return it->second;
    std::vector<Code> out;
    if (n == 1) {
        out.push_back(Code{0});
    } else {
        for (int k = 2; k <= n; ++k) {
            std::vector<std::vector<int>> comps;
            std::vector<int> cur;
            compositions(n, k, cur, comps);
            for (const auto& comp : comps) {
                std::vector<Code> acc{Code{-k}};
                for (int part : comp) {
                    std::vector<Code> next;
                    for (const auto& prefix : acc)
                        for (const auto& sub : all_codes(part)) {
                            Code c = prefix;
                            c.insert(c.end(), sub.begin(), sub.end());
                            next.push_back(std::move(c));
                        }
                    acc = std::move(next);
                }
                out.insert(out.end(), acc.begin(), acc.end());
            }
        }
    }
    return memo.emplace(n, std::move(out)).first->second;
}

} // namespace

std::vector<PlanarTree> enumerate_trees(int n, std::optional<int> l)
{
    if (n < 1)
        throw ArgumentError("enumerate needs n >= 1");
    if (l) {
        int lo = n == 1 ? 0 : 1;
        if (*l < lo || *l > std::max(0, n - 1))
            throw ArgumentError("co-node index out of range");
    }
    std::vector<PlanarTree> out;
    for (const auto& c : all_codes(n)) {
        PlanarTree t(c);
        if (!l || t.co_node_index() == *l)
            out.push_back(std::move(t));
    }
    return out;
}

std::uint64_t count_trees(int n)
{
    // c(1) = 1; c(n) = sum_{k>=2} sum over compositions of n into k parts of prod c(part).
    // g[j][s] = number of sequences of j trees with s leaves in total.
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1, 0);
    c[1] = 1;
    for (int m = 2; m <= n; ++m) {
        std::vector<std::vector<std::uint64_t>> g(
            static_cast<std::size_t>(m) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(m) + 1, 0));
        g[0][0] = 1;
        for (int j = 1; j <= m; ++j)
            for (int s = 1; s <= m; ++s)
                for (int part = 1; part <= s && part < m; ++part)
                    g[j][s] += g[j - 1][s - part] * c[part];
        for (int k = 2; k <= m; ++k)
            c[m] += g[k][m];
    }
    return c[static_cast<std::size_t>(n)];
}

PlanarTree graft(const std::vector<PlanarTree>& trees)
{
    if (trees.size() < 2)
        throw ArgumentError("graft needs at least two trees");
    std::vector<Code> codes;
    for (const auto& t : trees)
        codes.push_back(t.code());
    return PlanarTree(graft_codes(codes));
}

std::vector<Splitting> node_splittings(const PlanarTree& t)
{
    std::vector<Splitting> out;
    const Code& c = t.code();
    for (std::size_t pos = 0; pos < c.size(); ++pos) {
        int a = -c[pos];
        if (a < 3)
            continue;
        for (int m = 2; m <= a - 1; ++m)
            for (int d = 0; d <= a - m; ++d)
                out.push_back({PlanarTree(split_node(c, pos, m, d)), static_cast<int>(pos), m, d});
    }
    return out;
}

} // namespace ainf
