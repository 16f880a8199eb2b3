#include "ainf/tree_category.hpp"

#include "ainf/errors.hpp"

#include <functional>

namespace ainf {

TreeCategory::TreeCategory(TreeSpec spec) : spec_(std::move(spec))
{
    if (spec_.old) {
        if (spec_.old->ring() != spec_.ring)
            throw ArgumentError("tree category ring differs from the old category's ring");
        for (int x = 0; x < spec_.old->object_count(); ++x)
            objects_.push_back(spec_.old->object_name(x));
    } else {
        objects_ = spec_.objects;
    }
    if (spec_.collapse && !spec_.old)
        throw ArgumentError("collapse relations need an old category");
    unit_gen_.assign(objects_.size(), -1);
    old_unit_.assign(objects_.size(), -1);
    for (std::size_t g = 0; g < spec_.gens.size(); ++g) {
        const auto& gen = spec_.gens[g];
        if (gen.src < 0 || gen.tgt < 0 || gen.src >= object_count() || gen.tgt >= object_count())
            throw ArgumentError("generator '" + gen.name + "' has an unknown endpoint");
        if (gen.weight < 1)
            throw ArgumentError("generator weights must be positive");
        if (gen.unit) {
            if (gen.src != gen.tgt || gen.degree != 0 || !gen.d.is_zero())
                throw ArgumentError("unit generator '" + gen.name + "' must be a closed degree 0 loop");
            // flagged generators only act as units once the unit relations are imposed
            if (spec_.units == TreeSpec::Units::add)
                unit_gen_[gen.src] = static_cast<int>(g);
        }
    }
    if (spec_.units == TreeSpec::Units::add)
        for (int x = 0; x < object_count(); ++x)
            if (unit_gen_[x] < 0)
                throw ArgumentError("missing unit generator for object " + objects_[x]);
    if (spec_.units == TreeSpec::Units::inherit) {
        if (!spec_.old)
            throw ArgumentError("inherited units need an old category");
        for (int x = 0; x < object_count(); ++x) {
            auto u = spec_.old->unit(x);
            if (!u || u->size() != 1 || u->begin()->second != 1)
                throw ArgumentError("inherited unit of " + objects_[x] + " must be a single basis morphism");
            old_unit_[x] = u->begin()->first;
        }
    }
    // differentials of new generators must stay in the right hom/degree
    for (const auto& gen : spec_.gens)
        for (const auto& [l, c] : gen.d)
            if (label_src(l) != gen.src || label_tgt(l) != gen.tgt || label_degree(l) != gen.degree + 1)
                throw ArgumentError("d(" + gen.name + ") has wrong endpoints or degree");
}

int TreeCategory::label_src(std::int32_t l) const
{
    return is_old(l) ? spec_.old->src(old_of(l)) : spec_.gens.at(gen_of(l)).src;
}
int TreeCategory::label_tgt(std::int32_t l) const
{
    return is_old(l) ? spec_.old->tgt(old_of(l)) : spec_.gens.at(gen_of(l)).tgt;
}
int TreeCategory::label_degree(std::int32_t l) const
{
    return is_old(l) ? spec_.old->degree(old_of(l)) : spec_.gens.at(gen_of(l)).degree;
}
int TreeCategory::label_weight(std::int32_t l) const
{
    return is_old(l) ? spec_.old->weight(old_of(l)) : spec_.gens.at(gen_of(l)).weight;
}
std::string TreeCategory::label_name(std::int32_t l) const
{
    return is_old(l) ? spec_.old->name(old_of(l)) : spec_.gens.at(gen_of(l)).name;
}

Lin<std::int32_t> TreeCategory::label_d(std::int32_t l) const
{
    if (!is_old(l))
        return spec_.gens.at(gen_of(l)).d;
    Elem e = spec_.old->m({old_of(l)});
    return e.map_keys<std::int32_t>([](Mor f) { return old_label(f); });
}

bool TreeCategory::is_unit_label(std::int32_t l) const
{
    switch (spec_.units) {
    case TreeSpec::Units::none:
        return false;
    case TreeSpec::Units::add:
        return !is_old(l) && spec_.gens.at(gen_of(l)).unit;
    case TreeSpec::Units::inherit:
        return is_old(l) && old_of(l) == old_unit_.at(spec_.old->src(old_of(l)));
    }
    return false;
}

Mor TreeCategory::intern(const Code& c) const
{
    auto it = index_.find(c);
    if (it != index_.end())
        return it->second;
    TermInfo t;
    t.code = c;
    std::vector<std::int32_t> ls = leaf_labels(c);
    t.src = label_src(ls.back());
    t.tgt = label_tgt(ls.front());
    t.degree = 0;
    t.weight = 0;
    for (auto l : ls) {
        t.degree += label_degree(l);
        t.weight += label_weight(l);
    }
    for (auto v : c)
        if (v < 0)
            t.degree += 2 + v;
    Mor id = static_cast<Mor>(terms_.size());
    terms_.push_back(std::move(t));
    index_.emplace(c, id);
    return id;
}

std::optional<Mor> TreeCategory::find_term(const Code& c) const
{
    auto it = index_.find(c);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Elem TreeCategory::leaf(std::int32_t label) const
{
    return Elem(ring(), intern(Code{label}));
}

Elem TreeCategory::embed_old(const Elem& e) const
{
    Elem out(ring());
    for (const auto& [f, c] : e)
        out.add(intern(Code{old_label(f)}), c);
    return out;
}

std::string TreeCategory::name(Mor f) const
{
    const Code& c = code(f);
    if (c.size() == 1)
        return label_name(c[0]);
    Code shape = c;
    std::string labels;
    for (auto& v : shape)
        if (v >= 0) {
            if (!labels.empty())
                labels += ",";
            labels += label_name(v);
            v = 0;
        }
    return "(" + PlanarTree(shape).to_string() + " | " + labels + ")";
}

Code TreeCategory::comb(const std::vector<std::int32_t>& word) const
{
    Code c;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        c.push_back(-2);
        c.push_back(word[i]);
    }
    c.push_back(word.back());
    return c;
}

Elem TreeCategory::dg_product(Mor a, Mor b) const
{
    const Ring& r = ring();
    std::vector<std::int32_t> u = leaf_labels(code(a));
    std::vector<std::int32_t> v = leaf_labels(code(b));
    Scalar s = r.sign(static_cast<long long>(u.size() - 1) * degree(b));
    std::vector<std::int32_t> w = u;
    w.insert(w.end(), v.begin(), v.end());
    std::size_t j = u.size() - 1;
    Elem out(r);
    if (!(spec_.collapse && is_old(w[j]) && is_old(w[j + 1]))) {
        out.add(intern(comb(w)), s);
        return out;
    }
    std::vector<std::int32_t> pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
    std::vector<std::int32_t> rest(w.begin() + static_cast<std::ptrdiff_t>(j + 2), w.end());
    long long rest_deg = 0;
    for (auto l : rest)
        rest_deg += label_degree(l);
    Scalar s2 = r.mul(s, r.sign(rest_deg));
    Elem z = spec_.old->m({old_of(w[j]), old_of(w[j + 1])});
    for (const auto& [f, c] : z) {
        std::int32_t zl = old_label(f);
        std::vector<std::int32_t> nw = pre;
        Scalar coef = r.mul(s2, c);
        if (is_unit_label(zl)) {
            if (!rest.empty()) {
                coef = r.mul(coef, r.sign(rest_deg));
                nw.insert(nw.end(), rest.begin(), rest.end());
            } else if (pre.empty()) {
                nw.push_back(zl);
            }
        } else {
            nw.push_back(zl);
            nw.insert(nw.end(), rest.begin(), rest.end());
        }
        out.add(intern(comb(nw)), coef);
    }
    return out;
}

Elem TreeCategory::graft(const std::vector<Mor>& ch) const
{
    const Ring& r = ring();
    std::size_t n = ch.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (tgt(ch[i + 1]) != src(ch[i]))
            throw ArgumentError("inputs are not composable: " + format_tuple(*this, ch));
    if (spec_.units != TreeSpec::Units::none) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_unit_term(ch[i]))
                continue;
            if (n > 2)
                return Elem(r);
            if (i == 0)
                return Elem(r, ch[1], r.sign(degree(ch[1])));
            return Elem(r, ch[0]);
        }
    }
    if (spec_.dg) {
        if (n > 2)
            return Elem(r);
        return dg_product(ch[0], ch[1]);
    }
    if (spec_.collapse) {
        bool all_old = true;
        for (Mor f : ch)
            if (!is_leaf(f) || !is_old(code(f)[0])) {
                all_old = false;
                break;
            }
        if (all_old) {
            std::vector<Mor> args;
            for (Mor f : ch)
                args.push_back(old_of(code(f)[0]));
            return embed_old(spec_.old->m(args));
        }
    }
    std::vector<Code> codes;
    for (Mor f : ch)
        codes.push_back(code(f));
    return Elem(r, intern(graft_codes(codes)));
}

Elem TreeCategory::normalize(const Code& c) const
{
    std::function<Elem(std::size_t)> go = [&](std::size_t pos) -> Elem {
        if (c[pos] >= 0)
            return leaf(c[pos]);
        std::vector<Elem> kids;
        for (std::size_t p : child_positions(c, pos)) {
            kids.push_back(go(p));
            if (kids.back().is_zero())
                return Elem(ring());
        }
        Elem out(ring());
        std::vector<Mor> cur(kids.size());
        std::function<void(std::size_t, Scalar)> rec = [&](std::size_t i, Scalar coef) {
            if (i == kids.size()) {
                out.add(graft(cur), coef);
                return;
            }
            for (const auto& [f, a] : kids[i]) {
                cur[i] = f;
                rec(i + 1, coef * a);
            }
        };
        rec(0, Scalar(1));
        return out;
    };
    return go(0);
}

Lin<Code> TreeCategory::raw_d(const Code& c) const
{
    const Ring& r = ring();
    std::vector<int> deg(c.size(), 0);
    std::vector<std::size_t> end(c.size(), 0);
    // subtree degrees, computed right to left
    for (std::size_t p = c.size(); p-- > 0;) {
        if (c[p] >= 0) {
            deg[p] = label_degree(c[p]);
            end[p] = p + 1;
            continue;
        }
        int dsum = 2 + c[p];
        std::size_t q = p + 1;
        for (int i = 0; i < -c[p]; ++i) {
            dsum += deg[q];
            q = end[q];
        }
        deg[p] = dsum;
        end[p] = q;
    }
    Lin<Code> out(r);
    std::function<void(std::size_t, Scalar)> go = [&](std::size_t pos, Scalar sign) {
        if (c[pos] >= 0) {
            for (const auto& [l, a] : label_d(c[pos])) {
                Code nc = c;
                nc[pos] = l;
                out.add(nc, sign * a);
            }
            return;
        }
        auto ch = child_positions(c, pos);
        int a = static_cast<int>(ch.size());
        // splittings of this node
        for (int m = 2; m <= a - 1; ++m) {
            long long dag = 0;
            for (int d = 0; d <= a - m; ++d) {
                if (d > 0)
                    dag += deg[ch[a - d]] - 1;
                out.add(split_node(c, pos, m, d), r.neg(sign * r.sign(dag)));
            }
        }
        long long rho = 0;
        for (int i = a - 1; i >= 0; --i) {
            go(ch[i], r.neg(sign * r.sign(rho)));
            rho += deg[ch[i]] - 1;
        }
    };
    go(0, Scalar(1));
    return out;
}

Elem TreeCategory::m(const std::vector<Mor>& args) const
{
    if (args.size() == 1) {
        auto it = d_cache_.find(args[0]);
        if (it != d_cache_.end())
            return it->second;
        Code c = code(args[0]);
        Elem out(ring());
        for (const auto& [nc, a] : raw_d(c))
            out.add(normalize(nc), a);
        d_cache_.emplace(args[0], out);
        return out;
    }
    if (spec_.dg && args.size() > 2)
        return Elem(ring());
    return graft(args);
}

std::vector<std::int32_t> TreeCategory::labels_of_weight(int x, int y, int w) const
{
    std::vector<std::int32_t> out;
    if (spec_.old)
        for (Mor f : spec_.old->basis_exact(x, y, w))
            out.push_back(old_label(f));
    for (std::size_t g = 0; g < spec_.gens.size(); ++g) {
        const auto& gen = spec_.gens[g];
        if (gen.src == x && gen.tgt == y && gen.weight == w)
            out.push_back(gen_label(static_cast<int>(g)));
    }
    return out;
}

std::vector<Mor> TreeCategory::basis_exact(int x, int y, int w) const
{
    auto key = std::make_tuple(x, y, w);
    auto it = basis_cache_.find(key);
    if (it != basis_cache_.end())
        return it->second;
    std::vector<Mor> out;
    if (w >= 1) {
        for (auto l : labels_of_weight(x, y, w))
            out.push_back(intern(Code{l}));
        int objs = object_count();
        if (spec_.dg) {
            for (int z = 0; z < objs; ++z)
                for (int wl = 1; wl < w; ++wl)
                    for (auto l : labels_of_weight(z, y, wl)) {
                        if (is_unit_label(l))
                            continue;
                        for (Mor t : basis_exact(x, z, w - wl)) {
                            if (is_unit_term(t))
                                continue;
                            std::vector<std::int32_t> rest = leaf_labels(code(t));
                            if (spec_.collapse && is_old(l) && is_old(rest.front()))
                                continue;
                            std::vector<std::int32_t> word{l};
                            word.insert(word.end(), rest.begin(), rest.end());
                            out.push_back(intern(comb(word)));
                        }
                    }
        } else {
            std::vector<Mor> seq; // rightmost child first
            std::function<void(int, int, int)> go = [&](int at, int left, int k) {
                // left: remaining weight; k: remaining children
                if (k == 0) {
                    if (left != 0 || at != y)
                        return;
                    std::vector<Mor> ch(seq.rbegin(), seq.rend());
                    if (spec_.collapse) {
                        bool all_old = true;
                        for (Mor f : ch)
                            if (!is_leaf(f) || !is_old(code(f)[0]))
                                all_old = false;
                        if (all_old)
                            return;
                    }
                    std::vector<Code> codes;
                    for (Mor f : ch)
                        codes.push_back(code(f));
                    out.push_back(intern(graft_codes(codes)));
                    return;
                }
                for (int z = 0; z < objs; ++z)
                    for (int wi = 1; wi <= left - (k - 1); ++wi)
                        for (Mor t : basis_exact(at, z, wi)) {
                            if (is_unit_term(t))
                                continue;
                            seq.push_back(t);
                            go(z, left - wi, k - 1);
                            seq.pop_back();
                        }
            };
            for (int k = 2; k <= w; ++k)
                go(x, w, k);
        }
    }
    basis_cache_.emplace(key, out);
    return out;
}

std::optional<Elem> TreeCategory::unit(int x) const
{
    switch (spec_.units) {
    case TreeSpec::Units::none:
        return std::nullopt;
    case TreeSpec::Units::add:
        return leaf(gen_label(unit_gen_.at(x)));
    case TreeSpec::Units::inherit:
        return leaf(old_label(old_unit_.at(x)));
    }
    return std::nullopt;
}

Elem TreeCategory::parse_term(const std::string& text) const
{
    // "(shape | l1,...,ln)" or a bare label name
    auto trim = [](std::string s) {
        while (!s.empty() && s.front() == ' ')
            s.erase(s.begin());
        while (!s.empty() && s.back() == ' ')
            s.pop_back();
        return s;
    };
    auto find_label = [&](const std::string& n) -> std::int32_t {
        for (std::size_t g = 0; g < spec_.gens.size(); ++g)
            if (spec_.gens[g].name == n)
                return gen_label(static_cast<int>(g));
        if (auto ot = dynamic_cast<const TreeCategory*>(spec_.old.get())) {
            Elem e = ot->parse_term(n);
            if (e.size() != 1 || e.begin()->second != 1)
                throw ArgumentError("label '" + n + "' is not a basis morphism of the previous category");
            return old_label(e.begin()->first);
        }
        if (spec_.old) {
            Bounds all;
            all.lo = -1000;
            all.hi = 1000;
            all.max_weight = spec_.old->finite() ? spec_.old->max_weight() : 8;
            for (int x = 0; x < object_count(); ++x)
                for (int y = 0; y < object_count(); ++y)
                    for (Mor f : spec_.old->basis(x, y, all))
                        if (spec_.old->name(f) == n)
                            return old_label(f);
        }
        throw ArgumentError("unknown label '" + n + "'");
    };
    std::string t = trim(text);
    auto bar = t.find('|');
    if (bar == std::string::npos || t.front() != '(' || t.back() != ')')
        return leaf(find_label(t));
    PlanarTree shape = PlanarTree::parse(trim(t.substr(1, bar - 1)));
    std::string rest = t.substr(bar + 1, t.size() - bar - 2);
    std::vector<std::string> names;
    int depth = 0;
    std::string cur;
    for (char ch : rest) {
        if (ch == ',' && depth == 0) {
            names.push_back(trim(cur));
            cur.clear();
            continue;
        }
        depth += ch == '(' ? 1 : ch == ')' ? -1 : 0;
        cur += ch;
    }
    names.push_back(trim(cur));
    if (static_cast<int>(names.size()) != shape.leaves())
        throw ArgumentError("label count does not match the tree in '" + text + "'");
    Code c = shape.code();
    std::size_t k = 0;
    for (auto& v : c)
        if (v >= 0)
            v = find_label(names[k++]);
    return normalize(c);
}

std::shared_ptr<TreeCategory> free_category(const DGQuiver& q, FreeFlavor flavor)
{
    q.validate();
    TreeSpec s;
    s.ring = q.ring();
    s.objects = q.objects();
    for (std::size_t g = 0; g < q.gens().size(); ++g) {
        const auto& gen = q.gen(static_cast<int>(g));
        TreeGenerator t{gen.name, gen.src, gen.tgt, gen.degree, 1, Lin<std::int32_t>(q.ring()), false};
        t.d = q.d(static_cast<int>(g)).map_keys<std::int32_t>([](int k) { return TreeCategory::gen_label(k); });
        s.gens.push_back(std::move(t));
    }
    bool plus = flavor == FreeFlavor::plus || flavor == FreeFlavor::dg_plus;
    s.dg = flavor == FreeFlavor::dg || flavor == FreeFlavor::dg_plus;
    if (plus) {
        s.units = TreeSpec::Units::add;
        for (int x = 0; x < q.object_count(); ++x) {
            std::string nm = "1_" + q.objects()[x];
            while (q.gen_index(nm) >= 0)
                nm += "'";
            s.gens.push_back({nm, x, x, 0, 1, Lin<std::int32_t>(q.ring()), true});
        }
    }
    return std::make_shared<TreeCategory>(std::move(s));
}

std::shared_ptr<TreeCategory> free_on_underlying(std::shared_ptr<const Category> a, bool collapse)
{
    TreeSpec s;
    s.ring = a->ring();
    s.old = std::move(a);
    s.collapse = collapse;
    return std::make_shared<TreeCategory>(std::move(s));
}

DGQuiver underlying_quiver(const Category& a)
{
    if (!a.finite())
        throw ArgumentError("underlying quiver needs a finite category");
    std::vector<std::string> objs;
    for (int x = 0; x < a.object_count(); ++x)
        objs.push_back(a.object_name(x));
    DGQuiver q(a.ring(), objs);
    Bounds all;
    all.lo = -1000000;
    all.hi = 1000000;
    std::map<Mor, int> id;
    std::vector<Mor> order;
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < a.object_count(); ++y)
            for (Mor f : a.basis(x, y, all)) {
                id[f] = q.add(a.name(f), x, y, a.degree(f));
                order.push_back(f);
            }
    for (Mor f : order)
        q.set_d(id[f], a.m({f}).map_keys<int>([&](Mor g) { return id.at(g); }));
    return q;
}

} // namespace ainf
