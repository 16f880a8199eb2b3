#include "ainf/category.hpp"

#include "ainf/errors.hpp"

#include <algorithm>
#include <functional>

namespace ainf {

std::vector<Mor> Category::basis(int x, int y, const Bounds& b) const
{
    std::vector<Mor> out;
    int wmax = std::min(b.max_weight, max_weight());
    for (int w = 0; w <= wmax; ++w)
        for (Mor f : basis_exact(x, y, w)) {
            int dg = degree(f);
            if (dg >= b.lo && dg <= b.hi)
                out.push_back(f);
        }
    return out;
}

int Category::object_index(const std::string& name) const
{
    for (int i = 0; i < object_count(); ++i)
        if (object_name(i) == name)
            return i;
    return -1;
}

Elem m_of(const Category& c, const std::vector<Elem>& args)
{
    Elem out = c.zero();
    int bound = c.arity_bound();
    if (bound >= 0 && static_cast<int>(args.size()) > bound)
        return out;
    std::vector<Mor> cur(args.size());
    std::function<void(std::size_t, Scalar)> go = [&](std::size_t i, Scalar coef) {
        if (i == args.size()) {
            out.add(c.m(cur), coef);
            return;
        }
        for (const auto& [f, a] : args[i]) {
            cur[i] = f;
            go(i + 1, coef * a);
        }
    };
    go(0, Scalar(1));
    return out;
}

std::string format(const Category& c, const Elem& e)
{
    if (e.is_zero())
        return "0";
    std::string s;
    for (const auto& [f, a] : e) {
        if (!s.empty())
            s += " + ";
        if (a != 1)
            s += scalar_to_string(a) + "*";
        s += c.name(f);
    }
    return s;
}

std::string format_tuple(const Category& c, const std::vector<Mor>& args)
{
    std::string s = "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            s += ", ";
        s += c.name(args[i]);
    }
    return s + ")";
}

int elem_degree(const Category& c, const Elem& e)
{
    if (e.is_zero())
        throw ArgumentError("degree of the zero element is undefined");
    int d = c.degree(e.begin()->first);
    for (const auto& [f, a] : e)
        if (c.degree(f) != d)
            throw ArgumentError("element is not homogeneous: " + format(c, e));
    return d;
}

void require_composable(const Category& c, const std::vector<Mor>& args)
{
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (c.tgt(args[i + 1]) != c.src(args[i]))
            throw ArgumentError("inputs are not composable: " + format_tuple(c, args));
}

std::vector<std::vector<Mor>> composable_tuples(const Category& c, int n, const Bounds& b)
{
    int objs = c.object_count();
    // homs sorted by weight so that the scan stops at the remaining budget
    std::vector<std::vector<std::vector<std::pair<int, Mor>>>> hom(objs,
                                                                   std::vector<std::vector<std::pair<int, Mor>>>(objs));
    long long min_weight = -1;
    for (int x = 0; x < objs; ++x)
        for (int y = 0; y < objs; ++y) {
            for (Mor f : c.basis(x, y, b)) {
                int w = c.weight(f);
                hom[x][y].emplace_back(w, f);
                min_weight = min_weight < 0 ? w : std::min<long long>(min_weight, w);
            }
            std::stable_sort(hom[x][y].begin(), hom[x][y].end(),
                             [](const auto& p, const auto& q) { return p.first < q.first; });
        }
    min_weight = std::max<long long>(min_weight, 0);
    std::vector<std::vector<Mor>> out;
    std::vector<Mor> cur;
    // Builds x_1, x_2, ... starting from a source object, then reverses.
    std::function<void(int, int, long long)> go = [&](int at, int left, long long wsum) {
        if (left == 0) {
            out.emplace_back(cur.rbegin(), cur.rend());
            return;
        }
        long long budget = static_cast<long long>(b.max_total_weight) - wsum - (left - 1) * min_weight;
        for (int y = 0; y < objs; ++y)
            for (const auto& [w, f] : hom[at][y]) {
                if (w > budget)
                    break;
                cur.push_back(f);
                go(y, left - 1, wsum + w);
                cur.pop_back();
            }
    };
    for (int x = 0; x < objs; ++x)
        go(x, n, 0);
    return out;
}

Elem stasheff_residue(const Category& c, const std::vector<Mor>& args)
{
    const Ring& r = c.ring();
    int n = static_cast<int>(args.size());
    int bound = c.arity_bound();
    Elem total = c.zero();
    for (int m = 1; m <= n; ++m) {
        if (bound >= 0 && (m > bound || n - m + 1 > bound))
            continue;
        for (int d = 0; d <= n - m; ++d) {
            long long dag = 0;
            for (int i = n - d; i < n; ++i)
                dag += c.degree(args[i]) - 1;
            std::vector<Mor> inner(args.begin() + (n - d - m), args.begin() + (n - d));
            Elem in = c.m(inner);
            if (in.is_zero())
                continue;
            std::vector<Elem> outer;
            for (int i = 0; i < n - d - m; ++i)
                outer.push_back(c.elem(args[i]));
            outer.push_back(in);
            for (int i = n - d; i < n; ++i)
                outer.push_back(c.elem(args[i]));
            total.add(m_of(c, outer), r.sign(dag));
        }
    }
    return total;
}

IdentityReport check_stasheff(const Category& c, int max_arity, const Bounds& b)
{
    IdentityReport rep;
    for (int n = 1; n <= max_arity; ++n) {
        for (const auto& t : composable_tuples(c, n, b)) {
            ++rep.tuples_checked;
            Elem res = stasheff_residue(c, t);
            if (!res.is_zero()) {
                rep.ok = false;
                rep.arity = n;
                rep.inputs = t;
                rep.residue = res;
                rep.detail = "Stasheff residue at " + format_tuple(c, t) + ": " + format(c, res);
                return rep;
            }
        }
    }
    return rep;
}

Vec HomComplex::to_vec(const Elem& e) const
{
    Vec v(module.ring());
    for (const auto& [f, a] : e) {
        auto it = index.find(f);
        if (it == index.end())
            throw ArgumentError("element leaves the bounded hom complex");
        v.add(it->second, a);
    }
    return v;
}

Elem HomComplex::to_elem(const Ring& r, const Vec& v) const
{
    Elem e(r);
    for (const auto& [i, a] : v)
        e.add(mors.at(static_cast<std::size_t>(i)), a);
    return e;
}

bool HomComplex::contains(const Elem& e) const
{
    for (const auto& [f, a] : e)
        if (!index.count(f))
            return false;
    return true;
}

HomComplex hom_complex(const Category& c, int x, int y, const Bounds& b)
{
    HomComplex h;
    h.x = x;
    h.y = y;
    h.module = GradedModule(c.ring(), b.lo, b.hi);
    h.mors = c.basis(x, y, b);
    // order by degree then basis order, names must be unique per module
    std::stable_sort(h.mors.begin(), h.mors.end(),
                     [&](Mor a, Mor bb) { return c.degree(a) < c.degree(bb); });
    for (Mor f : h.mors) {
        std::string nm = c.name(f);
        if (h.module.index_of(nm) >= 0)
            nm += "#" + std::to_string(f);
        h.index.emplace(f, h.module.add(nm, c.degree(f)));
    }
    for (Mor f : h.mors) {
        Elem df = c.m({f});
        Vec v(c.ring());
        for (const auto& [g, a] : df) {
            auto it = h.index.find(g);
            if (it != h.index.end()) {
                v.add(it->second, a);
                continue;
            }
            if (c.degree(g) > b.hi)
                continue;
            throw StructuralError("m1 image leaves the weight-bounded complex", c.name(f));
        }
        h.d.push_back(v);
    }
    return h;
}

} // namespace ainf
