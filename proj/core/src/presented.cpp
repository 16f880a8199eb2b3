#include "ainf/presented.hpp"

#include "ainf/errors.hpp"

#include <functional>

namespace ainf {

PresentedCategory::PresentedCategory(Ring r, std::vector<std::string> objects, int arity_bound)
    : ring_(r), objects_(std::move(objects)), bound_(arity_bound)
{
    if (arity_bound < 1)
        throw ArgumentError("arity bound must be at least 1");
    std::map<std::string, int> seen;
    for (const auto& o : objects_)
        if (seen[o]++)
            throw ArgumentError("duplicate object name '" + o + "'");
}

int PresentedCategory::add_morphism(const std::string& name, int src, int tgt, int degree)
{
    if (by_name_.count(name))
        throw ArgumentError("duplicate morphism name '" + name + "'");
    if (src < 0 || tgt < 0 || src >= object_count() || tgt >= object_count())
        throw ArgumentError("morphism '" + name + "' has an unknown endpoint");
    Mor id = static_cast<Mor>(mors_.size());
    mors_.push_back({name, src, tgt, degree});
    by_name_.emplace(name, id);
    return static_cast<int>(id);
}

std::optional<Mor> PresentedCategory::find(const std::string& name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

Mor PresentedCategory::morphism(const std::string& name) const
{
    auto f = find(name);
    if (!f)
        throw ArgumentError("unknown morphism '" + name + "'");
    return *f;
}

void PresentedCategory::set(const std::vector<Mor>& args, const Elem& value)
{
    int n = static_cast<int>(args.size());
    if (n < 1 || n > bound_)
        throw ArgumentError("table arity outside [1, arity_bound]");
    require_composable(*this, args);
    int deg = 2 - n;
    for (Mor a : args)
        deg += degree(a);
    for (const auto& [f, c] : value) {
        if (src(f) != src(args.back()) || tgt(f) != tgt(args.front()))
            throw ArgumentError("table value of m at " + format_tuple(*this, args) + " has wrong endpoints");
        if (degree(f) != deg)
            throw ArgumentError("table value of m at " + format_tuple(*this, args) + " has degree " +
                                std::to_string(degree(f)) + ", expected " + std::to_string(deg));
    }
    if (value.is_zero())
        ops_.erase(args);
    else
        ops_[args] = value;
}

void PresentedCategory::set_units(const std::vector<Elem>& units)
{
    if (static_cast<int>(units.size()) != object_count())
        throw ArgumentError("one unit per object required");
    for (int x = 0; x < object_count(); ++x)
        for (const auto& [f, c] : units[x])
            if (src(f) != x || tgt(f) != x || degree(f) != 0)
                throw ArgumentError("unit of " + objects_[x] + " must be a degree 0 endomorphism");
    units_ = units;
    if (policy_ == UnitPolicy::non_unital)
        policy_ = UnitPolicy::strictly_unital;
}

void PresentedCategory::set_augmentation(const std::map<Mor, Scalar>& eps)
{
    if (units_.empty())
        throw ArgumentError("augmentation needs strict units");
    for (const auto& [f, c] : eps)
        if (src(f) != tgt(f) || degree(f) != 0)
            throw ArgumentError("augmentation is supported on degree 0 endomorphisms only");
    eps_.clear();
    for (const auto& [f, c] : eps)
        if (ring_.normalize(c) != 0)
            eps_[f] = ring_.normalize(c);
    policy_ = UnitPolicy::augmented;
}

Scalar PresentedCategory::epsilon(Mor f) const
{
    auto it = eps_.find(f);
    return it == eps_.end() ? Scalar(0) : it->second;
}

Elem PresentedCategory::parse_elem(const std::vector<std::pair<std::string, Scalar>>& terms) const
{
    Elem e(ring_);
    for (const auto& [n, c] : terms)
        e.add(morphism(n), c);
    return e;
}

Elem PresentedCategory::m(const std::vector<Mor>& args) const
{
    auto it = ops_.find(args);
    return it == ops_.end() ? Elem(ring_) : it->second;
}

std::vector<Mor> PresentedCategory::basis_exact(int x, int y, int w) const
{
    std::vector<Mor> out;
    if (w != 1)
        return out;
    for (std::size_t i = 0; i < mors_.size(); ++i)
        if (mors_[i].src == x && mors_[i].tgt == y)
            out.push_back(static_cast<Mor>(i));
    return out;
}

std::optional<Elem> PresentedCategory::unit(int x) const
{
    if (units_.empty())
        return std::nullopt;
    return units_.at(x);
}

void install_dg(PresentedCategory& c, const DGData& data)
{
    const Ring& r = c.ring();
    for (const auto& [a, da] : data.d)
        c.set({a}, da.scaled(r.sign(c.degree(a))));
    for (const auto& [k, v] : data.product)
        c.set({k.first, k.second}, v.scaled(r.sign(c.degree(k.second))));
}

IdentityReport check_strict_units(const Category& c, const Bounds& b, int max_arity)
{
    IdentityReport rep;
    const Ring& r = c.ring();
    auto fail = [&](const std::vector<Mor>& t, const Elem& res, const std::string& what) {
        rep.ok = false;
        rep.inputs = t;
        rep.arity = static_cast<int>(t.size());
        rep.residue = res;
        rep.detail = what;
    };
    for (int x = 0; x < c.object_count(); ++x) {
        auto u = c.unit(x);
        if (!u) {
            fail({}, c.zero(), "object " + c.object_name(x) + " has no declared unit");
            return rep;
        }
        Elem du = m_of(c, {*u});
        if (!du.is_zero()) {
            fail({}, du, "m1(1_" + c.object_name(x) + ") != 0");
            return rep;
        }
    }
    for (int n = 1; n + 1 <= max_arity; ++n) {
        for (const auto& t : composable_tuples(c, n, b)) {
            // insert a unit at every slot 0..n
            for (int slot = 0; slot <= n; ++slot) {
                ++rep.tuples_checked;
                int obj = slot == n ? c.src(t.back()) : c.tgt(t[slot]);
                std::vector<Elem> args;
                for (int i = 0; i < slot; ++i)
                    args.push_back(c.elem(t[i]));
                args.push_back(*c.unit(obj));
                for (int i = slot; i < n; ++i)
                    args.push_back(c.elem(t[i]));
                Elem got = m_of(c, args);
                Elem want = c.zero();
                if (n == 1)
                    want = slot == 0 ? c.elem(t[0]).scaled(r.sign(c.degree(t[0]))) : c.elem(t[0]);
                if (got != want) {
                    fail(t, got - want,
                         "unit insertion at slot " + std::to_string(slot) + " of " + format_tuple(c, t));
                    return rep;
                }
            }
        }
    }
    return rep;
}

PresentedCategory disc(Ring r, const std::vector<std::string>& objects)
{
    PresentedCategory c(r, objects, 2);
    std::vector<Elem> units;
    for (int x = 0; x < static_cast<int>(objects.size()); ++x)
        units.emplace_back(r, c.add_morphism("1_" + objects[x], x, x, 0));
    for (int x = 0; x < static_cast<int>(objects.size()); ++x)
        c.set({units[x].begin()->first, units[x].begin()->first}, units[x]);
    c.set_units(units);
    std::map<Mor, Scalar> eps;
    for (const auto& u : units)
        eps[u.begin()->first] = 1;
    c.set_augmentation(eps);
    return c;
}

PresentedCategory interval_algebra(Ring r)
{
    PresentedCategory c(r, {"x"}, 2);
    Mor u0 = c.add_morphism("u0", 0, 0, 0);
    Mor u1 = c.add_morphism("u1", 0, 0, 0);
    Mor h = c.add_morphism("h", 0, 0, 1);
    DGData dg;
    dg.d[u0] = Elem(r, h);
    dg.d[u1] = Elem(r, h, -1);
    dg.product[{u0, u0}] = Elem(r, u0);
    dg.product[{u1, u1}] = Elem(r, u1);
    dg.product[{u1, h}] = Elem(r, h);
    dg.product[{h, u0}] = Elem(r, h);
    install_dg(c, dg);
    c.set_units({Elem(r, u0) + Elem(r, u1)});
    return c;
}

PresentedCategory simplex(Ring r, int n)
{
    if (n < 0)
        throw ArgumentError("simplex needs n >= 0");
    std::vector<std::string> objs;
    for (int i = 0; i <= n; ++i)
        objs.push_back(std::to_string(i));
    PresentedCategory c(r, objs, 2);
    std::map<std::pair<int, int>, Mor> arrow;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            arrow[{i, j}] = c.add_morphism(i == j ? "1_" + objs[i] : "a" + objs[i] + "_" + objs[j], i, j, 0);
    DGData dg;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                dg.product[{arrow[{j, k}], arrow[{i, j}]}] = Elem(r, arrow[{i, k}]);
    install_dg(c, dg);
    std::vector<Elem> units;
    std::map<Mor, Scalar> eps;
    for (int i = 0; i <= n; ++i) {
        units.emplace_back(r, arrow[{i, i}]);
        eps[arrow[{i, i}]] = 1;
    }
    c.set_units(units);
    c.set_augmentation(eps);
    return c;
}

PresentedCategory invertible_interval(Ring r)
{
    PresentedCategory c(r, {"0", "1"}, 2);
    Mor e0 = c.add_morphism("1_0", 0, 0, 0);
    Mor e1 = c.add_morphism("1_1", 1, 1, 0);
    Mor j01 = c.add_morphism("j01", 0, 1, 0);
    Mor j10 = c.add_morphism("j10", 1, 0, 0);
    DGData dg;
    Mor id[2] = {e0, e1};
    Mor j[2][2] = {{e0, j01}, {j10, e1}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cc = 0; cc < 2; ++cc)
                dg.product[{j[b][cc], j[a][b]}] = Elem(r, j[a][cc]);
    (void)id;
    install_dg(c, dg);
    c.set_units({Elem(r, e0), Elem(r, e1)});
    return c;
}

PresentedCategory dual_numbers(Ring r)
{
    PresentedCategory c(r, {"x"}, 2);
    Mor one = c.add_morphism("1", 0, 0, 0);
    Mor f = c.add_morphism("f", 0, 0, 0);
    c.set({one, one}, Elem(r, one));
    c.set({one, f}, Elem(r, f));
    c.set({f, one}, Elem(r, f));
    c.set_units({Elem(r, one)});
    return c;
}

PresentedCategory builtin(const std::string& name, Ring r)
{
    if (name == "dual-numbers")
        return dual_numbers(r);
    if (name == "interval-I")
        return interval_algebra(r);
    if (name == "invertible-interval")
        return invertible_interval(r);
    if (name.rfind("simplex(", 0) == 0 && name.back() == ')') {
        std::string arg = name.substr(8, name.size() - 9);
        try {
            std::size_t used = 0;
            int n = std::stoi(arg, &used);
            if (used == arg.size())
                return simplex(r, n);
        } catch (const std::exception&) {
        }
    }
    if (name.rfind("disc", 0) == 0 && name.size() > 4) {
        int n = std::stoi(name.substr(4));
        std::vector<std::string> objs;
        for (int i = 0; i < n; ++i)
            objs.push_back("x" + std::to_string(i));
        return disc(r, objs);
    }
    throw ArgumentError("unknown builtin category '" + name + "'");
}

PresentedCategory augment(const PresentedCategory& c)
{
    if (c.unit_policy() != UnitPolicy::non_unital)
        throw ArgumentError("augment expects a non-unital category");
    const Ring& r = c.ring();
    PresentedCategory a(r, c.objects(), std::max(2, c.arity_bound()));
    for (const auto& f : c.morphisms())
        a.add_morphism(f.name, f.src, f.tgt, f.degree);
    for (const auto& [args, v] : c.table())
        a.set(args, v);
    std::vector<Elem> units;
    std::map<Mor, Scalar> eps;
    for (int x = 0; x < c.object_count(); ++x) {
        std::string nm = "1_" + c.object_name(x);
        while (a.find(nm))
            nm += "'";
        Mor u = a.add_morphism(nm, x, x, 0);
        units.emplace_back(r, u);
        eps[u] = 1;
    }
    for (int x = 0; x < c.object_count(); ++x) {
        Mor u = units[x].begin()->first;
        a.set({u, u}, units[x]);
    }
    for (Mor f = 0; f < static_cast<Mor>(c.morphisms().size()); ++f) {
        Mor us = units[a.src(f)].begin()->first;
        Mor ut = units[a.tgt(f)].begin()->first;
        a.set({f, us}, Elem(r, f));
        a.set({ut, f}, Elem(r, f, r.sign(a.degree(f))));
    }
    a.set_units(units);
    a.set_augmentation(eps);
    return a;
}

PresentedCategory reduce(const PresentedCategory& c)
{
    if (c.unit_policy() != UnitPolicy::augmented)
        throw ArgumentError("reduce expects an augmented category");
    const Ring& r = c.ring();
    // kernel basis of epsilon: every basis element except one unit-supporting
    // element per object, corrected by its epsilon value times the unit
    std::vector<Mor> pivot(c.object_count(), -1);
    for (int x = 0; x < c.object_count(); ++x) {
        Elem u = *c.unit(x);
        for (const auto& [f, a] : u)
            if (c.epsilon(f) != 0) {
                pivot[x] = f;
                break;
            }
        if (pivot[x] < 0)
            throw ArgumentError("augmentation does not detect the unit of " + c.object_name(x));
    }
    PresentedCategory out(r, c.objects(), c.arity_bound());
    std::map<Mor, Mor> newid;
    std::vector<Elem> embed; // new id -> element of c
    for (Mor f = 0; f < static_cast<Mor>(c.morphisms().size()); ++f) {
        int x = c.src(f);
        if (c.src(f) == c.tgt(f) && f == pivot[x])
            continue;
        Elem e(r, f);
        if (c.src(f) == c.tgt(f) && c.epsilon(f) != 0) {
            Elem u = *c.unit(x);
            Scalar eu = 0;
            for (const auto& [g, a] : u)
                eu += a * c.epsilon(g);
            e.add(u, r.neg(r.div(c.epsilon(f), eu)));
        }
        newid[f] = out.add_morphism(c.name(f), c.src(f), c.tgt(f), c.degree(f));
        embed.push_back(e);
    }
    // express an element of ker(epsilon) in the new basis: drop pivot terms
    auto project = [&](const Elem& v) {
        Elem o(r);
        for (const auto& [f, a] : v) {
            auto it = newid.find(f);
            if (it != newid.end())
                o.add(it->second, a);
        }
        return o;
    };
    int nb = static_cast<int>(embed.size());
    for (int n = 1; n <= c.arity_bound(); ++n) {
        std::vector<int> cur;
        std::function<void()> go = [&]() {
            if (static_cast<int>(cur.size()) == n) {
                std::vector<Mor> args(cur.begin(), cur.end());
                std::vector<Elem> in;
                for (int i : cur)
                    in.push_back(embed[i]);
                Elem v = m_of(c, in);
                out.set(args, project(v));
                return;
            }
            for (int i = 0; i < nb; ++i) {
                if (!cur.empty() && out.tgt(i) != out.src(cur.back()))
                    continue;
                cur.push_back(i);
                go();
                cur.pop_back();
            }
        };
        go();
    }
    return out;
}

PresentedCategory present(const Category& c, int max_arity, const Bounds* bounds)
{
    if (!c.finite() && !bounds)
        throw ArgumentError("only finite categories can be presented as tables");
    std::vector<std::string> objs;
    for (int x = 0; x < c.object_count(); ++x)
        objs.push_back(c.object_name(x));
    int bound = c.arity_bound() < 0 ? max_arity : std::min(max_arity, c.arity_bound());
    PresentedCategory p(c.ring(), objs, std::max(1, bound));
    std::map<Mor, Mor> id;
    std::vector<Mor> order;
    Bounds all;
    all.lo = -1000000;
    all.hi = 1000000;
    if (bounds)
        all = *bounds;
    for (int x = 0; x < c.object_count(); ++x)
        for (int y = 0; y < c.object_count(); ++y)
            for (Mor f : c.basis(x, y, all)) {
                id[f] = p.add_morphism(c.name(f), x, y, c.degree(f));
                order.push_back(f);
            }
    auto conv = [&](const Elem& e) {
        Elem o(c.ring());
        for (const auto& [f, a] : e) {
            auto it = id.find(f);
            if (it == id.end())
                throw ArgumentError("structure leaves the presented bounds at " + c.name(f));
            o.add(it->second, a);
        }
        return o;
    };
    for (int n = 1; n <= std::max(1, bound); ++n)
        for (const auto& t : composable_tuples(c, n, all)) {
            std::vector<Mor> args;
            for (Mor f : t)
                args.push_back(id.at(f));
            p.set(args, conv(c.m(t)));
        }
    bool has_units = true;
    std::vector<Elem> units;
    for (int x = 0; x < c.object_count(); ++x) {
        auto u = c.unit(x);
        if (!u) {
            has_units = false;
            break;
        }
        units.push_back(conv(*u));
    }
    if (has_units && c.object_count() > 0)
        p.set_units(units);
    return p;
}

} // namespace ainf
