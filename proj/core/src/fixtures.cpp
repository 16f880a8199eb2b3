#include "ainf/fixtures.hpp"

#include "ainf/errors.hpp"
#include "ainf/linalg.hpp"

#include <cstdlib>

namespace ainf {

namespace {

Scalar random_scalar(const Ring& r, std::mt19937_64& rng, bool nonzero)
{
    std::int64_t span = r.kind() == Ring::Kind::prime_field ? r.p() : 5;
    for (;;) {
        auto v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(span));
        if (r.kind() != Ring::Kind::prime_field)
            v -= 2;
        Scalar s = r.from_int(v);
        if (!nonzero || s != 0)
            return s;
    }
}

int uniform(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace

std::uint64_t fixture_seed(std::uint64_t fallback)
{
    const char* s = std::getenv("AINF_SEED");
    if (!s || !*s)
        return fallback;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ArgumentError(std::string("AINF_SEED is not an unsigned integer: ") + s);
    }
}

DGQuiver random_dg_quiver(Ring r, std::mt19937_64& rng, const QuiverShape& shape)
{
    int n = uniform(rng, shape.acyclic ? 2 : 1, shape.max_objects);
    std::vector<std::string> objs;
    for (int i = 0; i < n; ++i)
        objs.push_back("o" + std::to_string(i));
    DGQuiver q(r, objs);
    int gens = uniform(rng, 1, shape.max_gens);
    std::vector<bool> closed;
    for (int g = 0; g < gens; ++g) {
        int x = uniform(rng, 0, n - 1), y = uniform(rng, 0, n - 1);
        if (shape.acyclic) {
            x = uniform(rng, 0, n - 2);
            y = uniform(rng, x + 1, n - 1);
        }
        int deg = uniform(rng, shape.lo, shape.hi);
        // Sometimes reuse endpoints of an earlier closed generator one degree
        // up, so that a nonzero differential is possible.
        if (g > 0 && rng() % 2 == 0) {
            int h = uniform(rng, 0, g - 1);
            const auto& hg = q.gen(h);
            if (closed[static_cast<std::size_t>(h)] && hg.degree - 1 >= shape.lo) {
                x = hg.src;
                y = hg.tgt;
                deg = hg.degree - 1;
            }
        }
        q.add("g" + std::to_string(g), x, y, deg);
        Vec d(r);
        for (int h = 0; h < g; ++h) {
            const auto& hg = q.gen(h);
            if (closed[static_cast<std::size_t>(h)] && hg.src == x && hg.tgt == y && hg.degree == deg + 1)
                d.add(h, random_scalar(r, rng, false));
        }
        if (!d.is_zero())
            q.set_d(g, d);
        closed.push_back(d.is_zero());
    }
    q.validate();
    return q;
}

Elem random_elem(const Category& c, int x, int y, int d, std::mt19937_64& rng, const Bounds& b)
{
    Elem e = c.zero();
    for (Mor f : c.basis(x, y, b))
        if (c.degree(f) == d)
            e.add(f, random_scalar(c.ring(), rng, false));
    return e;
}

std::shared_ptr<PresentedCategory> random_ainf_category(Ring r, std::mt19937_64& rng)
{
    QuiverShape shape;
    shape.max_objects = 4;
    shape.max_gens = 5;
    shape.lo = -1;
    shape.hi = 1;
    shape.acyclic = true;
    DGQuiver q = random_dg_quiver(r, rng, shape);
    // a backbone o0 -> o1 -> o2 -> o3 guarantees composable triples
    while (q.object_count() < 4)
        q = random_dg_quiver(r, rng, shape);
    for (int i = 0; i < 3; ++i)
        q.add("b" + std::to_string(i), i, i + 1, uniform(rng, -1, 1));
    auto free = free_category(q, FreeFlavor::dg);
    Bounds b;
    b.max_weight = 3;
    b.lo = -1000;
    b.hi = 1000;
    auto dg = std::make_shared<PresentedCategory>(present(*free, 2, &b));
    // gauge transport: A' carries m'^n making Phi : A' -> A a functor
    auto a = std::make_shared<PresentedCategory>(r, dg->objects(), 3);
    for (const auto& mo : dg->morphisms())
        a->add_morphism(mo.name, mo.src, mo.tgt, mo.degree);
    std::vector<int> objs;
    for (int x = 0; x < a->object_count(); ++x)
        objs.push_back(x);
    TableFunctor phi(a, dg, objs, 2);
    Bounds all = all_degrees();
    for (int x = 0; x < a->object_count(); ++x)
        for (int y = 0; y < a->object_count(); ++y)
            for (Mor f : a->basis(x, y, all))
                phi.set({f}, dg->elem(f));
    for (const auto& t : composable_tuples(*a, 2, all)) {
        int d = a->degree(t[0]) + a->degree(t[1]) - 1;
        if (rng() % 2 == 0)
            phi.set(t, random_elem(*dg, a->src(t[1]), a->tgt(t[0]), d, rng, all));
    }
    for (const auto& [t, v] : dg->table())
        if (t.size() == 1)
            a->set(t, v);
    for (int n = 2; n <= 3; ++n)
        for (const auto& t : composable_tuples(*a, n, all)) {
            Elem res = functor_residue(phi, t);
            if (!res.is_zero())
                a->set(t, res);
        }
    return a;
}

FunPtr random_strict_functor(std::shared_ptr<const TreeCategory> free, CatPtr target, std::vector<int> objects,
                             std::mt19937_64& rng, const Bounds& tb)
{
    const auto& gens = free->spec().gens;
    std::vector<Elem> images(gens.size(), target->zero());
    std::vector<bool> done(gens.size(), false);
    std::vector<int> hits(gens.size(), 0);
    for (const auto& g : gens)
        for (const auto& [l, c] : g.d)
            ++hits[static_cast<std::size_t>(TreeCategory::gen_of(l))];
    auto cycles = [&](int x, int y, int d) {
        HomComplex h = hom_complex(*target, x, y, tb);
        std::vector<int> idx;
        std::vector<Vec> imgs;
        for (std::size_t i = 0; i < h.mors.size(); ++i)
            if (target->degree(h.mors[i]) == d) {
                idx.push_back(static_cast<int>(i));
                imgs.push_back(h.d[i]);
            }
        Elem e = target->zero();
        for (const auto& k : kernel(target->ring(), imgs)) {
            Vec v(target->ring());
            for (const auto& [i, c] : k)
                v.add(idx.at(static_cast<std::size_t>(i)), c);
            e.add(h.to_elem(target->ring(), v), random_scalar(target->ring(), rng, false));
        }
        return e;
    };
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const auto& gi = gens[g];
        if (gi.unit || gi.d.is_zero())
            continue;
        int x = objects.at(gi.src), y = objects.at(gi.tgt);
        auto [l, c] = *gi.d.begin();
        std::size_t h = static_cast<std::size_t>(TreeCategory::gen_of(l));
        if (gi.d.size() == 1 && hits[h] == 1) {
            // pair (g, d g) -> (a, m^1 a)
            Elem a = random_elem(*target, x, y, gi.degree, rng, tb);
            Elem da = target->zero();
            for (const auto& [f, s] : a)
                da.add(target->m({f}), s);
            images[g] = a;
            images[h] = da.scaled(target->ring().inv(c));
            done[h] = true;
        } else {
            images[g] = cycles(x, y, gi.degree);
            for (const auto& [l2, c2] : gi.d) {
                std::size_t h2 = static_cast<std::size_t>(TreeCategory::gen_of(l2));
                images[h2] = target->zero();
                done[h2] = true;
            }
        }
        done[g] = true;
    }
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (!gens[g].unit && !done[g])
            images[g] = cycles(objects.at(gens[g].src), objects.at(gens[g].tgt), gens[g].degree);
    std::vector<Elem> plain;
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (!gens[g].unit)
            plain.push_back(images[g]);
    return lift_quiver_map(free, target, std::move(objects), plain);
}

Prenatural random_prenatural(FunPtr f, FunPtr g, int degree, int bound, std::mt19937_64& rng, bool unital)
{
    Prenatural t(f, g, degree, bound, unital);
    const Category& a = t.source();
    const Category& b = t.target();
    Bounds all = all_degrees();
    for (int x = 0; x < a.object_count(); ++x)
        t.set(x, random_elem(b, f->on_object(x), g->on_object(x), degree, rng, all));
    for (const auto& tu : prenatural_tuples(a, bound, unital, all)) {
        int d = degree - static_cast<int>(tu.size());
        for (Mor m : tu)
            d += a.degree(m);
        Elem v = random_elem(b, f->on_object(a.src(tu.back())), g->on_object(a.tgt(tu.front())), d, rng, all);
        if (!v.is_zero())
            t.set(tu, v);
    }
    return t;
}

Elem random_tree_element(const TreeCategory& c, int leaves, std::mt19937_64& rng)
{
    // random composable label path, built right to left (x_1 first)
    int labels = c.old() ? 0 : static_cast<int>(c.spec().gens.size());
    std::vector<std::int32_t> pool;
    if (c.old()) {
        Bounds all = all_degrees();
        for (int x = 0; x < c.old()->object_count(); ++x)
            for (int y = 0; y < c.old()->object_count(); ++y)
                for (Mor f : c.old()->basis(x, y, all))
                    pool.push_back(TreeCategory::old_label(f));
    }
    for (int g = 0; g < labels; ++g)
        if (!c.spec().gens[static_cast<std::size_t>(g)].unit)
            pool.push_back(TreeCategory::gen_label(g));
    for (std::size_t g = 0; c.old() && g < c.spec().gens.size(); ++g)
        pool.push_back(TreeCategory::gen_label(static_cast<int>(g)));
    if (pool.empty())
        return c.zero();
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<std::int32_t> path{pool[rng() % pool.size()]};
        while (static_cast<int>(path.size()) < leaves) {
            std::vector<std::int32_t> next;
            for (auto l : pool)
                if (c.label_src(l) == c.label_tgt(path.back()))
                    next.push_back(l);
            if (next.empty())
                break;
            path.push_back(next[rng() % next.size()]);
        }
        if (static_cast<int>(path.size()) != leaves)
            continue;
        // written order: the last applied label first
        std::vector<Mor> args;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            Elem lf = c.leaf(*it);
            if (lf.size() != 1)
                break;
            args.push_back(lf.begin()->first);
        }
        if (args.size() != path.size())
            continue;
        // random bracketing by grafting random consecutive blocks
        std::vector<Elem> parts;
        for (Mor f : args)
            parts.push_back(c.elem(f));
        while (parts.size() > 1) {
            std::size_t k = 2 + rng() % (parts.size() - 1);
            std::size_t at = rng() % (parts.size() - k + 1);
            std::vector<Elem> block(parts.begin() + static_cast<long>(at), parts.begin() + static_cast<long>(at + k));
            Elem g = m_of(c, block);
            parts.erase(parts.begin() + static_cast<long>(at), parts.begin() + static_cast<long>(at + k));
            parts.insert(parts.begin() + static_cast<long>(at), g);
        }
        Elem out = parts[0];
        if (!out.is_zero())
            return out.scaled(random_scalar(c.ring(), rng, true));
    }
    return c.zero();
}

ContractibleSummand contractible_summand(std::shared_ptr<const PresentedCategory> b)
{
    if (b->arity_bound() > 2)
        throw ArgumentError("contractible summand needs a DG presentation");
    const Ring& r = b->ring();
    std::vector<std::string> objs;
    for (int x = 0; x < b->object_count(); ++x)
        objs.push_back(b->object_name(x));
    auto c = std::make_shared<PresentedCategory>(r, objs, 2);
    const int ldeg[3] = {0, -1, 0};
    const char* suffix[3] = {"", ".e", ".d"};
    const auto& mors = b->morphisms();
    auto id = [](Mor f, int l) { return static_cast<Mor>(3 * f + l); };
    for (const auto& m : mors)
        for (int l = 0; l < 3; ++l)
            c->add_morphism(m.name + suffix[l], m.src, m.tgt, m.degree + ldeg[l]);
    auto tensor = [&](const Elem& e, int l) {
        return e.map_keys<Mor>([&](Mor f) { return id(f, l); });
    };
    DGData data;
    for (std::size_t i = 0; i < mors.size(); ++i) {
        Mor f = static_cast<Mor>(i);
        int deg = mors[i].degree;
        Elem df = b->m({f}).scaled(r.sign(deg));
        for (int l = 0; l < 3; ++l) {
            Elem v = tensor(df, l);
            if (l == 1)
                v.add(id(f, 2), r.sign(deg));
            data.d[id(f, l)] = v;
        }
    }
    for (std::size_t i2 = 0; i2 < mors.size(); ++i2)
        for (std::size_t i1 = 0; i1 < mors.size(); ++i1) {
            if (mors[i2].src != mors[i1].tgt)
                continue;
            Mor f2 = static_cast<Mor>(i2), f1 = static_cast<Mor>(i1);
            Elem prod = b->m({f2, f1}).scaled(r.sign(mors[i1].degree));
            for (int l2 = 0; l2 < 3; ++l2)
                for (int l1 = 0; l1 < 3; ++l1) {
                    if (l2 != 0 && l1 != 0)
                        continue;
                    int l = l2 == 0 ? l1 : l2;
                    data.product[{id(f2, l2), id(f1, l1)}] =
                        tensor(prod, l).scaled(r.sign(ldeg[l2] * mors[i1].degree));
                }
        }
    install_dg(*c, data);
    if (b->unit_policy() != UnitPolicy::non_unital) {
        std::vector<Elem> units;
        for (int x = 0; x < b->object_count(); ++x)
            units.push_back(tensor(*b->unit(x), 0));
        c->set_units(units);
    }
    std::vector<int> ids;
    for (int x = 0; x < b->object_count(); ++x)
        ids.push_back(x);
    CatPtr bp = b;
    auto proj = std::make_shared<StrictFunctor>(c, bp, ids, [r](Mor f) {
        return f % 3 == 0 ? Elem(r, f / 3) : Elem(r);
    });
    return {c, proj};
}

} // namespace ainf
