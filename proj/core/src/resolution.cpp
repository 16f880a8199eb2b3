#include "ainf/resolution.hpp"

#include "ainf/errors.hpp"
#include "ainf/linalg.hpp"
#include "ainf/presented.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>
#include <sstream>

namespace ainf {

namespace {

Bounds window(int w, int lo, int hi)
{
    Bounds b;
    b.max_weight = w;
    b.lo = lo;
    b.hi = hi;
    return b;
}

Bounds full_bounds(const Category& c)
{
    Bounds b;
    b.max_weight = c.max_weight();
    return b;
}

std::vector<Vec> cycles(const Ring& r, const HomComplex& h, int k)
{
    auto idx = h.module.in_degree(k);
    std::vector<Vec> imgs;
    for (int i : idx)
        imgs.push_back(h.d[i]);
    std::vector<Vec> out;
    for (const auto& kv : kernel(r, imgs)) {
        Vec v(r);
        for (const auto& [j, c] : kv)
            v.add(idx[j], c);
        out.push_back(v);
    }
    return out;
}

Echelon boundaries(const Ring& r, const HomComplex& h, int k)
{
    Echelon e(r);
    for (int i : h.module.in_degree(k - 1))
        e.insert(h.d[i]);
    return e;
}

Vec combine(const Ring& r, const std::vector<Vec>& cols, const Vec& v)
{
    Vec out(r);
    for (const auto& [i, c] : v)
        out.add(cols.at(i), c);
    return out;
}

// Psi images of every basis element of a stage hom complex, in target
// coordinates.
std::vector<Vec> psi_columns(const Functor& psi, const HomComplex& hs, const HomComplex& ht)
{
    std::vector<Vec> cols;
    for (Mor e : hs.mors)
        cols.push_back(ht.to_vec(psi.apply({e})));
    return cols;
}

// Some a in degree k - 1 of the target with m1(a) = v.
std::optional<Vec> m1_preimage(const Ring& r, const HomComplex& ht, int k, const Vec& v)
{
    if (v.is_zero())
        return Vec(r);
    auto idx = ht.module.in_degree(k - 1);
    std::vector<Vec> imgs;
    for (int i : idx)
        imgs.push_back(ht.d[i]);
    auto x = preimage(r, imgs, v);
    if (!x)
        return std::nullopt;
    Vec out(r);
    for (const auto& [j, c] : *x)
        out.add(idx[j], c);
    return out;
}

Lin<std::int32_t> as_old_labels(const Elem& t)
{
    return t.map_keys<std::int32_t>([](Mor f) { return TreeCategory::old_label(f); });
}

int weight_of(const Category& c, const Elem& t)
{
    int w = 1;
    for (const auto& [f, v] : t)
        w = std::max(w, c.weight(f));
    return w;
}

std::vector<int> identity_objects(int n)
{
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ids[static_cast<std::size_t>(i)] = i;
    return ids;
}

std::vector<std::string> object_names(const Category& c)
{
    std::vector<std::string> out;
    for (int x = 0; x < c.object_count(); ++x)
        out.push_back(c.object_name(x));
    return out;
}

std::shared_ptr<TreeCategory> make_stage(CatPtr old, std::vector<TreeGenerator> gens, const ResolutionOptions& o)
{
    TreeSpec s;
    s.ring = old->ring();
    s.old = std::move(old);
    s.gens = std::move(gens);
    s.collapse = true;
    s.dg = o.dg;
    s.units = o.unital ? TreeSpec::Units::inherit : TreeSpec::Units::none;
    return std::make_shared<TreeCategory>(std::move(s));
}

FunPtr make_psi(std::shared_ptr<const TreeCategory> stage, FunPtr prev, std::vector<Elem> images, CatPtr target)
{
    auto ids = identity_objects(stage->object_count());
    return std::make_shared<EvalFunctor>(stage, target, ids, [prev, images](std::int32_t l) {
        if (TreeCategory::is_old(l))
            return prev->apply({TreeCategory::old_of(l)});
        return images.at(static_cast<std::size_t>(TreeCategory::gen_of(l)));
    });
}

Stage stage_zero(CatPtr target, const ResolutionOptions& o)
{
    const Ring& r = target->ring();
    Stage s;
    s.index = 0;
    auto ids = identity_objects(target->object_count());
    if (o.unital) {
        auto d = std::make_shared<PresentedCategory>(disc(r, object_names(*target)));
        s.cat = d;
        CatPtr dc = d;
        s.psi = std::make_shared<StrictFunctor>(dc, target, ids,
                                                [target, dc](Mor f) { return *target->unit(dc->src(f)); });
    } else {
        auto z = std::make_shared<PresentedCategory>(r, object_names(*target), 1);
        s.cat = z;
        s.psi = std::make_shared<StrictFunctor>(z, target, ids, [r](Mor) { return Elem(r); });
    }
    return s;
}

struct Pending {
    std::vector<TreeGenerator> gens;
    std::vector<Elem> images;
    std::vector<StageGenerator> records;

    void add(const Category& prev, const std::string& name, const std::string& kind, int x, int y, int degree,
             const Elem& d, const Elem& image)
    {
        int w = weight_of(prev, d);
        TreeGenerator g{name, x, y, degree, w, as_old_labels(d), false};
        gens.push_back(g);
        images.push_back(image);
        records.push_back({name, kind, x, y, degree, w, d, image});
    }
};

Stage finish_stage(int index, CatPtr prev_cat, FunPtr prev_psi, Pending p, CatPtr target, const ResolutionOptions& o)
{
    Stage s;
    s.index = index;
    auto cat = make_stage(prev_cat, p.gens, o);
    s.cat = cat;
    s.gens = std::move(p.records);
    s.psi = make_psi(cat, std::move(prev_psi), std::move(p.images), std::move(target));
    return s;
}

std::string idx_name(const std::string& prefix, std::size_t i)
{
    return prefix + "_" + std::to_string(i);
}

// ---- basis-mode stage generators ----

Pending stage_one_generators(const Stage& s0, CatPtr target, const ResolutionOptions& o)
{
    const Ring& r = target->ring();
    const Category& t = *target;
    Pending p;
    for (int x = 0; x < t.object_count(); ++x)
        for (int y = 0; y < t.object_count(); ++y) {
            auto ht = hom_complex(t, x, y, full_bounds(t));
            for (int k = o.lo; k <= o.hi; ++k) {
                Echelon e(r);
                if (o.unital && x == y && k == 0)
                    e.insert(ht.to_vec(*t.unit(x)));
                for (const auto& z : cycles(r, ht, k))
                    if (e.insert(z))
                        p.add(*s0.cat, idx_name("z1", p.gens.size()), "cycle", x, y, k, Elem(r), ht.to_elem(r, z));
            }
        }
    if (o.unital)
        for (int x = 0; x < t.object_count(); ++x) {
            auto ht = hom_complex(t, x, x, full_bounds(t));
            auto a = m1_preimage(r, ht, 0, ht.to_vec(*t.unit(x)));
            if (a)
                p.add(*s0.cat, "h1_" + t.object_name(x), "contraction", x, x, -1, *s0.cat->unit(x),
                      ht.to_elem(r, *a));
        }
    return p;
}

Pending stage_n_generators(int n, const Stage& prev, CatPtr target, const ResolutionOptions& o)
{
    const Ring& r = target->ring();
    const Category& t = *target;
    const Category& s = *prev.cat;
    const int no = t.object_count();
    Pending p;
    std::vector<HomComplex> hts;
    for (int x = 0; x < no; ++x)
        for (int y = 0; y < no; ++y)
            hts.push_back(hom_complex(t, x, y, full_bounds(t)));

    // (i) kill window cycles whose image is a boundary, by increasing weight
    for (int w = 1; w <= o.max_weight; ++w) {
        auto partial = make_stage(prev.cat, p.gens, o);
        for (int x = 0; x < no; ++x)
            for (int y = 0; y < no; ++y) {
                const auto& ht = hts[static_cast<std::size_t>(x * no + y)];
                auto hs = hom_complex(s, x, y, window(w, o.lo - 1, o.hi + 1));
                auto hp = hom_complex(*partial, x, y, window(o.max_weight, o.lo - 1, o.hi + 1));
                auto cols = psi_columns(*prev.psi, hs, ht);
                for (int k = o.lo; k <= o.hi; ++k) {
                    auto zs = cycles(r, hs, k);
                    if (zs.empty())
                        continue;
                    Echelon bt = boundaries(r, ht, k);
                    std::vector<Vec> rem;
                    for (const auto& z : zs)
                        rem.push_back(bt.reduce(combine(r, cols, z)));
                    Echelon bp = boundaries(r, hp, k);
                    for (const auto& kv : kernel(r, rem)) {
                        Vec tv = combine(r, zs, kv);
                        Vec emb(r);
                        for (const auto& [i, c] : tv)
                            emb.add(hp.to_vec(partial->leaf(TreeCategory::old_label(hs.mors[i]))), c);
                        if (!bp.insert(emb))
                            continue;
                        auto a = m1_preimage(r, ht, k, combine(r, cols, tv));
                        if (!a)
                            throw StructuralError("image of a kernel cycle is not a boundary", format(s, hs.to_elem(r, tv)));
                        p.add(s, idx_name("k" + std::to_string(n), p.gens.size()), "kernel", x, y, k - 1,
                              hs.to_elem(r, tv), ht.to_elem(r, *a));
                    }
                }
            }
    }

    // (ii) surjectivity onto the window
    auto ext = make_stage(prev.cat, p.gens, o);
    auto ext_psi = make_psi(ext, prev.psi, p.images, target);
    for (int x = 0; x < no; ++x)
        for (int y = 0; y < no; ++y) {
            const auto& ht = hts[static_cast<std::size_t>(x * no + y)];
            auto he = hom_complex(*ext, x, y, window(o.max_weight, o.lo, o.hi));
            auto ecols = psi_columns(*ext_psi, he, ht);
            auto hs = hom_complex(s, x, y, window(o.max_weight, o.lo - 1, o.hi + 2));
            auto scols = psi_columns(*prev.psi, hs, ht);
            for (int k = o.lo; k <= o.hi; ++k) {
                Echelon im(r);
                for (int i : he.module.in_degree(k))
                    im.insert(ecols[static_cast<std::size_t>(i)]);
                auto zs = cycles(r, hs, k + 1);
                std::vector<Vec> zimg;
                for (const auto& z : zs)
                    zimg.push_back(combine(r, scols, z));
                for (int j : ht.module.in_degree(k)) {
                    Vec ej(r, j);
                    if (!im.insert(ej))
                        continue;
                    auto c = preimage(r, zimg, ht.d[static_cast<std::size_t>(j)]);
                    if (!c)
                        continue; // reported by the window verdict
                    Vec tv = combine(r, zs, *c);
                    p.add(s, idx_name("e" + std::to_string(n), p.gens.size()), "surjectivity", x, y, k,
                          hs.to_elem(r, tv), ht.to_elem(r, ej));
                }
            }
        }
    return p;
}

// ---- functorial-mode stage generators ----

std::vector<Vec> span_all(const Ring& r, const std::vector<Vec>& basis, std::size_t cap, bool with_zero)
{
    std::vector<Vec> out;
    if (with_zero)
        out.emplace_back(r);
    if (basis.empty())
        return out;
    for (const auto& cs : coefficient_vectors(r, basis.size(), cap + 1)) {
        Vec v(r);
        for (std::size_t i = 0; i < cs.size(); ++i)
            v.add(basis[i], cs[i]);
        out.push_back(v);
    }
    if (out.size() > cap)
        throw ArgumentError("functorial resolution exceeds the generator cap");
    return out;
}

Pending stage_one_functorial(const Stage& s0, CatPtr target, const ResolutionOptions& o)
{
    const Ring& r = target->ring();
    const Category& t = *target;
    Pending p;
    auto check = [&] {
        if (p.gens.size() > o.generator_cap)
            throw ArgumentError("functorial resolution exceeds the generator cap");
    };
    for (int x = 0; x < t.object_count(); ++x)
        for (int y = 0; y < t.object_count(); ++y) {
            auto ht = hom_complex(t, x, y, full_bounds(t));
            for (int k = o.lo; k <= o.hi; ++k) {
                Echelon units(r);
                if (o.unital && x == y && k == 0)
                    units.insert(ht.to_vec(*t.unit(x)));
                for (const auto& z : span_all(r, cycles(r, ht, k), o.generator_cap, false)) {
                    if (units.contains(z))
                        continue;
                    p.add(*s0.cat, idx_name("z1", p.gens.size()), "cycle", x, y, k, Elem(r), ht.to_elem(r, z));
                    check();
                }
            }
        }
    if (o.unital)
        for (int x = 0; x < t.object_count(); ++x) {
            auto ht = hom_complex(t, x, x, full_bounds(t));
            auto a0 = m1_preimage(r, ht, 0, ht.to_vec(*t.unit(x)));
            if (!a0)
                continue;
            for (const auto& z : span_all(r, cycles(r, ht, -1), o.generator_cap, true)) {
                p.add(*s0.cat, idx_name("h1_" + t.object_name(x), p.gens.size()), "contraction", x, x, -1,
                      *s0.cat->unit(x), ht.to_elem(r, *a0 + z));
                check();
            }
        }
    return p;
}

Pending stage_n_functorial(int n, const Stage& prev, CatPtr target, const ResolutionOptions& o)
{
    const Ring& r = target->ring();
    const Category& t = *target;
    const Category& s = *prev.cat;
    Pending p;
    for (int x = 0; x < t.object_count(); ++x)
        for (int y = 0; y < t.object_count(); ++y) {
            auto ht = hom_complex(t, x, y, full_bounds(t));
            auto hs = hom_complex(s, x, y, window(o.max_weight, o.lo - 1, o.hi + 2));
            auto cols = psi_columns(*prev.psi, hs, ht);
            for (int j = o.lo; j <= o.hi; ++j) {
                // pairs (a, t): |a| = j, t a cycle of degree j + 1, m1(a) = Psi(t)
                auto zs = cycles(r, hs, j + 1);
                Echelon bt = boundaries(r, ht, j + 1);
                std::vector<Vec> rem;
                for (const auto& z : zs)
                    rem.push_back(bt.reduce(combine(r, cols, z)));
                std::vector<Vec> kb;
                for (const auto& kv : kernel(r, rem))
                    kb.push_back(combine(r, zs, kv));
                auto closed = span_all(r, cycles(r, ht, j), o.generator_cap, true);
                // t = 0 would repeat the closed generators of stage 1
                for (const auto& tv : span_all(r, kb, o.generator_cap, false)) {
                    auto a0 = m1_preimage(r, ht, j + 1, combine(r, cols, tv));
                    if (!a0)
                        throw StructuralError("image of a kernel cycle is not a boundary", format(s, hs.to_elem(r, tv)));
                    for (const auto& z : closed) {
                        Vec a = *a0 + z;
                        p.add(s, idx_name("p" + std::to_string(n), p.gens.size()), "pair", x, y, j,
                              hs.to_elem(r, tv), ht.to_elem(r, a));
                        if (p.gens.size() > o.generator_cap)
                            throw ArgumentError("functorial resolution exceeds the generator cap");
                    }
                }
            }
        }
    return p;
}

void require_unital_target(const Category& t, int arity)
{
    for (int x = 0; x < t.object_count(); ++x)
        if (!t.unit(x))
            throw ArgumentError("target object " + t.object_name(x) + " has no strict unit");
    Bounds b = full_bounds(t);
    auto rep = check_strict_units(t, b, std::max(2, std::min(arity, 3)));
    if (!rep.ok)
        throw ArgumentError("target is not strictly unital: " + rep.detail);
}

} // namespace

std::shared_ptr<const TreeCategory> ResolutionTower::top_tree() const
{
    return std::dynamic_pointer_cast<const TreeCategory>(stages.back().cat);
}

WindowVerdict window_verdict(const Category& stage, const Functor& psi, const Category& target, int lo, int hi,
                             int max_weight)
{
    const Ring& r = target.ring();
    WindowVerdict v;
    auto fail = [&](bool& flag, const std::string& what) {
        if (v.detail.empty())
            v.detail = what;
        flag = false;
    };
    for (int x = 0; x < stage.object_count(); ++x)
        for (int y = 0; y < stage.object_count(); ++y) {
            int tx = psi.on_object(x), ty = psi.on_object(y);
            auto hs = hom_complex(stage, x, y, window(max_weight, lo - 1, hi + 1));
            auto ht = hom_complex(target, tx, ty, full_bounds(target));
            auto cols = psi_columns(psi, hs, ht);
            std::string hom = stage.object_name(x) + "->" + stage.object_name(y);
            for (int k = lo; k <= hi; ++k) {
                Echelon im(r);
                for (int i : hs.module.in_degree(k))
                    im.insert(cols[static_cast<std::size_t>(i)]);
                if (im.rank() != ht.module.in_degree(k).size())
                    fail(v.surjective, "Psi misses morphisms of " + hom + " in degree " + std::to_string(k));
            }
            for (int k = lo + 1; k <= hi - 1; ++k) {
                auto zs = cycles(r, hs, k);
                std::size_t bs = boundaries(r, hs, k).rank();
                std::size_t zt = cycles(r, ht, k).size();
                Echelon e = boundaries(r, ht, k);
                std::size_t bt = e.rank();
                for (const auto& z : zs)
                    e.insert(combine(r, cols, z));
                std::size_t img = e.rank() - bt;
                if (e.rank() != zt)
                    fail(v.interior_iso, "H(Psi) not onto on " + hom + " in degree " + std::to_string(k));
                if (zs.size() - img != bs)
                    fail(v.interior_iso, "H(Psi) not injective on " + hom + " in degree " + std::to_string(k));
            }
        }
    return v;
}

ResolutionTower resolve(CatPtr target, const ResolutionOptions& opt)
{
    const Ring& r = target->ring();
    require_field(r, "resolve");
    if (opt.stages < 1 || opt.max_weight < 1 || opt.lo > opt.hi)
        throw ArgumentError("resolve needs K >= 1, W >= 1 and lo <= hi");
    if (opt.unital)
        require_unital_target(*target, target->arity_bound() < 0 ? 3 : target->arity_bound() + 1);
    ResolutionTower t;
    t.target = target;
    t.options = opt;
    t.stages.push_back(stage_zero(target, opt));
    for (int n = 1; n <= opt.stages; ++n) {
        const Stage& prev = t.stages.back();
        Pending p;
        if (n == 1)
            p = opt.functorial ? stage_one_functorial(prev, target, opt) : stage_one_generators(prev, target, opt);
        else
            p = opt.functorial ? stage_n_functorial(n, prev, target, opt) : stage_n_generators(n, prev, target, opt);
        t.stages.push_back(finish_stage(n, prev.cat, prev.psi, std::move(p), target, opt));
        t.verdict = window_verdict(*t.stages.back().cat, *t.stages.back().psi, *target, opt.lo, opt.hi, opt.max_weight);
        if (t.verdict.ok() && !opt.functorial) {
            t.stop_reason = "window verdict holds at stage " + std::to_string(n);
            break;
        }
    }
    if (t.stop_reason.empty())
        t.stop_reason = "stage bound K = " + std::to_string(opt.stages) + " reached";
    if (opt.max_weight > 1)
        t.verdict_lower =
            window_verdict(*t.top().cat, *t.top().psi, *target, opt.lo, opt.hi, opt.max_weight - 1);
    else
        t.verdict_lower = t.verdict;
    return t;
}

ResolutionTower resolve_cm(CatPtr target, ResolutionOptions opt)
{
    opt.unital = false;
    return resolve(std::move(target), opt);
}

std::vector<std::vector<GeneratorSpec>> generator_specs(const ResolutionTower& t)
{
    std::vector<std::vector<GeneratorSpec>> out;
    for (std::size_t n = 1; n < t.stages.size(); ++n) {
        auto tc = std::dynamic_pointer_cast<const TreeCategory>(t.stages[n].cat);
        std::vector<GeneratorSpec> st;
        for (std::size_t g = 0; g < tc->spec().gens.size(); ++g) {
            const auto& gen = tc->spec().gens[g];
            GeneratorSpec gs{gen.name, gen.src, gen.tgt, gen.degree, {}, t.stages[n].gens[g].image};
            for (const auto& [l, c] : gen.d)
                gs.d.emplace_back(tc->label_name(l), c);
            st.push_back(std::move(gs));
        }
        out.push_back(std::move(st));
    }
    return out;
}

namespace {

Elem parse_in(const Category& c, const std::string& name)
{
    if (auto tc = dynamic_cast<const TreeCategory*>(&c))
        return tc->parse_term(name);
    Bounds all;
    all.lo = -1000;
    all.hi = 1000;
    all.max_weight = c.finite() ? c.max_weight() : 8;
    for (int x = 0; x < c.object_count(); ++x)
        for (int y = 0; y < c.object_count(); ++y)
            for (Mor f : c.basis(x, y, all))
                if (c.name(f) == name)
                    return c.elem(f);
    throw ArgumentError("unknown morphism '" + name + "'");
}

} // namespace

ResolutionTower rebuild_tower(CatPtr target, const ResolutionOptions& opt,
                              const std::vector<std::vector<GeneratorSpec>>& stages)
{
    const Ring& r = target->ring();
    ResolutionTower t;
    t.target = target;
    t.options = opt;
    t.stages.push_back(stage_zero(target, opt));
    for (std::size_t n = 0; n < stages.size(); ++n) {
        const Stage& prev = t.stages.back();
        std::vector<TreeGenerator> gens;
        std::vector<Elem> images;
        Stage s;
        s.index = static_cast<int>(n + 1);
        for (const auto& gs : stages[n]) {
            Lin<std::int32_t> d(r);
            Elem dprev(r);
            for (const auto& [term, c] : gs.d) {
                int same = -1;
                for (std::size_t j = 0; j < stages[n].size(); ++j)
                    if (stages[n][j].name == term)
                        same = static_cast<int>(j);
                if (same >= 0) {
                    d.add(TreeCategory::gen_label(same), c);
                    continue;
                }
                Elem e = parse_in(*prev.cat, term);
                dprev.add(e, c);
                d.add(as_old_labels(e), c);
            }
            gens.push_back({gs.name, gs.src, gs.tgt, gs.degree, weight_of(*prev.cat, dprev), d, false});
            images.push_back(gs.image);
            s.gens.push_back({gs.name, "given", gs.src, gs.tgt, gs.degree, gens.back().weight, dprev, gs.image});
        }
        auto cat = make_stage(prev.cat, gens, opt);
        s.cat = cat;
        s.psi = make_psi(cat, prev.psi, images, target);
        t.stages.push_back(std::move(s));
    }
    t.verdict = window_verdict(*t.top().cat, *t.top().psi, *target, opt.lo, opt.hi, opt.max_weight);
    t.verdict_lower = opt.max_weight > 1
                          ? window_verdict(*t.top().cat, *t.top().psi, *target, opt.lo, opt.hi, opt.max_weight - 1)
                          : t.verdict;
    t.stop_reason = "rebuilt from generator data";
    return t;
}

std::vector<TowerCheck> check_tower(const ResolutionTower& t, int max_arity, int check_weight)
{
    const auto& o = t.options;
    const Ring& r = t.target->ring();
    std::vector<TowerCheck> out;
    for (std::size_t n = 1; n < t.stages.size(); ++n) {
        const Stage& prev = t.stages[n - 1];
        const Stage& st = t.stages[n];
        auto tc = std::dynamic_pointer_cast<const TreeCategory>(st.cat);
        std::string sn = std::to_string(n);

        TowerCheck down{"boundaries one stage down, stage " + sn, true, ""};
        for (std::size_t g = 0; g < tc->spec().gens.size() && down.ok; ++g) {
            const auto& gen = tc->spec().gens[g];
            Elem want(r);
            for (const auto& [l, c] : gen.d) {
                if (!TreeCategory::is_old(l)) {
                    down.ok = false;
                    down.detail = "d(" + gen.name + ") involves " + tc->label_name(l) + " of the same stage";
                    break;
                }
                want.add(tc->leaf(l), c);
            }
            if (down.ok && m_of(*tc, {tc->leaf(TreeCategory::gen_label(static_cast<int>(g)))}) != want) {
                down.ok = false;
                down.detail = "m1(" + gen.name + ") differs from its declared boundary";
            }
        }
        out.push_back(down);

        Bounds b = window(check_weight, o.lo - 1, o.hi + 1);
        TowerCheck res{"Psi restricts to the previous stage, stage " + sn, true, ""};
        for (int x = 0; x < prev.cat->object_count() && res.ok; ++x)
            for (int y = 0; y < prev.cat->object_count() && res.ok; ++y)
                for (Mor f : prev.cat->basis(x, y, b))
                    if (st.psi->apply({tc->leaf(TreeCategory::old_label(f)).begin()->first}) !=
                        prev.psi->apply({f})) {
                        res.ok = false;
                        res.detail = "Psi differs on " + prev.cat->name(f);
                        break;
                    }
        out.push_back(res);

        TowerCheck inc{"stage " + std::to_string(n - 1) + " is a subcategory of stage " + sn, true, ""};
        Bounds tb = b;
        tb.max_total_weight = check_weight + 1;
        for (int k = 1; k <= max_arity && inc.ok; ++k)
            for (const auto& tup : composable_tuples(*prev.cat, k, tb)) {
                std::vector<Mor> lifted;
                for (Mor f : tup)
                    lifted.push_back(tc->leaf(TreeCategory::old_label(f)).begin()->first);
                if (tc->m(lifted) != tc->embed_old(prev.cat->m(tup))) {
                    inc.ok = false;
                    inc.detail = "m" + std::to_string(k) + " differs on " + format_tuple(*prev.cat, tup);
                    break;
                }
            }
        out.push_back(inc);

        TowerCheck kill{"Psi-boundary cycles of stage " + std::to_string(n - 1) + " die in stage " + sn, true, ""};
        for (int x = 0; x < prev.cat->object_count() && kill.ok; ++x)
            for (int y = 0; y < prev.cat->object_count() && kill.ok; ++y) {
                auto hs = hom_complex(*prev.cat, x, y, window(o.max_weight, o.lo - 1, o.hi + 1));
                auto hn = hom_complex(*tc, x, y, window(o.max_weight, o.lo - 1, o.hi + 1));
                auto ht = hom_complex(*t.target, x, y, full_bounds(*t.target));
                auto cols = psi_columns(*prev.psi, hs, ht);
                for (int k = o.lo; k <= o.hi && kill.ok; ++k) {
                    auto zs = cycles(r, hs, k);
                    Echelon bt = boundaries(r, ht, k);
                    std::vector<Vec> rem;
                    for (const auto& z : zs)
                        rem.push_back(bt.reduce(combine(r, cols, z)));
                    Echelon bn = boundaries(r, hn, k);
                    for (const auto& kv : kernel(r, rem)) {
                        Vec tv = combine(r, zs, kv);
                        Vec emb(r);
                        for (const auto& [i, c] : tv)
                            emb.add(hn.to_vec(tc->leaf(TreeCategory::old_label(hs.mors[i]))), c);
                        if (!bn.contains(emb)) {
                            kill.ok = false;
                            kill.detail = "cycle " + format(*prev.cat, hs.to_elem(r, tv)) + " survives";
                            break;
                        }
                    }
                }
            }
        out.push_back(kill);
    }
    return out;
}

namespace {

// The element of stage 1 of a functorial tower with d = 0 and Psi = a.
std::optional<Elem> stage_one_cycle(const ResolutionTower& t, const Elem& a, int x, int y)
{
    const Ring& r = t.target->ring();
    auto s1 = std::dynamic_pointer_cast<const TreeCategory>(t.stages.at(1).cat);
    for (std::size_t g = 0; g < t.stages[1].gens.size(); ++g) {
        const auto& gen = t.stages[1].gens[g];
        if (gen.d.is_zero() && gen.image == a)
            return s1->leaf(TreeCategory::gen_label(static_cast<int>(g)));
    }
    auto u = t.target->unit(x);
    if (x == y && u && !u->is_zero()) {
        auto [um, uc] = *u->begin();
        Scalar c = r.div(a.coeff(um), uc);
        if (a == u->scaled(c))
            return s1->unit(x)->scaled(c);
    }
    return std::nullopt;
}

} // namespace

FunPtr tower_map(const ResolutionTower& from, const ResolutionTower& to, FunPtr phi)
{
    if (!from.options.functorial || !to.options.functorial)
        throw ArgumentError("tower maps need functorial towers");
    if (!phi->is_strict())
        throw ArgumentError("tower maps need a strict functor between the targets");
    if (from.stages.size() > to.stages.size())
        throw ArgumentError("target tower has fewer stages");
    const Ring& r = from.target->ring();
    std::vector<int> objs;
    for (int x = 0; x < from.target->object_count(); ++x)
        objs.push_back(phi->on_object(x));
    CatPtr s0 = from.stages[0].cat, t0 = to.stages[0].cat;
    FunPtr cur = std::make_shared<StrictFunctor>(s0, t0, objs, [s0, t0, objs, r](Mor f) {
        auto u = t0->unit(objs.at(static_cast<std::size_t>(s0->src(f))));
        return u ? *u : Elem(r);
    });
    for (std::size_t n = 1; n < from.stages.size(); ++n) {
        auto src = std::dynamic_pointer_cast<const TreeCategory>(from.stages[n].cat);
        auto dst = std::dynamic_pointer_cast<const TreeCategory>(to.stages[n].cat);
        std::map<std::pair<Elem, Elem>, int> keys;
        for (std::size_t g = 0; g < to.stages[n].gens.size(); ++g)
            keys[{to.stages[n].gens[g].image, to.stages[n].gens[g].d}] = static_cast<int>(g);
        std::vector<Elem> gen_image;
        for (const auto& g : from.stages[n].gens) {
            Elem a = apply1(*phi, g.image);
            Elem d = apply1(*cur, g.d);
            if (a.is_zero() && d.is_zero()) {
                gen_image.emplace_back(r);
                continue;
            }
            auto it = keys.find({a, d});
            if (it != keys.end()) {
                gen_image.push_back(dst->leaf(TreeCategory::gen_label(it->second)));
                continue;
            }
            if (d.is_zero()) {
                // a closed image: the stage-1 cycle generator (or a unit multiple), embedded
                if (auto e = stage_one_cycle(to, a, phi->on_object(g.src), phi->on_object(g.tgt))) {
                    Elem v = *e;
                    for (std::size_t j = 2; j <= n; ++j)
                        v = std::dynamic_pointer_cast<const TreeCategory>(to.stages[j].cat)->embed_old(v);
                    gen_image.push_back(v);
                    continue;
                }
            }
            throw StructuralError("no generator of the target tower matches", g.name);
        }
        FunPtr prev = cur;
        cur = std::make_shared<EvalFunctor>(src, dst, objs, [prev, dst, gen_image](std::int32_t l) {
            if (TreeCategory::is_old(l))
                return dst->embed_old(prev->apply({TreeCategory::old_of(l)}));
            return gen_image.at(static_cast<std::size_t>(TreeCategory::gen_of(l)));
        });
    }
    return cur;
}

// ---- certificates ----

SemifreeCertificate certify_semifree(const ResolutionTower& t)
{
    SemifreeCertificate cert;
    FiltrationLevel l0;
    l0.level = 0;
    const Category& s0 = *t.stages[0].cat;
    for (int x = 0; x < s0.object_count(); ++x)
        for (int y = 0; y < s0.object_count(); ++y)
            for (Mor f : s0.basis(x, y, full_bounds(s0)))
                l0.generators.push_back(s0.name(f));
    cert.levels.push_back(l0);
    for (std::size_t n = 1; n < t.stages.size(); ++n) {
        auto tc = std::dynamic_pointer_cast<const TreeCategory>(t.stages[n].cat);
        FiltrationLevel lv;
        lv.level = static_cast<int>(n);
        std::set<std::string> seen;
        for (const auto& g : tc->spec().gens) {
            lv.generators.push_back(g.name);
            if (!seen.insert(g.name).second && cert.valid) {
                cert.valid = false;
                cert.refusal = "stage " + std::to_string(n) + " repeats generator " + g.name;
            }
            // induced differential on the quotient by the previous stage
            for (const auto& [l, c] : g.d)
                if (!TreeCategory::is_old(l) && cert.valid) {
                    cert.valid = false;
                    cert.refusal = "d(" + g.name + ") is not in the previous stage: it involves " + tc->label_name(l);
                }
        }
        cert.levels.push_back(lv);
    }
    cert.checks = check_tower(t);
    for (const auto& c : cert.checks)
        if (!c.ok && cert.valid) {
            cert.valid = false;
            cert.refusal = c.name + ": " + c.detail;
        }
    if (t.options.unital) {
        const Category& top = *t.top().cat;
        for (int x = 0; x < top.object_count(); ++x) {
            NiceUnit nu;
            nu.object = top.object_name(x);
            auto u = top.unit(x);
            if (!u || u->size() != 1 || u->begin()->second != Scalar(1)) {
                nu.ok = false;
                if (cert.valid) {
                    cert.valid = false;
                    cert.refusal = "unit of " + nu.object + " is not a basis element";
                }
            } else {
                // the retraction onto R.1_x is the coefficient of this basis element
                nu.unit = top.name(u->begin()->first);
            }
            cert.units.push_back(nu);
        }
    }
    return cert;
}

SemifreeCertificate triangular_filtration(const DGQuiver& q)
{
    SemifreeCertificate cert;
    const std::size_t n = q.gens().size();
    std::vector<int> level(n, -1);
    std::vector<int> state(n, 0); // 0 new, 1 on stack, 2 done
    std::function<int(std::size_t)> visit = [&](std::size_t g) -> int {
        if (state[g] == 2)
            return level[g];
        if (state[g] == 1)
            throw std::size_t(g);
        state[g] = 1;
        int lv = 0;
        for (const auto& [h, c] : q.d(static_cast<int>(g)))
            lv = std::max(lv, visit(static_cast<std::size_t>(h)) + 1);
        state[g] = 2;
        level[g] = lv;
        return lv;
    };
    try {
        for (std::size_t g = 0; g < n; ++g)
            visit(g);
    } catch (std::size_t g) {
        cert.valid = false;
        cert.refusal = "the differential graph has a cycle through " + q.gen(static_cast<int>(g)).name;
        return cert;
    }
    int top = 0;
    for (int l : level)
        top = std::max(top, l);
    for (int l = 0; l <= top && n > 0; ++l) {
        FiltrationLevel fl;
        fl.level = l;
        for (std::size_t g = 0; g < n; ++g)
            if (level[g] == l)
                fl.generators.push_back(q.gen(static_cast<int>(g)).name);
        cert.levels.push_back(fl);
    }
    return cert;
}

UFiltration u_filtration(const TreeCategory& free, int x, int y, int max_weight)
{
    UFiltration uf;
    for (const auto& g : free.spec().gens)
        if (!g.d.is_zero() || g.weight != 1) {
            uf.ok = false;
            uf.detail = "generator " + g.name + " is not a closed weight-one generator";
            return uf;
        }
    if (free.spec().old || free.spec().dg || free.spec().units != TreeSpec::Units::none)
        throw ArgumentError("U-filtration needs a plain free category");
    // number of composable label words of length m from x to y
    auto paths = [&](int m) {
        std::vector<std::size_t> cnt(static_cast<std::size_t>(free.object_count()), 0);
        cnt[static_cast<std::size_t>(x)] = 1;
        for (int i = 0; i < m; ++i) {
            std::vector<std::size_t> nx(cnt.size(), 0);
            for (const auto& g : free.spec().gens)
                nx[static_cast<std::size_t>(g.tgt)] += cnt[static_cast<std::size_t>(g.src)];
            cnt = nx;
        }
        return cnt[static_cast<std::size_t>(y)];
    };
    for (int m = 1; m <= max_weight; ++m) {
        auto basis = free.basis_exact(x, y, m);
        for (int l = m == 1 ? 0 : 1; l < m; ++l) {
            UFiltrationStep st;
            st.m = m;
            st.l = l;
            st.expected_rank = enumerate_trees(m, l).size() * paths(m);
            for (Mor f : basis) {
                const Code& c = free.code(f);
                int nodes = 0;
                for (auto v : c)
                    nodes += v < 0 ? 1 : 0;
                if (c.size() == 1)
                    nodes = 1;
                if (m - nodes != l)
                    continue;
                st.quotient.push_back(free.name(f));
                for (const auto& [g, v] : m_of(free, {free.elem(f)})) {
                    const Code& cg = free.code(g);
                    int ng = 0;
                    for (auto u : cg)
                        ng += u < 0 ? 1 : 0;
                    if (cg.size() == 1)
                        ng = 1;
                    if (m - ng != l - 1 || free.weight(g) != m)
                        st.lands_lower = false;
                }
            }
            if (!st.lands_lower && uf.ok) {
                uf.ok = false;
                uf.detail = "d(U_{" + std::to_string(m) + "," + std::to_string(l) + "}) leaves U_{m,l-1}";
            }
            if (st.quotient.size() != st.expected_rank && uf.ok) {
                uf.ok = false;
                uf.detail = "quotient U_{" + std::to_string(m) + "," + std::to_string(l) + "} has rank " +
                            std::to_string(st.quotient.size()) + ", expected " + std::to_string(st.expected_rank);
            }
            uf.steps.push_back(std::move(st));
        }
    }
    return uf;
}

// ---- lifting ----

FunPtr lift(const ResolutionTower& tower, FunPtr f, FunPtr g)
{
    const Category& b = f->target();
    const Category& c = g->source();
    const Ring& r = b.ring();
    if (!f->is_strict() || !g->is_strict())
        throw ArgumentError("lift needs strict functors");
    if (&f->source() != tower.top().cat.get())
        throw ArgumentError("F must start at the top stage of the tower");
    if (&g->target() != &b)
        throw ArgumentError("G must end where F ends");
    if (!c.finite())
        throw ArgumentError("lift needs a finite category C");
    CatPtr cp = g->source_ptr();
    // objects: first preimage under G
    std::vector<int> objs;
    for (int x = 0; x < tower.top().cat->object_count(); ++x) {
        int want = f->on_object(x), found = -1;
        for (int z = 0; z < c.object_count() && found < 0; ++z)
            if (g->on_object(z) == want)
                found = z;
        if (found < 0)
            throw ArgumentError("G misses the object " + b.object_name(want));
        objs.push_back(found);
    }
    // F restricted to stage k: F . (inclusion of stage k into the top)
    auto top_of = [&](std::size_t k, const Elem& e) {
        Elem cur = e;
        for (std::size_t j = k + 1; j < tower.stages.size(); ++j) {
            auto tc = std::dynamic_pointer_cast<const TreeCategory>(tower.stages[j].cat);
            cur = tc->embed_old(cur);
        }
        return cur;
    };
    const Category& s0 = *tower.stages[0].cat;
    CatPtr s0p = tower.stages[0].cat;
    FunPtr cur = std::make_shared<StrictFunctor>(s0p, cp, objs, [s0p, cp, objs, r](Mor m) {
        auto u = cp->unit(objs.at(static_cast<std::size_t>(s0p->src(m))));
        if (!u)
            throw ArgumentError("C has no unit at " + cp->object_name(objs.at(static_cast<std::size_t>(s0p->src(m)))));
        return *u;
    });
    if (tower.options.unital)
        for (int x = 0; x < s0.object_count(); ++x) {
            Elem fu = apply1(*f, top_of(0, *s0.unit(x)));
            Elem gu = apply1(*g, *c.unit(objs[static_cast<std::size_t>(x)]));
            if (fu != gu)
                throw StructuralError("G does not send units to F of units", b.object_name(f->on_object(x)));
        }
    for (std::size_t n = 1; n < tower.stages.size(); ++n) {
        auto st = std::dynamic_pointer_cast<const TreeCategory>(tower.stages[n].cat);
        std::vector<Elem> images;
        for (std::size_t gi = 0; gi < st->spec().gens.size(); ++gi) {
            const auto& gen = st->spec().gens[gi];
            Elem fg = apply1(*f, top_of(n, st->leaf(TreeCategory::gen_label(static_cast<int>(gi)))));
            Elem dt(r);
            for (const auto& [l, v] : gen.d)
                dt.add(cur->apply({TreeCategory::old_of(l)}), v);
            int cx = objs[static_cast<std::size_t>(gen.src)], cy = objs[static_cast<std::size_t>(gen.tgt)];
            auto hc = hom_complex(c, cx, cy, full_bounds(c));
            auto hb = hom_complex(b, g->on_object(cx), g->on_object(cy), full_bounds(b));
            auto idx = hc.module.in_degree(gen.degree);
            std::vector<Vec> gcols, stacked;
            // stacked coordinates: B part at 2i, C boundary part at 2i+1
            auto interleave = [&](const Vec& vb, const Vec& vc) {
                Vec out(r);
                for (const auto& [i, v] : vb)
                    out.add(2 * i, v);
                for (const auto& [i, v] : vc)
                    out.add(2 * i + 1, v);
                return out;
            };
            for (int i : idx) {
                Vec gv = hb.to_vec(g->apply({hc.mors[static_cast<std::size_t>(i)]}));
                gcols.push_back(gv);
                stacked.push_back(interleave(gv, hc.d[static_cast<std::size_t>(i)]));
            }
            Vec fv = hb.to_vec(fg);
            if (!preimage(r, gcols, fv))
                throw ArgumentError("G is not surjective onto " + format(b, fg) + ", needed for generator " +
                                    gen.name);
            auto x = preimage(r, stacked, interleave(fv, hc.to_vec(dt)));
            if (!x)
                throw StructuralError("no preimage of " + format(b, fg) + " with the lifted boundary", gen.name);
            Vec sol(r);
            for (const auto& [j, v] : *x)
                sol.add(idx[static_cast<std::size_t>(j)], v);
            images.push_back(hc.to_elem(r, sol));
        }
        FunPtr prev = cur;
        cur = std::make_shared<EvalFunctor>(st, cp, objs, [prev, images](std::int32_t l) {
            if (TreeCategory::is_old(l))
                return prev->apply({TreeCategory::old_of(l)});
            return images.at(static_cast<std::size_t>(TreeCategory::gen_of(l)));
        });
    }
    return cur;
}

} // namespace ainf
