#include "ainf/limits.hpp"

#include "ainf/errors.hpp"
#include "ainf/funcat.hpp"
#include "ainf/linalg.hpp"

#include <sstream>

namespace ainf {

namespace {

int combined_bound(const Category& a, const Category& b)
{
    if (a.arity_bound() < 0 || b.arity_bound() < 0)
        return -1;
    return std::max(a.arity_bound(), b.arity_bound());
}

void require_strict(const Functor& f, const char* what)
{
    if (!f.is_strict())
        throw ArgumentError(std::string(what) + " needs strict functors");
}

// Strict-functor check plus equality of composites on bounded tuples.
bool strict_and_equal(const Functor& m, const Functor& composite, const Functor& leg, const Bounds& b, int arity,
                      std::string& why)
{
    IdentityReport r = check_strict_identity(m, arity, b);
    if (!r.ok) {
        why = "mediating functor is not strict: " + r.detail;
        return false;
    }
    std::string d;
    if (!functors_equal(composite, leg, 1, b, &d)) {
        why = "composite differs from a leg: " + d;
        return false;
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// product

ProductCategory::ProductCategory(CatPtr a, CatPtr b) : a_(std::move(a)), b_(std::move(b))
{
    if (a_->ring() != b_->ring())
        throw ArgumentError("product factors live over different rings");
}

std::string ProductCategory::object_name(int p) const
{
    return "(" + a_->object_name(left_object(p)) + "," + b_->object_name(right_object(p)) + ")";
}

Mor ProductCategory::inject(int side, Mor f, int P, int Q) const
{
    auto k = std::make_tuple(side, f, P, Q);
    auto it = index_.find(k);
    if (it != index_.end())
        return it->second;
    const Category& c = side == 0 ? *a_ : *b_;
    int x = side == 0 ? left_object(P) : right_object(P);
    int y = side == 0 ? left_object(Q) : right_object(Q);
    if (c.src(f) != x || c.tgt(f) != y)
        throw ArgumentError("component morphism does not match the object pair");
    Mor id = static_cast<Mor>(entries_.size());
    entries_.push_back({side, f, P, Q});
    index_.emplace(k, id);
    return id;
}

Elem ProductCategory::inject(int side, const Elem& e, int P, int Q) const
{
    Elem out = zero();
    for (const auto& [f, c] : e)
        out.add(inject(side, f, P, Q), c);
    return out;
}

int ProductCategory::degree(Mor f) const
{
    const Entry& e = entry(f);
    return (e.side == 0 ? *a_ : *b_).degree(e.f);
}

int ProductCategory::weight(Mor f) const
{
    const Entry& e = entry(f);
    return (e.side == 0 ? *a_ : *b_).weight(e.f);
}

std::string ProductCategory::name(Mor f) const
{
    const Entry& e = entry(f);
    // the zero component names its hom so that names stay unique
    if (e.side == 0)
        return "(" + a_->name(e.f) + ",0:" + b_->object_name(right_object(e.P)) + ">" +
               b_->object_name(right_object(e.Q)) + ")";
    return "(0:" + a_->object_name(left_object(e.P)) + ">" + a_->object_name(left_object(e.Q)) + "," +
           b_->name(e.f) + ")";
}

Elem ProductCategory::m(const std::vector<Mor>& args) const
{
    require_composable(*this, args);
    int side = entry(args[0]).side;
    std::vector<Mor> parts;
    for (Mor f : args) {
        if (entry(f).side != side)
            return zero();
        parts.push_back(entry(f).f);
    }
    const Category& c = side == 0 ? *a_ : *b_;
    return inject(side, c.m(parts), src(args.back()), tgt(args.front()));
}

int ProductCategory::arity_bound() const
{
    return combined_bound(*a_, *b_);
}

std::vector<Mor> ProductCategory::basis_exact(int P, int Q, int w) const
{
    std::vector<Mor> out;
    for (Mor f : a_->basis_exact(left_object(P), left_object(Q), w))
        out.push_back(inject(0, f, P, Q));
    for (Mor f : b_->basis_exact(right_object(P), right_object(Q), w))
        out.push_back(inject(1, f, P, Q));
    return out;
}

std::optional<Elem> ProductCategory::unit(int p) const
{
    auto ua = a_->unit(left_object(p));
    auto ub = b_->unit(right_object(p));
    if (!ua || !ub)
        return std::nullopt;
    return inject(0, *ua, p, p) + inject(1, *ub, p, p);
}

FunPtr projection(std::shared_ptr<const ProductCategory> p, int side)
{
    std::vector<int> objs;
    for (int x = 0; x < p->object_count(); ++x)
        objs.push_back(side == 0 ? p->left_object(x) : p->right_object(x));
    CatPtr tgt = side == 0 ? p->left_ptr() : p->right_ptr();
    return std::make_shared<StrictFunctor>(p, tgt, objs, [p, side, tgt](Mor f) {
        return p->side(f) == side ? tgt->elem(p->component(f)) : tgt->zero();
    });
}

FunPtr pairing(std::shared_ptr<const ProductCategory> p, FunPtr f, FunPtr g)
{
    require_strict(*f, "pairing");
    require_strict(*g, "pairing");
    if (&f->source() != &g->source() || &f->target() != &p->left() || &g->target() != &p->right())
        throw ArgumentError("pairing legs do not form a cone over the product");
    std::vector<int> objs;
    for (int x = 0; x < f->source().object_count(); ++x)
        objs.push_back(p->pair(f->on_object(x), g->on_object(x)));
    return std::make_shared<StrictFunctor>(f->source_ptr(), p, objs, [p, f, g](Mor c) {
        const Category& s = f->source();
        int P = p->pair(f->on_object(s.src(c)), g->on_object(s.src(c)));
        int Q = p->pair(f->on_object(s.tgt(c)), g->on_object(s.tgt(c)));
        return p->inject(0, f->apply({c}), P, Q) + p->inject(1, g->apply({c}), P, Q);
    });
}

// ---------------------------------------------------------------------------
// coproduct

CoproductCategory::CoproductCategory(CatPtr a, CatPtr b) : a_(std::move(a)), b_(std::move(b))
{
    if (a_->ring() != b_->ring())
        throw ArgumentError("coproduct summands live over different rings");
}

std::string CoproductCategory::object_name(int x) const
{
    return x < offset() ? a_->object_name(x) : b_->object_name(x - offset());
}

int CoproductCategory::src(Mor f) const
{
    return part(f).src(component(f)) + (side(f) == 0 ? 0 : offset());
}

int CoproductCategory::tgt(Mor f) const
{
    return part(f).tgt(component(f)) + (side(f) == 0 ? 0 : offset());
}

Elem CoproductCategory::lift(int s, const Elem& e) const
{
    Elem out = zero();
    for (const auto& [f, c] : e)
        out.add(inject(s, f), c);
    return out;
}

Elem CoproductCategory::m(const std::vector<Mor>& args) const
{
    require_composable(*this, args);
    int s = side(args[0]);
    std::vector<Mor> parts;
    for (Mor f : args)
        parts.push_back(component(f));
    return lift(s, (s == 0 ? *a_ : *b_).m(parts));
}

int CoproductCategory::arity_bound() const
{
    return combined_bound(*a_, *b_);
}

std::vector<Mor> CoproductCategory::basis_exact(int x, int y, int w) const
{
    std::vector<Mor> out;
    if (x < offset() && y < offset())
        for (Mor f : a_->basis_exact(x, y, w))
            out.push_back(inject(0, f));
    else if (x >= offset() && y >= offset())
        for (Mor f : b_->basis_exact(x - offset(), y - offset(), w))
            out.push_back(inject(1, f));
    return out;
}

std::optional<Elem> CoproductCategory::unit(int x) const
{
    auto u = x < offset() ? a_->unit(x) : b_->unit(x - offset());
    if (!u)
        return std::nullopt;
    return lift(x < offset() ? 0 : 1, *u);
}

FunPtr injection(std::shared_ptr<const CoproductCategory> c, int side)
{
    const Category& part = side == 0 ? c->left() : c->right();
    std::vector<int> objs;
    for (int x = 0; x < part.object_count(); ++x)
        objs.push_back(x + (side == 0 ? 0 : c->offset()));
    // the summand is shared with the coproduct through an aliasing pointer
    CatPtr src(c, &part);
    return std::make_shared<StrictFunctor>(src, c, objs, [c, side](Mor f) {
        return Elem(c->ring(), CoproductCategory::inject(side, f));
    });
}

FunPtr copairing(std::shared_ptr<const CoproductCategory> c, FunPtr f, FunPtr g)
{
    require_strict(*f, "copairing");
    require_strict(*g, "copairing");
    if (&f->source() != &c->left() || &g->source() != &c->right() || &f->target() != &g->target())
        throw ArgumentError("copairing legs do not form a cocone under the coproduct");
    std::vector<int> objs;
    for (int x = 0; x < c->object_count(); ++x)
        objs.push_back(x < c->offset() ? f->on_object(x) : g->on_object(x - c->offset()));
    return std::make_shared<StrictFunctor>(c, f->target_ptr(), objs, [f, g](Mor m) {
        const Functor& h = CoproductCategory::side(m) == 0 ? *f : *g;
        return h.apply({CoproductCategory::component(m)});
    });
}

// ---------------------------------------------------------------------------
// equalizer

EqualizerCategory::EqualizerCategory(CatPtr a, FunPtr f, FunPtr g) : a_(std::move(a))
{
    require_strict(*f, "equalizer");
    require_strict(*g, "equalizer");
    if (!a_->finite())
        throw ArgumentError("equalizers are built for finite categories");
    const Ring& r = a_->ring();
    require_field(r, "equalizer");
    for (int x = 0; x < a_->object_count(); ++x)
        if (f->on_object(x) == g->on_object(x)) {
            local_[x] = static_cast<int>(objs_.size());
            objs_.push_back(x);
        }
    Bounds all = all_degrees();
    all.max_weight = a_->max_weight();
    int coord = 0;
    for (int x = 0; x < a_->object_count(); ++x)
        for (int y = 0; y < a_->object_count(); ++y)
            for (Mor m : a_->basis(x, y, all))
                pos_[m] = coord++;
    for (std::size_t i = 0; i < objs_.size(); ++i)
        for (std::size_t j = 0; j < objs_.size(); ++j) {
            int x = objs_[i], y = objs_[j];
            auto basis = a_->basis(x, y, all);
            std::map<int, std::vector<Mor>> by_deg;
            for (Mor m : basis)
                by_deg[a_->degree(m)].push_back(m);
            auto ech = std::make_shared<Echelon>(r);
            auto& hom = homs_[{static_cast<int>(i), static_cast<int>(j)}];
            for (const auto& [d, ms] : by_deg) {
                std::vector<Vec> imgs;
                std::map<Mor, int> fpos;
                for (Mor m : ms) {
                    Elem diff = f->apply({m}) - g->apply({m});
                    Vec v(r);
                    for (const auto& [t, c] : diff) {
                        auto it = fpos.emplace(t, static_cast<int>(fpos.size())).first;
                        v.add(it->second, c);
                    }
                    imgs.push_back(v);
                }
                for (const auto& k : kernel(r, imgs)) {
                    Elem e = a_->zero();
                    for (const auto& [idx, c] : k)
                        e.add(ms.at(static_cast<std::size_t>(idx)), c);
                    Mor id = static_cast<Mor>(mors_.size());
                    Vec v(r);
                    for (const auto& [t, c] : e)
                        v.add(pos_.at(t), c);
                    Vec tag(r, static_cast<int>(id));
                    ech->insert(v, tag);
                    mors_.push_back({static_cast<int>(i), static_cast<int>(j), d, e});
                    hom.push_back(id);
                }
            }
            ech_[{static_cast<int>(i), static_cast<int>(j)}] = ech;
        }
}

std::string EqualizerCategory::name(Mor f) const
{
    const Elem& v = vector(f);
    if (v.size() == 1 && v.begin()->second == 1)
        return a_->name(v.begin()->first);
    return "<" + format(*a_, v) + ">";
}

std::optional<Elem> EqualizerCategory::coordinates(int x, int y, const Elem& e) const
{
    auto it = ech_.find({x, y});
    if (it == ech_.end())
        return std::nullopt;
    const Ring& r = a_->ring();
    Vec v(r);
    for (const auto& [t, c] : e) {
        auto p = pos_.find(t);
        if (p == pos_.end())
            return std::nullopt;
        v.add(p->second, c);
    }
    Vec tag(r);
    Vec rest = it->second->reduce(v, &tag);
    if (!rest.is_zero())
        return std::nullopt;
    Elem out = zero();
    for (const auto& [i, c] : tag)
        out.add(static_cast<Mor>(i), c);
    return out;
}

Elem EqualizerCategory::m(const std::vector<Mor>& args) const
{
    require_composable(*this, args);
    std::vector<Elem> vs;
    for (Mor f : args)
        vs.push_back(vector(f));
    Elem img = m_of(*a_, vs);
    auto c = coordinates(src(args.back()), tgt(args.front()), img);
    if (!c)
        throw StructuralError("agreement subspace is not closed under m", format(*a_, img));
    return *c;
}

std::vector<Mor> EqualizerCategory::basis_exact(int x, int y, int w) const
{
    if (w != 1)
        return {};
    auto it = homs_.find({x, y});
    return it == homs_.end() ? std::vector<Mor>{} : it->second;
}

std::optional<Elem> EqualizerCategory::unit(int x) const
{
    auto u = a_->unit(ambient_object(x));
    if (!u)
        return std::nullopt;
    return coordinates(x, x, *u);
}

FunPtr equalizer_inclusion(std::shared_ptr<const EqualizerCategory> e)
{
    std::vector<int> objs;
    for (int x = 0; x < e->object_count(); ++x)
        objs.push_back(e->ambient_object(x));
    CatPtr amb(e, &e->ambient());
    return std::make_shared<StrictFunctor>(e, amb, objs, [e](Mor f) { return e->vector(f); });
}

FunPtr equalizer_factor(std::shared_ptr<const EqualizerCategory> e, FunPtr h)
{
    require_strict(*h, "equalizer factorization");
    std::map<int, int> local;
    for (int x = 0; x < e->object_count(); ++x)
        local[e->ambient_object(x)] = x;
    std::vector<int> objs;
    for (int x = 0; x < h->source().object_count(); ++x) {
        auto it = local.find(h->on_object(x));
        if (it == local.end())
            throw ArgumentError("cone object " + h->source().object_name(x) + " does not land in the equalizer");
        objs.push_back(it->second);
    }
    return std::make_shared<StrictFunctor>(h->source_ptr(), e, objs, [e, h, objs](Mor c) {
        const Category& s = h->source();
        Elem v = h->apply({c});
        auto co = e->coordinates(objs.at(static_cast<std::size_t>(s.src(c))),
                                 objs.at(static_cast<std::size_t>(s.tgt(c))), v);
        if (!co)
            throw StructuralError("cone leg leaves the agreement subspace", s.name(c));
        return *co;
    });
}

// ---------------------------------------------------------------------------
// reflexive coequalizer

Coequalizer reflexive_coequalizer(FunPtr f, FunPtr g, FunPtr r, int max_arity)
{
    require_strict(*f, "reflexive coequalizer");
    require_strict(*g, "reflexive coequalizer");
    require_strict(*r, "reflexive coequalizer");
    const Category& a = f->source();
    const Category& b = f->target();
    if (!a.finite() || !b.finite())
        throw ArgumentError("reflexive coequalizers are built for finite categories");
    for (int x = 0; x < a.object_count(); ++x)
        if (f->on_object(x) != g->on_object(x))
            throw ArgumentError("reflexive coequalizer needs F and G equal on objects");
    Bounds all = all_degrees();
    all.max_weight = std::max(a.max_weight(), b.max_weight());
    IdentityFunctor id(f->target_ptr());
    std::string why;
    if (!functors_equal(*compose(f, r), id, 1, all, &why) || !functors_equal(*compose(g, r), id, 1, all, &why))
        throw ArgumentError("retraction identities fail: " + why);
    std::vector<Elem> gens;
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < a.object_count(); ++y)
            for (Mor m : a.basis(x, y, all)) {
                Elem d = f->apply({m}) - g->apply({m});
                if (!d.is_zero())
                    gens.push_back(d);
            }
    BoundedIdeal ideal(b, gens, all, max_arity);
    std::vector<Elem> span;
    for (const auto& [k, v] : ideal.spans())
        span.insert(span.end(), v.begin(), v.end());
    Coequalizer out;
    out.quotient = std::make_shared<LinearQuotient>(f->target_ptr(), span);
    out.q = linear_quotient_functor(out.quotient);
    out.closure_grew = ideal.grew();
    return out;
}

// ---------------------------------------------------------------------------
// universal properties

UniversalReport product_universal(std::shared_ptr<const ProductCategory> p, FunPtr f, FunPtr g, const Bounds& b,
                                  int max_arity)
{
    UniversalReport rep;
    FunPtr m = pairing(p, f, g);
    FunPtr pa = projection(p, 0), pb = projection(p, 1);
    std::string why;
    rep.exists = strict_and_equal(*m, *compose(pa, m), *f, b, max_arity, why) &&
                 strict_and_equal(*m, *compose(pb, m), *g, b, max_arity, why);
    // joint injectivity of (pi_A, pi_B) on every hom reached by the cone
    const Category& c = f->source();
    rep.unique = true;
    for (int x = 0; x < c.object_count() && rep.unique; ++x)
        for (int y = 0; y < c.object_count() && rep.unique; ++y) {
            int P = m->on_object(x), Q = m->on_object(y);
            auto basis = p->basis(P, Q, b);
            std::vector<Vec> cols;
            std::map<std::pair<int, Mor>, int> coord;
            for (Mor e : basis) {
                Vec v(p->ring());
                for (int s = 0; s < 2; ++s)
                    for (const auto& [t, k] : (s == 0 ? pa : pb)->apply({e}))
                        v.add(coord.emplace(std::make_pair(s, t), static_cast<int>(coord.size())).first->second, k);
                cols.push_back(v);
            }
            if (rank_of(p->ring(), cols) != basis.size()) {
                rep.unique = false;
                why = "projections are not jointly injective on " + p->object_name(P) + " -> " + p->object_name(Q);
            }
        }
    rep.detail = why;
    return rep;
}

UniversalReport coproduct_universal(std::shared_ptr<const CoproductCategory> c, FunPtr f, FunPtr g,
                                    const Bounds& b, int max_arity)
{
    UniversalReport rep;
    FunPtr m = copairing(c, f, g);
    FunPtr ia = injection(c, 0), ib = injection(c, 1);
    std::string why;
    rep.exists = strict_and_equal(*m, *compose(m, ia), *f, b, max_arity, why) &&
                 strict_and_equal(*m, *compose(m, ib), *g, b, max_arity, why);
    // every object and every bounded basis morphism is hit by an injection
    rep.unique = true;
    for (int x = 0; x < c->object_count() && rep.unique; ++x)
        for (int y = 0; y < c->object_count() && rep.unique; ++y) {
            auto basis = c->basis(x, y, b);
            Echelon ech(c->ring());
            std::map<Mor, int> pos;
            for (Mor e : basis)
                pos.emplace(e, static_cast<int>(pos.size()));
            int side = x < c->offset() ? 0 : 1;
            const Category& part = side == 0 ? c->left() : c->right();
            int off = side == 0 ? 0 : c->offset();
            if ((y < c->offset()) == (side == 0))
                for (Mor e : part.basis(x - off, y - off, b)) {
                    Vec v(c->ring());
                    for (const auto& [t, k] : (side == 0 ? ia : ib)->apply({e}))
                        v.add(pos.at(t), k);
                    ech.insert(v);
                }
            if (ech.rank() != basis.size()) {
                rep.unique = false;
                why = "injections do not span " + c->object_name(x) + " -> " + c->object_name(y);
            }
        }
    rep.detail = why;
    return rep;
}

UniversalReport equalizer_universal(std::shared_ptr<const EqualizerCategory> e, FunPtr F, FunPtr G, FunPtr h,
                                    const Bounds& b, int max_arity)
{
    UniversalReport rep;
    std::string why;
    if (!functors_equal(*compose(F, h), *compose(G, h), 1, b, &why)) {
        rep.detail = "not a cone: " + why;
        return rep;
    }
    FunPtr m = equalizer_factor(e, h);
    FunPtr inc = equalizer_inclusion(e);
    try {
        rep.exists = strict_and_equal(*m, *compose(inc, m), *h, b, max_arity, why);
    } catch (const StructuralError& err) {
        why = err.what();
    }
    rep.unique = true;
    for (int x = 0; x < e->object_count() && rep.unique; ++x)
        for (int y = 0; y < e->object_count() && rep.unique; ++y) {
            auto basis = e->basis(x, y, all_degrees());
            std::vector<Vec> cols;
            std::map<Mor, int> pos;
            for (Mor f : basis) {
                Vec v(e->ring());
                for (const auto& [t, k] : inc->apply({f}))
                    v.add(pos.emplace(t, static_cast<int>(pos.size())).first->second, k);
                cols.push_back(v);
            }
            if (rank_of(e->ring(), cols) != basis.size()) {
                rep.unique = false;
                why = "inclusion is not injective on " + e->object_name(x) + " -> " + e->object_name(y);
            }
        }
    rep.detail = why;
    return rep;
}

UniversalReport coequalizer_universal(const Coequalizer& c, FunPtr F, FunPtr G, FunPtr h, const Bounds& b,
                                      int max_arity)
{
    UniversalReport rep;
    std::string why;
    if (!functors_equal(*compose(h, F), *compose(h, G), 1, b, &why)) {
        rep.detail = "not a cocone: " + why;
        return rep;
    }
    FactorResult fr = factor_through(*h, c.quotient);
    if (!fr.functor) {
        rep.detail = "no factorization: " + fr.refusal;
        return rep;
    }
    rep.exists = strict_and_equal(*fr.functor, *compose(fr.functor, c.q), *h, b, max_arity, why);
    // q is surjective: every quotient basis element is the class of its lift
    rep.unique = true;
    const LinearQuotient& lq = *c.quotient;
    Bounds all = all_degrees();
    for (int x = 0; x < lq.object_count() && rep.unique; ++x)
        for (int y = 0; y < lq.object_count() && rep.unique; ++y)
            for (Mor f : lq.basis(x, y, all))
                if (c.q->apply({lq.lift(f).begin()->first}) != lq.elem(f)) {
                    rep.unique = false;
                    why = "q misses " + lq.name(f);
                    break;
                }
    rep.detail = why;
    return rep;
}

// ---------------------------------------------------------------------------
// the beta pair of F(|A|) as a reflexive coequalizer

PresentationCoequalizerReport presentation_coequalizer_check(CatPtr a, int max_weight)
{
    PresentationCoequalizerReport rep;
    if (!a->finite())
        throw ArgumentError("the comparison needs a finite category");
    const Ring& r = a->ring();
    require_field(r, "presentation coequalizer check");
    auto fa = free_on_underlying(a, false);
    auto ff = free_on_underlying(fa, false);
    auto quot = free_on_underlying(a, true);
    std::vector<int> objs;
    for (int x = 0; x < a->object_count(); ++x)
        objs.push_back(x);
    FunPtr beta_a = counit(fa);
    FunPtr beta_fa = counit(ff);
    FunPtr f_beta = std::make_shared<EvalFunctor>(ff, fa, objs, [fa, beta_a](std::int32_t l) {
        return fa->embed_old(beta_a->apply({TreeCategory::old_of(l)}));
    });
    FunPtr section = std::make_shared<EvalFunctor>(fa, ff, objs, [fa, ff](std::int32_t l) {
        Elem leaf = fa->leaf(l);
        return ff->leaf(TreeCategory::old_label(leaf.begin()->first));
    });
    FunPtr q = quotient_functor(fa, quot);
    Bounds b;
    b.max_weight = max_weight;
    b.lo = -1000000;
    b.hi = 1000000;
    IdentityFunctor id(fa);
    std::string why;
    rep.section_ok = functors_equal(*compose(beta_fa, section), id, 1, b, &why) &&
                     functors_equal(*compose(f_beta, section), id, 1, b, &why);
    if (!rep.section_ok)
        rep.detail = "section identities fail: " + why;
    rep.spans_equal = true;
    for (int x = 0; x < a->object_count(); ++x)
        for (int y = 0; y < a->object_count(); ++y) {
            auto basis = fa->basis(x, y, b);
            std::map<Mor, int> pos;
            for (Mor t : basis)
                pos.emplace(t, static_cast<int>(pos.size()));
            auto to_vec = [&](const Elem& e) {
                Vec v(r);
                for (const auto& [t, c] : e) {
                    auto it = pos.find(t);
                    if (it == pos.end())
                        throw StructuralError("element leaves the weight bound", fa->name(t));
                    v.add(it->second, c);
                }
                return v;
            };
            Echelon image(r), both(r);
            for (Mor s : ff->basis(x, y, b)) {
                Vec v = to_vec(beta_fa->apply({s}) - f_beta->apply({s}));
                image.insert(v);
                both.insert(v);
            }
            // kernel of q on the bounded basis
            std::vector<Vec> qimgs;
            std::map<Mor, int> qpos;
            for (Mor t : basis) {
                Vec v(r);
                for (const auto& [u, c] : q->apply({t}))
                    v.add(qpos.emplace(u, static_cast<int>(qpos.size())).first->second, c);
                qimgs.push_back(v);
            }
            auto ker = kernel(r, qimgs);
            for (const auto& k : ker)
                both.insert(k);
            rep.image_rank += image.rank();
            rep.kernel_rank += ker.size();
            if (image.rank() != ker.size() || both.rank() != ker.size()) {
                rep.spans_equal = false;
                std::ostringstream os;
                os << "hom " << a->object_name(x) << " -> " << a->object_name(y) << ": image rank " << image.rank()
                   << ", kernel rank " << ker.size() << ", joint rank " << both.rank();
                rep.detail = os.str();
            }
        }
    return rep;
}

} // namespace ainf
