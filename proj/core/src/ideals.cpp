#include "ainf/ideals.hpp"

#include "ainf/errors.hpp"

#include <deque>
#include <set>
#include <functional>

namespace ainf {

Lin<Code> collapse_normal_form(const TreeCategory& ambient, const Code& term, RewriteStrategy s)
{
    const Category* old = ambient.old();
    if (!old)
        throw ArgumentError("collapse rewriting needs an old category");
    const Ring& r = ambient.ring();
    Lin<Code> done(r);
    std::deque<std::pair<Code, Scalar>> work{{term, Scalar(1)}};
    while (!work.empty()) {
        auto [c, coef] = work.front();
        work.pop_front();
        std::optional<std::size_t> hit;
        for (std::size_t p = 0; p < c.size(); ++p) {
            if (c[p] >= 0)
                continue;
            bool all = true;
            for (std::size_t q : child_positions(c, p))
                if (c[q] < 0 || !TreeCategory::is_old(c[q])) {
                    all = false;
                    break;
                }
            if (!all)
                continue;
            hit = p;
            if (s == RewriteStrategy::leftmost)
                break;
        }
        if (!hit) {
            done.add(c, coef);
            continue;
        }
        std::size_t p = *hit;
        std::vector<Mor> args;
        for (std::size_t q : child_positions(c, p))
            args.push_back(TreeCategory::old_of(c[q]));
        std::size_t end = subtree_end(c, p);
        for (const auto& [f, a] : old->m(args)) {
            Code nc(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(p));
            nc.push_back(TreeCategory::old_label(f));
            nc.insert(nc.end(), c.begin() + static_cast<std::ptrdiff_t>(end), c.end());
            work.emplace_back(std::move(nc), r.mul(coef, a));
        }
    }
    return done;
}

std::shared_ptr<TreeCategory> quotient(std::shared_ptr<const TreeCategory> ambient, const RelationSystem& rel)
{
    if (rel.kind != RelationSystem::Kind::collapse)
        throw ArgumentError("tree-category quotients take collapse-kind systems");
    TreeSpec s = ambient->spec();
    if (rel.collapse_old) {
        if (!s.old)
            throw ArgumentError("collapse relations need an old category");
        s.collapse = true;
    }
    if (rel.associativity)
        s.dg = true;
    if (rel.units) {
        bool flagged = false;
        for (const auto& g : s.gens)
            flagged |= g.unit;
        if (flagged)
            s.units = TreeSpec::Units::add;
        else if (s.old && s.old->unit(0))
            s.units = TreeSpec::Units::inherit;
        else
            throw ArgumentError("unit relations need unit generators or old units");
    }
    return std::make_shared<TreeCategory>(std::move(s));
}

FunPtr quotient_functor(std::shared_ptr<const TreeCategory> ambient, std::shared_ptr<const TreeCategory> quot)
{
    std::vector<int> objs;
    for (int x = 0; x < ambient->object_count(); ++x)
        objs.push_back(x);
    return std::make_shared<StrictFunctor>(ambient, quot, objs,
                                           [ambient, quot](Mor f) { return quot->normalize(ambient->code(f)); });
}

void validate_system(const Functor& q, int max_arity, const Bounds& b)
{
    IdentityReport rep = check_strict_identity(q, max_arity, b);
    if (!rep.ok)
        throw StructuralError("relations do not generate an ideal compatible with m: " + rep.detail,
                              format(q.target(), rep.residue));
}

Membership ideal_membership_collapse(const TreeCategory& quot, const TreeCategory& ambient, const Elem& x)
{
    Elem nf(quot.ring());
    for (const auto& [f, a] : x)
        nf.add(quot.normalize(ambient.code(f)), a);
    Membership m;
    m.member = nf.is_zero();
    m.witness = x;
    return m;
}

BoundedIdeal::BoundedIdeal(const Category& c, const std::vector<Elem>& generators, const Bounds& b, int max_arity)
    : c_(c)
{
    int objs = c.object_count();
    for (int x = 0; x < objs; ++x)
        for (int y = 0; y < objs; ++y)
            for (Mor f : c.basis(x, y, b)) {
                pos_.emplace(f, static_cast<int>(order_.size()));
                order_.push_back(f);
            }
    auto inside = [&](const Elem& e) {
        for (const auto& [f, a] : e)
            if (!pos_.count(f))
                return false;
        return true;
    };
    std::deque<Elem> queue;
    for (const auto& g : generators) {
        if (!inside(g))
            throw ArgumentError("ideal generator outside the bounds: " + format(c, g));
        if (!g.is_zero())
            queue.push_back(g);
    }
    std::size_t gen_count = queue.size();
    std::size_t processed = 0;
    int bound = c.arity_bound() < 0 ? max_arity : std::min(max_arity, c.arity_bound());
    while (!queue.empty()) {
        Elem e = queue.front();
        queue.pop_front();
        ++processed;
        int x = c.src(e.begin()->first), y = c.tgt(e.begin()->first);
        auto key = std::make_pair(x, y);
        auto& ech = ech_[key];
        if (!ech)
            ech = std::make_shared<Echelon>(c.ring());
        if (!ech->insert(vec(e)))
            continue;
        spans_[key].push_back(e);
        if (processed > gen_count)
            grew_ = true;
        // insert e at every slot of m^n with basis morphisms around it
        for (int n = 1; n <= bound; ++n)
            for (int slot = 0; slot < n; ++slot) {
                int left = slot, right = n - 1 - slot;
                Bounds bb = b;
                std::vector<std::vector<Mor>> lefts{{}}, rights{{}};
                if (left > 0)
                    lefts.clear();
                if (right > 0)
                    rights.clear();
                if (left > 0)
                    for (const auto& t : composable_tuples(c, left, bb))
                        if (c.src(t.back()) == y)
                            lefts.push_back(t);
                if (right > 0)
                    for (const auto& t : composable_tuples(c, right, bb))
                        if (c.tgt(t.front()) == x)
                            rights.push_back(t);
                for (const auto& lt : lefts)
                    for (const auto& rt : rights) {
                        std::vector<Elem> args;
                        for (Mor f : lt)
                            args.push_back(c.elem(f));
                        args.push_back(e);
                        for (Mor f : rt)
                            args.push_back(c.elem(f));
                        Elem v = m_of(c, args);
                        if (!v.is_zero() && inside(v))
                            queue.push_back(v);
                    }
            }
    }
}

Vec BoundedIdeal::vec(const Elem& e) const
{
    Vec v(c_.ring());
    for (const auto& [f, a] : e)
        v.add(pos_.at(f), a);
    return v;
}

bool BoundedIdeal::contains(const Elem& x) const
{
    if (x.is_zero())
        return true;
    for (const auto& [f, a] : x)
        if (!pos_.count(f))
            return false;
    auto key = std::make_pair(c_.src(x.begin()->first), c_.tgt(x.begin()->first));
    auto it = ech_.find(key);
    if (it == ech_.end())
        return false;
    return it->second->contains(vec(x));
}

std::size_t BoundedIdeal::rank(int x, int y) const
{
    auto it = ech_.find({x, y});
    return it == ech_.end() ? 0 : it->second->rank();
}

LinearQuotient::LinearQuotient(CatPtr ambient, const std::vector<Elem>& ideal) : amb_(std::move(ambient))
{
    if (!amb_->finite())
        throw ArgumentError("linear quotients need a finite ambient category");
    Bounds all;
    all.lo = -1000000;
    all.hi = 1000000;
    std::vector<Mor>& order = order_;
    for (int x = 0; x < amb_->object_count(); ++x)
        for (int y = 0; y < amb_->object_count(); ++y)
            for (Mor f : amb_->basis(x, y, all)) {
                pos_.emplace(f, static_cast<int>(order.size()));
                order.push_back(f);
            }
    for (const auto& e : ideal) {
        if (e.is_zero())
            continue;
        auto key = std::make_pair(amb_->src(e.begin()->first), amb_->tgt(e.begin()->first));
        auto& ech = ech_[key];
        if (!ech)
            ech = std::make_shared<Echelon>(amb_->ring());
        Vec v(amb_->ring());
        for (const auto& [f, a] : e)
            v.add(pos_.at(f), a);
        ech->insert(v);
    }
    std::set<int> pivots;
    for (const auto& [k, ech] : ech_)
        for (int p : ech->pivots())
            pivots.insert(p);
    for (Mor f : order)
        if (!pivots.count(pos_.at(f))) {
            new_id_.emplace(f, static_cast<Mor>(kept_.size()));
            kept_.push_back(f);
        }
}

Elem LinearQuotient::project(const Elem& e) const
{
    Elem out(ring());
    if (e.is_zero())
        return out;
    Vec v(ring());
    for (const auto& [f, a] : e)
        v.add(pos_.at(f), a);
    auto key = std::make_pair(amb_->src(e.begin()->first), amb_->tgt(e.begin()->first));
    auto it = ech_.find(key);
    if (it != ech_.end())
        v = it->second->reduce(v);
    for (const auto& [p, a] : v)
        out.add(new_id_.at(order_.at(static_cast<std::size_t>(p))), a);
    return out;
}

Elem LinearQuotient::m(const std::vector<Mor>& args) const
{
    std::vector<Elem> lifts;
    for (Mor f : args)
        lifts.push_back(lift(f));
    return project(m_of(*amb_, lifts));
}

std::vector<Mor> LinearQuotient::basis_exact(int x, int y, int w) const
{
    std::vector<Mor> out;
    if (w != 1)
        return out;
    for (std::size_t i = 0; i < kept_.size(); ++i)
        if (amb_->src(kept_[i]) == x && amb_->tgt(kept_[i]) == y)
            out.push_back(static_cast<Mor>(i));
    return out;
}

std::optional<Elem> LinearQuotient::unit(int x) const
{
    auto u = amb_->unit(x);
    if (!u)
        return std::nullopt;
    return project(*u);
}

FunPtr linear_quotient_functor(std::shared_ptr<const LinearQuotient> q)
{
    std::vector<int> objs;
    for (int x = 0; x < q->object_count(); ++x)
        objs.push_back(x);
    return std::make_shared<StrictFunctor>(q->ambient_ptr(), q, objs,
                                           [q](Mor f) { return q->project(q->ambient().elem(f)); });
}

FactorResult factor_through(const EvalFunctor& f, std::shared_ptr<const TreeCategory> quot, const Bounds& b)
{
    const auto& amb = *f.tree_source();
    FactorResult res;
    for (int x = 0; x < amb.object_count(); ++x)
        for (int y = 0; y < amb.object_count(); ++y)
            for (Mor t : amb.basis(x, y, b)) {
                Elem nf = quot->normalize(amb.code(t));
                Elem img = f.eval_code(amb.code(t));
                for (const auto& [s, a] : nf)
                    img.add(f.eval_code(quot->code(s)), f.target().ring().neg(a));
                if (!img.is_zero()) {
                    res.refusal = amb.name(t) + " - (" + format(*quot, nf) + ")";
                    res.value = img;
                    return res;
                }
            }
    res.functor = std::make_shared<EvalFunctor>(quot, f.target_ptr(), f.objects(), f.label_image());
    return res;
}

FactorResult factor_through(const Functor& f, std::shared_ptr<const LinearQuotient> quot)
{
    FactorResult res;
    if (!f.is_strict())
        throw ArgumentError("generic factorization is implemented for strict functors");
    if (&f.source() != &quot->ambient())
        throw ArgumentError("functor source differs from the quotient's ambient category");
    Bounds all;
    all.lo = -1000000;
    all.hi = 1000000;
    // F^1 must vanish on the ideal: check on every basis element minus its
    // projection's representative.
    const Category& a = quot->ambient();
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < a.object_count(); ++y)
            for (Mor g : a.basis(x, y, all)) {
                Elem rel = a.elem(g);
                for (const auto& [k, c] : quot->project(rel))
                    rel.add(quot->lift(k), a.ring().neg(c));
                Elem v = apply1(f, rel);
                if (!v.is_zero()) {
                    res.refusal = format(a, rel);
                    res.value = v;
                    return res;
                }
            }
    std::vector<int> objs;
    for (int x = 0; x < a.object_count(); ++x)
        objs.push_back(f.on_object(x));
    FunPtr keep(&f, [](const Functor*) {});
    std::map<Mor, Elem> table;
    for (int x = 0; x < quot->object_count(); ++x)
        for (int y = 0; y < quot->object_count(); ++y)
            for (Mor k : quot->basis(x, y, all))
                table.emplace(k, apply1(f, quot->lift(k)));
    res.functor = std::make_shared<StrictFunctor>(quot, f.target_ptr(), objs, [table](Mor k) { return table.at(k); });
    return res;
}

} // namespace ainf
