#include "ainf/functor.hpp"

#include "ainf/errors.hpp"

#include <functional>

namespace ainf {

namespace {

// Splits args (written order) into r consecutive nonempty blocks and calls
// visit with the blocks, for every r in [1, max_r].
void for_each_partition(const std::vector<Mor>& args, int max_r,
                        const std::function<void(const std::vector<std::vector<Mor>>&)>& visit)
{
    int n = static_cast<int>(args.size());
    std::vector<std::vector<Mor>> blocks;
    std::function<void(int)> go = [&](int pos) {
        if (pos == n) {
            visit(blocks);
            return;
        }
        if (max_r >= 0 && static_cast<int>(blocks.size()) >= max_r)
            return;
        for (int len = 1; pos + len <= n; ++len) {
            blocks.emplace_back(args.begin() + pos, args.begin() + pos + len);
            go(pos + len);
            blocks.pop_back();
        }
    };
    go(0);
}

} // namespace

Elem apply_of(const Functor& f, const std::vector<Elem>& args)
{
    Elem out = f.target().zero();
    int bound = f.component_bound();
    if (bound >= 0 && static_cast<int>(args.size()) > bound)
        return out;
    std::vector<Mor> cur(args.size());
    std::function<void(std::size_t, Scalar)> go = [&](std::size_t i, Scalar coef) {
        if (i == args.size()) {
            out.add(f.apply(cur), coef);
            return;
        }
        for (const auto& [g, a] : args[i]) {
            cur[i] = g;
            go(i + 1, coef * a);
        }
    };
    go(0, Scalar(1));
    return out;
}

Elem IdentityFunctor::apply(const std::vector<Mor>& args) const
{
    if (args.size() != 1)
        return c_->zero();
    return c_->elem(args[0]);
}

StrictFunctor::StrictFunctor(CatPtr src, CatPtr tgt, std::vector<int> objects, std::function<Elem(Mor)> rule)
    : src_(std::move(src)), tgt_(std::move(tgt)), objects_(std::move(objects)), rule_(std::move(rule))
{
    if (static_cast<int>(objects_.size()) != src_->object_count())
        throw ArgumentError("object map must be total");
}

Elem StrictFunctor::apply(const std::vector<Mor>& args) const
{
    if (args.size() != 1)
        return tgt_->zero();
    auto it = cache_.find(args[0]);
    if (it != cache_.end())
        return it->second;
    Elem v = rule_(args[0]);
    cache_.emplace(args[0], v);
    return v;
}

TableFunctor::TableFunctor(CatPtr src, CatPtr tgt, std::vector<int> objects, int bound)
    : src_(std::move(src)), tgt_(std::move(tgt)), objects_(std::move(objects)), bound_(bound)
{
    if (static_cast<int>(objects_.size()) != src_->object_count())
        throw ArgumentError("object map must be total");
    for (int y : objects_)
        if (y < 0 || y >= tgt_->object_count())
            throw ArgumentError("object map leaves the target");
}

void TableFunctor::set(const std::vector<Mor>& args, const Elem& value)
{
    int n = static_cast<int>(args.size());
    if (n < 1 || (bound_ >= 0 && n > bound_))
        throw ArgumentError("functor component arity outside [1, bound]");
    require_composable(*src_, args);
    int deg = 1 - n;
    for (Mor a : args)
        deg += src_->degree(a);
    for (const auto& [g, c] : value) {
        if (tgt_->src(g) != objects_[src_->src(args.back())] || tgt_->tgt(g) != objects_[src_->tgt(args.front())])
            throw ArgumentError("functor value at " + format_tuple(*src_, args) + " has wrong endpoints");
        if (tgt_->degree(g) != deg)
            throw ArgumentError("functor value at " + format_tuple(*src_, args) + " has wrong degree");
    }
    if (value.is_zero())
        table_.erase(args);
    else
        table_[args] = value;
}

Elem TableFunctor::apply(const std::vector<Mor>& args) const
{
    auto it = table_.find(args);
    return it == table_.end() ? tgt_->zero() : it->second;
}

ComposedFunctor::ComposedFunctor(FunPtr g, FunPtr f, int max_bound) : g_(std::move(g)), f_(std::move(f))
{
    if (&f_->target() != &g_->source())
        throw ArgumentError("functors are not composable");
    int bg = g_->component_bound(), bf = f_->component_bound();
    if (bg < 0 || bf < 0 || bg * bf > max_bound) {
        bound_ = max_bound;
        truncated_ = !(bg == 1 && bf == 1);
    } else {
        bound_ = bg * bf;
    }
    if (bg == 1 && bf == 1)
        bound_ = 1;
}

Elem ComposedFunctor::apply(const std::vector<Mor>& args) const
{
    Elem out = target().zero();
    if (static_cast<int>(args.size()) > bound_)
        return out;
    for_each_partition(args, g_->component_bound(), [&](const std::vector<std::vector<Mor>>& blocks) {
        std::vector<Elem> imgs;
        for (const auto& b : blocks) {
            imgs.push_back(f_->apply(b));
            if (imgs.back().is_zero())
                return;
        }
        out += apply_of(*g_, imgs);
    });
    return out;
}

EvalFunctor::EvalFunctor(std::shared_ptr<const TreeCategory> src, CatPtr tgt, std::vector<int> objects,
                         std::function<Elem(std::int32_t)> label_image)
    : src_(std::move(src)), tgt_(std::move(tgt)), objects_(std::move(objects)), image_(std::move(label_image))
{
    if (static_cast<int>(objects_.size()) != src_->object_count())
        throw ArgumentError("object map must be total");
}

Elem EvalFunctor::eval_code(const Code& c) const
{
    std::function<Elem(std::size_t)> go = [&](std::size_t pos) -> Elem {
        if (c[pos] >= 0)
            return image_(c[pos]);
        std::vector<Elem> kids;
        for (std::size_t p : child_positions(c, pos))
            kids.push_back(go(p));
        return m_of(*tgt_, kids);
    };
    return go(0);
}

Elem EvalFunctor::apply(const std::vector<Mor>& args) const
{
    if (args.size() != 1)
        return tgt_->zero();
    auto it = cache_.find(args[0]);
    if (it != cache_.end())
        return it->second;
    Elem v = eval_code(src_->code(args[0]));
    cache_.emplace(args[0], v);
    return v;
}

FunPtr compose(FunPtr g, FunPtr f, int max_bound)
{
    return std::make_shared<ComposedFunctor>(std::move(g), std::move(f), max_bound);
}

Elem functor_residue(const Functor& f, const std::vector<Mor>& args)
{
    const Category& a = f.source();
    const Category& b = f.target();
    const Ring& r = b.ring();
    int n = static_cast<int>(args.size());
    Elem lhs = b.zero();
    for_each_partition(args, b.arity_bound(), [&](const std::vector<std::vector<Mor>>& blocks) {
        std::vector<Elem> imgs;
        for (const auto& blk : blocks) {
            imgs.push_back(f.apply(blk));
            if (imgs.back().is_zero())
                return;
        }
        lhs += m_of(b, imgs);
    });
    Elem rhs = b.zero();
    int abound = a.arity_bound();
    for (int j = 1; j <= n; ++j) {
        if (abound >= 0 && j > abound)
            break;
        long long dag = 0;
        for (int i = 0; i + j <= n; ++i) {
            if (i > 0)
                dag += a.degree(args[n - i]) - 1;
            std::vector<Mor> inner(args.begin() + (n - i - j), args.begin() + (n - i));
            Elem in = a.m(inner);
            if (in.is_zero())
                continue;
            std::vector<Elem> outer;
            for (int k = 0; k < n - i - j; ++k)
                outer.push_back(a.elem(args[k]));
            outer.push_back(in);
            for (int k = n - i; k < n; ++k)
                outer.push_back(a.elem(args[k]));
            rhs.add(apply_of(f, outer), r.sign(dag));
        }
    }
    return lhs - rhs;
}

IdentityReport check_functor_equation(const Functor& f, int max_arity, const Bounds& b)
{
    IdentityReport rep;
    for (int n = 1; n <= max_arity; ++n)
        for (const auto& t : composable_tuples(f.source(), n, b)) {
            ++rep.tuples_checked;
            Elem res = functor_residue(f, t);
            if (!res.is_zero()) {
                rep.ok = false;
                rep.arity = n;
                rep.inputs = t;
                rep.residue = res;
                rep.detail = "functor equation residue at " + format_tuple(f.source(), t) + ": " +
                             format(f.target(), res);
                return rep;
            }
        }
    return rep;
}

IdentityReport check_strict_identity(const Functor& f, int max_arity, const Bounds& b)
{
    IdentityReport rep;
    for (int n = 1; n <= max_arity; ++n)
        for (const auto& t : composable_tuples(f.source(), n, b)) {
            ++rep.tuples_checked;
            std::vector<Elem> imgs;
            for (Mor g : t)
                imgs.push_back(f.apply({g}));
            Elem res = apply1(f, f.source().m(t)) - m_of(f.target(), imgs);
            if (!res.is_zero()) {
                rep.ok = false;
                rep.arity = n;
                rep.inputs = t;
                rep.residue = res;
                rep.detail = "F1 m != m F1 at " + format_tuple(f.source(), t);
                return rep;
            }
        }
    return rep;
}

IdentityReport check_strictly_unital(const Functor& f, int max_arity, const Bounds& b)
{
    IdentityReport rep;
    const Category& a = f.source();
    const Category& c = f.target();
    for (int x = 0; x < a.object_count(); ++x) {
        auto u = a.unit(x);
        auto v = c.unit(f.on_object(x));
        if (!u || !v) {
            rep.ok = false;
            rep.detail = "missing strict unit at object " + a.object_name(x);
            return rep;
        }
        Elem res = apply1(f, *u) - *v;
        if (!res.is_zero()) {
            rep.ok = false;
            rep.residue = res;
            rep.detail = "F1(1) != 1 at object " + a.object_name(x);
            return rep;
        }
    }
    for (int n = 1; n + 1 <= max_arity; ++n)
        for (const auto& t : composable_tuples(a, n, b))
            for (int slot = 0; slot <= n; ++slot) {
                ++rep.tuples_checked;
                int obj = slot == n ? a.src(t.back()) : a.tgt(t[slot]);
                std::vector<Elem> args;
                for (int i = 0; i < slot; ++i)
                    args.push_back(a.elem(t[i]));
                args.push_back(*a.unit(obj));
                for (int i = slot; i < n; ++i)
                    args.push_back(a.elem(t[i]));
                Elem res = apply_of(f, args);
                if (!res.is_zero()) {
                    rep.ok = false;
                    rep.inputs = t;
                    rep.residue = res;
                    rep.detail = "unit insertion not killed at " + format_tuple(a, t);
                    return rep;
                }
            }
    return rep;
}

bool functors_equal(const Functor& x, const Functor& y, int max_arity, const Bounds& bd, std::string* why)
{
    if (&x.source() != &y.source() || &x.target() != &y.target()) {
        if (why)
            *why = "different source or target";
        return false;
    }
    for (int o = 0; o < x.source().object_count(); ++o)
        if (x.on_object(o) != y.on_object(o)) {
            if (why)
                *why = "object maps differ at " + x.source().object_name(o);
            return false;
        }
    for (int n = 1; n <= max_arity; ++n)
        for (const auto& t : composable_tuples(x.source(), n, bd))
            if (x.apply(t) != y.apply(t)) {
                if (why)
                    *why = "components differ at " + format_tuple(x.source(), t);
                return false;
            }
    return true;
}

bool is_strict_equivalence(const Functor& f, const Functor& g, const Bounds& b, std::string* why)
{
    if (&f.target() != &g.source() || &g.target() != &f.source()) {
        if (why)
            *why = "functors are not mutually composable";
        return false;
    }
    auto check = [&](const Functor& first, const Functor& second) {
        const Category& a = first.source();
        for (int x = 0; x < a.object_count(); ++x)
            if (second.on_object(first.on_object(x)) != x) {
                if (why)
                    *why = "objects not fixed at " + a.object_name(x);
                return false;
            }
        for (int x = 0; x < a.object_count(); ++x)
            for (int y = 0; y < a.object_count(); ++y)
                for (Mor h : a.basis(x, y, b)) {
                    Elem v = apply1(second, first.apply({h}));
                    if (v != a.elem(h)) {
                        if (why)
                            *why = "composite moves " + a.name(h);
                        return false;
                    }
                }
        if (!first.is_strict() || !second.is_strict()) {
            ComposedFunctor c(FunPtr(&second, [](const Functor*) {}), FunPtr(&first, [](const Functor*) {}));
            for (int n = 2; n <= 3; ++n)
                for (const auto& t : composable_tuples(a, n, b))
                    if (!c.apply(t).is_zero()) {
                        if (why)
                            *why = "higher component of the composite is nonzero at " + format_tuple(a, t);
                        return false;
                    }
        }
        return true;
    };
    return check(f, g) && check(g, f);
}

FunPtr extend_strictly_unital(const Functor& psi, std::shared_ptr<const TreeCategory> plus)
{
    if (!psi.is_strict())
        throw ArgumentError("strictly unital extension needs a strict functor");
    const auto* src = dynamic_cast<const TreeCategory*>(&psi.source());
    if (!src)
        throw ArgumentError("strictly unital extension needs a free source");
    if (plus->spec().units != TreeSpec::Units::add)
        throw ArgumentError("extension target category must be a plus flavor");
    CatPtr tgt = psi.target_ptr();
    for (int y = 0; y < tgt->object_count(); ++y)
        if (!tgt->unit(y))
            throw ArgumentError("target lacks declared strict units");
    std::vector<int> objs;
    for (int x = 0; x < src->object_count(); ++x)
        objs.push_back(psi.on_object(x));
    std::size_t ng = src->spec().gens.size();
    auto rule = [src, tgt, objs, ng, plus, &psi](std::int32_t l) -> Elem {
        int g = TreeCategory::gen_of(l);
        if (TreeCategory::is_old(l))
            throw ArgumentError("unexpected old label in a free category");
        if (static_cast<std::size_t>(g) >= ng)
            return *tgt->unit(objs.at(plus->spec().gens.at(g).src));
        return psi.apply({src->leaf(l).begin()->first});
    };
    // psi must outlive the returned functor; copy its generator values now.
    std::map<std::int32_t, Elem> table;
    for (std::size_t g = 0; g < plus->spec().gens.size(); ++g) {
        auto l = TreeCategory::gen_label(static_cast<int>(g));
        table.emplace(l, rule(l));
    }
    return std::make_shared<EvalFunctor>(plus, tgt, objs, [table](std::int32_t l) { return table.at(l); });
}

FunPtr lift_quiver_map(std::shared_ptr<const TreeCategory> free, CatPtr target, std::vector<int> objects,
                       const std::vector<Elem>& generator_images)
{
    const auto& gens = free->spec().gens;
    std::size_t plain = 0;
    for (const auto& g : gens)
        plain += !g.unit;
    if (generator_images.size() != plain)
        throw ArgumentError("one image per quiver generator required");
    std::map<std::int32_t, Elem> table;
    std::size_t k = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        auto l = TreeCategory::gen_label(static_cast<int>(g));
        if (gens[g].unit) {
            auto u = target->unit(objects.at(gens[g].src));
            if (!u)
                throw ArgumentError("target lacks declared strict units");
            table.emplace(l, *u);
        } else {
            const Elem& v = generator_images[k++];
            for (const auto& [f, c] : v)
                if (target->src(f) != objects.at(gens[g].src) || target->tgt(f) != objects.at(gens[g].tgt) ||
                    target->degree(f) != gens[g].degree)
                    throw ArgumentError("image of generator '" + gens[g].name + "' has wrong endpoints or degree");
            table.emplace(l, v);
        }
    }
    return std::make_shared<EvalFunctor>(free, target, std::move(objects), [table](std::int32_t l) {
        auto it = table.find(l);
        if (it == table.end())
            throw ArgumentError("label outside the generating quiver");
        return it->second;
    });
}

FunPtr counit(std::shared_ptr<const TreeCategory> free_on_a)
{
    CatPtr a = free_on_a->spec().old;
    if (!a)
        throw ArgumentError("counit needs a category of the form F(|A|)");
    if (!free_on_a->spec().gens.empty())
        throw ArgumentError("counit source has extra generators");
    std::vector<int> objs;
    for (int x = 0; x < a->object_count(); ++x)
        objs.push_back(x);
    return std::make_shared<EvalFunctor>(free_on_a, a, objs,
                                         [a](std::int32_t l) { return a->elem(TreeCategory::old_of(l)); });
}

FunPtr unit_into_quotient(CatPtr a, std::shared_ptr<const TreeCategory> quotient)
{
    if (quotient->old() != a.get() || !quotient->spec().collapse)
        throw ArgumentError("unit functor needs F(|A|)/R_A over the same A");
    std::vector<int> objs;
    for (int x = 0; x < a->object_count(); ++x)
        objs.push_back(x);
    return std::make_shared<StrictFunctor>(a, quotient, objs,
                                           [quotient](Mor f) { return quotient->leaf(TreeCategory::old_label(f)); });
}

FunPtr functorial_free(const QuiverFunctor& phi, std::shared_ptr<const TreeCategory> from,
                       std::shared_ptr<const TreeCategory> to)
{
    phi.validate();
    const auto& gens = from->spec().gens;
    std::map<std::int32_t, Elem> table;
    std::size_t k = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        auto l = TreeCategory::gen_label(static_cast<int>(g));
        if (gens[g].unit) {
            table.emplace(l, *to->unit(phi.on_objects.at(gens[g].src)));
            continue;
        }
        Elem img(to->ring());
        for (const auto& [h, c] : phi.on_gens.at(k++))
            img.add(to->leaf(TreeCategory::gen_label(h)), c);
        table.emplace(l, img);
    }
    return std::make_shared<EvalFunctor>(from, to, phi.on_objects, [table](std::int32_t l) { return table.at(l); });
}

} // namespace ainf
