#include "ainf/funcat.hpp"

#include "ainf/errors.hpp"
#include "ainf/linalg.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace ainf {

namespace {

long long reduced_degree(const Category& a, const std::vector<Mor>& args, std::size_t from, std::size_t to)
{
    long long s = 0;
    for (std::size_t i = from; i < to; ++i)
        s += a.degree(args[i]) - 1;
    return s;
}

bool same_objects(const Functor& f, const Functor& g)
{
    for (int x = 0; x < f.source().object_count(); ++x)
        if (f.on_object(x) != g.on_object(x))
            return false;
    return true;
}

// Indexes (equation, key, morphism) triples as vector coordinates.
class Flattener {
public:
    int index(int eq, const std::vector<Mor>& key, Mor f)
    {
        auto k = std::make_tuple(eq, key, f);
        auto it = ids_.find(k);
        if (it != ids_.end())
            return it->second;
        int id = static_cast<int>(ids_.size());
        ids_.emplace(k, id);
        return id;
    }
    void flatten(int eq, const Prenatural& t, Vec& out)
    {
        for (std::size_t x = 0; x < t.t0.size(); ++x)
            for (const auto& [f, c] : t.t0[x])
                out.add(index(eq, {-1 - static_cast<Mor>(x)}, f), c);
        for (const auto& [args, v] : t.tn)
            for (const auto& [f, c] : v)
                out.add(index(eq, args, f), c);
    }

private:
    std::map<std::tuple<int, std::vector<Mor>, Mor>, int> ids_;
};

std::map<std::pair<int, int>, std::map<int, std::vector<Mor>>> basis_by_degree(const Category& b)
{
    std::map<std::pair<int, int>, std::map<int, std::vector<Mor>>> out;
    Bounds all = all_degrees();
    for (int x = 0; x < b.object_count(); ++x)
        for (int y = 0; y < b.object_count(); ++y)
            for (Mor f : b.basis(x, y, all))
                out[{x, y}][b.degree(f)].push_back(f);
    return out;
}

// Coordinates of an unknown prenatural: (key, target basis morphism).
std::vector<std::pair<std::vector<Mor>, Mor>> coordinates(const Unknown& u)
{
    const Prenatural& s = u.shape;
    const Category& a = s.source();
    const Category& b = s.target();
    auto bb = basis_by_degree(b);
    auto lookup = [&](int x, int y, int d) -> const std::vector<Mor>& {
        static const std::vector<Mor> none;
        auto it = bb.find({x, y});
        if (it == bb.end())
            return none;
        auto jt = it->second.find(d);
        return jt == it->second.end() ? none : jt->second;
    };
    std::vector<std::pair<std::vector<Mor>, Mor>> out;
    if (u.free_t0)
        for (int x = 0; x < a.object_count(); ++x)
            for (Mor f : lookup(s.F->on_object(x), s.G->on_object(x), s.degree))
                out.emplace_back(std::vector<Mor>{-1 - static_cast<Mor>(x)}, f);
    for (const auto& t : prenatural_tuples(a, s.bound, s.unital, s.source_bounds)) {
        int n = static_cast<int>(t.size());
        int d = s.degree - n;
        for (Mor f : t)
            d += a.degree(f);
        for (Mor f : lookup(s.F->on_object(a.src(t.back())), s.G->on_object(a.tgt(t.front())), d))
            out.emplace_back(t, f);
    }
    return out;
}

void set_coordinate(Prenatural& p, const std::vector<Mor>& key, Mor f, const Scalar& c)
{
    Elem v(p.target().ring(), f, c);
    if (key.size() == 1 && key[0] < 0) {
        int x = static_cast<int>(-1 - key[0]);
        p.t0[static_cast<std::size_t>(x)] += v;
    } else {
        p.set(key, p.at(key) + v);
    }
}

} // namespace

Bounds all_degrees()
{
    Bounds b;
    b.max_weight = 1;
    b.lo = -1000000;
    b.hi = 1000000;
    return b;
}

std::vector<Mor> unit_morphisms(const Category& a)
{
    std::vector<Mor> out;
    for (int x = 0; x < a.object_count(); ++x) {
        auto u = a.unit(x);
        if (u && u->size() == 1 && u->begin()->second == 1)
            out.push_back(u->begin()->first);
    }
    return out;
}

std::vector<std::vector<Mor>> prenatural_tuples(const Category& a, int bound, bool unital, const Bounds& b)
{
    std::vector<Mor> units = unital ? unit_morphisms(a) : std::vector<Mor>{};
    std::set<Mor> us(units.begin(), units.end());
    std::vector<std::vector<Mor>> out;
    for (int n = 1; n <= bound; ++n)
        for (auto& t : composable_tuples(a, n, b)) {
            bool skip = false;
            for (Mor f : t)
                skip = skip || us.count(f);
            if (!skip)
                out.push_back(std::move(t));
        }
    return out;
}

Prenatural::Prenatural(FunPtr f, FunPtr g, int deg, int bnd, bool unit)
    : F(std::move(f)), G(std::move(g)), degree(deg), bound(bnd), unital(unit), source_bounds(all_degrees())
{
    if (&F->source() != &G->source() || &F->target() != &G->target())
        throw ArgumentError("prenatural transformations need parallel functors");
    t0.assign(static_cast<std::size_t>(F->source().object_count()), F->target().zero());
}

Elem Prenatural::at(const std::vector<Mor>& args) const
{
    if (static_cast<int>(args.size()) > bound)
        return target().zero();
    auto it = tn.find(args);
    return it == tn.end() ? target().zero() : it->second;
}

Elem Prenatural::at_elems(const std::vector<Elem>& args) const
{
    Elem out = target().zero();
    const Ring& r = target().ring();
    std::vector<Mor> cur(args.size());
    std::function<void(std::size_t, Scalar)> go = [&](std::size_t i, Scalar c) {
        if (i == args.size()) {
            Elem v = at(cur);
            if (!v.is_zero())
                out.add(v, c);
            return;
        }
        for (const auto& [f, a] : args[i]) {
            cur[i] = f;
            go(i + 1, r.mul(c, a));
        }
    };
    go(0, Scalar(1));
    return out;
}

void Prenatural::set(const std::vector<Mor>& args, const Elem& v)
{
    if (args.empty() || static_cast<int>(args.size()) > bound)
        throw ArgumentError("prenatural component arity outside [1, bound]");
    if (v.is_zero())
        tn.erase(args);
    else
        tn[args] = v;
}

bool Prenatural::is_zero() const
{
    for (const auto& e : t0)
        if (!e.is_zero())
            return false;
    return tn.empty();
}

Prenatural& Prenatural::add(const Prenatural& o, const Scalar& c)
{
    for (std::size_t x = 0; x < t0.size(); ++x)
        t0[x].add(o.t0.at(x), c);
    for (const auto& [k, v] : o.tn) {
        Elem nv = at(k);
        nv.add(v, c);
        if (static_cast<int>(k.size()) <= bound)
            set(k, nv);
    }
    return *this;
}

Prenatural Prenatural::scaled(const Scalar& c) const
{
    Prenatural p = zero_like();
    p.add(*this, c);
    return p;
}

Prenatural Prenatural::zero_like() const
{
    Prenatural p = *this;
    for (auto& e : p.t0)
        e = target().zero();
    p.tn.clear();
    return p;
}

bool Prenatural::operator==(const Prenatural& o) const
{
    return F == o.F && G == o.G && t0 == o.t0 && tn == o.tn;
}

std::string format(const Prenatural& t)
{
    std::ostringstream os;
    os << "deg " << t.degree << ":";
    for (std::size_t x = 0; x < t.t0.size(); ++x)
        if (!t.t0[x].is_zero())
            os << " T0(" << t.source().object_name(static_cast<int>(x)) << ")=" << format(t.target(), t.t0[x]);
    for (const auto& [k, v] : t.tn)
        os << " T" << format_tuple(t.source(), k) << "=" << format(t.target(), v);
    return os.str();
}

Prenatural identity_transformation(FunPtr f, int bound, bool unital)
{
    Prenatural p(f, f, 0, bound, unital);
    for (int x = 0; x < f->source().object_count(); ++x) {
        auto u = f->target().unit(f->on_object(x));
        if (!u)
            throw ArgumentError("identity transformation needs target units");
        p.set(x, *u);
    }
    return p;
}

Prenatural functor_difference(FunPtr f, FunPtr g, int bound, bool unital)
{
    if (!same_objects(*f, *g))
        throw ArgumentError("functors differ on objects");
    Prenatural p(f, g, 1, bound, unital);
    for (const auto& t : prenatural_tuples(f->source(), bound, unital, p.source_bounds)) {
        Elem v = f->apply(t) - g->apply(t);
        if (!v.is_zero())
            p.set(t, v);
    }
    return p;
}

Prenatural M(const std::vector<const Prenatural*>& ts, int bound, int only_arity)
{
    int k = static_cast<int>(ts.size());
    if (k == 0)
        throw ArgumentError("M needs at least one transformation");
    for (int i = 0; i + 1 < k; ++i)
        if (ts[i]->F.get() != ts[i + 1]->G.get())
            throw ArgumentError("transformations are not composable");
    const Prenatural& last = *ts[0];
    const Prenatural& first = *ts[static_cast<std::size_t>(k - 1)];
    int deg = 2 - k;
    bool unital = true;
    for (auto* t : ts) {
        deg += t->degree;
        unital = unital && t->unital;
    }
    Prenatural out(first.F, last.G, deg, bound, unital);
    out.source_bounds = first.source_bounds;
    const Category& a = out.source();
    const Category& b = out.target();
    const Ring& r = b.ring();
    auto phase_fun = [&](int j) -> const Functor& {
        return j >= 1 ? *ts[static_cast<std::size_t>(k - j)]->G : *first.F;
    };

    auto eval = [&](const std::vector<Mor>& args, int obj) {
        int d = static_cast<int>(args.size());
        Elem res = b.zero();
        std::vector<Elem> blocks;
        auto object_at = [&](int p) { return d == 0 ? obj : (p < d ? a.tgt(args[p]) : a.src(args[d - 1])); };
        std::function<void(int, int, long long)> go = [&](int p, int j, long long sgn) {
            if (p == d && j == 0) {
                if (!blocks.empty())
                    res.add(m_of(b, blocks), r.sign(sgn));
                return;
            }
            if (j <= k && p < d) {
                const Functor& fj = phase_fun(j);
                int fb = fj.component_bound();
                for (int s = 1; p + s <= d && (fb < 0 || s <= fb); ++s) {
                    Elem v = fj.apply(std::vector<Mor>(args.begin() + p, args.begin() + p + s));
                    if (v.is_zero())
                        continue;
                    blocks.push_back(std::move(v));
                    go(p + s, j, sgn);
                    blocks.pop_back();
                }
            }
            if (j >= 1) {
                const Prenatural& t = *ts[static_cast<std::size_t>(k - j)];
                for (int s = 0; p + s <= d && s <= t.bound; ++s) {
                    Elem v = s == 0 ? t.at(object_at(p)) : t.at(std::vector<Mor>(args.begin() + p, args.begin() + p + s));
                    if (v.is_zero())
                        continue;
                    long long e = static_cast<long long>(t.degree - 1) *
                                  reduced_degree(a, args, static_cast<std::size_t>(p + s), static_cast<std::size_t>(d));
                    blocks.push_back(std::move(v));
                    go(p + s, j - 1, sgn + e);
                    blocks.pop_back();
                }
            }
        };
        go(0, k, 0);
        if (k == 1 && d >= 1) {
            const Prenatural& t = *ts[0];
            int abound = a.arity_bound();
            for (int j = 1; j <= d && (abound < 0 || j <= abound); ++j) {
                long long dag = 0;
                for (int i = 0; i + j <= d; ++i) {
                    if (i > 0)
                        dag += a.degree(args[static_cast<std::size_t>(d - i)]) - 1;
                    std::vector<Mor> inner(args.begin() + (d - i - j), args.begin() + (d - i));
                    Elem in = a.m(inner);
                    if (in.is_zero())
                        continue;
                    std::vector<Elem> outer;
                    for (int q = 0; q < d - i - j; ++q)
                        outer.push_back(a.elem(args[static_cast<std::size_t>(q)]));
                    outer.push_back(in);
                    for (int q = d - i; q < d; ++q)
                        outer.push_back(a.elem(args[static_cast<std::size_t>(q)]));
                    res.add(t.at_elems(outer), r.sign(t.degree + dag));
                }
            }
        }
        return res;
    };

    if (only_arity <= 0)
        for (int x = 0; x < a.object_count(); ++x)
            out.set(x, eval({}, x));
    if (only_arity != 0)
        for (const auto& t : prenatural_tuples(a, bound, unital, out.source_bounds)) {
            if (only_arity > 0 && static_cast<int>(t.size()) != only_arity)
                continue;
            Elem v = eval(t, -1);
            if (!v.is_zero())
                out.set(t, v);
        }
    return out;
}

Prenatural M1(const Prenatural& t)
{
    return M({&t}, t.bound);
}

Prenatural M2(const Prenatural& s, const Prenatural& t)
{
    return M({&s, &t}, std::max(s.bound, t.bound));
}

std::optional<std::vector<Prenatural>> solve_prenaturals(
    const std::vector<Unknown>& unknowns,
    const std::function<std::vector<Prenatural>(const std::vector<Prenatural>&)>& op,
    const std::vector<Prenatural>& rhs)
{
    if (unknowns.empty())
        throw ArgumentError("no unknowns");
    const Ring& r = unknowns[0].shape.target().ring();
    require_field(r, "prenatural solving");
    Flattener fl;
    Vec target(r);
    for (std::size_t e = 0; e < rhs.size(); ++e)
        fl.flatten(static_cast<int>(e), rhs[e], target);
    std::vector<Prenatural> zeros;
    for (const auto& u : unknowns)
        zeros.push_back(u.shape.zero_like());
    struct Coord {
        std::size_t unknown;
        std::vector<Mor> key;
        Mor f;
    };
    std::vector<Coord> coords;
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < unknowns.size(); ++i)
        for (auto& [key, f] : coordinates(unknowns[i])) {
            std::vector<Prenatural> xs = zeros;
            set_coordinate(xs[i], key, f, Scalar(1));
            std::vector<Prenatural> img = op(xs);
            Vec col(r);
            for (std::size_t e = 0; e < img.size(); ++e)
                fl.flatten(static_cast<int>(e), img[e], col);
            coords.push_back({i, key, f});
            cols.push_back(std::move(col));
        }
    auto sol = preimage(r, cols, target);
    if (!sol)
        return std::nullopt;
    std::vector<Prenatural> out = zeros;
    for (const auto& [c, a] : *sol) {
        const Coord& cd = coords.at(static_cast<std::size_t>(c));
        set_coordinate(out[cd.unknown], cd.key, cd.f, a);
    }
    return out;
}

std::optional<Prenatural> solve_homotopic(FunPtr f, FunPtr g, int bound, bool unital)
{
    if (!same_objects(*f, *g))
        throw ArgumentError("homotopy needs equal object maps");
    Prenatural shape(f, g, 0, bound, unital);
    auto sol = solve_prenaturals({{shape, false}},
                                 [](const std::vector<Prenatural>& x) { return std::vector<Prenatural>{M1(x[0])}; },
                                 {functor_difference(f, g, bound, unital)});
    if (!sol)
        return std::nullopt;
    return (*sol)[0];
}

std::shared_ptr<TableFunctor> perturb_functor(FunPtr f, const Prenatural& h0, int bound)
{
    if (bound < 0)
        bound = h0.bound;
    for (const auto& e : h0.t0)
        if (!e.is_zero())
            throw ArgumentError("perturbation needs H^0 = 0");
    std::vector<int> objs;
    for (int x = 0; x < f->source().object_count(); ++x)
        objs.push_back(f->on_object(x));
    auto g = std::make_shared<TableFunctor>(f->source_ptr(), f->target_ptr(), objs, bound);
    Prenatural h = h0;
    h.F = f;
    h.G = g;
    h.unital = false;
    for (int d = 1; d <= bound; ++d) {
        Prenatural m = M({&h}, bound, d);
        for (const auto& t : composable_tuples(f->source(), d, h.source_bounds)) {
            Elem v = f->apply(t) - m.at(t);
            if (!v.is_zero())
                g->set(t, v);
        }
    }
    return g;
}

namespace {

std::vector<Elem> degree_zero_cycles(const Category& b, int x, int y)
{
    HomComplex h = hom_complex(b, x, y, all_degrees());
    std::vector<int> idx;
    std::vector<Vec> imgs;
    for (std::size_t i = 0; i < h.mors.size(); ++i)
        if (b.degree(h.mors[i]) == 0) {
            idx.push_back(static_cast<int>(i));
            imgs.push_back(h.d[i]);
        }
    std::vector<Elem> out;
    for (const auto& k : kernel(b.ring(), imgs)) {
        Vec v(b.ring());
        for (const auto& [i, c] : k)
            v.add(idx.at(static_cast<std::size_t>(i)), c);
        out.push_back(h.to_elem(b.ring(), v));
    }
    return out;
}

std::optional<WeakEquivalence> try_candidate(FunPtr f, FunPtr g, const Prenatural& t0only, const WeakEquivalenceOptions& opt)
{
    // closed T extending the chosen T^0
    Prenatural m0 = M1(t0only);
    auto tsol = solve_prenaturals({{t0only.zero_like(), false}},
                                  [](const std::vector<Prenatural>& x) { return std::vector<Prenatural>{M1(x[0])}; },
                                  {m0.scaled(Scalar(-1))});
    if (!tsol)
        return std::nullopt;
    Prenatural T = t0only;
    T.add((*tsol)[0]);
    Prenatural s(g, f, 0, opt.bound, opt.unital), h(f, f, -1, opt.bound, opt.unital), hp(g, g, -1, opt.bound, opt.unital);
    auto rest = solve_prenaturals(
        {{s, true}, {h, true}, {hp, true}},
        [&T](const std::vector<Prenatural>& x) {
            Prenatural a = M2(x[0], T);
            a.add(M1(x[1]), Scalar(-1));
            Prenatural c = M2(T, x[0]);
            c.add(M1(x[2]), Scalar(-1));
            return std::vector<Prenatural>{M1(x[0]), a, c};
        },
        {s.zero_like(), identity_transformation(f, opt.bound, opt.unital),
         identity_transformation(g, opt.bound, opt.unital)});
    if (!rest)
        return std::nullopt;
    WeakEquivalence w;
    w.T = T;
    w.S = (*rest)[0];
    w.H = (*rest)[1];
    w.Hp = (*rest)[2];
    w.unital = opt.unital;
    return w;
}

} // namespace

WeakEquivalenceResult search_weak_equivalence(FunPtr f, FunPtr g, const WeakEquivalenceOptions& opt)
{
    WeakEquivalenceResult res;
    const Category& a = f->source();
    const Category& b = f->target();
    if (&g->source() != &a || &g->target() != &b)
        throw ArgumentError("weak equivalence search needs parallel functors");
    require_field(b.ring(), "weak equivalence search");
    int objs = a.object_count();
    // per object candidate list for T^0: the unit first (when F x = G x), then
    // nonzero combinations of a basis of degree 0 cycles
    std::vector<std::vector<Elem>> cands(static_cast<std::size_t>(objs));
    for (int x = 0; x < objs; ++x) {
        int fx = f->on_object(x), gx = g->on_object(x);
        auto& cl = cands[static_cast<std::size_t>(x)];
        if (fx == gx)
            if (auto u = b.unit(fx))
                cl.push_back(*u);
        auto z = degree_zero_cycles(b, fx, gx);
        for (const auto& co : coefficient_vectors(b.ring(), z.size(), opt.max_candidates)) {
            Elem e = b.zero();
            for (std::size_t i = 0; i < z.size(); ++i)
                e.add(z[i], co[i]);
            if (!e.is_zero() && std::find(cl.begin(), cl.end(), e) == cl.end())
                cl.push_back(e);
        }
        if (cl.empty()) {
            res.obstruction = "no closed degree 0 morphism F(" + a.object_name(x) + ") -> G(" + a.object_name(x) + ")";
            return res;
        }
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(objs), 0);
    while (res.candidates_tried < opt.max_candidates) {
        Prenatural t0(f, g, 0, opt.bound, opt.unital);
        for (int x = 0; x < objs; ++x)
            t0.set(x, cands[static_cast<std::size_t>(x)][idx[static_cast<std::size_t>(x)]]);
        ++res.candidates_tried;
        if (auto w = try_candidate(f, g, t0, opt)) {
            w->candidates_tried = res.candidates_tried;
            res.witness = std::move(*w);
            return res;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == cands[k].size())
            idx[k++] = 0;
        if (k == idx.size())
            break;
    }
    // cohomology-level report
    std::ostringstream os;
    os << "none within bounds (component bound " << opt.bound << ", " << res.candidates_tried << " candidates)";
    if (b.finite()) {
        CohomologyCategory h(b, all_degrees());
        (void)h;
        Bounds w;
        w.lo = -64;
        w.hi = 64;
        CohomologyCategory hw(b, w);
        for (int x = 0; x < objs; ++x)
            if (!h0_isomorphic(hw, f->on_object(x), g->on_object(x)))
                os << "; F(" << a.object_name(x) << ") and G(" << a.object_name(x) << ") are not isomorphic in H^0";
    }
    res.obstruction = os.str();
    return res;
}

bool verify_weak_equivalence(const WeakEquivalence& w, std::string* why)
{
    auto fail = [&](const std::string& s) {
        if (why)
            *why = s;
        return false;
    };
    if (!M1(w.T).is_zero())
        return fail("T is not closed");
    if (!M1(w.S).is_zero())
        return fail("S is not closed");
    Prenatural a = M2(w.S, w.T);
    a.add(M1(w.H), Scalar(-1));
    if (!(a.tn == identity_transformation(w.T.F, w.T.bound, w.unital).tn &&
          a.t0 == identity_transformation(w.T.F, w.T.bound, w.unital).t0))
        return fail("M2(S,T) - M1(H) differs from the identity of F");
    Prenatural c = M2(w.T, w.S);
    c.add(M1(w.Hp), Scalar(-1));
    Prenatural idg = identity_transformation(w.T.G, w.T.bound, w.unital);
    if (!(c.tn == idg.tn && c.t0 == idg.t0))
        return fail("M2(T,S) - M1(H') differs from the identity of G");
    return true;
}

bool solve_functor_level(TableFunctor& f, int n, const Bounds& sb,
                         const std::function<bool(const std::vector<Mor>&)>& unknown,
                         const std::function<std::vector<Mor>(const std::vector<Mor>&)>& coords)
{
    const Category& a = f.source();
    const Category& b = f.target();
    const Ring& r = b.ring();
    require_field(r, "functor extension");
    auto tuples = composable_tuples(a, n, sb);
    std::map<std::pair<std::vector<Mor>, Mor>, int> rows;
    auto row = [&](const std::vector<Mor>& t, Mor g) {
        auto k = std::make_pair(t, g);
        auto it = rows.find(k);
        if (it != rows.end())
            return it->second;
        int id = static_cast<int>(rows.size());
        rows.emplace(k, id);
        return id;
    };
    Vec target(r);
    for (const auto& t : tuples)
        for (const auto& [g, c] : functor_residue(f, t))
            target.add(row(t, g), r.neg(c));
    // residue(t') contains -(-1)^{dagger} c X(t'') whenever t'' is t' with one
    // slot replaced by a term c * b of m^1 of that slot
    std::map<std::vector<Mor>, std::vector<std::pair<std::vector<Mor>, Scalar>>> feeds;
    for (const auto& t : tuples)
        for (int k = 0; k < n; ++k) {
            long long dag = reduced_degree(a, t, static_cast<std::size_t>(k + 1), static_cast<std::size_t>(n));
            for (const auto& [bm, c] : a.m({t[static_cast<std::size_t>(k)]})) {
                std::vector<Mor> t2 = t;
                t2[static_cast<std::size_t>(k)] = bm;
                feeds[t2].emplace_back(t, r.neg(r.mul(r.sign(dag), c)));
            }
        }
    struct Coord {
        std::vector<Mor> t;
        Mor e;
    };
    std::vector<Coord> cs;
    std::vector<Vec> cols;
    for (const auto& t : tuples) {
        if (!unknown(t))
            continue;
        for (Mor e : coords(t)) {
            Vec col(r);
            for (const auto& [g, c] : b.m({e}))
                col.add(row(t, g), c);
            auto it = feeds.find(t);
            if (it != feeds.end())
                for (const auto& [t1, c] : it->second)
                    col.add(row(t1, e), c);
            cs.push_back({t, e});
            cols.push_back(std::move(col));
        }
    }
    if (target.is_zero())
        return true;
    auto sol = preimage(r, cols, target);
    if (!sol)
        return false;
    std::map<std::vector<Mor>, Elem> add;
    for (const auto& [i, c] : *sol) {
        const Coord& cd = cs.at(static_cast<std::size_t>(i));
        auto it = add.emplace(cd.t, b.zero()).first;
        it->second.add(cd.e, c);
    }
    for (const auto& [t, v] : add)
        f.set(t, f.apply(t) + v);
    return true;
}

// ---------------------------------------------------------------------------
// Path object

PathObject::PathObject(CatPtr a, int cut) : a_(std::move(a)), cut_(cut)
{
    if (cut_ < 2)
        throw ArgumentError("path object cut must be at least 2");
    if (a_->arity_bound() >= 0 && a_->arity_bound() < 2)
        throw ArgumentError("path object needs arity bound at least 2");
    if (!a_->finite())
        throw ArgumentError("path object needs a finite category");
    j_ = std::make_shared<PresentedCategory>(invertible_interval(a_->ring()));
    std::vector<Mor> units = unit_morphisms(*j_);
    for (int n = 1; n <= cut_; ++n)
        for (auto& t : composable_tuples(*j_, n, all_degrees())) {
            bool unit = false;
            for (Mor f : t)
                unit = unit || std::find(units.begin(), units.end(), f) != units.end();
            if (!unit)
                words_.push_back(std::move(t));
        }
    for (int x = 0; x < a_->object_count(); ++x) {
        auto u = a_->unit(x);
        if (!u)
            throw ArgumentError("path object needs a strictly unital category");
        add_object("i(" + a_->object_name(x) + ")", x, x, *u, *u, a_->zero(), a_->zero());
    }
}

int PathObject::word_source(const std::vector<Mor>& w) const
{
    return j_->src(w.back());
}

int PathObject::word_target(const std::vector<Mor>& w) const
{
    return j_->tgt(w.front());
}

int PathObject::add_object(const std::string& name, int x0, int x1, const Elem& f01, const Elem& f10,
                           std::optional<Elem> f010, std::optional<Elem> f101)
{
    const PresentedCategory& j = *j_;
    Mor j01 = j.morphism("j01"), j10 = j.morphism("j10");
    auto fun = std::make_shared<TableFunctor>(j_, a_, std::vector<int>{x0, x1}, cut_);
    fun->set({j.morphism("1_0")}, *a_->unit(x0));
    fun->set({j.morphism("1_1")}, *a_->unit(x1));
    fun->set({j01}, f01);
    fun->set({j10}, f10);
    std::set<std::vector<Mor>> given;
    if (f010) {
        fun->set({j10, j01}, *f010);
        given.insert({j10, j01});
    }
    if (f101) {
        fun->set({j01, j10}, *f101);
        given.insert({j01, j10});
    }
    if (!check_functor_equation(*fun, 1, all_degrees()).ok)
        throw StructuralError("interval object morphisms are not closed", name);
    std::vector<Mor> units = unit_morphisms(j);
    auto unknown = [&](const std::vector<Mor>& t) {
        for (Mor f : t)
            if (std::find(units.begin(), units.end(), f) != units.end())
                return false;
        return !given.count(t);
    };
    auto bb = basis_by_degree(*a_);
    for (int n = 2; n <= cut_; ++n) {
        auto coords = [&](const std::vector<Mor>& t) {
            int x = fun->on_object(j.src(t.back())), y = fun->on_object(j.tgt(t.front()));
            auto it = bb.find({x, y});
            if (it == bb.end())
                return std::vector<Mor>{};
            auto jt = it->second.find(1 - n);
            return jt == it->second.end() ? std::vector<Mor>{} : jt->second;
        };
        if (!solve_functor_level(*fun, n, all_degrees(), unknown, coords))
            throw StructuralError("interval object cannot be extended to arity " + std::to_string(n), name);
    }
    IdentityReport rep = check_functor_equation(*fun, cut_, all_degrees());
    if (!rep.ok)
        throw StructuralError("interval object violates the functor equation: " + rep.detail, name);
    int id = static_cast<int>(objs_.size());
    objs_.push_back({name, fun});
    for (int p = 0; p <= id; ++p) {
        add_slots(p, id);
        if (p != id)
            add_slots(id, p);
    }
    cache_.clear();
    return id;
}

void PathObject::add_slots(int P, int Q)
{
    const auto& fp = *objs_.at(P).fun;
    const auto& fq = *objs_.at(Q).fun;
    Bounds all = all_degrees();
    auto& hom = homs_[{P, Q}];
    auto push = [&](int key, int x, int y) {
        for (Mor a : a_->basis(x, y, all)) {
            Mor id = static_cast<Mor>(slots_.size());
            slots_.push_back({P, Q, key, a});
            slot_index_.emplace(std::make_tuple(P, Q, key, a), id);
            hom.push_back(id);
        }
    };
    push(-1, fp.on_object(0), fq.on_object(0));
    push(-2, fp.on_object(1), fq.on_object(1));
    for (std::size_t k = 0; k < words_.size(); ++k)
        push(static_cast<int>(k), fp.on_object(word_source(words_[k])), fq.on_object(word_target(words_[k])));
}

std::optional<Mor> PathObject::find_slot(int P, int Q, int key, Mor a) const
{
    auto it = slot_index_.find(std::make_tuple(P, Q, key, a));
    if (it == slot_index_.end())
        return std::nullopt;
    return it->second;
}

int PathObject::degree(Mor f) const
{
    const Slot& s = slot(f);
    int d = a_->degree(s.a);
    if (s.key >= 0)
        d += static_cast<int>(words_.at(static_cast<std::size_t>(s.key)).size());
    return d;
}

std::string PathObject::name(Mor f) const
{
    const Slot& s = slot(f);
    std::string where;
    if (s.key == -1)
        where = "0";
    else if (s.key == -2)
        where = "1";
    else
        where = format_tuple(*j_, words_.at(static_cast<std::size_t>(s.key)));
    return "<" + objs_.at(s.P).name + "," + objs_.at(s.Q).name + "|" + where + ":" + a_->name(s.a) + ">";
}

std::vector<Mor> PathObject::basis_exact(int P, int Q, int w) const
{
    if (w != 1)
        return {};
    auto it = homs_.find({P, Q});
    return it == homs_.end() ? std::vector<Mor>{} : it->second;
}

Prenatural PathObject::to_prenatural(const Elem& e, int P, int Q, int deg) const
{
    Prenatural t(objs_.at(P).fun, objs_.at(Q).fun, deg, cut_, true);
    for (const auto& [f, c] : e) {
        const Slot& s = slot(f);
        if (s.P != P || s.Q != Q)
            throw ArgumentError("element does not lie in the requested hom");
        Elem v(ring(), s.a, c);
        if (s.key == -1)
            t.t0[0] += v;
        else if (s.key == -2)
            t.t0[1] += v;
        else {
            const auto& w = words_.at(static_cast<std::size_t>(s.key));
            t.set(w, t.at(w) + v);
        }
    }
    return t;
}

Elem PathObject::from_prenatural(const Prenatural& t, int P, int Q) const
{
    Elem out = zero();
    auto put = [&](int key, const Elem& v) {
        for (const auto& [a, c] : v) {
            auto s = find_slot(P, Q, key, a);
            if (!s)
                throw StructuralError("prenatural component outside the path object hom", a_->name(a));
            out.add(*s, c);
        }
    };
    put(-1, t.t0.at(0));
    put(-2, t.t0.at(1));
    std::map<std::vector<Mor>, int> widx;
    for (std::size_t k = 0; k < words_.size(); ++k)
        widx.emplace(words_[k], static_cast<int>(k));
    for (const auto& [w, v] : t.tn) {
        auto it = widx.find(w);
        if (it == widx.end())
            throw StructuralError("prenatural component on a unit tuple", format_tuple(*j_, w));
        put(it->second, v);
    }
    return out;
}

Elem PathObject::m(const std::vector<Mor>& args) const
{
    auto it = cache_.find(args);
    if (it != cache_.end())
        return it->second;
    require_composable(*this, args);
    std::vector<Prenatural> ps;
    for (Mor f : args)
        ps.push_back(to_prenatural(elem(f), src(f), tgt(f), degree(f)));
    std::vector<const Prenatural*> ts;
    for (const auto& p : ps)
        ts.push_back(&p);
    Elem out = from_prenatural(M(ts, cut_), src(args.back()), tgt(args.front()));
    cache_.emplace(args, out);
    return out;
}

std::optional<Elem> PathObject::unit(int p) const
{
    const auto& f = *objs_.at(p).fun;
    Prenatural t(objs_.at(p).fun, objs_.at(p).fun, 0, cut_, true);
    t.t0[0] = *a_->unit(f.on_object(0));
    t.t0[1] = *a_->unit(f.on_object(1));
    return from_prenatural(t, p, p);
}

int path_object_cut(const Category& a, const Bounds& window)
{
    int lo = INT_MAX;
    Bounds all = all_degrees();
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < a.object_count(); ++y)
            for (Mor f : a.basis(x, y, all))
                lo = std::min(lo, a.degree(f));
    if (lo == INT_MAX)
        lo = 0;
    return std::max(2, window.hi - lo + 1);
}

FunPtr path_source(std::shared_ptr<const PathObject> n)
{
    std::vector<int> objs;
    for (int p = 0; p < n->object_count(); ++p)
        objs.push_back(n->object_functor(p)->on_object(0));
    return std::make_shared<StrictFunctor>(n, n->base_ptr(), objs, [n](Mor f) {
        const auto& s = n->slot(f);
        return s.key == -1 ? n->base().elem(s.a) : n->base().zero();
    });
}

FunPtr path_target(std::shared_ptr<const PathObject> n)
{
    std::vector<int> objs;
    for (int p = 0; p < n->object_count(); ++p)
        objs.push_back(n->object_functor(p)->on_object(1));
    return std::make_shared<StrictFunctor>(n, n->base_ptr(), objs, [n](Mor f) {
        const auto& s = n->slot(f);
        return s.key == -2 ? n->base().elem(s.a) : n->base().zero();
    });
}

FunPtr path_constant(std::shared_ptr<const PathObject> n)
{
    std::vector<int> objs;
    for (int x = 0; x < n->base().object_count(); ++x)
        objs.push_back(n->constant_object(x));
    return std::make_shared<StrictFunctor>(n->base_ptr(), n, objs, [n](Mor a) {
        const Category& b = n->base();
        int x = n->constant_object(b.src(a)), y = n->constant_object(b.tgt(a));
        Elem out = n->zero();
        out.add(*n->find_slot(x, y, -1, a), Scalar(1));
        out.add(*n->find_slot(x, y, -2, a), Scalar(1));
        return out;
    });
}

namespace {

Bounds finite_bounds(const Category& a)
{
    if (!a.finite())
        throw ArgumentError("roof certificates need a finite source");
    Bounds b = all_degrees();
    b.max_weight = a.max_weight();
    return b;
}

} // namespace

RoofCertificate certificate_same_ho_class(FunPtr f, FunPtr g, const WeakEquivalence& w, int cut, int bound)
{
    RoofCertificate cert;
    const Category& a = f->source();
    Bounds sb = finite_bounds(a);
    auto path = std::make_shared<PathObject>(f->target_ptr(), cut);
    cert.path = path;
    try {
        for (int x = 0; x < a.object_count(); ++x)
            cert.objects.push_back(path->add_object("psi(" + a.object_name(x) + ")", f->on_object(x), g->on_object(x),
                                                    w.T.at(x), w.S.at(x)));
    } catch (const StructuralError& e) {
        cert.refusal = std::string("object data: ") + e.what();
        return cert;
    }
    auto psi = std::make_shared<TableFunctor>(f->source_ptr(), path, cert.objects, bound);
    cert.psi = psi;
    // word slots by (P, Q, degree)
    std::map<std::tuple<int, int, int>, std::vector<Mor>> words;
    for (int p = 0; p < path->object_count(); ++p)
        for (int q = 0; q < path->object_count(); ++q)
            for (Mor s : path->basis_exact(p, q, 1))
                if (path->slot(s).key >= 0)
                    words[{p, q, path->degree(s)}].push_back(s);
    for (int n = 1; n <= bound; ++n) {
        for (const auto& t : composable_tuples(a, n, sb)) {
            int P = cert.objects[static_cast<std::size_t>(a.src(t.back()))];
            int Q = cert.objects[static_cast<std::size_t>(a.tgt(t.front()))];
            Elem v = path->zero();
            for (const auto& [b, c] : f->apply(t))
                v.add(*path->find_slot(P, Q, -1, b), c);
            for (const auto& [b, c] : g->apply(t))
                v.add(*path->find_slot(P, Q, -2, b), c);
            if (!v.is_zero())
                psi->set(t, v);
        }
        auto coords = [&](const std::vector<Mor>& t) {
            int P = cert.objects[static_cast<std::size_t>(a.src(t.back()))];
            int Q = cert.objects[static_cast<std::size_t>(a.tgt(t.front()))];
            int d = 1 - n;
            for (Mor x : t)
                d += a.degree(x);
            auto it = words.find({P, Q, d});
            return it == words.end() ? std::vector<Mor>{} : it->second;
        };
        if (!solve_functor_level(*psi, n, sb, [](const std::vector<Mor>&) { return true; }, coords)) {
            cert.refusal = "psi cannot be extended to arity " + std::to_string(n);
            return cert;
        }
    }
    std::string why;
    cert.valid = check_roof(cert, f, g, bound, &why);
    if (!cert.valid)
        cert.refusal = why;
    return cert;
}

bool check_roof(const RoofCertificate& c, FunPtr f, FunPtr g, int bound, std::string* why)
{
    auto fail = [&](const std::string& s) {
        if (why)
            *why = s;
        return false;
    };
    if (!c.path || !c.psi)
        return fail("incomplete certificate");
    Bounds sb = finite_bounds(f->source());
    IdentityReport r = check_functor_equation(*c.psi, bound, sb);
    if (!r.ok)
        return fail("psi violates the functor equation: " + r.detail);
    FunPtr s = path_source(c.path), t = path_target(c.path), i = path_constant(c.path);
    std::string d;
    if (!functors_equal(*compose(s, c.psi), *f, bound, sb, &d))
        return fail("s . psi differs from F: " + d);
    if (!functors_equal(*compose(t, c.psi), *g, bound, sb, &d))
        return fail("t . psi differs from G: " + d);
    IdentityFunctor id(c.path->base_ptr());
    Bounds bb = finite_bounds(c.path->base());
    if (!functors_equal(*compose(s, i), id, 1, bb, &d))
        return fail("s . i is not the identity: " + d);
    if (!functors_equal(*compose(t, i), id, 1, bb, &d))
        return fail("t . i is not the identity: " + d);
    return true;
}

} // namespace ainf
