// ainf: command-line front end. Every command reads JSON documents and
// prints one JSON document on stdout. Exit codes: 0 success, 2 argument or
// schema error, 3 structural violation (with a witness).

#include "ainf_io.hpp"

#include "ainf/cohomology.hpp"
#include "ainf/errors.hpp"
#include "ainf/fixtures.hpp"
#include "ainf/ideals.hpp"
#include "ainf/limits.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>

using namespace ainf;
using io::json;

namespace {

struct Structural {
    std::string message;
    std::string witness;
    json report;
};

void emit(const json& doc)
{
    std::cout << io::dump(doc);
}

std::pair<int, int> parse_range(const std::string& s)
{
    static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw ArgumentError("expected a range a..b, got '" + s + "'");
    int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a > b)
        throw ArgumentError("empty range '" + s + "'");
    return {a, b};
}

// All documents of one invocation share a ring and a loader.
struct Session {
    std::optional<io::Loader> loader;
    std::optional<Ring> ring;

    const json& open(const std::string& path, const std::string& kind, json& store)
    {
        store = io::read_file(path);
        const json& b = io::body(store, kind);
        Ring r = io::ring_from_json(store.at("ring"));
        if (!ring) {
            ring = r;
            loader.emplace(r);
        } else if (*ring != r) {
            throw ArgumentError("documents use different rings");
        }
        return b;
    }
    io::Loader& L() { return *loader; }
};

json report_of(const IdentityReport& rep, const Category& c)
{
    json j{{"ok", rep.ok}, {"tuples_checked", rep.tuples_checked}};
    if (!rep.ok) {
        j["arity"] = rep.arity;
        j["inputs"] = json::array();
        for (Mor f : rep.inputs)
            j["inputs"].push_back(c.name(f));
        j["detail"] = rep.detail;
    }
    return j;
}

Bounds finite(const Category& c)
{
    Bounds b;
    b.max_weight = c.finite() ? c.max_weight() : 1;
    b.lo = -1000;
    b.hi = 1000;
    return b;
}

std::shared_ptr<TreeCategory> free_of(const DGQuiver& q, bool plus, bool dg, bool dgplus)
{
    FreeFlavor f = FreeFlavor::plain;
    if (plus)
        f = FreeFlavor::plus;
    if (dg)
        f = FreeFlavor::dg;
    if (dgplus)
        f = FreeFlavor::dg_plus;
    return free_category(q, f);
}

std::string flavor_name(bool plus, bool dg, bool dgplus)
{
    return dgplus ? "dg-plus" : dg ? "dg" : plus ? "plus" : "plain";
}

json present_json(const Category& c, int arity)
{
    return io::category_to_json(present(c, arity));
}

// F out of the top stage given by generator images (or Psi of the tower).
FunPtr top_functor(const ResolutionTower& t, const json& b, io::Loader& L, CatPtr& target)
{
    if (b.contains("psi") && b.at("psi").get<bool>()) {
        target = t.target;
        return t.top().psi;
    }
    auto tgt = L.category(b.at("target"));
    target = tgt;
    std::vector<int> objs;
    const auto& om = b.at("objects");
    for (int x = 0; x < t.target->object_count(); ++x) {
        std::string n = t.target->object_name(x);
        if (!om.contains(n))
            throw ArgumentError("functor misses object " + n);
        int y = tgt->object_index(om.at(n).get<std::string>());
        if (y < 0)
            throw ArgumentError("unknown object " + om.at(n).get<std::string>());
        objs.push_back(y);
    }
    const auto& gi = b.at("generators");
    CatPtr s0 = t.stages[0].cat;
    CatPtr tc = tgt;
    FunPtr cur = std::make_shared<StrictFunctor>(s0, tc, objs, [s0, tc, objs](Mor f) {
        auto u = tc->unit(objs.at(static_cast<std::size_t>(s0->src(f))));
        if (!u)
            throw ArgumentError("target has no unit at " + tc->object_name(objs.at(static_cast<std::size_t>(s0->src(f)))));
        return *u;
    });
    for (std::size_t n = 1; n < t.stages.size(); ++n) {
        auto st = std::dynamic_pointer_cast<const TreeCategory>(t.stages[n].cat);
        std::vector<Elem> images;
        for (const auto& g : st->spec().gens) {
            if (!gi.contains(g.name))
                throw ArgumentError("functor misses generator " + g.name);
            images.push_back(io::elem_from_json(*tgt, gi.at(g.name)));
        }
        FunPtr prev = cur;
        cur = std::make_shared<EvalFunctor>(st, tc, objs, [prev, images](std::int32_t l) {
            if (TreeCategory::is_old(l))
                return prev->apply({TreeCategory::old_of(l)});
            return images.at(static_cast<std::size_t>(TreeCategory::gen_of(l)));
        });
    }
    return cur;
}

Elem generator_in_top(const ResolutionTower& t, std::size_t stage, int g)
{
    auto st = std::dynamic_pointer_cast<const TreeCategory>(t.stages[stage].cat);
    Elem e = st->leaf(TreeCategory::gen_label(g));
    for (std::size_t j = stage + 1; j < t.stages.size(); ++j)
        e = std::dynamic_pointer_cast<const TreeCategory>(t.stages[j].cat)->embed_old(e);
    return e;
}

json weq_to_json(const WeakEquivalence& w, const json& f, const json& g)
{
    return {{"T", io::prenatural_to_json(w.T, f, g)},
            {"S", io::prenatural_to_json(w.S, g, f)},
            {"H", io::prenatural_to_json(w.H, f, f)},
            {"H_prime", io::prenatural_to_json(w.Hp, g, g)}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ainf: exact computations with finitely presented A-infinity categories"};
    app.require_subcommand(1);
    Session S;
    std::function<json()> run;

    // ---- builtin / fixture ----
    std::string bname;
    std::int64_t prime = 7;
    auto* cmd_builtin = app.add_subcommand("builtin", "emit a builtin category document");
    cmd_builtin->add_option("name", bname, "interval-I, invertible-interval, simplex(n), discN, dual-numbers")
        ->required();
    cmd_builtin->add_option("--prime", prime, "field characteristic");
    cmd_builtin->callback([&] {
        run = [&] {
            Ring r = Ring::prime_field(prime);
            return io::document(r, "category", io::category_to_json(builtin(bname, r)));
        };
    });

    std::string fkind;
    auto* cmd_fixture = app.add_subcommand("fixture", "emit a random fixture (seeded by AINF_SEED)");
    std::string of;
    cmd_fixture->add_option("kind", fkind, "quiver, category or contractible")
        ->required()
        ->check(CLI::IsMember({"quiver", "category", "contractible"}));
    cmd_fixture->add_option("--prime", prime, "field characteristic");
    cmd_fixture->add_option("--of", of, "category document B for the contractible summand C -> B");
    cmd_fixture->callback([&] {
        run = [&]() -> json {
            if (fkind == "contractible") {
                if (of.empty())
                    throw ArgumentError("fixture contractible needs --of");
                json d;
                const json& bb = S.open(of, "category", d);
                auto b = S.L().category(bb);
                auto cs = contractible_summand(b);
                return io::document(*S.ring, "functor",
                                    io::functor_to_json(*cs.projection, io::category_to_json(*cs.c), bb, 1));
            }
            Ring r = Ring::prime_field(prime);
            std::mt19937_64 rng(fixture_seed());
            if (fkind == "quiver")
                return io::document(r, "quiver", io::quiver_to_json(random_dg_quiver(r, rng)));
            return io::document(r, "category", io::category_to_json(*random_ainf_category(r, rng)));
        };
    });

    // ---- check ----
    std::string f1, f2, f3;
    int arity = 4;
    auto* cmd_check = app.add_subcommand("check", "identity checks");
    cmd_check->require_subcommand(1);
    auto* chk_st = cmd_check->add_subcommand("stasheff", "Stasheff relations of a category");
    chk_st->add_option("category", f1)->required();
    chk_st->add_option("--arity", arity, "maximal total arity");
    chk_st->callback([&] {
        run = [&]() -> json {
            json d;
            auto c = S.L().category(S.open(f1, "category", d));
            auto rep = check_stasheff(*c, arity, finite(*c));
            json r = report_of(rep, *c);
            r["command"] = "check stasheff";
            r["arity"] = arity;
            if (!rep.ok)
                throw Structural{"Stasheff relation fails: " + rep.detail, format_tuple(*c, rep.inputs), r};
            return io::document(*S.ring, "report", r);
        };
    });
    auto* chk_fun = cmd_check->add_subcommand("functor", "functor equation");
    chk_fun->add_option("functor", f1)->required();
    chk_fun->add_option("--arity", arity, "maximal arity");
    chk_fun->callback([&] {
        run = [&]() -> json {
            json d;
            auto f = S.L().functor(S.open(f1, "functor", d));
            auto rep = check_functor_equation(*f, arity, finite(f->source()));
            json r = report_of(rep, f->source());
            r["command"] = "check functor";
            r["arity"] = arity;
            if (!rep.ok)
                throw Structural{"functor equation fails: " + rep.detail, format_tuple(f->source(), rep.inputs), r};
            return io::document(*S.ring, "report", r);
        };
    });

    // ---- cohomology ----
    std::string window = "-64..64";
    auto* cmd_h = app.add_subcommand("cohomology", "cohomology category H(A)");
    cmd_h->add_option("category", f1)->required();
    cmd_h->add_option("--window", window, "degree window a..b");
    cmd_h->callback([&] {
        run = [&]() -> json {
            json d;
            auto c = S.L().category(S.open(f1, "category", d));
            auto [lo, hi] = parse_range(window);
            Bounds b = finite(*c);
            b.lo = lo;
            b.hi = hi;
            CohomologyCategory h(*c, b);
            json homs = json::array();
            for (int x = 0; x < c->object_count(); ++x)
                for (int y = 0; y < c->object_count(); ++y) {
                    json degs = json::object();
                    for (int k = h.interior_lo(); k <= h.interior_hi(); ++k) {
                        std::size_t rk = h.rank(x, y, k);
                        if (rk == 0)
                            continue;
                        json reps = json::array();
                        for (std::size_t i = 0; i < rk; ++i)
                            reps.push_back(io::elem_to_json(
                                *c, h.representative(x, y, k, Vec(c->ring(), static_cast<int>(i)))));
                        degs[std::to_string(k)] = {{"rank", rk}, {"representatives", reps}};
                    }
                    homs.push_back({{"from", c->object_name(x)}, {"to", c->object_name(y)}, {"degrees", degs}});
                }
            json r{{"command", "cohomology"}, {"interior", {h.interior_lo(), h.interior_hi()}}, {"homs", homs}};
            return io::document(*S.ring, "report", r);
        };
    });

    // ---- free ----
    bool plus = false, dg = false, dgplus = false;
    int weight = 3;
    std::string degrees = "-64..64";
    auto* cmd_free = app.add_subcommand("free", "ranks of the free category on a DG quiver");
    cmd_free->add_option("quiver", f1)->required();
    auto* fl1 = cmd_free->add_flag("--plus", plus, "strictly unital");
    auto* fl2 = cmd_free->add_flag("--dg", dg, "free DG category");
    auto* fl3 = cmd_free->add_flag("--dg-plus", dgplus, "free unital DG category");
    fl1->excludes(fl2)->excludes(fl3);
    fl2->excludes(fl3);
    cmd_free->add_option("--weight", weight, "maximal weight");
    cmd_free->add_option("--degree", degrees, "degree window a..b");
    cmd_free->callback([&] {
        run = [&]() -> json {
            json d;
            auto q = S.L().quiver(S.open(f1, "quiver", d));
            auto c = free_of(q, plus, dg, dgplus);
            auto [lo, hi] = parse_range(degrees);
            json homs = json::array();
            for (int x = 0; x < c->object_count(); ++x)
                for (int y = 0; y < c->object_count(); ++y) {
                    json ranks = json::array(), per = json::array();
                    for (int w = 1; w <= weight; ++w) {
                        std::map<int, int> bydeg;
                        int total = 0;
                        for (Mor f : c->basis_exact(x, y, w))
                            if (c->degree(f) >= lo && c->degree(f) <= hi) {
                                ++bydeg[c->degree(f)];
                                ++total;
                            }
                        ranks.push_back(total);
                        json dj = json::object();
                        for (auto [k, n] : bydeg)
                            dj[std::to_string(k)] = n;
                        per.push_back({{"weight", w}, {"rank", total}, {"by_degree", dj}});
                    }
                    homs.push_back(
                        {{"from", c->object_name(x)}, {"to", c->object_name(y)}, {"ranks", ranks}, {"weights", per}});
                }
            json r{{"command", "free"}, {"flavor", flavor_name(plus, dg, dgplus)}, {"homs", homs}};
            return io::document(*S.ring, "report", r);
        };
    });

    // ---- m1 / compose-m on free categories ----
    std::vector<std::string> terms;
    auto* cmd_m1 = app.add_subcommand("m1", "m1 of a term of a free category");
    cmd_m1->add_option("quiver", f1)->required();
    cmd_m1->add_option("term", terms, "term such as \"((*,*) | f,g)\"")->required()->expected(1);
    cmd_m1->add_flag("--plus", plus);
    cmd_m1->add_flag("--dg", dg);
    cmd_m1->add_flag("--dg-plus", dgplus);
    cmd_m1->callback([&] {
        run = [&]() -> json {
            json d;
            auto c = free_of(S.L().quiver(S.open(f1, "quiver", d)), plus, dg, dgplus);
            Elem e = c->parse_term(terms.at(0));
            json r{{"command", "m1"},
                   {"input", io::elem_to_json(*c, e)},
                   {"value", io::elem_to_json(*c, m_of(*c, {e}))}};
            return io::document(*S.ring, "report", r);
        };
    });
    int nary = 2;
    auto* cmd_mn = app.add_subcommand("compose-m", "m^n of terms (written order) of a free category");
    cmd_mn->add_option("quiver", f1)->required();
    cmd_mn->add_option("n", nary)->required();
    cmd_mn->add_option("terms", terms)->required();
    cmd_mn->add_flag("--plus", plus);
    cmd_mn->add_flag("--dg", dg);
    cmd_mn->add_flag("--dg-plus", dgplus);
    cmd_mn->callback([&] {
        run = [&]() -> json {
            json d;
            auto c = free_of(S.L().quiver(S.open(f1, "quiver", d)), plus, dg, dgplus);
            if (static_cast<int>(terms.size()) != nary)
                throw ArgumentError("compose-m " + std::to_string(nary) + " needs " + std::to_string(nary) + " terms");
            std::vector<Elem> args;
            json in = json::array();
            for (const auto& t : terms) {
                args.push_back(c->parse_term(t));
                in.push_back(io::elem_to_json(*c, args.back()));
            }
            for (std::size_t i = 0; i + 1 < args.size(); ++i)
                for (const auto& [a, ca] : args[i])
                    for (const auto& [b, cb] : args[i + 1])
                        if (c->src(a) != c->tgt(b))
                            throw ArgumentError("terms are not composable");
            json r{{"command", "compose-m"}, {"n", nary}, {"inputs", in},
                   {"value", io::elem_to_json(*c, m_of(*c, args))}};
            return io::document(*S.ring, "report", r);
        };
    });

    // ---- quotient / factor ----
    auto* cmd_q = app.add_subcommand("quotient", "quotient of a finite category by the ideal of relations");
    cmd_q->add_option("category", f1)->required();
    cmd_q->add_option("relations", f2)->required();
    cmd_q->add_option("--arity", arity, "closure arity");
    cmd_q->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            auto c = S.L().category(S.open(f1, "category", d1));
            auto rel = S.L().relations(*c, S.open(f2, "relations", d2));
            BoundedIdeal ideal(*c, rel, finite(*c), arity);
            std::vector<Elem> span;
            for (const auto& [hom, v] : ideal.spans())
                span.insert(span.end(), v.begin(), v.end());
            auto q = std::make_shared<LinearQuotient>(c, span);
            auto qc = present(*q, std::max(2, c->arity_bound()));
            json body = io::category_to_json(qc);
            json r{{"command", "quotient"}, {"closure_grew", ideal.grew()}, {"quotient", body}};
            return io::document(*S.ring, "report", r);
        };
    });
    auto* cmd_fac = app.add_subcommand("factor", "factor a strict functor through a quotient");
    cmd_fac->add_option("functor", f1)->required();
    cmd_fac->add_option("relations", f2)->required();
    cmd_fac->add_option("--arity", arity, "closure arity");
    cmd_fac->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            const json& fb = S.open(f1, "functor", d1);
            auto f = S.L().functor(fb);
            auto rel = S.L().relations(f->source(), S.open(f2, "relations", d2));
            BoundedIdeal ideal(f->source(), rel, finite(f->source()), arity);
            std::vector<Elem> span;
            for (const auto& [hom, v] : ideal.spans())
                span.insert(span.end(), v.begin(), v.end());
            auto q = std::make_shared<LinearQuotient>(f->source_ptr(), span);
            auto res = factor_through(*f, q);
            if (!res.functor)
                throw Structural{"the functor does not vanish on the relations", res.refusal,
                                 json{{"value", io::elem_to_json(f->target(), res.value)}}};
            auto qc = present(*q, std::max(2, f->source().arity_bound()));
            json qj = io::category_to_json(qc);
            // re-express on the presented copy (same names, same order)
            auto qp = S.L().category(qj);
            CatPtr tgt = f->target_ptr();
            std::vector<int> objs;
            for (int x = 0; x < q->object_count(); ++x)
                objs.push_back(res.functor->on_object(x));
            auto fq = res.functor;
            auto g = std::make_shared<StrictFunctor>(qp, tgt, objs, [fq](Mor m) { return fq->apply({m}); });
            return io::document(*S.ring, "functor", io::functor_to_json(*g, qj, fb.at("target"), fq->component_bound() < 0 ? 4 : fq->component_bound()));
        };
    });

    // ---- funcat ----
    int bound = 2;
    bool unital = false;
    std::size_t max_candidates = 10000;
    auto* cmd_fc = app.add_subcommand("funcat", "functor-category operations");
    cmd_fc->require_subcommand(1);
    auto* fc_m1 = cmd_fc->add_subcommand("m1", "M1 of a prenatural transformation");
    fc_m1->add_option("prenatural", f1)->required();
    fc_m1->callback([&] {
        run = [&]() -> json {
            json d;
            const json& b = S.open(f1, "prenatural", d);
            auto t = S.L().prenatural(b);
            return io::document(*S.ring, "prenatural", io::prenatural_to_json(M1(t), b.at("F"), b.at("G")));
        };
    });
    auto* fc_m2 = cmd_fc->add_subcommand("m2", "M2(S, T) for T : F => G, S : G => H");
    fc_m2->add_option("S", f1)->required();
    fc_m2->add_option("T", f2)->required();
    fc_m2->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            const json& sb = S.open(f1, "prenatural", d1);
            const json& tb = S.open(f2, "prenatural", d2);
            auto s = S.L().prenatural(sb);
            auto t = S.L().prenatural(tb);
            return io::document(*S.ring, "prenatural", io::prenatural_to_json(M2(s, t), tb.at("F"), sb.at("G")));
        };
    });
    auto* fc_h = cmd_fc->add_subcommand("homotopy", "H with F - G = M1(H), or none within bounds");
    fc_h->add_option("F", f1)->required();
    fc_h->add_option("G", f2)->required();
    fc_h->add_option("--bound", bound, "arity bound of H");
    fc_h->add_flag("--unital", unital, "strictly unital prenaturals");
    fc_h->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            const json& fb = S.open(f1, "functor", d1);
            const json& gb = S.open(f2, "functor", d2);
            FunPtr f = S.L().functor(fb), g = S.L().functor(gb);
            auto h = solve_homotopic(f, g, bound, unital);
            json r{{"command", "funcat homotopy"}, {"homotopic", h.has_value()}};
            r["witness"] = h ? io::prenatural_to_json(*h, fb, gb) : json(nullptr);
            return io::document(*S.ring, "report", r);
        };
    });
    auto* fc_w = cmd_fc->add_subcommand("weq", "weak equivalence witness (T, S, H, H') or none within bounds");
    fc_w->add_option("F", f1)->required();
    fc_w->add_option("G", f2)->required();
    fc_w->add_option("--bound", bound, "arity bound");
    fc_w->add_flag("--unital", unital, "strictly unital prenaturals");
    fc_w->add_option("--max-candidates", max_candidates, "search budget");
    fc_w->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            const json& fb = S.open(f1, "functor", d1);
            const json& gb = S.open(f2, "functor", d2);
            FunPtr f = S.L().functor(fb), g = S.L().functor(gb);
            WeakEquivalenceOptions o;
            o.bound = bound;
            o.unital = unital;
            o.max_candidates = max_candidates;
            auto res = search_weak_equivalence(f, g, o);
            json r{{"command", "funcat weq"}, {"weakly_equivalent", res.witness.has_value()},
                   {"candidates_tried", res.candidates_tried}, {"obstruction", res.obstruction}};
            r["witness"] = res.witness ? weq_to_json(*res.witness, fb, gb) : json(nullptr);
            return io::document(*S.ring, "report", r);
        };
    });

    // ---- path object ----
    int cut = 3;
    auto* cmd_po = app.add_subcommand("pathobject", "path object with s, t, i");
    cmd_po->add_option("category", f1)->required();
    cmd_po->add_option("--cut", cut, "arity cut of the interval functors");
    cmd_po->callback([&] {
        run = [&]() -> json {
            json d;
            const json& cb = S.open(f1, "category", d);
            auto a = S.L().category(cb);
            auto n = std::make_shared<PathObject>(a, cut);
            int ar = std::max(2, a->arity_bound());
            json nj = present_json(*n, ar);
            auto np = S.L().category(nj);
            auto s = path_source(n), t = path_target(n), i = path_constant(n);
            auto copy = [&](const FunPtr& f) -> FunPtr {
                std::vector<int> objs;
                for (int x = 0; x < n->object_count(); ++x)
                    objs.push_back(f->on_object(x));
                return std::make_shared<StrictFunctor>(np, a, objs, [f](Mor m) { return f->apply({m}); });
            };
            std::vector<int> iobj;
            for (int x = 0; x < a->object_count(); ++x)
                iobj.push_back(i->on_object(x));
            CatPtr ac = a;
            auto ic = std::make_shared<StrictFunctor>(ac, np, iobj, [i](Mor m) { return i->apply({m}); });
            json r{{"command", "pathobject"},
                   {"cut", cut},
                   {"path_object", nj},
                   {"s", io::functor_to_json(*copy(s), nj, cb, 1)},
                   {"t", io::functor_to_json(*copy(t), nj, cb, 1)},
                   {"i", io::functor_to_json(*ic, cb, nj, 1)}};
            return io::document(*S.ring, "report", r);
        };
    });

    // ---- limits ----
    auto* cmd_lim = app.add_subcommand("limits", "limits and colimits");
    cmd_lim->require_subcommand(1);
    auto* lim_p = cmd_lim->add_subcommand("product", "A x B");
    lim_p->add_option("A", f1)->required();
    lim_p->add_option("B", f2)->required();
    lim_p->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            auto a = S.L().category(S.open(f1, "category", d1));
            auto b = S.L().category(S.open(f2, "category", d2));
            auto p = std::make_shared<ProductCategory>(a, b);
            int ar = std::max({2, a->arity_bound(), b->arity_bound()});
            return io::document(*S.ring, "category", present_json(*p, ar));
        };
    });
    auto* lim_c = cmd_lim->add_subcommand("coproduct", "A + B");
    lim_c->add_option("A", f1)->required();
    lim_c->add_option("B", f2)->required();
    lim_c->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            auto a = S.L().category(S.open(f1, "category", d1));
            auto b = S.L().category(S.open(f2, "category", d2));
            auto c = std::make_shared<CoproductCategory>(a, b);
            int ar = std::max({2, a->arity_bound(), b->arity_bound()});
            return io::document(*S.ring, "category", present_json(*c, ar));
        };
    });
    auto* lim_e = cmd_lim->add_subcommand("equalizer", "equalizer of strict F, G : A -> B");
    lim_e->add_option("F", f1)->required();
    lim_e->add_option("G", f2)->required();
    lim_e->callback([&] {
        run = [&]() -> json {
            json d1, d2;
            const json& fb = S.open(f1, "functor", d1);
            FunPtr f = S.L().functor(fb);
            FunPtr g = S.L().functor(S.open(f2, "functor", d2));
            auto e = std::make_shared<EqualizerCategory>(f->source_ptr(), f, g);
            int ar = std::max(2, f->source().arity_bound());
            json ej = present_json(*e, ar);
            auto ep = S.L().category(ej);
            auto inc = equalizer_inclusion(e);
            std::vector<int> objs;
            for (int x = 0; x < e->object_count(); ++x)
                objs.push_back(inc->on_object(x));
            auto ic = std::make_shared<StrictFunctor>(ep, f->source_ptr(), objs, [inc](Mor m) { return inc->apply({m}); });
            json r{{"command", "limits equalizer"}, {"equalizer", ej}, {"inclusion", io::functor_to_json(*ic, ej, fb.at("source"), 1)}};
            return io::document(*S.ring, "report", r);
        };
    });
    auto* lim_q = cmd_lim->add_subcommand("coeq-reflexive", "reflexive coequalizer of F, G : A -> B with section r");
    lim_q->add_option("F", f1)->required();
    lim_q->add_option("G", f2)->required();
    lim_q->add_option("r", f3)->required();
    lim_q->add_option("--arity", arity, "closure arity");
    lim_q->callback([&] {
        run = [&]() -> json {
            json d1, d2, d3;
            const json& fb = S.open(f1, "functor", d1);
            FunPtr f = S.L().functor(fb);
            FunPtr g = S.L().functor(S.open(f2, "functor", d2));
            FunPtr r = S.L().functor(S.open(f3, "functor", d3));
            auto c = reflexive_coequalizer(f, g, r, arity);
            int ar = std::max(2, f->target().arity_bound());
            json qj = present_json(*c.quotient, ar);
            auto qp = S.L().category(qj);
            std::vector<int> objs;
            for (int x = 0; x < f->target().object_count(); ++x)
                objs.push_back(c.q->on_object(x));
            auto qf = c.q;
            auto qc = std::make_shared<StrictFunctor>(f->target_ptr(), qp, objs, [qf](Mor m) { return qf->apply({m}); });
            json rep{{"command", "limits coeq-reflexive"},
                     {"closure_grew", c.closure_grew},
                     {"coequalizer", qj},
                     {"q", io::functor_to_json(*qc, fb.at("target"), qj, 1)}};
            return io::document(*S.ring, "report", rep);
        };
    });

    // ---- resolution ----
    ResolutionOptions ropt;
    std::string rwindow = "-2..2";
    bool cm = false;
    auto* cmd_res = app.add_subcommand("resolve", "stagewise semi-free resolution");
    cmd_res->add_option("category", f1)->required();
    cmd_res->add_option("--stages", ropt.stages, "stage bound K");
    cmd_res->add_option("--weight", ropt.max_weight, "weight bound W");
    cmd_res->add_option("--window", rwindow, "degree window a..b");
    cmd_res->add_flag("--cm", cm, "non-unital (cofibrant morphisms) variant");
    cmd_res->add_flag("--dg", ropt.dg, "DG stages");
    cmd_res->add_flag("--functorial", ropt.functorial, "use every admissible generator");
    cmd_res->callback([&] {
        run = [&]() -> json {
            json d;
            const json& cb = S.open(f1, "category", d);
            auto c = S.L().category(cb);
            std::tie(ropt.lo, ropt.hi) = parse_range(rwindow);
            auto t = cm ? resolve_cm(c, ropt) : resolve(c, ropt);
            return io::document(*S.ring, "tower", io::tower_to_json(t, cb));
        };
    });
    auto* cmd_cert = app.add_subcommand("certify", "semi-free certificate of a tower");
    cmd_cert->add_option("tower", f1)->required();
    cmd_cert->callback([&] {
        run = [&]() -> json {
            json d;
            auto t = S.L().tower(S.open(f1, "tower", d));
            auto c = certify_semifree(t);
            json doc = io::document(*S.ring, "certificate", io::certificate_to_json(c, t));
            if (!c.valid)
                throw Structural{"certificate refused: " + c.refusal, c.refusal, doc};
            return doc;
        };
    });
    auto* cmd_lift = app.add_subcommand("lift", "strict lift of F along G over a tower");
    cmd_lift->add_option("F", f1, "functor out of the tower top (generator images or psi)")->required();
    cmd_lift->add_option("G", f2, "strict quasi-surjection C -> B")->required();
    cmd_lift->add_option("tower", f3)->required();
    cmd_lift->callback([&] {
        run = [&]() -> json {
            json d1, d2, d3;
            const json& fb = S.open(f1, "functor", d1);
            const json& gb = S.open(f2, "functor", d2);
            auto t = S.L().tower(S.open(f3, "tower", d3));
            FunPtr g = S.L().functor(gb);
            CatPtr btarget;
            FunPtr f = top_functor(t, fb, S.L(), btarget);
            if (btarget.get() != &g->target())
                throw ArgumentError("F and G must end in the same category");
            auto ft = lift(t, f, g);
            json gens = json::object();
            for (std::size_t n = 1; n < t.stages.size(); ++n) {
                auto st = std::dynamic_pointer_cast<const TreeCategory>(t.stages[n].cat);
                for (std::size_t i = 0; i < st->spec().gens.size(); ++i)
                    gens[st->spec().gens[i].name] =
                        io::elem_to_json(g->source(), apply1(*ft, generator_in_top(t, n, static_cast<int>(i))));
            }
            json objs;
            for (int x = 0; x < t.target->object_count(); ++x)
                objs[t.target->object_name(x)] = g->source().object_name(ft->on_object(x));
            Bounds b;
            b.max_weight = t.options.max_weight;
            b.lo = t.options.lo;
            b.hi = t.options.hi;
            std::string why;
            bool eq = functors_equal(*compose(g, ft), *f, 1, b, &why);
            if (!eq)
                throw Structural{"G . lift differs from F", why, json()};
            json body{{"source", "tower-top"}, {"target", gb.at("source")}, {"objects", objs}, {"generators", gens}};
            return io::document(*S.ring, "functor", body);
        };
    });

    try {
        app.parse(argc, argv);
        emit(run());
        return 0;
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit(json{{"error", {{"kind", "argument"}, {"message", e.what()}}}});
        return 2;
    } catch (const ArgumentError& e) {
        emit(json{{"error", {{"kind", "argument"}, {"message", e.what()}}}});
        return 2;
    } catch (const std::invalid_argument& e) {
        emit(json{{"error", {{"kind", "argument"}, {"message", e.what()}}}});
        return 2;
    } catch (const Structural& s) {
        json err{{"kind", "structural"}, {"message", s.message}, {"witness", s.witness}};
        if (!s.report.is_null())
            err["report"] = s.report;
        emit(json{{"error", err}});
        return 3;
    } catch (const StructuralError& e) {
        emit(json{{"error", {{"kind", "structural"}, {"message", e.what()}, {"witness", e.witness()}}}});
        return 3;
    }
}
