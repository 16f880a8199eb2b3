#include "ainf_io.hpp"

#include "ainf/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ainf::io {

namespace {

[[noreturn]] void schema(const std::string& what)
{
    throw ArgumentError("schema: " + what);
}

const json& field(const json& j, const std::string& key)
{
    if (!j.is_object() || !j.contains(key))
        schema("missing field '" + key + "'");
    return j.at(key);
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where)
{
    if (!j.is_object())
        schema(where + " must be an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k))
            schema("unknown field '" + k + "' in " + where);
}

int get_int(const json& j, const std::string& what)
{
    if (!j.is_number_integer())
        schema(what + " must be an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& what)
{
    if (!j.is_string())
        schema(what + " must be a string");
    return j.get<std::string>();
}

int object_of(const Category& c, const json& j)
{
    std::string n = get_string(j, "object");
    int x = c.object_index(n);
    if (x < 0)
        schema("unknown object '" + n + "'");
    return x;
}

Bounds finite_bounds_of(const Category& c)
{
    if (!c.finite())
        throw ArgumentError("serializing a functor needs a finite source");
    Bounds b;
    b.max_weight = c.max_weight();
    b.lo = -1000;
    b.hi = 1000;
    return b;
}

Elem lookup_name(const Category& c, const std::string& n)
{
    if (auto p = dynamic_cast<const PresentedCategory*>(&c)) {
        auto f = p->find(n);
        if (!f)
            schema("unknown morphism '" + n + "'");
        return c.elem(*f);
    }
    if (auto t = dynamic_cast<const TreeCategory*>(&c))
        return t->parse_term(n);
    Bounds b;
    b.lo = -1000;
    b.hi = 1000;
    b.max_weight = c.finite() ? c.max_weight() : 6;
    for (int x = 0; x < c.object_count(); ++x)
        for (int y = 0; y < c.object_count(); ++y)
            for (Mor f : c.basis(x, y, b))
                if (c.name(f) == n)
                    return c.elem(f);
    schema("unknown morphism '" + n + "'");
}

Mor basis_of(const Category& c, const json& j)
{
    Elem e = lookup_name(c, get_string(j, "morphism name"));
    if (e.size() != 1 || e.begin()->second != 1)
        schema("'" + j.get<std::string>() + "' is not a basis morphism");
    return e.begin()->first;
}

std::vector<Mor> tuple_of(const Category& c, const json& j)
{
    if (!j.is_array())
        schema("inputs must be an array");
    std::vector<Mor> out;
    for (const auto& n : j)
        out.push_back(basis_of(c, n));
    return out;
}

json tuple_to_json(const Category& c, const std::vector<Mor>& t)
{
    json a = json::array();
    for (Mor f : t)
        a.push_back(c.name(f));
    return a;
}

} // namespace

json ring_to_json(const Ring& r)
{
    switch (r.kind()) {
    case Ring::Kind::prime_field: return {{"kind", "prime-field"}, {"p", r.p()}};
    case Ring::Kind::rationals: return {{"kind", "rationals"}};
    case Ring::Kind::integers: return {{"kind", "integers"}};
    }
    return {};
}

Ring ring_from_json(const json& j)
{
    std::string k = get_string(field(j, "kind"), "ring kind");
    if (k == "prime-field") {
        allow_keys(j, {"kind", "p"}, "ring");
        auto p = field(j, "p");
        if (!p.is_number_integer())
            schema("ring p must be an integer");
        try {
            return Ring::prime_field(p.get<std::int64_t>());
        } catch (const std::invalid_argument& e) {
            schema(e.what());
        }
    }
    allow_keys(j, {"kind"}, "ring");
    if (k == "rationals")
        return Ring::rationals();
    if (k == "integers")
        return Ring::integers();
    schema("unknown ring kind '" + k + "'");
}

json scalar_to_json(const Scalar& s)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    auto num = numerator(s), den = denominator(s);
    auto fits = [](const auto& v) {
        return v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min();
    };
    if (!fits(num) || !fits(den))
        return json(s.str()); // out of range for JSON integers: exact decimal string
    if (den == 1)
        return json(static_cast<std::int64_t>(num));
    return json::array({static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)});
}

Scalar scalar_from_json(const json& j)
{
    if (j.is_number_integer())
        return Scalar(j.get<std::int64_t>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        auto den = j[1].get<std::int64_t>();
        if (den == 0)
            schema("zero denominator");
        return Scalar(j[0].get<std::int64_t>()) / Scalar(den);
    }
    if (j.is_string()) {
        try {
            return Scalar(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    schema("coefficients must be integers or [numerator, denominator]");
}

json elem_to_json(const Category& c, const Elem& e)
{
    json a = json::array();
    for (const auto& [f, v] : e)
        a.push_back(json::array({c.name(f), scalar_to_json(v)}));
    return a;
}

Elem elem_from_json(const Category& c, const json& j)
{
    if (!j.is_array())
        schema("an element is a list of [name, coefficient] pairs");
    Elem e = c.zero();
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2)
            schema("an element term is a [name, coefficient] pair");
        e.add(lookup_name(c, get_string(t[0], "term name")), scalar_from_json(t[1]));
    }
    return e;
}

json category_to_json(const PresentedCategory& c)
{
    json j;
    j["objects"] = c.objects();
    j["arity_bound"] = c.arity_bound();
    json ms = json::array();
    for (const auto& m : c.morphisms())
        ms.push_back({{"name", m.name}, {"src", c.objects()[m.src]}, {"tgt", c.objects()[m.tgt]}, {"degree", m.degree}});
    j["morphisms"] = ms;
    json ops = json::array();
    for (const auto& [args, v] : c.table())
        if (!v.is_zero())
            ops.push_back({{"inputs", tuple_to_json(c, args)}, {"value", elem_to_json(c, v)}});
    j["operations"] = ops;
    if (c.unit_policy() != UnitPolicy::non_unital) {
        json u;
        for (int x = 0; x < c.object_count(); ++x)
            u[c.object_name(x)] = elem_to_json(c, *c.unit(x));
        j["units"] = u;
    }
    if (c.unit_policy() == UnitPolicy::augmented) {
        json a;
        for (std::size_t f = 0; f < c.morphisms().size(); ++f) {
            Scalar e = c.epsilon(static_cast<Mor>(f));
            if (e != 0)
                a[c.name(static_cast<Mor>(f))] = scalar_to_json(e);
        }
        j["augmentation"] = a;
    }
    return j;
}

json quiver_to_json(const DGQuiver& q)
{
    json j;
    j["objects"] = q.objects();
    json gs = json::array();
    for (std::size_t g = 0; g < q.gens().size(); ++g) {
        const auto& gen = q.gen(static_cast<int>(g));
        json d = json::array();
        for (const auto& [h, c] : q.d(static_cast<int>(g)))
            d.push_back(json::array({q.gen(h).name, scalar_to_json(c)}));
        gs.push_back({{"name", gen.name},
                      {"src", q.objects()[gen.src]},
                      {"tgt", q.objects()[gen.tgt]},
                      {"degree", gen.degree},
                      {"d", d}});
    }
    j["generators"] = gs;
    return j;
}

json functor_to_json(const Functor& f, const json& source, const json& target, int max_arity)
{
    const Category& a = f.source();
    const Category& b = f.target();
    json j;
    j["source"] = source;
    j["target"] = target;
    json objs;
    for (int x = 0; x < a.object_count(); ++x)
        objs[a.object_name(x)] = b.object_name(f.on_object(x));
    j["objects"] = objs;
    int bound = f.component_bound() < 0 ? max_arity : std::min(f.component_bound(), max_arity);
    j["bound"] = bound;
    json comps = json::array();
    Bounds fb = finite_bounds_of(a);
    for (int n = 1; n <= bound; ++n)
        for (const auto& t : composable_tuples(a, n, fb)) {
            Elem v = f.apply(t);
            if (!v.is_zero())
                comps.push_back({{"inputs", tuple_to_json(a, t)}, {"value", elem_to_json(b, v)}});
        }
    j["components"] = comps;
    return j;
}

json prenatural_to_json(const Prenatural& t, const json& f, const json& g)
{
    const Category& a = t.source();
    const Category& b = t.target();
    json j;
    j["F"] = f;
    j["G"] = g;
    j["degree"] = t.degree;
    j["bound"] = t.bound;
    j["unital"] = t.unital;
    json objs = json::object();
    for (int x = 0; x < a.object_count(); ++x)
        if (!t.t0[static_cast<std::size_t>(x)].is_zero())
            objs[a.object_name(x)] = elem_to_json(b, t.t0[static_cast<std::size_t>(x)]);
    j["objects"] = objs;
    json comps = json::array();
    for (const auto& [args, v] : t.tn)
        if (!v.is_zero())
            comps.push_back({{"inputs", tuple_to_json(a, args)}, {"value", elem_to_json(b, v)}});
    j["components"] = comps;
    return j;
}

json tower_to_json(const ResolutionTower& t, const json& target)
{
    json j;
    j["target"] = target;
    const auto& o = t.options;
    j["options"] = {{"stages", o.stages},   {"weight", o.max_weight}, {"lo", o.lo},
                    {"hi", o.hi},           {"unital", o.unital},     {"dg", o.dg},
                    {"functorial", o.functorial}};
    json stages = json::array();
    auto specs = generator_specs(t);
    for (std::size_t n = 0; n < specs.size(); ++n) {
        json gs = json::array();
        const auto& recs = t.stages[n + 1].gens;
        for (std::size_t i = 0; i < specs[n].size(); ++i) {
            const auto& s = specs[n][i];
            json d = json::array();
            for (const auto& [term, c] : s.d)
                d.push_back(json::array({term, scalar_to_json(c)}));
            gs.push_back({{"name", s.name},
                          {"kind", recs[i].kind},
                          {"src", t.target->object_name(s.src)},
                          {"tgt", t.target->object_name(s.tgt)},
                          {"degree", s.degree},
                          {"weight", recs[i].weight},
                          {"d", d},
                          {"image", elem_to_json(*t.target, s.image)}});
        }
        stages.push_back({{"index", n + 1}, {"generators", gs}});
    }
    j["stages"] = stages;
    auto verdict = [](const WindowVerdict& v) {
        return json{{"surjective", v.surjective}, {"interior_iso", v.interior_iso}, {"detail", v.detail}};
    };
    j["verdict"] = verdict(t.verdict);
    j["verdict_lower_weight"] = verdict(t.verdict_lower);
    j["weight_stable"] = t.verdict.ok() == t.verdict_lower.ok();
    j["stop_reason"] = t.stop_reason;
    return j;
}

json certificate_to_json(const SemifreeCertificate& c, const ResolutionTower& t)
{
    json j;
    j["kind"] = "semifree";
    j["valid"] = c.valid;
    j["refusal"] = c.refusal;
    json levels = json::array();
    for (const auto& l : c.levels)
        levels.push_back({{"level", l.level}, {"quotient_basis", l.generators}, {"induced_differential", "zero"}});
    j["filtration"] = levels;
    json units = json::array();
    for (const auto& u : c.units)
        units.push_back({{"object", u.object},
                         {"unit", u.unit},
                         {"retraction", "coefficient of " + u.unit},
                         {"ok", u.ok}});
    j["nice_units"] = units;
    json checks = json::array();
    for (const auto& ch : c.checks)
        checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
    j["checks"] = checks;
    j["window_verdict"] = {{"surjective", t.verdict.surjective},
                           {"interior_iso", t.verdict.interior_iso},
                           {"weight_stable", t.verdict.ok() == t.verdict_lower.ok()},
                           {"detail", t.verdict.detail}};
    return j;
}

json document(const Ring& r, const std::string& kind, json b)
{
    json d;
    d["schema_version"] = kSchemaVersion;
    d["ring"] = ring_to_json(r);
    d[kind] = std::move(b);
    return d;
}

const json& body(const json& doc, const std::string& kind)
{
    static const std::set<std::string> kinds = {"category", "quiver",      "functor", "prenatural",
                                                "tower",    "certificate", "relations", "report"};
    if (!doc.is_object())
        schema("a document must be a JSON object");
    if (get_int(field(doc, "schema_version"), "schema_version") != kSchemaVersion)
        schema("unsupported schema_version");
    field(doc, "ring");
    int found = 0;
    for (const auto& [k, v] : doc.items()) {
        if (k == "schema_version" || k == "ring")
            continue;
        if (!kinds.count(k))
            schema("unknown top-level field '" + k + "'");
        ++found;
    }
    if (found != 1)
        schema("a document holds exactly one of category, quiver, functor, prenatural, tower, certificate");
    if (!doc.contains(kind))
        schema("expected a " + kind + " document");
    return doc.at(kind);
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

std::shared_ptr<PresentedCategory> Loader::category(const json& b)
{
    std::string key = b.dump();
    if (auto it = cats_.find(key); it != cats_.end())
        return it->second;
    std::shared_ptr<PresentedCategory> c;
    if (b.is_object() && b.contains("builtin")) {
        allow_keys(b, {"builtin"}, "category");
        c = std::make_shared<PresentedCategory>(builtin(get_string(b.at("builtin"), "builtin"), ring_));
    } else {
        allow_keys(b, {"objects", "arity_bound", "morphisms", "operations", "units", "augmentation"}, "category");
        std::vector<std::string> objs;
        for (const auto& o : field(b, "objects"))
            objs.push_back(get_string(o, "object name"));
        std::set<std::string> uniq(objs.begin(), objs.end());
        if (uniq.size() != objs.size())
            schema("object names must be distinct");
        c = std::make_shared<PresentedCategory>(ring_, objs, get_int(field(b, "arity_bound"), "arity_bound"));
        for (const auto& m : field(b, "morphisms")) {
            allow_keys(m, {"name", "src", "tgt", "degree"}, "morphism");
            c->add_morphism(get_string(field(m, "name"), "morphism name"), object_of(*c, field(m, "src")),
                            object_of(*c, field(m, "tgt")), get_int(field(m, "degree"), "degree"));
        }
        if (b.contains("operations"))
            for (const auto& op : b.at("operations")) {
                allow_keys(op, {"inputs", "value"}, "operation");
                c->set(tuple_of(*c, field(op, "inputs")), elem_from_json(*c, field(op, "value")));
            }
        if (b.contains("units")) {
            std::vector<Elem> units;
            for (int x = 0; x < c->object_count(); ++x) {
                const auto& u = b.at("units");
                if (!u.contains(c->object_name(x)))
                    schema("missing unit for object " + c->object_name(x));
                units.push_back(elem_from_json(*c, u.at(c->object_name(x))));
            }
            c->set_units(units);
        }
        if (b.contains("augmentation")) {
            std::map<Mor, Scalar> eps;
            for (const auto& [n, v] : b.at("augmentation").items())
                eps[basis_of(*c, json(n))] = scalar_from_json(v);
            c->set_augmentation(eps);
        }
    }
    cats_[key] = c;
    return c;
}

DGQuiver Loader::quiver(const json& b) const
{
    allow_keys(b, {"objects", "generators"}, "quiver");
    std::vector<std::string> objs;
    for (const auto& o : field(b, "objects"))
        objs.push_back(get_string(o, "object name"));
    DGQuiver q(ring_, objs);
    auto obj = [&](const json& j) {
        int x = q.object_index(get_string(j, "object"));
        if (x < 0)
            schema("unknown object '" + j.get<std::string>() + "'");
        return x;
    };
    const auto& gens = field(b, "generators");
    for (const auto& g : gens) {
        allow_keys(g, {"name", "src", "tgt", "degree", "d"}, "generator");
        q.add(get_string(field(g, "name"), "generator name"), obj(field(g, "src")), obj(field(g, "tgt")),
              get_int(field(g, "degree"), "degree"));
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!gens[i].contains("d"))
            continue;
        Vec d(ring_);
        for (const auto& t : gens[i].at("d")) {
            if (!t.is_array() || t.size() != 2)
                schema("a differential term is a [generator, coefficient] pair");
            int h = q.gen_index(get_string(t[0], "generator name"));
            if (h < 0)
                schema("unknown generator '" + t[0].get<std::string>() + "'");
            d.add(h, scalar_from_json(t[1]));
        }
        q.set_d(static_cast<int>(i), d);
    }
    q.validate();
    return q;
}

std::shared_ptr<TableFunctor> Loader::functor(const json& b)
{
    allow_keys(b, {"source", "target", "objects", "bound", "components"}, "functor");
    auto src = category(field(b, "source"));
    auto tgt = category(field(b, "target"));
    std::vector<int> objs(static_cast<std::size_t>(src->object_count()), -1);
    const auto& om = field(b, "objects");
    for (int x = 0; x < src->object_count(); ++x) {
        if (!om.contains(src->object_name(x)))
            schema("functor misses object " + src->object_name(x));
        objs[static_cast<std::size_t>(x)] = object_of(*tgt, om.at(src->object_name(x)));
    }
    int bound = get_int(field(b, "bound"), "bound");
    auto f = std::make_shared<TableFunctor>(src, tgt, objs, bound);
    for (const auto& c : field(b, "components")) {
        allow_keys(c, {"inputs", "value"}, "component");
        auto t = tuple_of(*src, field(c, "inputs"));
        if (static_cast<int>(t.size()) > bound || t.empty())
            schema("component arity outside 1..bound");
        f->set(t, elem_from_json(*tgt, field(c, "value")));
    }
    return f;
}

Prenatural Loader::prenatural(const json& b)
{
    allow_keys(b, {"F", "G", "degree", "bound", "unital", "objects", "components"}, "prenatural");
    FunPtr f = functor(field(b, "F"));
    FunPtr g = functor(field(b, "G"));
    bool unital = b.contains("unital") && b.at("unital").get<bool>();
    Prenatural t(f, g, get_int(field(b, "degree"), "degree"), get_int(field(b, "bound"), "bound"), unital);
    if (b.contains("objects"))
        for (const auto& [n, v] : b.at("objects").items()) {
            int x = t.source().object_index(n);
            if (x < 0)
                schema("unknown object '" + n + "'");
            t.set(x, elem_from_json(t.target(), v));
        }
    if (b.contains("components"))
        for (const auto& c : b.at("components")) {
            allow_keys(c, {"inputs", "value"}, "component");
            t.set(tuple_of(t.source(), field(c, "inputs")), elem_from_json(t.target(), field(c, "value")));
        }
    return t;
}

ResolutionTower Loader::tower(const json& b)
{
    allow_keys(b, {"target", "options", "stages", "verdict", "verdict_lower_weight", "weight_stable", "stop_reason"},
               "tower");
    auto target = category(field(b, "target"));
    const auto& o = field(b, "options");
    ResolutionOptions opt;
    opt.stages = get_int(field(o, "stages"), "stages");
    opt.max_weight = get_int(field(o, "weight"), "weight");
    opt.lo = get_int(field(o, "lo"), "lo");
    opt.hi = get_int(field(o, "hi"), "hi");
    opt.unital = field(o, "unital").get<bool>();
    opt.dg = field(o, "dg").get<bool>();
    opt.functorial = field(o, "functorial").get<bool>();
    std::vector<std::vector<GeneratorSpec>> specs;
    for (const auto& st : field(b, "stages")) {
        std::vector<GeneratorSpec> gs;
        for (const auto& g : field(st, "generators")) {
            GeneratorSpec s;
            s.name = get_string(field(g, "name"), "generator name");
            s.src = object_of(*target, field(g, "src"));
            s.tgt = object_of(*target, field(g, "tgt"));
            s.degree = get_int(field(g, "degree"), "degree");
            for (const auto& t : field(g, "d")) {
                if (!t.is_array() || t.size() != 2)
                    schema("a boundary term is a [term, coefficient] pair");
                s.d.emplace_back(get_string(t[0], "term"), scalar_from_json(t[1]));
            }
            s.image = elem_from_json(*target, field(g, "image"));
            gs.push_back(std::move(s));
        }
        specs.push_back(std::move(gs));
    }
    auto t = rebuild_tower(target, opt, specs);
    // generator kinds are descriptive; keep the recorded ones
    const auto& stages = field(b, "stages");
    for (std::size_t n = 0; n < specs.size() && n + 1 < t.stages.size(); ++n) {
        const auto& gs = field(stages[n], "generators");
        auto& gens = t.stages[n + 1].gens;
        for (std::size_t i = 0; i < gens.size() && i < gs.size(); ++i)
            if (gs[i].contains("kind"))
                gens[i].kind = get_string(gs[i]["kind"], "generator kind");
    }
    if (b.contains("stop_reason"))
        t.stop_reason = get_string(b["stop_reason"], "stop_reason");
    return t;
}

std::vector<Elem> Loader::relations(const Category& c, const json& b) const
{
    if (!b.is_array())
        schema("relations are a list of elements");
    std::vector<Elem> out;
    for (const auto& e : b)
        out.push_back(elem_from_json(c, e));
    return out;
}

json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ArgumentError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ArgumentError("schema: " + path + " is not valid JSON: " + e.what());
    }
}

} // namespace ainf::io
