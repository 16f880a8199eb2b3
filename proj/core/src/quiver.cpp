#include "ainf/quiver.hpp"

#include "ainf/errors.hpp"

#include <climits>

namespace ainf {

DGQuiver::DGQuiver(Ring r, std::vector<std::string> objects) : ring_(r), objects_(std::move(objects)) {}

int DGQuiver::object_index(const std::string& n) const
{
    for (int i = 0; i < object_count(); ++i)
        if (objects_[i] == n)
            return i;
    return -1;
}

int DGQuiver::gen_index(const std::string& n) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == n)
            return static_cast<int>(i);
    return -1;
}

int DGQuiver::add(const std::string& name, int src, int tgt, int degree)
{
    if (gen_index(name) >= 0)
        throw ArgumentError("duplicate generator name '" + name + "'");
    if (src < 0 || tgt < 0 || src >= object_count() || tgt >= object_count())
        throw ArgumentError("generator '" + name + "' has an unknown endpoint");
    gens_.push_back({name, src, tgt, degree});
    d_.emplace_back(ring_);
    return static_cast<int>(gens_.size()) - 1;
}

void DGQuiver::set_d(int g, const Vec& image)
{
    for (const auto& [h, c] : image) {
        const Gen& a = gens_.at(g);
        const Gen& b = gens_.at(h);
        if (a.src != b.src || a.tgt != b.tgt)
            throw ArgumentError("d(" + a.name + ") leaves its hom");
        if (b.degree != a.degree + 1)
            throw ArgumentError("d(" + a.name + ") must have degree " + std::to_string(a.degree + 1));
    }
    d_.at(g) = image;
}

Vec DGQuiver::apply_d(const Vec& v) const
{
    Vec out(ring_);
    for (const auto& [g, c] : v)
        out.add(d_.at(g), c);
    return out;
}

void DGQuiver::validate() const
{
    for (std::size_t g = 0; g < gens_.size(); ++g)
        if (!apply_d(d_[g]).is_zero())
            throw StructuralError("d^2 != 0 on quiver generator", gens_[g].name);
}

GradedModule DGQuiver::hom(int x, int y) const
{
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& g : gens_)
        if (g.src == x && g.tgt == y) {
            lo = std::min(lo, g.degree);
            hi = std::max(hi, g.degree);
        }
    if (lo > hi)
        lo = hi = 0;
    GradedModule m(ring_, lo - 1, hi + 1);
    for (const auto& g : gens_)
        if (g.src == x && g.tgt == y)
            m.add(g.name, g.degree);
    return m;
}

DGQuiver sum(const DGQuiver& a, const DGQuiver& b)
{
    if (a.objects() != b.objects())
        throw ArgumentError("sum of quivers needs the same object set");
    if (a.ring() != b.ring())
        throw ArgumentError("sum of quivers needs the same ring");
    DGQuiver s(a.ring(), a.objects());
    for (const auto& g : a.gens())
        s.add(g.name, g.src, g.tgt, g.degree);
    int off = static_cast<int>(a.gens().size());
    for (const auto& g : b.gens())
        s.add(g.name, g.src, g.tgt, g.degree);
    for (std::size_t i = 0; i < a.gens().size(); ++i)
        s.set_d(static_cast<int>(i), a.d(static_cast<int>(i)));
    for (std::size_t i = 0; i < b.gens().size(); ++i)
        s.set_d(off + static_cast<int>(i),
                b.d(static_cast<int>(i)).map_keys<int>([&](int k) { return k + off; }));
    return s;
}

DGQuiver discrete_quiver(Ring r, const std::vector<std::string>& objects)
{
    DGQuiver q(r, objects);
    for (int x = 0; x < static_cast<int>(objects.size()); ++x)
        q.add("1_" + objects[x], x, x, 0);
    return q;
}

SubquiverVerdict is_subquiver(const DGQuiver& sub, const DGQuiver& q)
{
    if (sub.objects() != q.objects())
        return {false, "object sets differ"};
    for (std::size_t i = 0; i < sub.gens().size(); ++i) {
        const auto& g = sub.gen(static_cast<int>(i));
        int j = q.gen_index(g.name);
        if (j < 0)
            return {false, g.name};
        const auto& h = q.gen(j);
        if (h.src != g.src || h.tgt != g.tgt || h.degree != g.degree)
            return {false, g.name};
        Vec mapped = sub.d(static_cast<int>(i)).map_keys<int>(
            [&](int k) { return q.gen_index(sub.gen(k).name); });
        if (mapped.coeff(-1) != 0 || mapped != q.d(j))
            return {false, g.name};
    }
    return {};
}

Vec QuiverFunctor::apply(const Vec& v) const
{
    Vec out(target->ring());
    for (const auto& [g, c] : v)
        out.add(on_gens.at(g), c);
    return out;
}

void QuiverFunctor::validate() const
{
    if (static_cast<int>(on_objects.size()) != source->object_count() ||
        on_gens.size() != source->gens().size())
        throw ArgumentError("quiver functor is not total");
    for (std::size_t i = 0; i < on_gens.size(); ++i) {
        const auto& g = source->gen(static_cast<int>(i));
        for (const auto& [h, c] : on_gens[i]) {
            const auto& t = target->gen(h);
            if (t.src != on_objects[g.src] || t.tgt != on_objects[g.tgt] || t.degree != g.degree)
                throw ArgumentError("image of '" + g.name + "' has wrong endpoints or degree");
        }
        if (target->apply_d(on_gens[i]) != apply(source->d(static_cast<int>(i))))
            throw StructuralError("quiver functor does not commute with d", g.name);
    }
}

QuiverFunctor identity_map(const DGQuiver& q)
{
    QuiverFunctor f{&q, &q, {}, {}};
    for (int x = 0; x < q.object_count(); ++x)
        f.on_objects.push_back(x);
    for (std::size_t i = 0; i < q.gens().size(); ++i)
        f.on_gens.emplace_back(q.ring(), static_cast<int>(i));
    return f;
}

QuiverFunctor compose(const QuiverFunctor& g, const QuiverFunctor& f)
{
    if (f.target != g.source)
        throw ArgumentError("quiver functors are not composable");
    QuiverFunctor h{f.source, g.target, {}, {}};
    for (int x : f.on_objects)
        h.on_objects.push_back(g.on_objects.at(x));
    for (const auto& v : f.on_gens)
        h.on_gens.push_back(g.apply(v));
    return h;
}

bool operator==(const QuiverFunctor& a, const QuiverFunctor& b)
{
    return a.source == b.source && a.target == b.target && a.on_objects == b.on_objects &&
           a.on_gens == b.on_gens;
}

} // namespace ainf
