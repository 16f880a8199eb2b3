#include "ainf/graded.hpp"

#include "ainf/errors.hpp"

namespace ainf {

int GradedModule::add(const std::string& name, int degree)
{
    if (index_.count(name))
        throw ArgumentError("duplicate basis name '" + name + "'");
    int i = static_cast<int>(names_.size());
    names_.push_back(name);
    degrees_.push_back(degree);
    index_.emplace(name, i);
    return i;
}

int GradedModule::index_of(const std::string& name) const
{
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> GradedModule::in_degree(int d) const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < degrees_.size(); ++i)
        if (degrees_[i] == d)
            out.push_back(static_cast<int>(i));
    return out;
}

std::string GradedModule::format(const Vec& v) const
{
    if (v.is_zero())
        return "0";
    std::string s;
    for (const auto& [k, c] : v) {
        if (!s.empty())
            s += " + ";
        if (c != 1)
            s += scalar_to_string(c) + "*";
        s += names_.at(k);
    }
    return s;
}

ChainMap::ChainMap(const GradedModule& src, const GradedModule& tgt, int shift, std::vector<Vec> images)
    : src_(&src), tgt_(&tgt), shift_(shift), images_(std::move(images))
{
    if (images_.size() != src.dim())
        throw ArgumentError("chain map needs one image per source basis element");
    for (std::size_t i = 0; i < images_.size(); ++i)
        for (const auto& [k, c] : images_[i])
            if (tgt.degree(k) != src.degree(static_cast<int>(i)) + shift)
                throw ArgumentError("chain map image of '" + src.name(static_cast<int>(i)) +
                                    "' has the wrong degree");
}

Vec ChainMap::operator()(const Vec& v) const
{
    Vec out(tgt_->ring());
    for (const auto& [k, c] : v)
        out.add(images_.at(k), c);
    return out;
}

std::size_t Homology::rank(int d) const
{
    auto it = deg_.find(d);
    return it == deg_.end() ? 0 : it->second.reps.size();
}

const std::vector<Vec>& Homology::reps(int d) const
{
    static const std::vector<Vec> none;
    auto it = deg_.find(d);
    return it == deg_.end() ? none : it->second.reps;
}

bool Homology::is_boundary(int d, const Vec& cycle) const
{
    return classify(d, cycle).is_zero();
}

Vec Homology::classify(int d, const Vec& cycle) const
{
    auto it = reducer_.find(d);
    if (it == reducer_.end())
        throw ArgumentError("degree outside the reported homology window");
    Vec tag(cycle.ring());
    it->second.reduce(cycle, &tag);
    Vec out(cycle.ring());
    for (const auto& [k, c] : tag)
        if (k >= 0)
            out.add(k, c);
    return out;
}

GradedModule Homology::as_module(const GradedModule& ambient) const
{
    int lo = deg_.empty() ? 0 : deg_.begin()->first;
    int hi = deg_.empty() ? 0 : deg_.rbegin()->first;
    GradedModule h(ambient.ring(), lo, hi);
    for (const auto& [d, info] : deg_)
        for (const auto& r : info.reps)
            h.add("[" + ambient.format(r) + "]", d);
    return h;
}

Homology homology(const GradedModule& module, const ChainMap& d, int lo, int hi)
{
    require_field(module.ring(), "homology");
    if (d.shift() != 1)
        throw ArgumentError("a differential must have degree shift +1");
    const Ring& r = module.ring();
    for (std::size_t i = 0; i < module.dim(); ++i) {
        Vec dd = d(d.image(static_cast<int>(i)));
        if (!dd.is_zero())
            throw StructuralError("d^2 != 0", module.name(static_cast<int>(i)));
    }
    Homology h;
    for (int k = lo; k <= hi; ++k) {
        std::vector<int> here = module.in_degree(k);
        std::vector<int> below = module.in_degree(k - 1);
        Echelon e(r);
        int nb = 0;
        for (int b : below)
            e.insert(d.image(b), Vec(r, -1 - nb++));
        std::size_t brank = e.rank();
        // cycles of degree k, in canonical kernel order
        std::vector<Vec> imgs;
        for (int i : here)
            imgs.push_back(d.image(i));
        std::vector<Vec> ker = kernel(r, imgs);
        Homology::Degree info;
        info.degree = k;
        info.cycles = ker.size();
        info.boundaries = brank;
        for (const auto& z : ker) {
            Vec cyc(r);
            for (const auto& [j, c] : z)
                cyc.add(here[j], c);
            int idx = static_cast<int>(info.reps.size());
            if (!e.insert(cyc, Vec(r, idx)).has_value())
                info.reps.push_back(cyc);
        }
        h.deg_.emplace(k, std::move(info));
        h.reducer_.emplace(k, std::move(e));
    }
    return h;
}

std::optional<Vec> solve_preimage(const ChainMap& map, const Vec& target)
{
    std::vector<Vec> imgs;
    for (std::size_t i = 0; i < map.source().dim(); ++i)
        imgs.push_back(map.image(static_cast<int>(i)));
    return preimage(map.source().ring(), imgs, target);
}

} // namespace ainf
