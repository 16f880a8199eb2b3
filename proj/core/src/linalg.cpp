#include "ainf/linalg.hpp"

namespace ainf {

void require_field(const Ring& r, const char* what)
{
    if (!r.is_field())
        throw NotAField(std::string(what) + " requires a field, got " + r.name());
}

Echelon::Echelon(Ring r) : ring_(r)
{
    require_field(r, "linear algebra");
}

Vec Echelon::reduce(const Vec& v, Vec* tag_out) const
{
    Vec rem = v;
    Vec tag(ring_);
    if (rows_.empty()) {
        if (tag_out)
            *tag_out = tag;
        return rem;
    }
    // Elimination only introduces coordinates larger than the pivot, so a
    // single ascending sweep suffices.
    auto it = rem.terms().begin();
    while (it != rem.terms().end()) {
        int k = it->first;
        auto row = rows_.find(k);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        Scalar c = it->second;
        rem.add(row->second.v, ring_.neg(c));
        tag.add(row->second.tag, c);
        it = rem.terms().upper_bound(k);
    }
    if (tag_out)
        *tag_out = tag;
    return rem;
}

std::optional<Vec> Echelon::insert(const Vec& v, const Vec& tag)
{
    Vec used(ring_);
    Vec rem = reduce(v, &used);
    Vec t = tag - used;
    if (rem.is_zero())
        return t;
    auto lead = rem.terms().begin();
    int k = lead->first;
    Scalar inv = ring_.inv(lead->second);
    rows_.emplace(k, Row{rem.scaled(inv), t.scaled(inv)});
    return std::nullopt;
}

std::vector<Vec> Echelon::rows() const
{
    std::vector<Vec> out;
    for (const auto& [k, r] : rows_)
        out.push_back(r.v);
    return out;
}

std::vector<int> Echelon::pivots() const
{
    std::vector<int> out;
    for (const auto& [k, r] : rows_)
        out.push_back(k);
    return out;
}

std::vector<Vec> kernel(Ring r, const std::vector<Vec>& images)
{
    Echelon e(r);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto rel = e.insert(images[i], Vec(r, static_cast<int>(i)));
        if (rel)
            out.push_back(*rel);
    }
    return out;
}

std::optional<Vec> preimage(Ring r, const std::vector<Vec>& images, const Vec& target)
{
    Echelon e(r);
    for (std::size_t i = 0; i < images.size(); ++i)
        e.insert(images[i], Vec(r, static_cast<int>(i)));
    Vec used(r);
    Vec rem = e.reduce(target, &used);
    if (!rem.is_zero())
        return std::nullopt;
    return used;
}

std::size_t rank_of(Ring r, const std::vector<Vec>& vs)
{
    Echelon e(r);
    for (const auto& v : vs)
        e.insert(v);
    return e.rank();
}

std::vector<std::vector<Scalar>> coefficient_vectors(const Ring& r, std::size_t n, std::size_t cap)
{
    std::vector<Scalar> digits;
    if (r.kind() == Ring::Kind::prime_field)
        for (std::int64_t v = 0; v < r.p(); ++v)
            digits.push_back(Scalar(v));
    else
        digits = {Scalar(0), Scalar(1), Scalar(-1)};
    std::vector<std::vector<Scalar>> out;
    std::vector<std::size_t> idx(n, 0);
    while (out.size() < cap) {
        std::size_t k = 0;
        while (k < n && ++idx[k] == digits.size())
            idx[k++] = 0;
        if (k == n)
            break;
        std::vector<Scalar> v;
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(digits[idx[i]]);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace ainf
