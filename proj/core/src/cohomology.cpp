#include "ainf/cohomology.hpp"

#include "ainf/errors.hpp"
#include "ainf/linalg.hpp"
#include "ainf/presented.hpp"

namespace ainf {

CohomologyCategory::CohomologyCategory(const Category& c, const Bounds& b) : c_(c), b_(b)
{
    require_field(c.ring(), "cohomology");
    for (int x = 0; x < c.object_count(); ++x)
        for (int y = 0; y < c.object_count(); ++y) {
            auto it = cx_.emplace(std::make_pair(x, y), hom_complex(c, x, y, b)).first;
            h_.emplace(std::make_pair(x, y), homology(it->second.module, it->second.differential()));
        }
}

std::size_t CohomologyCategory::rank(int x, int y, int degree) const
{
    return hom(x, y).rank(degree);
}

Vec CohomologyCategory::classify(int x, int y, int degree, const Elem& cycle) const
{
    return hom(x, y).classify(degree, complex(x, y).to_vec(cycle));
}

Elem CohomologyCategory::representative(int x, int y, int degree, const Vec& cls) const
{
    const auto& reps = hom(x, y).reps(degree);
    Vec v(c_.ring());
    for (const auto& [i, a] : cls)
        v.add(reps.at(static_cast<std::size_t>(i)), a);
    return complex(x, y).to_elem(c_.ring(), v);
}

std::optional<Vec> CohomologyCategory::compose(int x, int y, int z, int dg, const Vec& g, int df, const Vec& f) const
{
    int d = dg + df;
    if (d < interior_lo() || d > interior_hi())
        return std::nullopt;
    Elem ge = representative(y, z, dg, g);
    Elem fe = representative(x, y, df, f);
    Elem p = m_of(c_, {ge, fe});
    if (df % 2 != 0)
        p = p.scaled(c_.ring().neg(Scalar(1)));
    const auto& cx = complex(x, z);
    if (!cx.contains(p))
        return std::nullopt;
    return hom(x, z).classify(d, cx.to_vec(p));
}

namespace {

std::optional<Vec> cohomological_unit(const CohomologyCategory& h, int x)
{
    const Category& c = h.category();
    const Ring& r = c.ring();
    std::size_t dim = h.rank(x, x, 0);
    if (dim == 0 || h.interior_lo() > 0 || h.interior_hi() < 0)
        return std::nullopt;
    // unknown e in H^0(x, x): e . f = f for f : y -> x and f . e = f for
    // f : x -> y; every basis class gets its own block of coordinates
    std::vector<Vec> cols(dim, Vec(r));
    Vec target(r);
    int offset = 0;
    for (int y = 0; y < c.object_count(); ++y)
        for (int d = h.interior_lo(); d <= h.interior_hi(); ++d)
            for (bool left : {true, false}) {
                int from = left ? y : x, to = left ? x : y;
                std::size_t rk = h.rank(from, to, d);
                for (std::size_t j = 0; j < rk; ++j) {
                    Vec f(r, static_cast<int>(j));
                    for (std::size_t i = 0; i < dim; ++i) {
                        Vec e(r, static_cast<int>(i));
                        auto p = left ? h.compose(y, x, x, 0, e, d, f) : h.compose(x, x, y, d, f, 0, e);
                        if (p)
                            for (const auto& [k, a] : *p)
                                cols[i].add(offset + k, a);
                    }
                    target.add(offset + static_cast<int>(j), Scalar(1));
                    offset += static_cast<int>(rk);
                }
            }
    return preimage(r, cols, target);
}

bool invertible_action(const CohomologyCategory& h, int x, const Vec& e)
{
    const Category& c = h.category();
    const Ring& r = c.ring();
    for (int y = 0; y < c.object_count(); ++y)
        for (int d = h.interior_lo(); d <= h.interior_hi(); ++d)
            for (bool left : {true, false}) {
                int from = left ? y : x, to = left ? x : y;
                std::size_t rk = h.rank(from, to, d);
                std::vector<Vec> imgs;
                for (std::size_t j = 0; j < rk; ++j) {
                    Vec f(r, static_cast<int>(j));
                    auto p = left ? h.compose(y, x, x, 0, e, d, f) : h.compose(x, x, y, d, f, 0, e);
                    if (!p)
                        return false;
                    imgs.push_back(*p);
                }
                if (rank_of(r, imgs) != rk)
                    return false;
            }
    return true;
}

} // namespace

bool h0_isomorphic(const CohomologyCategory& h, int x, int y, std::size_t max_candidates)
{
    if (x == y)
        return true;
    if (h.interior_lo() > 0 || h.interior_hi() < 0)
        return false;
    const Ring& r = h.category().ring();
    auto ex = cohomological_unit(h, x), ey = cohomological_unit(h, y);
    if (!ex || !ey)
        return false;
    std::size_t dxy = h.rank(x, y, 0), dyx = h.rank(y, x, 0);
    if (dxy == 0 || dyx == 0)
        return false;
    for (const auto& coeffs : coefficient_vectors(r, dxy, max_candidates)) {
        Vec a(r);
        for (std::size_t i = 0; i < dxy; ++i)
            a.add(static_cast<int>(i), coeffs[i]);
        // b with b . a = e_x and a . b = e_y: linear in b
        std::size_t nx = h.rank(x, x, 0);
        std::vector<Vec> cols;
        bool lost = false;
        for (std::size_t j = 0; j < dyx; ++j) {
            Vec b(r, static_cast<int>(j));
            auto ba = h.compose(x, y, x, 0, b, 0, a);
            auto ab = h.compose(y, x, y, 0, a, 0, b);
            if (!ba || !ab) {
                lost = true;
                break;
            }
            Vec col = *ba;
            for (const auto& [k, c] : *ab)
                col.add(static_cast<int>(nx) + k, c);
            cols.push_back(col);
        }
        if (lost)
            continue;
        Vec target = *ex;
        for (const auto& [k, c] : *ey)
            target.add(static_cast<int>(nx) + k, c);
        if (preimage(r, cols, target))
            return true;
    }
    return false;
}

QuasiEquivalenceReport is_quasi_equivalence(const Functor& f, const Bounds& sb, const Bounds& tb)
{
    QuasiEquivalenceReport rep;
    const Category& a = f.source();
    const Category& b = f.target();
    CohomologyCategory ha(a, sb), hb(b, tb);
    int lo = std::max(ha.interior_lo(), hb.interior_lo());
    int hi = std::min(ha.interior_hi(), hb.interior_hi());
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < a.object_count(); ++y) {
            int fx = f.on_object(x), fy = f.on_object(y);
            for (int d = lo; d <= hi; ++d) {
                std::size_t ra = ha.rank(x, y, d), rb = hb.rank(fx, fy, d);
                std::vector<Vec> imgs;
                for (std::size_t i = 0; i < ra; ++i) {
                    Elem cyc = ha.representative(x, y, d, Vec(a.ring(), static_cast<int>(i)));
                    Elem im = apply1(f, cyc);
                    if (!hb.complex(fx, fy).contains(im))
                        throw StructuralError("F^1 leaves the bounded target complex", format(b, im));
                    imgs.push_back(hb.classify(fx, fy, d, im));
                }
                std::size_t rk = rank_of(b.ring(), imgs);
                if (ra != rb || rk != rb) {
                    rep.ok = false;
                    rep.witness_degree = d;
                    rep.detail = "H^" + std::to_string(d) + "(" + a.object_name(x) + "," + a.object_name(y) +
                                 "): source rank " + std::to_string(ra) + ", target rank " + std::to_string(rb) +
                                 ", induced rank " + std::to_string(rk);
                    return rep;
                }
            }
        }
    for (int y = 0; y < b.object_count(); ++y) {
        bool hit = false;
        for (int x = 0; x < a.object_count() && !hit; ++x)
            hit = h0_isomorphic(hb, f.on_object(x), y);
        if (!hit) {
            rep.ok = false;
            rep.detail = "object " + b.object_name(y) + " is not H^0-isomorphic to an image object";
            return rep;
        }
    }
    return rep;
}

UnitDiagnostics unit_diagnostics(const Category& c, const Bounds& b)
{
    UnitDiagnostics u;
    int objs = c.object_count();
    bool all_units = objs > 0;
    for (int x = 0; x < objs; ++x)
        all_units = all_units && c.unit(x).has_value();
    if (all_units) {
        IdentityReport r = check_strict_units(c, b, 4);
        u.strictly_unital = r.ok;
        if (!r.ok)
            u.detail = "strict units: " + r.detail;
        u.nice_unit = true;
        for (int x = 0; x < objs; ++x) {
            Elem e = *c.unit(x);
            if (e.is_zero() || c.degree(e.begin()->first) != 0) {
                u.nice_unit = false;
                break;
            }
            auto [f, a] = *e.begin();
            u.retraction.emplace_back(f, c.ring().inv(a));
        }
        if (!u.nice_unit)
            u.retraction.clear();
    }
    if (!c.ring().is_field())
        return u;
    CohomologyCategory h(c, b);
    u.cohomologically_unital = objs > 0;
    u.unital = objs > 0;
    for (int x = 0; x < objs; ++x) {
        auto e = cohomological_unit(h, x);
        if (e) {
            u.cohomological_units.push_back(h.representative(x, x, 0, *e));
            continue;
        }
        u.cohomologically_unital = false;
        u.cohomological_units.clear();
        // proxy: some degree-0 class acting invertibly on interior homology
        bool found = false;
        std::size_t dim = h.interior_lo() <= 0 && h.interior_hi() >= 0 ? h.rank(x, x, 0) : 0;
        for (const auto& coeffs : coefficient_vectors(c.ring(), dim, 10000)) {
            Vec v(c.ring());
            for (std::size_t i = 0; i < dim; ++i)
                v.add(static_cast<int>(i), coeffs[i]);
            if (invertible_action(h, x, v)) {
                found = true;
                break;
            }
        }
        if (!found) {
            u.unital = false;
            if (u.detail.empty())
                u.detail = "no degree 0 class of " + c.object_name(x) + " acts invertibly";
        }
    }
    return u;
}

} // namespace ainf
