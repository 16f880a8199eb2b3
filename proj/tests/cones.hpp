#pragma once

// Generated (co)cone fixtures for the universal-property harnesses.

#include "ainf/fixtures.hpp"
#include "ainf/ideals.hpp"
#include "ainf/limits.hpp"

#include <random>

namespace ainf::testing {

inline Bounds cone_bounds()
{
    Bounds b;
    b.max_weight = 3;
    b.max_total_weight = 3;
    b.lo = -20;
    b.hi = 20;
    return b;
}

// Random strict functor out of a free category on a random quiver; retries
// until the fixture generator finds admissible images.
inline FunPtr random_cone_leg(Ring r, CatPtr target, std::mt19937_64& rng, std::shared_ptr<TreeCategory>* source)
{
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto free = free_category(random_dg_quiver(r, rng));
        std::vector<int> objs;
        for (int x = 0; x < free->object_count(); ++x)
            objs.push_back(static_cast<int>(rng() % static_cast<unsigned>(target->object_count())));
        try {
            auto f = random_strict_functor(free, target, objs, rng, all_degrees());
            *source = free;
            return f;
        } catch (const std::exception&) {
        }
    }
    throw std::runtime_error("no admissible cone leg");
}

// Same source, second target.
inline FunPtr random_leg_from(std::shared_ptr<TreeCategory> free, CatPtr target, std::mt19937_64& rng)
{
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<int> objs;
        for (int x = 0; x < free->object_count(); ++x)
            objs.push_back(static_cast<int>(rng() % static_cast<unsigned>(target->object_count())));
        try {
            return random_strict_functor(free, target, objs, rng, all_degrees());
        } catch (const std::exception&) {
        }
    }
    throw std::runtime_error("no admissible cone leg");
}

inline UniversalReport product_fixture(Ring r, std::mt19937_64& rng)
{
    auto a = random_ainf_category(r, rng);
    auto b = std::make_shared<PresentedCategory>(builtin("interval-I", r));
    auto p = std::make_shared<ProductCategory>(a, b);
    std::shared_ptr<TreeCategory> c;
    auto f = random_cone_leg(r, a, rng, &c);
    auto g = random_leg_from(c, b, rng);
    return product_universal(p, f, g, cone_bounds(), 3);
}

inline UniversalReport coproduct_fixture(Ring r, std::mt19937_64& rng)
{
    auto d = random_ainf_category(r, rng);
    std::shared_ptr<TreeCategory> c1, c2;
    auto f1 = random_cone_leg(r, d, rng, &c1);
    auto f2 = random_cone_leg(r, d, rng, &c2);
    auto cp = std::make_shared<CoproductCategory>(c1, c2);
    return coproduct_universal(cp, f1, f2, cone_bounds(), 3);
}

// A with a random ideal I (closure of one random basis element) and q : A -> A/I.
struct QuotientFixture {
    std::shared_ptr<PresentedCategory> a;
    std::shared_ptr<LinearQuotient> quotient;
    FunPtr q;
};

inline QuotientFixture quotient_fixture(Ring r, std::mt19937_64& rng)
{
    QuotientFixture out;
    out.a = random_ainf_category(r, rng);
    std::vector<Mor> all;
    for (int x = 0; x < out.a->object_count(); ++x)
        for (int y = 0; y < out.a->object_count(); ++y)
            for (Mor f : out.a->basis(x, y, all_degrees()))
                all.push_back(f);
    Mor pick = all.at(rng() % all.size());
    BoundedIdeal ideal(*out.a, {out.a->elem(pick)}, all_degrees(), 4);
    std::vector<Elem> span;
    for (const auto& [hom, v] : ideal.spans())
        span.insert(span.end(), v.begin(), v.end());
    out.quotient = std::make_shared<LinearQuotient>(out.a, span);
    out.q = linear_quotient_functor(out.quotient);
    return out;
}

// Kernel pair of q: E = equalizer of q.p1, q.p2 on A x A; the cone is the
// diagonal <k, k> of a random strict k : C -> A.
inline UniversalReport equalizer_fixture(Ring r, std::mt19937_64& rng)
{
    auto qf = quotient_fixture(r, rng);
    auto p = std::make_shared<ProductCategory>(qf.a, qf.a);
    FunPtr f = compose(qf.q, projection(p, 0));
    FunPtr g = compose(qf.q, projection(p, 1));
    auto e = std::make_shared<EqualizerCategory>(p, f, g);
    std::shared_ptr<TreeCategory> c;
    auto k = random_cone_leg(r, qf.a, rng, &c);
    auto h = pairing(p, k, k);
    return equalizer_universal(e, f, g, h, cone_bounds(), 3);
}

// Reflexive pair p1, p2 : E -> A on the kernel pair of q with the diagonal
// as common section; q itself is the cone.
inline UniversalReport coequalizer_fixture(Ring r, std::mt19937_64& rng, bool* grew = nullptr)
{
    auto qf = quotient_fixture(r, rng);
    auto p = std::make_shared<ProductCategory>(qf.a, qf.a);
    auto e = std::make_shared<EqualizerCategory>(p, compose(qf.q, projection(p, 0)), compose(qf.q, projection(p, 1)));
    FunPtr inc = equalizer_inclusion(e);
    FunPtr f = compose(projection(p, 0), inc);
    FunPtr g = compose(projection(p, 1), inc);
    FunPtr id = std::make_shared<IdentityFunctor>(qf.a);
    FunPtr rsec = equalizer_factor(e, pairing(p, id, id));
    auto c = reflexive_coequalizer(f, g, rsec, 4);
    if (grew)
        *grew = c.closure_grew;
    return coequalizer_universal(c, f, g, qf.q, cone_bounds(), 3);
}

} // namespace ainf::testing
