#include "ainf/fixtures.hpp"
#include "ainf/functor.hpp"

#include <doctest.h>

using namespace ainf;

namespace {

Bounds weights(int w)
{
    Bounds b;
    b.max_weight = w;
    b.max_total_weight = w;
    b.lo = -1000;
    b.hi = 1000;
    return b;
}

std::shared_ptr<PresentedCategory> make(const std::string& name, int p = 7)
{
    return std::make_shared<PresentedCategory>(builtin(name, Ring::prime_field(p)));
}

} // namespace

TEST_CASE("identity and composition")
{
    auto a = make("simplex(2)");
    FunPtr id = std::make_shared<IdentityFunctor>(a);
    CHECK(check_functor_equation(*id, 4, all_degrees()).ok);
    auto twice = compose(id, id);
    CHECK(functors_equal(*twice, *id, 3, all_degrees()));
    CHECK(twice->is_strict());
}

TEST_CASE("random strict functors out of free categories satisfy the functor equation")
{
    std::mt19937_64 rng(fixture_seed(51));
    for (int p : {2, 7}) {
        Ring r = Ring::prime_field(p);
        auto target = random_ainf_category(r, rng);
        for (int k = 0; k < 3; ++k) {
            DGQuiver q = random_dg_quiver(r, rng);
            auto free = free_category(q);
            std::vector<int> objs;
            for (int x = 0; x < q.object_count(); ++x)
                objs.push_back(static_cast<int>(rng() % static_cast<unsigned>(target->object_count())));
            FunPtr f;
            try {
                f = random_strict_functor(free, target, objs, rng, all_degrees());
            } catch (const std::exception&) {
                continue; // no admissible images for this quiver/object choice
            }
            CHECK(check_functor_equation(*f, 4, weights(3)).ok);
            CHECK(check_strict_identity(*f, 4, weights(3)).ok);
        }
    }
}

TEST_CASE("the functor equation catches a non-functor")
{
    auto a = make("simplex(1)");
    // doubling every morphism breaks m^2(1, 1) = 1
    auto bad = std::make_shared<StrictFunctor>(a, a, std::vector<int>{0, 1}, [a](Mor f) { return a->elem(f).scaled(2); });
    auto rep = check_functor_equation(*bad, 2, all_degrees());
    CHECK_FALSE(rep.ok);
    CHECK(rep.arity == 2);
}

TEST_CASE("table functors and composition with higher components")
{
    auto a = make("interval-I");
    std::vector<int> objs{0};
    auto f = std::make_shared<TableFunctor>(a, a, objs, 2);
    for (Mor m : a->basis(0, 0, all_degrees()))
        f->set({m}, a->elem(m));
    // F^2(u0, u0) has degree -1, so h (degree 1) is refused
    Mor u0 = a->morphism("u0"), h = a->morphism("h");
    CHECK_THROWS(f->set({u0, u0}, a->elem(h)));
    CHECK(check_functor_equation(*f, 3, all_degrees()).ok);
    auto g = compose(f, f);
    CHECK(functors_equal(*g, *f, 3, all_degrees()));
}

TEST_CASE("strictly unital extension and quiver maps")
{
    Ring r = Ring::prime_field(7);
    auto target = make("simplex(1)");
    DGQuiver q(r, {"p", "q"});
    q.add("g", 0, 1, 0);
    auto free = free_category(q);
    auto plus = free_category(q, FreeFlavor::plus);
    auto psi = lift_quiver_map(free, target, {0, 1}, {target->elem(target->morphism("a0_1"))});
    CHECK(check_functor_equation(*psi, 3, weights(3)).ok);
    auto ext = extend_strictly_unital(*psi, plus);
    CHECK(check_functor_equation(*ext, 3, weights(3)).ok);
    CHECK(check_strictly_unital(*ext, 3, weights(3)).ok);
    CHECK(apply1(*ext, *plus->unit(0)) == *target->unit(0));
}

TEST_CASE("F is functorial on quiver maps")
{
    Ring r = Ring::prime_field(7);
    DGQuiver q(r, {"x"});
    int f = q.add("f", 0, 0, 0);
    int g = q.add("g", 0, 0, 1);
    q.set_d(f, Vec(r, g));
    auto c = free_category(q);
    QuiverFunctor id = identity_map(q);
    QuiverFunctor twice;
    twice.source = &q;
    twice.target = &q;
    twice.on_objects = {0};
    twice.on_gens = {Vec(r, f, 2), Vec(r, g, 2)};
    twice.validate();
    auto Fid = functorial_free(id, c, c);
    auto Ftw = functorial_free(twice, c, c);
    auto Ftt = functorial_free(compose(twice, twice), c, c);
    CHECK(functors_equal(*Fid, IdentityFunctor(c), 1, weights(3)));
    CHECK(functors_equal(*compose(Ftw, Ftw), *Ftt, 1, weights(3)));
    CHECK(check_functor_equation(*Ftw, 3, weights(3)).ok);
}

TEST_CASE("strict equivalence between F(|A|)/R_A and A")
{
    std::mt19937_64 rng(fixture_seed(53));
    auto a = random_ainf_category(Ring::prime_field(7), rng);
    auto fr = free_on_underlying(a, true);
    auto alpha = unit_into_quotient(a, fr);
    auto beta = counit(fr);
    std::string why;
    CHECK_MESSAGE(is_strict_equivalence(*alpha, *beta, weights(3), &why), why);
    CHECK(check_functor_equation(*beta, 3, weights(3)).ok);
    CHECK(check_functor_equation(*alpha, 3, all_degrees()).ok);
}
