#include "ainf/fixtures.hpp"
#include "ainf/funcat.hpp"

#include <doctest.h>

using namespace ainf;

namespace {

std::shared_ptr<PresentedCategory> make(const std::string& name, int p = 7)
{
    return std::make_shared<PresentedCategory>(builtin(name, Ring::prime_field(p)));
}

Bounds window(int lo, int hi)
{
    Bounds b;
    b.lo = lo;
    b.hi = hi;
    return b;
}

} // namespace

TEST_CASE("M1 squares to zero and satisfies Leibniz with M2")
{
    std::mt19937_64 rng(fixture_seed(61));
    for (int p : {2, 7}) {
        Ring r = Ring::prime_field(p);
        auto a = random_ainf_category(r, rng);
        FunPtr id = std::make_shared<IdentityFunctor>(a);
        auto h0 = random_prenatural(id, id, 0, 3, rng);
        for (auto& e : h0.t0)
            e = a->zero();
        FunPtr g = perturb_functor(id, h0, 3);
        CHECK(check_functor_equation(*g, 3, all_degrees()).ok);
        for (int n = 0; n < 10; ++n) {
            int dt = -1 + n % 3, ds = -1 + (n / 3) % 3;
            auto t = random_prenatural(id, g, dt, 3, rng);
            auto s = random_prenatural(g, g, ds, 3, rng);
            CHECK(M1(M1(t)).is_zero());
            // M1 M2(S, T) + (-1)^{|T| - 1} M2(M1 S, T) + M2(S, M1 T) = 0
            auto lhs = M1(M2(s, t));
            lhs.add(M2(M1(s), t), r.sign(dt - 1));
            lhs.add(M2(s, M1(t)));
            CHECK(lhs.is_zero());
        }
    }
}

TEST_CASE("the identity transformation is closed and a unit for M2")
{
    auto a = make("simplex(2)");
    FunPtr id = std::make_shared<IdentityFunctor>(a);
    auto one = identity_transformation(id, 3);
    CHECK(M1(one).is_zero());
    std::mt19937_64 rng(3);
    auto t = random_prenatural(id, id, 0, 3, rng);
    CHECK(M2(one, t) == t);
}

TEST_CASE("solve_homotopic recovers a homotopy for F against F + M1(H0)")
{
    std::mt19937_64 rng(fixture_seed(67));
    for (int p : {2, 7}) {
        auto a = random_ainf_category(Ring::prime_field(p), rng);
        FunPtr id = std::make_shared<IdentityFunctor>(a);
        for (int k = 0; k < 3; ++k) {
            auto h0 = random_prenatural(id, id, 0, 3, rng);
            for (auto& e : h0.t0)
                e = a->zero();
            FunPtr g = perturb_functor(id, h0, 3);
            auto h = solve_homotopic(id, g, 3);
            REQUIRE(h);
            // F - G = M1(H)
            auto diff = functor_difference(id, g, 3);
            auto m1h = M1(*h);
            m1h.add(diff, Scalar(-1));
            CHECK(m1h.is_zero());
        }
    }
}

TEST_CASE("homotopic implies weakly equivalent")
{
    auto a = make("simplex(2)");
    FunPtr id = std::make_shared<IdentityFunctor>(a);
    std::mt19937_64 rng(5);
    auto h0 = random_prenatural(id, id, 0, 2, rng);
    for (auto& e : h0.t0)
        e = a->zero();
    FunPtr g = perturb_functor(id, h0, 2);
    REQUIRE(solve_homotopic(id, g, 2));
    WeakEquivalenceOptions o;
    o.bound = 2;
    auto res = search_weak_equivalence(id, g, o);
    REQUIRE(res.witness);
    std::string why;
    CHECK_MESSAGE(verify_weak_equivalence(*res.witness, &why), why);
}

TEST_CASE("weak equivalence on the invertible interval and refusal on disc2")
{
    Ring r = Ring::prime_field(7);
    auto j = make("invertible-interval");
    auto pt = make("disc1");
    FunPtr f = std::make_shared<StrictFunctor>(pt, j, std::vector<int>{0}, [j](Mor) { return *j->unit(0); });
    FunPtr g = std::make_shared<StrictFunctor>(pt, j, std::vector<int>{1}, [j](Mor) { return *j->unit(1); });
    WeakEquivalenceOptions o;
    o.bound = 2;
    o.unital = true;
    auto res = search_weak_equivalence(f, g, o);
    REQUIRE(res.witness);
    CHECK(verify_weak_equivalence(*res.witness));
    CHECK_THROWS(solve_homotopic(f, g, 2, true)); // different object maps

    auto d = make("disc2");
    FunPtr f2 = std::make_shared<StrictFunctor>(pt, d, std::vector<int>{0}, [d](Mor) { return *d->unit(0); });
    FunPtr g2 = std::make_shared<StrictFunctor>(pt, d, std::vector<int>{1}, [d](Mor) { return *d->unit(1); });
    auto none = search_weak_equivalence(f2, g2, o);
    CHECK_FALSE(none.witness);
    CHECK_FALSE(none.obstruction.empty());
}

TEST_CASE("path object: s.i = t.i = Id and s, t are quasi-equivalences")
{
    for (const char* n : {"interval-I", "simplex(1)"}) {
        CAPTURE(n);
        auto a = make(n);
        Bounds w = window(-2, 2);
        auto po = std::make_shared<PathObject>(a, path_object_cut(*a, w));
        CHECK(check_stasheff(*po, 3, all_degrees()).ok);
        auto s = path_source(po), t = path_target(po), i = path_constant(po);
        IdentityFunctor id(a);
        CHECK(functors_equal(*compose(s, i), id, 2, all_degrees()));
        CHECK(functors_equal(*compose(t, i), id, 2, all_degrees()));
        CHECK(is_quasi_equivalence(*s, w, w).ok);
        CHECK(is_quasi_equivalence(*t, w, w).ok);
    }
}

TEST_CASE("roof certificate for a weakly equivalent pair")
{
    auto j = make("invertible-interval");
    auto pt = make("disc1");
    FunPtr f = std::make_shared<StrictFunctor>(pt, j, std::vector<int>{0}, [j](Mor) { return *j->unit(0); });
    FunPtr g = std::make_shared<StrictFunctor>(pt, j, std::vector<int>{1}, [j](Mor) { return *j->unit(1); });
    WeakEquivalenceOptions o;
    o.bound = 2;
    o.unital = true;
    auto res = search_weak_equivalence(f, g, o);
    REQUIRE(res.witness);
    auto roof = certificate_same_ho_class(f, g, *res.witness, 3, 2);
    CHECK_MESSAGE(roof.valid, roof.refusal);
    std::string why;
    CHECK_MESSAGE(check_roof(roof, f, g, 2, &why), why);
}
