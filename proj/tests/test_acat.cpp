#include "ainf/cohomology.hpp"
#include "ainf/errors.hpp"
#include "ainf/fixtures.hpp"
#include "ainf/presented.hpp"

#include <doctest.h>

using namespace ainf;

namespace {

std::shared_ptr<PresentedCategory> make(const std::string& name, int p)
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

TEST_CASE("builtins satisfy the Stasheff relations and strict units")
{
    for (int p : {2, 3, 7})
        for (const char* n : {"interval-I", "invertible-interval", "simplex(0)", "simplex(2)", "disc3", "dual-numbers"}) {
            CAPTURE(n);
            CAPTURE(p);
            auto a = make(n, p);
            CHECK(check_stasheff(*a, 5, all_degrees()).ok);
            CHECK(check_strict_units(*a, all_degrees(), 4).ok);
        }
}

TEST_CASE("unknown builtin names are argument errors")
{
    CHECK_THROWS_AS(builtin("simplex(x)", Ring::prime_field(7)), ArgumentError);
    CHECK_THROWS_AS(builtin("nothing", Ring::prime_field(7)), ArgumentError);
}

TEST_CASE("table entries must have degree 2 - n and composable inputs")
{
    PresentedCategory c(Ring::prime_field(7), {"x", "y"}, 3);
    Mor f = c.add_morphism("f", 0, 1, 0);
    Mor g = c.add_morphism("g", 1, 1, 0);
    Mor h = c.add_morphism("h", 0, 1, 1);
    CHECK_THROWS(c.set({f}, c.elem(g)));         // wrong endpoints
    CHECK_THROWS(c.set({g, f}, c.elem(h)));      // degree 1 for m^2
    CHECK_THROWS(c.set({f, g}, c.elem(f)));      // not composable
    CHECK_NOTHROW(c.set({f}, c.elem(h)));
    CHECK_THROWS(c.add_morphism("f", 0, 0, 0)); // duplicate name
}

TEST_CASE("the Stasheff checker reports a violating tuple")
{
    // m^1 with m^1 m^1 != 0
    PresentedCategory c(Ring::prime_field(7), {"x"}, 2);
    Mor a = c.add_morphism("a", 0, 0, 0);
    Mor b = c.add_morphism("b", 0, 0, 1);
    Mor e = c.add_morphism("e", 0, 0, 2);
    c.set({a}, c.elem(b));
    c.set({b}, c.elem(e));
    auto rep = check_stasheff(c, 2, all_degrees());
    CHECK_FALSE(rep.ok);
    CHECK(rep.arity == 1);
    REQUIRE(rep.inputs.size() == 1);
    CHECK(rep.inputs[0] == a);
    CHECK_FALSE(rep.detail.empty());
}

TEST_CASE("the Stasheff checker sees a broken associativity")
{
    // m^2 not associative and m^3 = 0
    PresentedCategory c(Ring::prime_field(7), {"x"}, 2);
    Mor f = c.add_morphism("f", 0, 0, 0);
    Mor g = c.add_morphism("g", 0, 0, 0);
    c.set({f, f}, c.elem(g));
    c.set({f, g}, c.elem(g)); // f.(f.f) = g but (f.f).f = g.f = 0
    auto rep = check_stasheff(c, 3, all_degrees());
    CHECK_FALSE(rep.ok);
    CHECK(rep.arity == 3);
}

TEST_CASE("DG input converts with the twisted signs")
{
    // odd a: m^1(a) = -da, m^2(b, a) = -b.a
    Ring r = Ring::prime_field(7);
    PresentedCategory c(r, {"x"}, 2);
    Mor one = c.add_morphism("1", 0, 0, 0);
    Mor a = c.add_morphism("a", 0, 0, 1);
    Mor b = c.add_morphism("b", 0, 0, 2);
    DGData dg;
    dg.d[a] = c.elem(b);
    dg.product[{one, one}] = c.elem(one);
    dg.product[{one, a}] = c.elem(a);
    dg.product[{a, one}] = c.elem(a);
    dg.product[{one, b}] = c.elem(b);
    dg.product[{b, one}] = c.elem(b);
    install_dg(c, dg);
    c.set_units({c.elem(one)});
    CHECK(c.m({a}) == c.elem(b).scaled(-1));
    CHECK(c.m({a, one}) == c.elem(a));
    CHECK(c.m({one, a}) == c.elem(a).scaled(-1));
    CHECK(check_stasheff(c, 4, all_degrees()).ok);
    CHECK(check_strict_units(c, all_degrees(), 3).ok);
}

TEST_CASE("cohomology of the builtins")
{
    auto I = make("interval-I", 7);
    CohomologyCategory h(*I, window(-2, 3));
    CHECK(h.rank(0, 0, 0) == 1);
    CHECK(h.rank(0, 0, 1) == 0);
    auto d = make("dual-numbers", 7);
    CohomologyCategory hd(*d, window(-2, 2));
    CHECK(hd.rank(0, 0, 0) == 2);
    auto s = make("simplex(2)", 7);
    CohomologyCategory hs(*s, window(-2, 2));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            CHECK(hs.rank(x, y, 0) == (x <= y ? 1u : 0u));
}

TEST_CASE("cohomology composition is associative and unital")
{
    for (const char* n : {"simplex(2)", "invertible-interval", "dual-numbers"}) {
        CAPTURE(n);
        auto a = make(n, 7);
        CohomologyCategory h(*a, window(-2, 2));
        int N = a->object_count();
        auto unit_class = [&](int x) { return h.classify(x, x, 0, *a->unit(x)); };
        auto classes = [&](int x, int y) {
            std::vector<Vec> out;
            for (std::size_t i = 0; i < h.rank(x, y, 0); ++i)
                out.push_back(Vec(a->ring(), static_cast<int>(i)));
            return out;
        };
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y)
                for (const auto& f : classes(x, y)) {
                    auto l = h.compose(x, y, y, 0, unit_class(y), 0, f);
                    auto r = h.compose(x, x, y, 0, f, 0, unit_class(x));
                    REQUIRE(l);
                    REQUIRE(r);
                    CHECK(*l == f);
                    CHECK(*r == f);
                    for (int z = 0; z < N; ++z)
                        for (const auto& g : classes(y, z))
                            for (int w = 0; w < N; ++w)
                                for (const auto& k : classes(z, w)) {
                                    auto gf = h.compose(x, y, z, 0, g, 0, f);
                                    auto kg = h.compose(y, z, w, 0, k, 0, g);
                                    REQUIRE(gf);
                                    REQUIRE(kg);
                                    CHECK(h.compose(x, z, w, 0, k, 0, *gf) == h.compose(x, y, w, 0, *kg, 0, f));
                                }
                }
    }
}

TEST_CASE("H^0 isomorphism of objects")
{
    auto j = make("invertible-interval", 7);
    CohomologyCategory hj(*j, window(-2, 2));
    CHECK(h0_isomorphic(hj, 0, 1));
    auto d = make("disc2", 7);
    CohomologyCategory hd(*d, window(-2, 2));
    CHECK_FALSE(h0_isomorphic(hd, 0, 1));
    auto s = make("simplex(1)", 7);
    CohomologyCategory hs(*s, window(-2, 2));
    CHECK_FALSE(h0_isomorphic(hs, 0, 1));
}

TEST_CASE("identity is a quasi-equivalence")
{
    for (const char* n : {"interval-I", "simplex(2)", "dual-numbers"}) {
        auto a = make(n, 7);
        IdentityFunctor id(a);
        CHECK(is_quasi_equivalence(id, window(-2, 2)).ok);
    }
}

TEST_CASE("unit notions")
{
    auto I = make("interval-I", 7);
    auto u = unit_diagnostics(*I, window(-2, 2));
    CHECK(u.strictly_unital);
    CHECK(u.nice_unit);
    CHECK(u.cohomologically_unital);
    CHECK(u.unital);

    // non-unital: f with f.f = 0 has no cohomological unit
    PresentedCategory c(Ring::prime_field(7), {"x"}, 2);
    c.add_morphism("f", 0, 0, 0);
    auto v = unit_diagnostics(c, window(-2, 2));
    CHECK_FALSE(v.strictly_unital);
    CHECK_FALSE(v.cohomologically_unital);
}

TEST_CASE("augmentation and reduction")
{
    // non-unital k{f, f2} with f.f = f2
    Ring r7 = Ring::prime_field(7);
    PresentedCategory c(r7, {"x"}, 2);
    Mor f = c.add_morphism("f", 0, 0, 0);
    Mor f2 = c.add_morphism("f2", 0, 0, 0);
    c.set({f, f}, c.elem(f2));
    auto a = augment(c);
    CHECK(a.unit_policy() == UnitPolicy::augmented);
    CHECK(check_stasheff(a, 4, all_degrees()).ok);
    CHECK(check_strict_units(a, all_degrees(), 3).ok);
    CHECK(a.epsilon(f) == 0);
    auto r = reduce(a);
    CHECK(check_stasheff(r, 4, all_degrees()).ok);
    CHECK(r.basis(0, 0, all_degrees()).size() + 1 == a.basis(0, 0, all_degrees()).size());
    CHECK_THROWS(reduce(c));
    auto I = make("interval-I", 7);
    CHECK_THROWS(augment(*I));
}

TEST_CASE("random A-infinity fixtures have nonzero m^3 and satisfy Stasheff")
{
    std::mt19937_64 rng(fixture_seed(5));
    int with_m3 = 0;
    for (int k = 0; k < 4; ++k) {
        auto a = random_ainf_category(Ring::prime_field(7), rng);
        CHECK(check_stasheff(*a, 4, all_degrees()).ok);
        for (const auto& [t, v] : a->table())
            if (t.size() == 3) {
                ++with_m3;
                break;
            }
    }
    CHECK(with_m3 > 0);
}
