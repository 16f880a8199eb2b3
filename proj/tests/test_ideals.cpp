#include "ainf/fixtures.hpp"
#include "ainf/ideals.hpp"

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

TEST_CASE("quotient by the zero system is the identity")
{
    Ring r = Ring::prime_field(7);
    DGQuiver q(r, {"x"});
    q.add("f", 0, 0, 0);
    auto c = free_category(q);
    RelationSystem none;
    auto same = quotient(c, none);
    for (int w = 1; w <= 4; ++w)
        CHECK(same->basis_exact(0, 0, w).size() == c->basis_exact(0, 0, w).size());
}

TEST_CASE("associativity quotient of F(Q) is the free DG category")
{
    std::mt19937_64 rng(fixture_seed(41));
    for (int p : {2, 7}) {
        Ring r = Ring::prime_field(p);
        DGQuiver q = random_dg_quiver(r, rng);
        auto c = free_category(q);
        RelationSystem as;
        as.associativity = true;
        auto quo = quotient(c, as);
        auto dg = free_category(q, FreeFlavor::dg);
        for (int x = 0; x < q.object_count(); ++x)
            for (int y = 0; y < q.object_count(); ++y)
                for (int w = 1; w <= 3; ++w)
                    CHECK(quo->basis_exact(x, y, w).size() == dg->basis_exact(x, y, w).size());
        auto qf = quotient_functor(c, quo);
        CHECK_NOTHROW(validate_system(*qf, 4, weights(3)));
        CHECK(check_stasheff(*quo, 4, weights(3)).ok);
    }
}

TEST_CASE("collapse normal forms do not depend on the rewrite order")
{
    std::mt19937_64 rng(fixture_seed(43));
    Ring r = Ring::prime_field(7);
    auto a = random_ainf_category(r, rng);
    auto fa = free_on_underlying(a, false);
    auto fr = free_on_underlying(a, true);
    for (int n = 0; n < 60; ++n) {
        Elem t = random_tree_element(*fa, 1 + n % 4, rng);
        for (const auto& [f, c] : t) {
            auto left = collapse_normal_form(*fa, fa->code(f), RewriteStrategy::leftmost);
            auto right = collapse_normal_form(*fa, fa->code(f), RewriteStrategy::rightmost);
            CHECK(left == right);
            // and both agree with the eager normalizer of the quotient
            Elem eager = fr->normalize(fa->code(f));
            Elem lazy(r);
            for (const auto& [code, k] : left)
                lazy.add(fr->normalize(code), k);
            CHECK(eager == lazy);
        }
    }
}

TEST_CASE("R_A membership")
{
    Ring r = Ring::prime_field(7);
    auto a = make("simplex(2)");
    auto fa = free_on_underlying(a, false);
    auto fr = free_on_underlying(a, true);
    // (T_2; g, f) - (leaf; m^2(g, f)) is in R_A
    Elem comp = fa->parse_term("((*,*) | a1_2,a0_1)");
    Elem leafed(r);
    for (const auto& [f, c] : a->m({a->morphism("a1_2"), a->morphism("a0_1")}))
        leafed.add(fa->leaf(TreeCategory::old_label(f)), c);
    CHECK(ideal_membership_collapse(*fr, *fa, comp - leafed).member);
    CHECK_FALSE(ideal_membership_collapse(*fr, *fa, comp).member);
}

TEST_CASE("unit relations identify added units with strict units")
{
    Ring r = Ring::prime_field(7);
    auto a = make("simplex(2)");
    auto fa = free_on_underlying(a, true);
    RelationSystem u;
    u.units = true;
    auto quo = quotient(fa, u);
    REQUIRE(quo->unit(0));
    REQUIRE(quo->unit(2));
    CHECK(check_strict_units(*quo, weights(3), 3).ok);
}

TEST_CASE("bounded ideal closure in a finite category")
{
    auto a = make("simplex(2)");
    // the ideal generated by a0_1 contains a0_2 = a1_2 . a0_1
    BoundedIdeal i(*a, {a->elem(a->morphism("a0_1"))}, all_degrees(), 3);
    CHECK(i.contains(a->elem(a->morphism("a0_2"))));
    CHECK_FALSE(i.contains(a->elem(a->morphism("a1_2"))));
    CHECK(i.grew());
}

TEST_CASE("linear quotient by a closed ideal")
{
    auto a = make("simplex(2)");
    BoundedIdeal i(*a, {a->elem(a->morphism("a0_1"))}, all_degrees(), 3);
    std::vector<Elem> span;
    for (const auto& [hom, v] : i.spans())
        span.insert(span.end(), v.begin(), v.end());
    auto q = std::make_shared<LinearQuotient>(a, span);
    CHECK(check_stasheff(*q, 4, all_degrees()).ok);
    auto pf = linear_quotient_functor(q);
    CHECK(check_functor_equation(*pf, 3, all_degrees()).ok);
    CHECK(q->basis(0, 1, all_degrees()).empty());
    CHECK(q->basis(1, 2, all_degrees()).size() == 1);
}

TEST_CASE("factoring a strict functor through a quotient")
{
    auto a = make("simplex(2)");
    auto b = make("simplex(1)");
    BoundedIdeal i(*a, {a->elem(a->morphism("a1_2"))}, all_degrees(), 3);
    std::vector<Elem> span;
    for (const auto& [hom, v] : i.spans())
        span.insert(span.end(), v.begin(), v.end());
    auto q = std::make_shared<LinearQuotient>(a, span);
    // F sends objects 1 and 2 to 1 and kills a1_2 and a0_2
    auto kill = std::make_shared<StrictFunctor>(a, b, std::vector<int>{0, 1, 1}, [a, b](Mor f) {
        std::string n = a->name(f);
        if (n == "1_0")
            return b->elem(b->morphism("1_0"));
        if (n == "1_1" || n == "1_2")
            return b->elem(b->morphism("1_1"));
        if (n == "a0_1")
            return b->elem(b->morphism("a0_1"));
        return b->zero();
    });
    CHECK(check_functor_equation(*kill, 3, all_degrees()).ok);
    auto ok = factor_through(*kill, q);
    REQUIRE(ok.functor);
    CHECK(check_functor_equation(*ok.functor, 3, all_degrees()).ok);
    // the identity does not kill a1_2: refused with the relation as witness
    IdentityFunctor id(a);
    auto no = factor_through(id, q);
    CHECK_FALSE(no.functor);
    CHECK_FALSE(no.refusal.empty());
    CHECK_FALSE(no.value.is_zero());
}
