#pragma once

#include "ainf/funcat.hpp"
#include "ainf/presented.hpp"
#include "ainf/quiver.hpp"
#include "ainf/tree_category.hpp"

#include <cstdint>
#include <random>

namespace ainf {

// Seed from AINF_SEED when set, otherwise the fallback.
std::uint64_t fixture_seed(std::uint64_t fallback = 20240601);

struct QuiverShape {
    int max_objects = 3;
    int max_gens = 4;
    int lo = -2;
    int hi = 2;
    bool acyclic = false; // generators only go from object i to j > i
};

// Random DG quiver: some generators g get d(g) = sum of closed generators
// with matching endpoints and degree |g| + 1, so d^2 = 0 by construction.
DGQuiver random_dg_quiver(Ring r, std::mt19937_64& rng, const QuiverShape& shape = {});

// Random element of a hom of a finite category, homogeneous of degree d.
Elem random_elem(const Category& c, int x, int y, int d, std::mt19937_64& rng, const Bounds& b);

// Random finite A-infinity category with m^3 != 0 in general: the free DG
// category on a random acyclic DG quiver over objects 0..3, presented, then
// transported along a random gauge Phi = (id, phi^2). arity_bound is 3.
std::shared_ptr<PresentedCategory> random_ainf_category(Ring r, std::mt19937_64& rng);

// Random strict functor F(Q) -> target determined by a quiver map: closed
// generators go to random cycles, pairs (g, d g) go to (a, m^1 a).
FunPtr random_strict_functor(std::shared_ptr<const TreeCategory> free, CatPtr target, std::vector<int> objects,
                             std::mt19937_64& rng, const Bounds& target_bounds);

// Random prenatural F => G of the given degree (finite source and target).
Prenatural random_prenatural(FunPtr f, FunPtr g, int degree, int bound, std::mt19937_64& rng, bool unital = false);

// Random tree term of F(Q) with the given number of leaves along a random
// composable path, or the zero element when no such path exists.
Elem random_tree_element(const TreeCategory& c, int leaves, std::mt19937_64& rng);

// C = B (x) L for a DG category B given by its presentation (arity bound 2)
// and L = k + k eps + k delta with d eps = delta, |eps| = -1 and all products
// of eps, delta zero. G : C -> B is the projection killing eps and delta, a
// strict quasi-equivalence that is surjective on morphisms.
struct ContractibleSummand {
    std::shared_ptr<PresentedCategory> c;
    FunPtr projection;
};
ContractibleSummand contractible_summand(std::shared_ptr<const PresentedCategory> b);

} // namespace ainf
