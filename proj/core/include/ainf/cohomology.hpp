#pragma once

#include "ainf/functor.hpp"

#include <map>
#include <optional>

namespace ainf {

// H(A) on the interior of a degree window. Composition of classes is
// g . f = (-1)^{|f|} [m^2(g, f)], which is associative and unital for the
// sign conventions used throughout the library.
class CohomologyCategory {
public:
    CohomologyCategory(const Category& c, const Bounds& b);

    const Category& category() const { return c_; }
    const Bounds& bounds() const { return b_; }
    int interior_lo() const { return b_.lo + 1; }
    int interior_hi() const { return b_.hi - 1; }

    const HomComplex& complex(int x, int y) const { return cx_.at({x, y}); }
    const Homology& hom(int x, int y) const { return h_.at({x, y}); }
    std::size_t rank(int x, int y, int degree) const;

    // Class (coordinates in the stored representatives) of a cycle of A.
    Vec classify(int x, int y, int degree, const Elem& cycle) const;
    Elem representative(int x, int y, int degree, const Vec& cls) const;

    // g in H^{dg}(y, z), f in H^{df}(x, y). Returns nullopt when the product
    // leaves the bounded complex (weight cap) or the interior window.
    std::optional<Vec> compose(int x, int y, int z, int dg, const Vec& g, int df, const Vec& f) const;

private:
    const Category& c_;
    Bounds b_;
    std::map<std::pair<int, int>, HomComplex> cx_;
    std::map<std::pair<int, int>, Homology> h_;
};

struct QuasiEquivalenceReport {
    bool ok = true;
    std::string detail; // first failure: pair, degree and the rank comparison
    int witness_degree = 0;
};

// Interior-window verdict: F^1 induces isomorphisms on every hom's interior
// homology and H^0(F) is essentially surjective.
QuasiEquivalenceReport is_quasi_equivalence(const Functor& f, const Bounds& source_bounds, const Bounds& target_bounds);
inline QuasiEquivalenceReport is_quasi_equivalence(const Functor& f, const Bounds& b)
{
    return is_quasi_equivalence(f, b, b);
}

// Finds an isomorphism class pair a : x -> y, b : y -> x in H^0 with
// b . a = 1_x, a . b = 1_y (needs cohomological units). Candidates beyond
// max_candidates are not searched.
bool h0_isomorphic(const CohomologyCategory& h, int x, int y, std::size_t max_candidates = 10000);

struct UnitDiagnostics {
    bool strictly_unital = false;
    bool nice_unit = false;
    bool cohomologically_unital = false;
    bool unital = false; // interior-window proxy for homotopy invertibility
    // per object: coordinate functional r with r(1_x) = 1 (nice unit)
    std::vector<std::pair<Mor, Scalar>> retraction;
    // per object: representative of the cohomological unit
    std::vector<Elem> cohomological_units;
    std::string detail;
};

UnitDiagnostics unit_diagnostics(const Category& c, const Bounds& b);

} // namespace ainf
