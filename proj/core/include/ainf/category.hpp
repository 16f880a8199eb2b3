#pragma once

#include "ainf/graded.hpp"
#include "ainf/lin.hpp"

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ainf {

using Mor = std::int64_t;
using Elem = Lin<Mor>;

// Degree window and weight cap for enumerating (possibly infinite) homs.
struct Bounds {
    int max_weight = 1;
    int lo = -64;
    int hi = 64;
    // Cap on the summed weight of a tuple of inputs (checkers only).
    int max_total_weight = INT_MAX;
};

// An A-infinity category with a chosen basis of morphisms. Basis morphisms
// are opaque ids; operations take their inputs in written order, so
// m({x_n, ..., x_1}) composes x_1 first. All m's are multilinear and m^n has
// degree 2 - n.
class Category {
public:
    virtual ~Category() = default;

    virtual const Ring& ring() const = 0;
    virtual int object_count() const = 0;
    virtual std::string object_name(int x) const = 0;

    virtual int src(Mor f) const = 0;
    virtual int tgt(Mor f) const = 0;
    virtual int degree(Mor f) const = 0;
    virtual int weight(Mor) const { return 1; }
    virtual std::string name(Mor f) const = 0;

    // m^n on basis morphisms; n = args.size() >= 1.
    virtual Elem m(const std::vector<Mor>& args) const = 0;
    // m^n vanishes for n > arity_bound(); -1 means no bound.
    virtual int arity_bound() const = 0;

    // Basis morphisms x -> y of weight exactly w (all degrees).
    virtual std::vector<Mor> basis_exact(int x, int y, int w) const = 0;
    // Largest weight carrying basis elements, or INT_MAX when unbounded.
    virtual int max_weight() const { return INT_MAX; }
    // Strict unit of x, if the category declares one.
    virtual std::optional<Elem> unit(int) const { return std::nullopt; }

    std::vector<Mor> basis(int x, int y, const Bounds& b) const;
    int object_index(const std::string& name) const; // -1 if absent
    Elem zero() const { return Elem(ring()); }
    Elem elem(Mor f) const { return Elem(ring(), f); }
    bool finite() const { return max_weight() != INT_MAX; }
};

Elem m_of(const Category& c, const std::vector<Elem>& args);
std::string format(const Category& c, const Elem& e);
std::string format_tuple(const Category& c, const std::vector<Mor>& args);
// Degree of a homogeneous nonzero element (throws on mixed degrees).
int elem_degree(const Category& c, const Elem& e);
void require_composable(const Category& c, const std::vector<Mor>& args);

// All composable tuples of n basis morphisms (written order) within bounds.
std::vector<std::vector<Mor>> composable_tuples(const Category& c, int n, const Bounds& b);

// Stasheff residue of a composable tuple: sum over (m, d) of
// (-1)^{dagger_d} m^{n-m+1}(x_n..x_{d+m+1}, m^m(x_{d+m}..x_{d+1}), x_d..x_1).
Elem stasheff_residue(const Category& c, const std::vector<Mor>& args);

struct IdentityReport {
    bool ok = true;
    int arity = 0;
    std::vector<Mor> inputs;
    Elem residue;
    std::string detail;
    std::size_t tuples_checked = 0;
};

IdentityReport check_stasheff(const Category& c, int max_arity, const Bounds& b);

// A hom complex (x, y) cut out by bounds, with m^1 as differential.
struct HomComplex {
    int x = 0, y = 0;
    GradedModule module;
    std::vector<Mor> mors;
    std::vector<Vec> d;
    std::map<Mor, int> index;

    Vec to_vec(const Elem& e) const; // throws if e leaves the complex
    Elem to_elem(const Ring& r, const Vec& v) const;
    bool contains(const Elem& e) const;
    ChainMap differential() const { return ChainMap(module, module, 1, d); }
};

// Builds the complex; m^1 images outside the degree window are truncated.
// A weight-increasing m^1 image raises StructuralError.
HomComplex hom_complex(const Category& c, int x, int y, const Bounds& b);

} // namespace ainf
