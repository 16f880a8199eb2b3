#pragma once

#include "ainf/functor.hpp"
#include "ainf/tree_category.hpp"

#include <map>
#include <memory>
#include <variant>

namespace ainf {

// A system of relations on an ambient category. Collapse-kind families are
// the corolla-to-leaf/unit/associativity rewrites of tree categories; a
// generic system is an explicit list of generating elements.
struct RelationSystem {
    enum class Kind { collapse, generic };
    Kind kind = Kind::collapse;
    bool collapse_old = false; // R_A-type: all-old corollas evaluate in the old category
    bool units = false;        // unit identifications (flagged unit generators become strict units)
    bool associativity = false; // R_As: binary re-bracketing, m^{>=3} = 0
    std::vector<Elem> generators;
};

enum class RewriteStrategy { leftmost, rightmost };

// Collapse normal form computed by repeated single rewrites at the
// leftmost (or rightmost) all-old node, independent of the bottom-up
// normalizer inside TreeCategory. Returns a combination of codes.
Lin<Code> collapse_normal_form(const TreeCategory& ambient, const Code& term, RewriteStrategy s);

// The quotient flavor of a tree category under a collapse-kind system.
std::shared_ptr<TreeCategory> quotient(std::shared_ptr<const TreeCategory> ambient, const RelationSystem& rel);
// q : ambient -> quotient, strict, t -> normal form of t.
FunPtr quotient_functor(std::shared_ptr<const TreeCategory> ambient, std::shared_ptr<const TreeCategory> quot);

// Checks that q commutes with all m^n on bounded tuples (the relations
// generate an ideal closed under m^1). Throws StructuralError with the
// violating image otherwise.
void validate_system(const Functor& q, int max_arity, const Bounds& b);

struct Membership {
    bool member = false;
    bool bound_relative = false;
    Elem witness; // for generic kind: coefficients are not tracked; witness = x
};
Membership ideal_membership_collapse(const TreeCategory& quot, const TreeCategory& ambient, const Elem& x);

// Bounded span of the A-infinity ideal generated by elements of a category:
// closure under insertion into m^n with basis morphisms within bounds.
class BoundedIdeal {
public:
    BoundedIdeal(const Category& c, const std::vector<Elem>& generators, const Bounds& b, int max_arity);
    bool contains(const Elem& x) const;
    const std::map<std::pair<int, int>, std::vector<Elem>>& spans() const { return spans_; }
    std::size_t rank(int x, int y) const;
    // the closure grew beyond the generators (generators alone were not an ideal)
    bool grew() const { return grew_; }

private:
    const Category& c_;
    std::map<std::pair<int, int>, std::vector<Elem>> spans_;
    std::map<std::pair<int, int>, std::shared_ptr<Echelon>> ech_;
    std::map<Mor, int> pos_;
    std::vector<Mor> order_;
    bool grew_ = false;

    Vec vec(const Elem& e) const;
};

// A/I for a finite category and an ideal given by spanning elements. The
// basis of A/I is the set of basis morphisms that are not pivots of the
// ideal's echelon form (pivot order = basis order).
class LinearQuotient : public Category {
public:
    LinearQuotient(CatPtr ambient, const std::vector<Elem>& ideal);

    const Category& ambient() const { return *amb_; }
    CatPtr ambient_ptr() const { return amb_; }
    // class of an ambient element, in the quotient basis
    Elem project(const Elem& e) const;
    // chosen representative of a quotient basis element
    Elem lift(Mor f) const { return amb_->elem(kept_.at(static_cast<std::size_t>(f))); }

    const Ring& ring() const override { return amb_->ring(); }
    int object_count() const override { return amb_->object_count(); }
    std::string object_name(int x) const override { return amb_->object_name(x); }
    int src(Mor f) const override { return amb_->src(kept_.at(static_cast<std::size_t>(f))); }
    int tgt(Mor f) const override { return amb_->tgt(kept_.at(static_cast<std::size_t>(f))); }
    int degree(Mor f) const override { return amb_->degree(kept_.at(static_cast<std::size_t>(f))); }
    std::string name(Mor f) const override { return "[" + amb_->name(kept_.at(static_cast<std::size_t>(f))) + "]"; }
    Elem m(const std::vector<Mor>& args) const override;
    int arity_bound() const override { return amb_->arity_bound(); }
    std::vector<Mor> basis_exact(int x, int y, int w) const override;
    int max_weight() const override { return 1; }
    std::optional<Elem> unit(int x) const override;

private:
    CatPtr amb_;
    std::vector<Mor> kept_;
    std::map<Mor, Mor> new_id_;
    std::map<std::pair<int, int>, std::shared_ptr<Echelon>> ech_;
    std::map<Mor, int> pos_;
    std::vector<Mor> order_;
};

FunPtr linear_quotient_functor(std::shared_ptr<const LinearQuotient> q);

struct FactorResult {
    FunPtr functor;     // set on success
    std::string refusal; // relation witness on failure
    Elem value;          // nonzero image of the witness
};

// Factors a strict functor out of a tree category through a collapse-kind
// quotient: F(t) must equal F(normal form of t) for every bounded basis term.
FactorResult factor_through(const EvalFunctor& f, std::shared_ptr<const TreeCategory> quot, const Bounds& b);
// Generic system: F^1 must kill every generator (strict F).
FactorResult factor_through(const Functor& f, std::shared_ptr<const LinearQuotient> quot);

} // namespace ainf
