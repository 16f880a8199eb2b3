#pragma once

#include "ainf/category.hpp"

#include <map>
#include <string>
#include <vector>

namespace ainf {

enum class UnitPolicy { non_unital, strictly_unital, augmented };

// A finitely presented A-infinity category: a finite named basis per hom and
// sparse tables for m^1 .. m^N. Missing table entries are zero.
class PresentedCategory : public Category {
public:
    struct Morphism {
        std::string name;
        int src = 0;
        int tgt = 0;
        int degree = 0;
    };

    PresentedCategory(Ring r, std::vector<std::string> objects, int arity_bound);

    int add_morphism(const std::string& name, int src, int tgt, int degree);
    Mor morphism(const std::string& name) const; // throws if unknown
    std::optional<Mor> find(const std::string& name) const;
    // Sets m^n(args) (written order). Checks composability and degree 2 - n.
    void set(const std::vector<Mor>& args, const Elem& value);
    const std::map<std::vector<Mor>, Elem>& table() const { return ops_; }

    void set_units(const std::vector<Elem>& units); // policy becomes strictly unital
    void set_augmentation(const std::map<Mor, Scalar>& eps); // policy becomes augmented
    UnitPolicy unit_policy() const { return policy_; }
    Scalar epsilon(Mor f) const;
    const std::vector<Morphism>& morphisms() const { return mors_; }
    const std::vector<std::string>& objects() const { return objects_; }
    Elem parse_elem(const std::vector<std::pair<std::string, Scalar>>& terms) const;

    const Ring& ring() const override { return ring_; }
    int object_count() const override { return static_cast<int>(objects_.size()); }
    std::string object_name(int x) const override { return objects_.at(x); }
    int src(Mor f) const override { return mors_.at(f).src; }
    int tgt(Mor f) const override { return mors_.at(f).tgt; }
    int degree(Mor f) const override { return mors_.at(f).degree; }
    std::string name(Mor f) const override { return mors_.at(f).name; }
    Elem m(const std::vector<Mor>& args) const override;
    int arity_bound() const override { return bound_; }
    std::vector<Mor> basis_exact(int x, int y, int w) const override;
    int max_weight() const override { return 1; }
    std::optional<Elem> unit(int x) const override;

private:
    Ring ring_;
    std::vector<std::string> objects_;
    int bound_;
    std::vector<Morphism> mors_;
    std::map<std::string, Mor> by_name_;
    std::map<std::vector<Mor>, Elem> ops_;
    UnitPolicy policy_ = UnitPolicy::non_unital;
    std::vector<Elem> units_;
    std::map<Mor, Scalar> eps_;
};

// DG input: differential d and composition a2 . a1 with the Koszul
// conventions of a DG category, converted to A-infinity operations via
// m^1(a) = (-1)^{|a|} d a and m^2(a2, a1) = (-1)^{|a1|} a2 . a1.
struct DGData {
    std::map<Mor, Elem> d;
    std::map<std::pair<Mor, Mor>, Elem> product; // (a2, a1) -> a2 . a1
};
void install_dg(PresentedCategory& c, const DGData& data);

// Strict-unit checks on the tables (asymmetric form forced by the DG twist):
// m^2(f, 1) = f, m^2(1, f) = (-1)^{|f|} f, m^1(1) = 0, m^{n>=3}(.., 1, ..) = 0.
IdentityReport check_strict_units(const Category& c, const Bounds& b, int max_arity);

PresentedCategory disc(Ring r, const std::vector<std::string>& objects);
PresentedCategory interval_algebra(Ring r);
PresentedCategory simplex(Ring r, int n);
PresentedCategory invertible_interval(Ring r);
// k[f]/(f^2) with f closed of degree 0.
PresentedCategory dual_numbers(Ring r);
PresentedCategory builtin(const std::string& name, Ring r);

PresentedCategory augment(const PresentedCategory& c);
PresentedCategory reduce(const PresentedCategory& c);

// Copies a finite category into table form (all tuples up to max_arity).
// With bounds, an infinite category is cut to the bounded basis, which must
// be closed under all operations.
PresentedCategory present(const Category& c, int max_arity, const Bounds* bounds = nullptr);

} // namespace ainf
