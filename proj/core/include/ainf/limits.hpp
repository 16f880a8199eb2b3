#pragma once

#include "ainf/functor.hpp"
#include "ainf/ideals.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace ainf {

// A x B: objects are pairs, Hom((x,y),(x',y')) = A(x,x') + B(y,y'), and m
// acts componentwise (mixed tuples give 0). Works lazily for infinite
// factors; basis morphisms are interned on first use.
class ProductCategory : public Category {
public:
    ProductCategory(CatPtr a, CatPtr b);

    const Category& left() const { return *a_; }
    const Category& right() const { return *b_; }
    CatPtr left_ptr() const { return a_; }
    CatPtr right_ptr() const { return b_; }
    int pair(int x, int y) const { return x * b_->object_count() + y; }
    int left_object(int p) const { return p / b_->object_count(); }
    int right_object(int p) const { return p % b_->object_count(); }
    // side 0: A, side 1: B
    Mor inject(int side, Mor f, int P, int Q) const;
    Elem inject(int side, const Elem& e, int P, int Q) const;
    int side(Mor f) const { return entry(f).side; }
    Mor component(Mor f) const { return entry(f).f; }

    const Ring& ring() const override { return a_->ring(); }
    int object_count() const override { return a_->object_count() * b_->object_count(); }
    std::string object_name(int p) const override;
    int src(Mor f) const override { return entry(f).P; }
    int tgt(Mor f) const override { return entry(f).Q; }
    int degree(Mor f) const override;
    int weight(Mor f) const override;
    std::string name(Mor f) const override;
    Elem m(const std::vector<Mor>& args) const override;
    int arity_bound() const override;
    std::vector<Mor> basis_exact(int P, int Q, int w) const override;
    int max_weight() const override { return std::max(a_->max_weight(), b_->max_weight()); }
    std::optional<Elem> unit(int p) const override;

private:
    struct Entry {
        int side;
        Mor f;
        int P, Q;
    };
    CatPtr a_, b_;
    mutable std::vector<Entry> entries_;
    mutable std::map<std::tuple<int, Mor, int, int>, Mor> index_;
    const Entry& entry(Mor f) const { return entries_.at(static_cast<std::size_t>(f)); }
};

FunPtr projection(std::shared_ptr<const ProductCategory> p, int side);
// <F, G> : C -> A x B for strict F : C -> A, G : C -> B.
FunPtr pairing(std::shared_ptr<const ProductCategory> p, FunPtr f, FunPtr g);

// A + B: disjoint objects (A's first), no cross morphisms. Basis morphism f
// of A becomes 2f, g of B becomes 2g + 1.
class CoproductCategory : public Category {
public:
    CoproductCategory(CatPtr a, CatPtr b);

    const Category& left() const { return *a_; }
    const Category& right() const { return *b_; }
    int offset() const { return a_->object_count(); }
    static Mor inject(int side, Mor f) { return 2 * f + side; }
    static int side(Mor f) { return static_cast<int>(f % 2); }
    static Mor component(Mor f) { return f / 2; }

    const Ring& ring() const override { return a_->ring(); }
    int object_count() const override { return a_->object_count() + b_->object_count(); }
    std::string object_name(int x) const override;
    int src(Mor f) const override;
    int tgt(Mor f) const override;
    int degree(Mor f) const override { return part(f).degree(component(f)); }
    int weight(Mor f) const override { return part(f).weight(component(f)); }
    std::string name(Mor f) const override { return part(f).name(component(f)); }
    Elem m(const std::vector<Mor>& args) const override;
    int arity_bound() const override;
    std::vector<Mor> basis_exact(int x, int y, int w) const override;
    int max_weight() const override { return std::max(a_->max_weight(), b_->max_weight()); }
    std::optional<Elem> unit(int x) const override;

private:
    CatPtr a_, b_;
    const Category& part(Mor f) const { return side(f) == 0 ? *a_ : *b_; }
    Elem lift(int side, const Elem& e) const;
};

FunPtr injection(std::shared_ptr<const CoproductCategory> c, int side);
// [F, G] : A + B -> D for strict F : A -> D, G : B -> D.
FunPtr copairing(std::shared_ptr<const CoproductCategory> c, FunPtr f, FunPtr g);

// Equalizer of strict F, G : A -> B (A finite): the agreement subcategory
// with objects {a : F a = G a} and homs ker(F^1 - G^1). Its basis elements
// are kernel vectors in canonical echelon order.
class EqualizerCategory : public Category {
public:
    EqualizerCategory(CatPtr a, FunPtr f, FunPtr g);

    const Category& ambient() const { return *a_; }
    int ambient_object(int x) const { return objs_.at(static_cast<std::size_t>(x)); }
    const Elem& vector(Mor f) const { return mors_.at(static_cast<std::size_t>(f)).v; }
    // coordinates of an ambient element lying in the subspace; nullopt otherwise
    std::optional<Elem> coordinates(int x, int y, const Elem& e) const;

    const Ring& ring() const override { return a_->ring(); }
    int object_count() const override { return static_cast<int>(objs_.size()); }
    std::string object_name(int x) const override { return a_->object_name(ambient_object(x)); }
    int src(Mor f) const override { return mors_.at(static_cast<std::size_t>(f)).x; }
    int tgt(Mor f) const override { return mors_.at(static_cast<std::size_t>(f)).y; }
    int degree(Mor f) const override { return mors_.at(static_cast<std::size_t>(f)).degree; }
    std::string name(Mor f) const override;
    Elem m(const std::vector<Mor>& args) const override;
    int arity_bound() const override { return a_->arity_bound(); }
    std::vector<Mor> basis_exact(int x, int y, int w) const override;
    int max_weight() const override { return 1; }
    std::optional<Elem> unit(int x) const override;

private:
    struct Sub {
        int x, y, degree;
        Elem v;
    };
    CatPtr a_;
    std::vector<int> objs_;
    std::map<int, int> local_;
    std::vector<Sub> mors_;
    std::map<std::pair<int, int>, std::vector<Mor>> homs_;
    std::map<std::pair<int, int>, std::shared_ptr<Echelon>> ech_;
    std::map<Mor, int> pos_; // ambient basis morphism -> coordinate
};

FunPtr equalizer_inclusion(std::shared_ptr<const EqualizerCategory> e);
// The mediating functor of a cone H : C -> A with F . H = G . H.
FunPtr equalizer_factor(std::shared_ptr<const EqualizerCategory> e, FunPtr h);

struct Coequalizer {
    std::shared_ptr<LinearQuotient> quotient;
    FunPtr q;
    bool closure_grew = false; // the image of F - G was not already an ideal
};

// Reflexive coequalizer of strict F, G : A -> B with F . r = G . r = Id_B
// (B finite): B divided by the ideal generated by the image of F - G.
Coequalizer reflexive_coequalizer(FunPtr f, FunPtr g, FunPtr r, int max_arity = 4);

struct UniversalReport {
    bool exists = false;
    bool unique = false;
    std::string detail;
    bool ok() const { return exists && unique; }
};

// Each harness builds the mediating strict functor for the given (co)cone,
// checks it is a strict functor with the required composites on bounded
// tuples, and checks uniqueness by a rank argument: the legs determine the
// mediating functor because the projections are jointly injective, the
// injections jointly surjective, the inclusion injective, q surjective.
UniversalReport product_universal(std::shared_ptr<const ProductCategory> p, FunPtr f, FunPtr g, const Bounds& b,
                                  int max_arity);
UniversalReport coproduct_universal(std::shared_ptr<const CoproductCategory> c, FunPtr f, FunPtr g,
                                    const Bounds& b, int max_arity);
UniversalReport equalizer_universal(std::shared_ptr<const EqualizerCategory> e, FunPtr F, FunPtr G, FunPtr h,
                                    const Bounds& b, int max_arity);
UniversalReport coequalizer_universal(const Coequalizer& c, FunPtr F, FunPtr G, FunPtr h, const Bounds& b,
                                      int max_arity);

// The pair beta_{F|A|}, F(|beta_A|) : F(|F(|A|)|) -> F(|A|) with section
// F(alpha): compares the span of the image of their difference with the
// kernel of F(|A|) -> F(|A|)/R_A on every hom, weights <= W.
struct PresentationCoequalizerReport {
    bool section_ok = false;
    bool spans_equal = false;
    std::size_t image_rank = 0;
    std::size_t kernel_rank = 0;
    std::string detail;
};
PresentationCoequalizerReport presentation_coequalizer_check(CatPtr a, int max_weight);

} // namespace ainf
