#pragma once

#include "ainf/category.hpp"
#include "ainf/tree_category.hpp"

#include <functional>
#include <map>
#include <memory>

namespace ainf {

using CatPtr = std::shared_ptr<const Category>;

// An A-infinity functor. Components take basis morphisms in written order;
// F^n has degree 1 - n.
class Functor {
public:
    virtual ~Functor() = default;
    virtual const Category& source() const = 0;
    virtual const Category& target() const = 0;
    virtual CatPtr source_ptr() const = 0;
    virtual CatPtr target_ptr() const = 0;
    virtual int on_object(int x) const = 0;
    virtual Elem apply(const std::vector<Mor>& args) const = 0;
    // F^n vanishes for n > component_bound(); -1 means no bound.
    virtual int component_bound() const = 0;
    // Set when a composite had components cut off at a configured maximum.
    virtual bool truncated() const { return false; }
    bool is_strict() const { return component_bound() == 1; }
};

using FunPtr = std::shared_ptr<const Functor>;

Elem apply_of(const Functor& f, const std::vector<Elem>& args);
inline Elem apply1(const Functor& f, const Elem& e) { return apply_of(f, {e}); }

class IdentityFunctor : public Functor {
public:
    explicit IdentityFunctor(CatPtr c) : c_(std::move(c)) {}
    const Category& source() const override { return *c_; }
    const Category& target() const override { return *c_; }
    CatPtr source_ptr() const override { return c_; }
    CatPtr target_ptr() const override { return c_; }
    int on_object(int x) const override { return x; }
    Elem apply(const std::vector<Mor>& args) const override;
    int component_bound() const override { return 1; }

private:
    CatPtr c_;
};

// Strict functor given by an object map and a rule on basis morphisms.
class StrictFunctor : public Functor {
public:
    StrictFunctor(CatPtr src, CatPtr tgt, std::vector<int> objects, std::function<Elem(Mor)> rule);
    const Category& source() const override { return *src_; }
    const Category& target() const override { return *tgt_; }
    CatPtr source_ptr() const override { return src_; }
    CatPtr target_ptr() const override { return tgt_; }
    int on_object(int x) const override { return objects_.at(x); }
    Elem apply(const std::vector<Mor>& args) const override;
    int component_bound() const override { return 1; }

private:
    CatPtr src_, tgt_;
    std::vector<int> objects_;
    std::function<Elem(Mor)> rule_;
    mutable std::map<Mor, Elem> cache_;
};

// Functor with explicit sparse component tables (finite sources).
class TableFunctor : public Functor {
public:
    TableFunctor(CatPtr src, CatPtr tgt, std::vector<int> objects, int bound);
    void set(const std::vector<Mor>& args, const Elem& value);
    const std::map<std::vector<Mor>, Elem>& table() const { return table_; }
    const std::vector<int>& objects() const { return objects_; }

    const Category& source() const override { return *src_; }
    const Category& target() const override { return *tgt_; }
    CatPtr source_ptr() const override { return src_; }
    CatPtr target_ptr() const override { return tgt_; }
    int on_object(int x) const override { return objects_.at(x); }
    Elem apply(const std::vector<Mor>& args) const override;
    int component_bound() const override { return bound_; }

private:
    CatPtr src_, tgt_;
    std::vector<int> objects_;
    int bound_;
    std::map<std::vector<Mor>, Elem> table_;
};

// (G . F)^n = sum over r and s_1 + ... + s_r = n of
// G^r(F^{s_r}(..), ..., F^{s_1}(..)); components past max_bound are cut off
// and flagged.
class ComposedFunctor : public Functor {
public:
    ComposedFunctor(FunPtr g, FunPtr f, int max_bound = 8);
    const Category& source() const override { return f_->source(); }
    const Category& target() const override { return g_->target(); }
    CatPtr source_ptr() const override { return f_->source_ptr(); }
    CatPtr target_ptr() const override { return g_->target_ptr(); }
    int on_object(int x) const override { return g_->on_object(f_->on_object(x)); }
    Elem apply(const std::vector<Mor>& args) const override;
    int component_bound() const override { return bound_; }
    bool truncated() const override { return truncated_; }

private:
    FunPtr g_, f_;
    int bound_;
    bool truncated_ = false;
};

// Strict functor out of a tree category: a leaf goes to the image of its
// label, a node to the target m^k of its children's images.
class EvalFunctor : public Functor {
public:
    EvalFunctor(std::shared_ptr<const TreeCategory> src, CatPtr tgt, std::vector<int> objects,
                std::function<Elem(std::int32_t)> label_image);
    const Category& source() const override { return *src_; }
    const Category& target() const override { return *tgt_; }
    CatPtr source_ptr() const override { return src_; }
    CatPtr target_ptr() const override { return tgt_; }
    int on_object(int x) const override { return objects_.at(x); }
    Elem apply(const std::vector<Mor>& args) const override;
    int component_bound() const override { return 1; }
    Elem eval_code(const Code& c) const;
    const std::function<Elem(std::int32_t)>& label_image() const { return image_; }
    const std::vector<int>& objects() const { return objects_; }
    std::shared_ptr<const TreeCategory> tree_source() const { return src_; }

private:
    std::shared_ptr<const TreeCategory> src_;
    CatPtr tgt_;
    std::vector<int> objects_;
    std::function<Elem(std::int32_t)> image_;
    mutable std::map<Mor, Elem> cache_;
};

FunPtr compose(FunPtr g, FunPtr f, int max_bound = 8);

// Residue of the functor equation on one tuple:
// sum m_B^r(F^{s_r}, ..., F^{s_1}) - sum (-1)^{dagger_i} F(.., m_A^j(..), a_i..a_1).
Elem functor_residue(const Functor& f, const std::vector<Mor>& args);
IdentityReport check_functor_equation(const Functor& f, int max_arity, const Bounds& b);
// For strict functors: F^1 m_A^n = m_B^n (F^1 ...).
IdentityReport check_strict_identity(const Functor& f, int max_arity, const Bounds& b);
IdentityReport check_strictly_unital(const Functor& f, int max_arity, const Bounds& b);

// Both composites are identities on all basis elements within bounds.
bool is_strict_equivalence(const Functor& f, const Functor& g, const Bounds& b, std::string* why = nullptr);
// Equality of two functors on all tuples up to max_arity within bounds.
bool functors_equal(const Functor& a, const Functor& b, int max_arity, const Bounds& bd, std::string* why = nullptr);

// Unique strict functor F(Q)_+ -> target agreeing with psi on the
// generators and sending the added units to the target's units.
FunPtr extend_strictly_unital(const Functor& psi, std::shared_ptr<const TreeCategory> plus);

// Strict functor out of F(Q) (or a quotient flavor) determined by a quiver
// map into |A|: images of generators as elements of A.
FunPtr lift_quiver_map(std::shared_ptr<const TreeCategory> free, CatPtr target, std::vector<int> objects,
                       const std::vector<Elem>& generator_images);
// beta_A : F(|A|) -> A, the counit (works for F(|A|) and F(|A|)/R_A).
FunPtr counit(std::shared_ptr<const TreeCategory> free_on_a);
// alpha as a strict functor A -> F(|A|)/R_A is not linear in general; this is
// the quiver-level unit |A| -> |F(|A|)|, f -> (* | f), as a strict functor
// from A into F(|A|)/R_A (valid because of the collapse relations).
FunPtr unit_into_quotient(CatPtr a, std::shared_ptr<const TreeCategory> quotient);
// F(phi) for a quiver map phi, between free categories of the same flavor.
FunPtr functorial_free(const QuiverFunctor& phi, std::shared_ptr<const TreeCategory> from,
                       std::shared_ptr<const TreeCategory> to);

} // namespace ainf
