#pragma once

#include "ainf/category.hpp"
#include "ainf/quiver.hpp"
#include "ainf/trees.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace ainf {

struct TreeGenerator {
    std::string name;
    int src = 0;
    int tgt = 0;
    int degree = 0;
    int weight = 1;
    Lin<std::int32_t> d; // image as a combination of leaf labels
    bool unit = false;
};

// Parameters of a tree category. Leaves are labeled either by basis
// morphisms of an existing category (old labels) or by new generators.
struct TreeSpec {
    enum class Units { none, add, inherit };

    Ring ring;
    std::shared_ptr<const Category> old;
    std::vector<std::string> objects; // used when there is no old category
    std::vector<TreeGenerator> gens;
    // none: non-unital; add: unit generators flagged in gens act as strict
    // units; inherit: the old category's (basis) units act as strict units.
    Units units = Units::none;
    // Quotient by associativity: m^{>=3} = 0, right-combed binary normal form.
    bool dg = false;
    // Quotient by the collapse relations (T_n; f_n..f_1) = m^n_old(f_n..f_1)
    // whenever all inputs are old labels.
    bool collapse = false;
};

// Free A-infinity category on planar trees, optionally divided by unit,
// associativity and collapse relations, all handled as eager rewrites so
// that every stored term is a normal form. Terms are interned: a basis
// morphism is the id of a normal tree term.
class TreeCategory : public Category {
public:
    explicit TreeCategory(TreeSpec spec);

    static std::int32_t old_label(Mor f) { return static_cast<std::int32_t>(2 * f); }
    static std::int32_t gen_label(int g) { return 2 * g + 1; }
    static bool is_old(std::int32_t label) { return label % 2 == 0; }
    static Mor old_of(std::int32_t label) { return label / 2; }
    static int gen_of(std::int32_t label) { return label / 2; }

    const TreeSpec& spec() const { return spec_; }
    const Category* old() const { return spec_.old.get(); }

    int label_src(std::int32_t l) const;
    int label_tgt(std::int32_t l) const;
    int label_degree(std::int32_t l) const;
    int label_weight(std::int32_t l) const;
    std::string label_name(std::int32_t l) const;
    Lin<std::int32_t> label_d(std::int32_t l) const;
    bool is_unit_label(std::int32_t l) const;

    const Code& code(Mor f) const { return terms_.at(static_cast<std::size_t>(f)).code; }
    bool is_leaf(Mor f) const { return code(f).size() == 1; }
    bool is_unit_term(Mor f) const { return is_leaf(f) && is_unit_label(code(f)[0]); }
    Elem leaf(std::int32_t label) const;
    Elem embed_old(const Elem& e) const;
    // Projection of an arbitrary (not necessarily normal) term.
    Elem normalize(const Code& c) const;
    Elem graft(const std::vector<Mor>& children) const;
    // The node-splitting differential before normalization.
    Lin<Code> raw_d(const Code& c) const;
    std::optional<Mor> find_term(const Code& c) const;
    Elem parse_term(const std::string& text) const;

    const Ring& ring() const override { return spec_.ring; }
    int object_count() const override { return static_cast<int>(objects_.size()); }
    std::string object_name(int x) const override { return objects_.at(x); }
    int src(Mor f) const override { return terms_.at(static_cast<std::size_t>(f)).src; }
    int tgt(Mor f) const override { return terms_.at(static_cast<std::size_t>(f)).tgt; }
    int degree(Mor f) const override { return terms_.at(static_cast<std::size_t>(f)).degree; }
    int weight(Mor f) const override { return terms_.at(static_cast<std::size_t>(f)).weight; }
    std::string name(Mor f) const override;
    Elem m(const std::vector<Mor>& args) const override;
    int arity_bound() const override { return spec_.dg ? 2 : -1; }
    std::vector<Mor> basis_exact(int x, int y, int w) const override;
    std::optional<Elem> unit(int x) const override;

private:
    struct TermInfo {
        Code code;
        int src, tgt, degree, weight;
    };

    Mor intern(const Code& c) const;
    Elem dg_product(Mor a, Mor b) const;
    Code comb(const std::vector<std::int32_t>& word) const;
    std::vector<std::int32_t> labels_of_weight(int x, int y, int w) const;

    TreeSpec spec_;
    std::vector<std::string> objects_;
    std::vector<int> unit_gen_; // per object, generator index or -1
    std::vector<Mor> old_unit_; // per object (inherit mode)
    mutable std::vector<TermInfo> terms_;
    mutable std::map<Code, Mor> index_;
    mutable std::map<Mor, Elem> d_cache_;
    mutable std::map<std::tuple<int, int, int>, std::vector<Mor>> basis_cache_;
};

enum class FreeFlavor { plain, plus, dg, dg_plus };

// F(Q) and its strictly unital / DG variants.
std::shared_ptr<TreeCategory> free_category(const DGQuiver& q, FreeFlavor flavor = FreeFlavor::plain);
// F(|A|) (collapse = false) and F(|A|)/R_A (collapse = true).
std::shared_ptr<TreeCategory> free_on_underlying(std::shared_ptr<const Category> a, bool collapse);
// |A| for a finite category: basis morphisms as generators, d = m^1.
DGQuiver underlying_quiver(const Category& a);

} // namespace ainf
