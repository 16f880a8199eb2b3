#pragma once

#include "ainf/cohomology.hpp"
#include "ainf/functor.hpp"
#include "ainf/presented.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>

namespace ainf {

// A prenatural transformation T : F => G of degree g between functors
// A -> B. T^0(x) lies in B(F x, G x) with degree g; T^n(a_n, ..., a_1) lies in
// B(F x_0, G x_n) with degree g - n + sum |a_i|. Components past `bound` are
// zero. With `unital` set, components on tuples containing a strict unit of
// A are zero and are never stored or computed.
struct Prenatural {
    FunPtr F, G;
    int degree = 0;
    int bound = 0;
    bool unital = false;
    Bounds source_bounds; // enumeration bounds for tuples of A
    std::vector<Elem> t0;
    std::map<std::vector<Mor>, Elem> tn;

    Prenatural() = default;
    Prenatural(FunPtr f, FunPtr g, int degree, int bound, bool unital = false);

    const Category& source() const { return F->source(); }
    const Category& target() const { return F->target(); }
    Elem at(int x) const { return t0.at(static_cast<std::size_t>(x)); }
    Elem at(const std::vector<Mor>& args) const;
    Elem at_elems(const std::vector<Elem>& args) const; // multilinear extension, n >= 1
    void set(int x, const Elem& v) { t0.at(static_cast<std::size_t>(x)) = v; }
    void set(const std::vector<Mor>& args, const Elem& v);

    bool is_zero() const;
    Prenatural& add(const Prenatural& o, const Scalar& c = Scalar(1));
    Prenatural scaled(const Scalar& c) const;
    Prenatural zero_like() const;
    bool operator==(const Prenatural& o) const;
};

std::string format(const Prenatural& t);

// Default enumeration bounds for finite sources.
Bounds all_degrees();
// Composable tuples of length 1..bound (written order), dropping tuples that
// contain strict units when `unital` is set.
std::vector<std::vector<Mor>> prenatural_tuples(const Category& a, int bound, bool unital, const Bounds& b);
std::vector<Mor> unit_morphisms(const Category& a); // units that are basis morphisms

Prenatural identity_transformation(FunPtr f, int bound, bool unital = false);
// A functor's higher part F^n (n >= 1) viewed as a degree 1 prenatural F => G
// (requires equal object maps); T^0 = 0.
Prenatural functor_difference(FunPtr f, FunPtr g, int bound, bool unital = false);

// M^k(T_k, ..., T_1), written order, T_j : F_{j-1} => F_j. For k = 1 this is
// the differential: outer terms
//   sum (-1)^{(|T|-1) * dagger(right)} m_B(G.., T^s(..), F..)
// plus inner terms sum (-1)^{|T|+dagger_i} T(.., m_A^j(..), a_i..a_1).
// For k >= 2 only outer terms occur. Sign of a T slot: (|T_j| - 1) times
// the summed reduced degree of the inputs to its right.
Prenatural M(const std::vector<const Prenatural*>& ts, int bound, int only_arity = -1);
Prenatural M1(const Prenatural& t);
Prenatural M2(const Prenatural& s, const Prenatural& t);

// Affine linear solver over prenatural unknowns: finds X_1..X_m (shapes given
// by the templates, with `free_t0` selecting whether T^0 is unknown) with
// op(X) = rhs, where op is linear. Free variables are set to zero.
struct Unknown {
    Prenatural shape;
    bool free_t0 = true;
};
std::optional<std::vector<Prenatural>> solve_prenaturals(
    const std::vector<Unknown>& unknowns,
    const std::function<std::vector<Prenatural>(const std::vector<Prenatural>&)>& op,
    const std::vector<Prenatural>& rhs);

// H : F => G of degree 0 with H^0 = 0 and F - G = M1(H); sound, complete only
// up to the component bound.
std::optional<Prenatural> solve_homotopic(FunPtr f, FunPtr g, int bound, bool unital = false);

// G with F - G = M1(H0) for H0 : F => G, H0^0 = 0, built arity by arity up
// to `bound` (default: the bound of H0). G satisfies the functor equation up
// to that arity; past it, G^d need not vanish unless A is nilpotent.
std::shared_ptr<TableFunctor> perturb_functor(FunPtr f, const Prenatural& h0, int bound = -1);

struct WeakEquivalence {
    Prenatural T, S, H, Hp; // T : F => G, S : G => F, M2(S,T) = Id + M1(H), M2(T,S) = Id + M1(Hp)
    bool unital = false;    // strictly unital prenaturals were used
    std::size_t candidates_tried = 0;
};

struct WeakEquivalenceOptions {
    int bound = 2;
    bool unital = false;
    std::size_t max_candidates = 10000;
};

struct WeakEquivalenceResult {
    std::optional<WeakEquivalence> witness;
    std::string obstruction; // H-level report when no witness was found
    std::size_t candidates_tried = 0;
};

WeakEquivalenceResult search_weak_equivalence(FunPtr f, FunPtr g, const WeakEquivalenceOptions& opt);
// Re-checks the two displayed equations and the closedness of T and S.
bool verify_weak_equivalence(const WeakEquivalence& w, std::string* why = nullptr);

// Solves the functor equation of a table functor at arity n for the unknown
// components on the tuples selected by `unknown` (coordinates restricted to
// `coords(tuple)`), keeping all other components. Returns false when the
// linear system has no solution.
bool solve_functor_level(TableFunctor& f, int n, const Bounds& source_bounds,
                         const std::function<bool(const std::vector<Mor>&)>& unknown,
                         const std::function<std::vector<Mor>(const std::vector<Mor>&)>& coords);

// N*_1(A): strictly unital functors from the invertible interval into A with
// strictly unital prenaturals as morphisms, components cut at arity `cut`
// (the cut is an A-infinity ideal, so the truncation is exact). Objects: the
// constant functors i(x) for every object of A, then any extra objects.
class PathObject : public Category {
public:
    struct Slot {
        int P = 0, Q = 0;
        int key = -1; // -1: T^0 at 0, -2: T^0 at 1, k >= 0: index into words()
        Mor a = 0;
    };

    PathObject(CatPtr a, int cut);

    // Adds an object (x0, x1, f01, f10[, f010, f101]); missing or higher
    // components are solved level by level. Throws StructuralError when the
    // functor equation cannot be solved below the cut.
    int add_object(const std::string& name, int x0, int x1, const Elem& f01, const Elem& f10,
                   std::optional<Elem> f010 = std::nullopt, std::optional<Elem> f101 = std::nullopt);

    const Category& base() const { return *a_; }
    CatPtr base_ptr() const { return a_; }
    CatPtr interval_ptr() const { return j_; }
    int cut() const { return cut_; }
    std::shared_ptr<const TableFunctor> object_functor(int p) const { return objs_.at(p).fun; }
    int constant_object(int x) const { return x; }
    const std::vector<std::vector<Mor>>& words() const { return words_; }
    const Slot& slot(Mor f) const { return slots_.at(static_cast<std::size_t>(f)); }
    std::optional<Mor> find_slot(int P, int Q, int key, Mor a) const;

    Prenatural to_prenatural(const Elem& e, int P, int Q, int degree) const;
    Elem from_prenatural(const Prenatural& t, int P, int Q) const;

    const Ring& ring() const override { return a_->ring(); }
    int object_count() const override { return static_cast<int>(objs_.size()); }
    std::string object_name(int p) const override { return objs_.at(p).name; }
    int src(Mor f) const override { return slot(f).P; }
    int tgt(Mor f) const override { return slot(f).Q; }
    int degree(Mor f) const override;
    std::string name(Mor f) const override;
    Elem m(const std::vector<Mor>& args) const override;
    int arity_bound() const override { return a_->arity_bound(); }
    std::vector<Mor> basis_exact(int P, int Q, int w) const override;
    int max_weight() const override { return 1; }
    std::optional<Elem> unit(int p) const override;

private:
    struct Obj {
        std::string name;
        std::shared_ptr<TableFunctor> fun;
    };
    CatPtr a_;
    std::shared_ptr<PresentedCategory> j_;
    int cut_;
    std::vector<std::vector<Mor>> words_;
    std::vector<Obj> objs_;
    std::vector<Slot> slots_;
    std::map<std::pair<int, int>, std::vector<Mor>> homs_;
    std::map<std::tuple<int, int, int, Mor>, Mor> slot_index_;
    mutable std::map<std::vector<Mor>, Elem> cache_;

    void add_slots(int P, int Q);
    int word_source(const std::vector<Mor>& w) const;
    int word_target(const std::vector<Mor>& w) const;
};

// Cut large enough that the truncation does not disturb interior homology of
// the window [lo, hi]: hi - (least degree of A) + 1.
int path_object_cut(const Category& a, const Bounds& window);

FunPtr path_source(std::shared_ptr<const PathObject> n);   // s
FunPtr path_target(std::shared_ptr<const PathObject> n);   // t
FunPtr path_constant(std::shared_ptr<const PathObject> n); // i

// Roof A -> N*_1(B) <- B for F ~= G: psi with s . psi = F and t . psi = G.
struct RoofCertificate {
    bool valid = false;
    std::string refusal;
    std::shared_ptr<PathObject> path;
    std::shared_ptr<TableFunctor> psi;
    std::vector<int> objects; // psi on objects
};

RoofCertificate certificate_same_ho_class(FunPtr f, FunPtr g, const WeakEquivalence& w, int cut, int bound);
// Machine check of a roof: psi satisfies the functor equation up to bound,
// s . psi = F and t . psi = G, s . i = t . i = Id.
bool check_roof(const RoofCertificate& c, FunPtr f, FunPtr g, int bound, std::string* why = nullptr);

} // namespace ainf
