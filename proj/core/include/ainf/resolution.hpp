#pragma once

#include "ainf/functor.hpp"
#include "ainf/tree_category.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ainf {

struct ResolutionOptions {
    int stages = 3;      // K
    int max_weight = 4;  // W
    int lo = -2;         // degree window
    int hi = 2;
    bool unital = true;  // false: cofibrant replacement in the non-unital model
    bool dg = false;     // stages are DG quotients (F_DG flavor)
    // Use every closed morphism (and every admissible pair) of the window as a
    // generator instead of a chosen basis. Generators are then canonical and
    // strict functors between targets lift stagewise.
    bool functorial = false;
    std::size_t generator_cap = 4000; // functorial mode only
};

struct StageGenerator {
    std::string name;
    std::string kind; // "cycle", "contraction", "kernel", "surjectivity", "pair"
    int src = 0, tgt = 0, degree = 0, weight = 1;
    Elem d;     // boundary, an element of the previous stage
    Elem image; // value of Psi, an element of the target
};

struct Stage {
    int index = 0;
    std::shared_ptr<const Category> cat; // A~_index
    std::vector<StageGenerator> gens;
    FunPtr psi;                          // Psi_index : A~_index -> target
};

struct WindowVerdict {
    bool surjective = true;
    bool interior_iso = true;
    std::string detail;
    bool ok() const { return surjective && interior_iso; }
};

struct ResolutionTower {
    CatPtr target;
    ResolutionOptions options;
    std::vector<Stage> stages; // stages[0] is disc(A) or the zero category
    WindowVerdict verdict;             // top stage at weight W
    WindowVerdict verdict_lower;       // top stage at weight W - 1
    std::string stop_reason;
    const Stage& top() const { return stages.back(); }
    std::shared_ptr<const TreeCategory> top_tree() const;
};

// Tower A~_0 -> A~_1 -> ... with quasi-surjections Psi_k, built until the
// window verdict holds or K stages exist.
ResolutionTower resolve(CatPtr target, const ResolutionOptions& opt);
// Non-unital variant (stage 0 is the category with no morphisms).
ResolutionTower resolve_cm(CatPtr target, ResolutionOptions opt);

// Generator data in portable form: d as named terms of the previous stage
// (a name of a generator of the same stage is accepted so that corrupted
// towers can be represented and refused), the image as a target element.
struct GeneratorSpec {
    std::string name;
    int src = 0, tgt = 0, degree = 0;
    std::vector<std::pair<std::string, Scalar>> d;
    Elem image;
};

std::vector<std::vector<GeneratorSpec>> generator_specs(const ResolutionTower& t);
// Rebuilds the stages from generator data without any choices.
ResolutionTower rebuild_tower(CatPtr target, const ResolutionOptions& opt,
                              const std::vector<std::vector<GeneratorSpec>>& stages);

WindowVerdict window_verdict(const Category& stage, const Functor& psi, const Category& target, int lo, int hi,
                             int max_weight);

struct TowerCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

// Stagewise invariants: Psi_k restricts to Psi_{k-1}, generator boundaries
// land one stage down, every window cycle of A~_{k-1} with Psi-image a
// boundary becomes a boundary in A~_k, and the stage inclusions are strict.
std::vector<TowerCheck> check_tower(const ResolutionTower& t, int max_arity = 2, int check_weight = 2);

// Strict functor A~_K -> A~'_K induced by a strict functor phi: A -> A'
// between the targets of two functorial towers.
FunPtr tower_map(const ResolutionTower& from, const ResolutionTower& to, FunPtr phi);

// ---- semi-free certificates ----

struct FiltrationLevel {
    int level = 0;
    std::vector<std::string> generators; // quotient basis
};

struct NiceUnit {
    std::string object;
    std::string unit;  // the basis element carrying 1_x
    bool ok = true;
};

struct SemifreeCertificate {
    bool valid = true;
    std::string refusal;
    std::vector<FiltrationLevel> levels;
    std::vector<NiceUnit> units;
    std::vector<TowerCheck> checks;
};

// Certifies the top stage of a tower as semi-free: filtration by stage with
// free quotients and zero induced differential, plus the nice-unit retraction.
SemifreeCertificate certify_semifree(const ResolutionTower& t);

// Triangular filtration of a DG quiver: level of a generator is the length of
// the longest chain in its differential graph. Refuses (valid = false) when the
// graph has a cycle.
SemifreeCertificate triangular_filtration(const DGQuiver& q);

struct UFiltrationStep {
    int m = 0, l = 0;
    std::vector<std::string> quotient; // trees with m leaves and m - l nodes
    bool lands_lower = true;           // d(U_{m,l}) in U_{m,l-1}
    std::size_t expected_rank = 0;     // |PT^l_m| times the number of label paths
};

struct UFiltration {
    bool ok = true;
    std::string detail;
    std::vector<UFiltrationStep> steps;
};

// The filtration U_{m,l} of Hom_{F(Q)}(x, y) up to weight max_weight for a
// quiver with zero differential.
UFiltration u_filtration(const TreeCategory& free, int x, int y, int max_weight);

// ---- lifting ----

// F~ : A~_K -> C with G . F~ = F, for F strict out of the top stage and G a
// strict quasi-surjection C -> B with C finite. Throws ArgumentError naming the
// element of B that G misses, StructuralError if a boundary cannot be matched.
FunPtr lift(const ResolutionTower& tower, FunPtr f, FunPtr g);

} // namespace ainf
