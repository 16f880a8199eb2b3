#pragma once

#include "ainf/graded.hpp"

#include <string>
#include <vector>

namespace ainf {

// Graded quiver with a degree +1 differential. Generators are named and
// indexed; d images are sparse vectors over generator indices.
class DGQuiver {
public:
    struct Gen {
        std::string name;
        int src = 0;
        int tgt = 0;
        int degree = 0;
    };

    DGQuiver() = default;
    DGQuiver(Ring r, std::vector<std::string> objects);

    const Ring& ring() const { return ring_; }
    const std::vector<std::string>& objects() const { return objects_; }
    int object_count() const { return static_cast<int>(objects_.size()); }
    int object_index(const std::string& n) const;
    const std::vector<Gen>& gens() const { return gens_; }
    const Gen& gen(int i) const { return gens_.at(i); }
    int gen_index(const std::string& n) const; // -1 if absent

    int add(const std::string& name, int src, int tgt, int degree);
    void set_d(int g, const Vec& image);
    const Vec& d(int g) const { return d_.at(g); }
    Vec apply_d(const Vec& v) const;

    // Throws StructuralError naming a generator when d^2 != 0, or
    // ArgumentError on degree/endpoint mismatches.
    void validate() const;

    // Generators x -> y as a graded module and d restricted to it.
    GradedModule hom(int x, int y) const;

private:
    Ring ring_;
    std::vector<std::string> objects_;
    std::vector<Gen> gens_;
    std::vector<Vec> d_;
};

DGQuiver sum(const DGQuiver& a, const DGQuiver& b);
DGQuiver discrete_quiver(Ring r, const std::vector<std::string>& objects);

struct SubquiverVerdict {
    bool ok = true;
    std::string witness;
};
SubquiverVerdict is_subquiver(const DGQuiver& sub, const DGQuiver& q);

// Quiver map: objects to objects, generators to degree-preserving
// combinations of generators, commuting with d.
struct QuiverFunctor {
    const DGQuiver* source = nullptr;
    const DGQuiver* target = nullptr;
    std::vector<int> on_objects;
    std::vector<Vec> on_gens;

    Vec apply(const Vec& v) const;
    void validate() const;
};

QuiverFunctor identity_map(const DGQuiver& q);
QuiverFunctor compose(const QuiverFunctor& g, const QuiverFunctor& f);
bool operator==(const QuiverFunctor& a, const QuiverFunctor& b);

} // namespace ainf
