#pragma once

#include "ainf/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace ainf {

// Graded free module with a chosen, ordered, named basis. Elements are
// sparse vectors over basis positions.
class GradedModule {
public:
    GradedModule() = default;
    GradedModule(Ring r, int lo, int hi) : ring_(r), lo_(lo), hi_(hi) {}

    const Ring& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    std::size_t dim() const { return names_.size(); }

    int add(const std::string& name, int degree);
    const std::string& name(int i) const { return names_.at(i); }
    int degree(int i) const { return degrees_.at(i); }
    int index_of(const std::string& name) const; // -1 if absent
    std::vector<int> in_degree(int d) const;
    Vec element(int i) const { return Vec(ring_, i); }
    std::string format(const Vec& v) const;

private:
    Ring ring_;
    int lo_ = 0, hi_ = 0;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::map<std::string, int> index_;
};

// Linear map of fixed degree shift, given by basis images.
class ChainMap {
public:
    ChainMap(const GradedModule& src, const GradedModule& tgt, int shift, std::vector<Vec> images);

    const GradedModule& source() const { return *src_; }
    const GradedModule& target() const { return *tgt_; }
    int shift() const { return shift_; }
    const Vec& image(int i) const { return images_.at(i); }
    Vec operator()(const Vec& v) const;

private:
    const GradedModule* src_;
    const GradedModule* tgt_;
    int shift_;
    std::vector<Vec> images_;
};

// Homology of a differential on a module, with a stored section: for every
// reported degree a list of cycle representatives, and a projection sending a
// cycle to its coordinates in those classes.
class Homology {
public:
    struct Degree {
        int degree = 0;
        std::size_t cycles = 0;
        std::size_t boundaries = 0;
        std::vector<Vec> reps;
    };

    const std::map<int, Degree>& degrees() const { return deg_; }
    std::size_t rank(int d) const;
    const std::vector<Vec>& reps(int d) const;
    bool is_boundary(int d, const Vec& cycle) const;
    // Coordinates of the class of a cycle (caller guarantees it is one).
    Vec classify(int d, const Vec& cycle) const;
    // Interior-window homology as a module with names "[rep]".
    GradedModule as_module(const GradedModule& ambient) const;

private:
    friend Homology homology(const GradedModule&, const ChainMap&, int, int);
    std::map<int, Degree> deg_;
    std::map<int, Echelon> reducer_;
};

// Homology in degrees [lo, hi]; throws StructuralError if d^2 != 0.
Homology homology(const GradedModule& module, const ChainMap& d, int lo, int hi);
inline Homology homology(const GradedModule& module, const ChainMap& d)
{
    return homology(module, d, module.lo() + 1, module.hi() - 1);
}

std::optional<Vec> solve_preimage(const ChainMap& map, const Vec& target);

} // namespace ainf
