#pragma once

#include "ainf/lin.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ainf {

using Vec = Lin<int>;

// Incremental row echelon form over a field. Vectors are sparse over integer
// coordinates; the pivot of a row is its smallest coordinate. Every row carries
// a tag recording which combination of inserted vectors produced it, so the
// same structure answers span membership, kernels and preimage queries.
// Inserting in basis order makes every answer deterministic: a preimage is the
// solution supported on the earliest independent inputs (all later, dependent
// inputs get coefficient zero).
class Echelon {
public:
    explicit Echelon(Ring r);

    const Ring& ring() const { return ring_; }
    std::size_t rank() const { return rows_.size(); }

    // Inserts v (with provenance tag). Returns nullopt when v was independent;
    // otherwise returns the tag combination t with (v's tag - t) mapping to 0,
    // i.e. a kernel relation among inserted vectors.
    std::optional<Vec> insert(const Vec& v, const Vec& tag);
    bool insert(const Vec& v) { return !insert(v, Vec(ring_)).has_value(); }

    // Fully reduces v. Returns the remainder; when tag_out is given it receives
    // the combination of tags used: v = remainder + sum c_i row_i.
    Vec reduce(const Vec& v, Vec* tag_out = nullptr) const;
    bool contains(const Vec& v) const { return reduce(v).is_zero(); }

    std::vector<Vec> rows() const;
    std::vector<int> pivots() const;

private:
    struct Row {
        Vec v;
        Vec tag;
    };
    Ring ring_;
    std::map<int, Row> rows_;
};

// Kernel of a linear map given by the images of basis vectors 0..n-1, returned
// as a basis in canonical (echelon-by-insertion) order.
std::vector<Vec> kernel(Ring r, const std::vector<Vec>& images);

// Some x with sum x_i images[i] = target, preferring the earliest independent
// columns (free variables zero); nullopt when target is not in the image.
std::optional<Vec> preimage(Ring r, const std::vector<Vec>& images, const Vec& target);

// Rank of the span of the given vectors.
std::size_t rank_of(Ring r, const std::vector<Vec>& vs);

// Nonzero coefficient vectors of length n in a fixed order: all residues over
// F_p, entries in {0, 1, -1} otherwise; at most cap of them.
std::vector<std::vector<Scalar>> coefficient_vectors(const Ring& r, std::size_t n, std::size_t cap);

void require_field(const Ring& r, const char* what);

} // namespace ainf
