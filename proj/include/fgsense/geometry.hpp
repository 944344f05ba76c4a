#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "fgsense/field.hpp"

namespace fgsense {

enum class GeomKind { EG, PG };

/// A mu-flat in canonical form. For EG(r,q) this is a mu-dimensional
/// subspace of F_q^r plus a coset offset; the basis is in reduced row-echelon
/// form and the offset is the unique coset representative with zeros at every
/// pivot column. For PG(r,q) it is a (mu+1)-dimensional subspace of F_q^(r+1)
/// in reduced row-echelon form (points are rows scaled to leading 1).
struct Flat {
    GeomKind kind;
    int r;
    std::int64_t q;
    int mu;
    int dims;                      // r for EG, r+1 for PG
    int brows;                     // mu for EG, mu+1 for PG
    std::vector<Elt> basis;        // brows x dims, row-major, RREF
    std::vector<Elt> offset;       // EG only: dims entries, zeros at pivots
    std::int64_t index = -1;       // position in the global flat order
    std::int64_t bundle_id = -1;   // EG only

    // Byte key: basis then offset, each entry big-endian so that byte order
    // equals numeric lexicographic order.
    std::string key() const;
};

struct ParallelBundle {
    std::int64_t bundle_id;
    std::vector<Elt> basis;             // the common direction subspace (RREF)
    std::vector<std::int64_t> members;  // global flat indices, offset order
};

// Closed-form counts, exact integer arithmetic throughout. Products of
// quotients are evaluated as full numerator/denominator products in 128-bit
// integers and divided once; overflow raises TooLargeError.

/// Number of mu1-flats contained in a given mu2-flat (independent of r).
std::int64_t contained_count(GeomKind kind, std::int64_t q, int mu2, int mu1);
/// Number of mu2-flats containing a given mu1-flat in FG(r,q).
std::int64_t containing_count(GeomKind kind, int r, std::int64_t q, int mu2, int mu1);
/// Total number of mu-flats in FG(r,q).
std::int64_t flat_count(GeomKind kind, int r, std::int64_t q, int mu);
/// Number of points.
std::int64_t point_count(GeomKind kind, int r, std::int64_t q);

/// EG(r,q) or PG(r,q) with cached, deterministic flat enumerations.
class Geometry {
public:
    Geometry(GeomKind kind, int r, std::int64_t q);

    GeomKind kind() const { return kind_; }
    int r() const { return r_; }
    std::int64_t q() const { return field_.q(); }
    const Field& field() const { return field_; }
    int dims() const { return kind_ == GeomKind::EG ? r_ : r_ + 1; }

    std::int64_t num_points() const { return point_count(kind_, r_, q()); }
    std::int64_t num_flats(int mu) const { return flat_count(kind_, r_, q(), mu); }

    /// Points in canonical order. EG: all coordinate vectors, lexicographic
    /// in field-element order. PG: canonical projective representatives
    /// (first nonzero coordinate 1), lexicographic.
    const std::vector<std::vector<Elt>>& points() const;

    /// All mu-flats in canonical order. For EG the list is grouped by
    /// parallel bundle (bundles ordered by direction-subspace key, members by
    /// offset key). Throws std::invalid_argument for mu out of [0, r].
    const std::vector<Flat>& flats(int mu) const;

    /// Index of a canonical flat in flats(mu), or -1 if absent.
    std::int64_t flat_index(const Flat& f) const;

    /// True iff every point of inner lies in outer. Purely algebraic: basis
    /// rows (and the EG offset difference) are reduced against outer's RREF.
    bool contains(const Flat& outer, const Flat& inner) const;

    /// Global indices of all mu1-flats contained in `outer`, enumerated
    /// directly in outer-local coordinates (never by scanning all flats).
    std::vector<std::int64_t> flats_within(const Flat& outer, int mu1) const;

    /// EG only: the parallel bundles of the mu-flats, in bundle order.
    /// Throws std::invalid_argument for PG.
    std::vector<ParallelBundle> parallel_bundles(int mu) const;

    /// Points of a flat, as indices into points(). Order follows the local
    /// span enumeration, not the global point order.
    std::vector<std::int64_t> flat_points(const Flat& f) const;

private:
    GeomKind kind_;
    int r_;
    Field field_;

    mutable std::vector<std::vector<Elt>> points_;
    mutable std::unordered_map<int, std::vector<Flat>> flat_cache_;
    mutable std::unordered_map<int, std::unordered_map<std::string, std::int64_t>> index_cache_;
    mutable std::unordered_map<std::string, std::int64_t> point_index_;

    const std::unordered_map<std::string, std::int64_t>& flat_index_map(int mu) const;
    void check_mu(int mu) const;
    void check_same_geometry(const Flat& f) const;
};

/// All d-dimensional subspaces of F_q^dims as RREF basis matrices (row-major,
/// d x dims), sorted by canonical key. d == 0 yields one empty basis.
std::vector<std::vector<Elt>> enumerate_subspaces(const Field& f, int dims, int d);

/// Reduced row-echelon form over the field, in place; returns the pivot
/// columns. rows x dims, row-major. Zero rows are moved to the end.
std::vector<int> rref(const Field& f, std::vector<Elt>& mat, int rows, int dims);

}  // namespace fgsense
