#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgsense/geometry.hpp"

namespace fgsense {

/// Construction record carried by matrices built from a geometry. Tracks
/// enough to decide which structural spark bounds still apply after row or
/// column puncturing: a bound transfers to a submatrix only while the rows of
/// the bounded orientation are intact (column deletion preserves it).
struct BuildMeta {
    GeomKind kind;
    int r;
    std::int64_t q;
    int mu1;
    int mu2;
    int type;  // 1: mu2-flats over mu1-flats; 2: the transpose
    std::int64_t bundle_rows = 0;   // rows per bundle in type-I orientation (EG)
    std::int64_t bundle_count = 0;  // EG
    std::vector<std::int64_t> selected_bundles;  // empty means all
    std::vector<std::int64_t> deleted_columns;   // indices into the parent matrix
    bool rows_complete = true;
    bool cols_complete = true;
};

/// Dense 0/1 matrix, row-major bit-packed. Immutable in spirit: every
/// transform returns a new matrix.
class BinaryMatrix {
public:
    BinaryMatrix(std::int64_t rows, std::int64_t cols);

    static BinaryMatrix from_rows(const std::vector<std::string>& rows01);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

    bool get(std::int64_t i, std::int64_t j) const {
        return (words_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1;
    }
    void set(std::int64_t i, std::int64_t j, bool v = true);

    std::int64_t row_weight(std::int64_t i) const;
    std::int64_t col_weight(std::int64_t j) const;
    std::vector<std::int64_t> row_weights() const;
    std::vector<std::int64_t> col_weights() const;

    /// Raw words of row i (wpr() words, low bit = column 0).
    const std::uint64_t* row_words(std::int64_t i) const { return words_.data() + i * wpr_; }
    std::int64_t wpr() const { return wpr_; }

    BinaryMatrix transposed() const;

    bool same_bits(const BinaryMatrix& other) const;

    const std::optional<BuildMeta>& meta() const { return meta_; }
    void set_meta(BuildMeta m) { meta_ = std::move(m); }

private:
    std::int64_t rows_, cols_, wpr_;
    std::vector<std::uint64_t> words_;
    std::optional<BuildMeta> meta_;
};

/// Incidence matrix of mu2-flats over mu1-flats (type 1) or its transpose
/// (type 2). Type-1 rows follow the canonical flat order, so EG rows are
/// grouped by parallel bundle. Requires 0 <= mu1 < mu2 < r; guards the total
/// bit count at 10^8.
BinaryMatrix build_incidence(const Geometry& g, int mu1, int mu2, int type);

/// Stack of the first `count` row bundles of an EG type-1 matrix. For mu1 = 0
/// the result has uniform column weight `count`; for mu1 > 0 a selection that
/// produces an all-zero column is rejected.
BinaryMatrix select_row_bundles(const BinaryMatrix& h, std::int64_t count);

/// Removes the columns covered by the first `lines` members of `next_bundle`
/// (a bundle not present in h, mu1 = 0 construction). Parallel lines are
/// disjoint, so exactly lines*q columns disappear.
BinaryMatrix delete_covered_columns(const Geometry& g, const BinaryMatrix& h,
                                    const ParallelBundle& next_bundle, std::int64_t lines);

BinaryMatrix transpose(const BinaryMatrix& h);

/// BMM text format: line 1 "BMM <rows> <cols>", then one line of exactly
/// <cols> '0'/'1' characters per row. LF newlines, no trailing whitespace.
void write_bmm(const BinaryMatrix& h, const std::string& path);
BinaryMatrix read_bmm(const std::string& path);

std::string to_bmm_string(const BinaryMatrix& h);
BinaryMatrix from_bmm_string(const std::string& text);

}  // namespace fgsense
