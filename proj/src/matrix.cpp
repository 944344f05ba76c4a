#include "fgsense/matrix.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fgsense/errors.hpp"

namespace fgsense {

namespace {
constexpr std::int64_t kMaxBits = 100'000'000;
}

BinaryMatrix::BinaryMatrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be positive");
    if (rows * cols > kMaxBits) throw TooLargeError("matrix exceeds the bit budget");
    words_.assign(rows_ * wpr_, 0);
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::string>& rows01) {
    if (rows01.empty()) throw std::invalid_argument("matrix dimensions must be positive");
    BinaryMatrix m(static_cast<std::int64_t>(rows01.size()),
                   static_cast<std::int64_t>(rows01[0].size()));
    for (std::int64_t i = 0; i < m.rows_; ++i) {
        if (static_cast<std::int64_t>(rows01[i].size()) != m.cols_)
            throw std::invalid_argument("ragged row lengths");
        for (std::int64_t j = 0; j < m.cols_; ++j) {
            const char c = rows01[i][j];
            if (c != '0' && c != '1') throw std::invalid_argument("entries must be 0 or 1");
            if (c == '1') m.set(i, j);
        }
    }
    return m;
}

void BinaryMatrix::set(std::int64_t i, std::int64_t j, bool v) {
    const std::uint64_t mask = std::uint64_t(1) << (j & 63);
    if (v)
        words_[i * wpr_ + (j >> 6)] |= mask;
    else
        words_[i * wpr_ + (j >> 6)] &= ~mask;
}

std::int64_t BinaryMatrix::row_weight(std::int64_t i) const {
    std::int64_t w = 0;
    for (std::int64_t k = 0; k < wpr_; ++k) w += std::popcount(words_[i * wpr_ + k]);
    return w;
}

std::int64_t BinaryMatrix::col_weight(std::int64_t j) const {
    std::int64_t w = 0;
    for (std::int64_t i = 0; i < rows_; ++i) w += get(i, j) ? 1 : 0;
    return w;
}

std::vector<std::int64_t> BinaryMatrix::row_weights() const {
    std::vector<std::int64_t> w(rows_);
    for (std::int64_t i = 0; i < rows_; ++i) w[i] = row_weight(i);
    return w;
}

std::vector<std::int64_t> BinaryMatrix::col_weights() const {
    std::vector<std::int64_t> w(cols_, 0);
    for (std::int64_t i = 0; i < rows_; ++i)
        for (std::int64_t j = 0; j < cols_; ++j)
            if (get(i, j)) ++w[j];
    return w;
}

BinaryMatrix BinaryMatrix::transposed() const {
    BinaryMatrix t(cols_, rows_);
    for (std::int64_t i = 0; i < rows_; ++i)
        for (std::int64_t k = 0; k < wpr_; ++k) {
            std::uint64_t w = words_[i * wpr_ + k];
            while (w) {
                const int b = std::countr_zero(w);
                w &= w - 1;
                t.set(k * 64 + b, i);
            }
        }
    return t;
}

bool BinaryMatrix::same_bits(const BinaryMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
}

namespace {

void require_no_zero_column(const BinaryMatrix& m, const char* what) {
    const auto w = m.col_weights();
    for (std::int64_t j = 0; j < m.cols(); ++j)
        if (w[j] == 0)
            throw std::invalid_argument(std::string(what) + " would leave column " +
                                        std::to_string(j) + " all-zero");
}

}  // namespace

BinaryMatrix build_incidence(const Geometry& g, int mu1, int mu2, int type) {
    if (!(0 <= mu1 && mu1 < mu2 && mu2 < g.r()))
        throw std::invalid_argument("need 0 <= mu1 < mu2 < r");
    if (type != 1 && type != 2) throw std::invalid_argument("type must be 1 or 2");

    const std::int64_t j_rows = g.num_flats(mu2);
    const std::int64_t n_cols = g.num_flats(mu1);
    if (j_rows * n_cols > kMaxBits) throw TooLargeError("incidence matrix exceeds the bit budget");

    BinaryMatrix h(j_rows, n_cols);
    const auto& rows = g.flats(mu2);
    for (const auto& f : rows)
        for (std::int64_t c : g.flats_within(f, mu1)) h.set(f.index, c);

    BuildMeta meta{g.kind(), g.r(), g.q(), mu1, mu2, 1, 0, 0, {}, {}, true, true};
    if (g.kind() == GeomKind::EG) {
        std::int64_t per = 1;
        for (int i = 0; i < g.r() - mu2; ++i) per *= g.q();
        meta.bundle_rows = per;
        meta.bundle_count = j_rows / per;
    }
    h.set_meta(meta);
    require_no_zero_column(h, "incidence construction");
    return type == 1 ? std::move(h) : transpose(h);
}

BinaryMatrix select_row_bundles(const BinaryMatrix& h, std::int64_t count) {
    const auto& meta = h.meta();
    if (!meta || meta->kind != GeomKind::EG || meta->type != 1 || !meta->rows_complete)
        throw std::invalid_argument("bundle selection needs a full EG type-1 matrix");
    if (count < 1 || count > meta->bundle_count)
        throw std::invalid_argument("bundle count out of range");

    const std::int64_t out_rows = count * meta->bundle_rows;
    BinaryMatrix out(out_rows, h.cols());
    for (std::int64_t i = 0; i < out_rows; ++i)
        for (std::int64_t j = 0; j < h.cols(); ++j)
            if (h.get(i, j)) out.set(i, j);

    BuildMeta m = *meta;
    m.selected_bundles.clear();
    for (std::int64_t b = 0; b < count; ++b) m.selected_bundles.push_back(b);
    m.rows_complete = count == meta->bundle_count;
    out.set_meta(m);
    require_no_zero_column(out, "bundle selection");
    return out;
}

BinaryMatrix delete_covered_columns(const Geometry& g, const BinaryMatrix& h,
                                    const ParallelBundle& next_bundle, std::int64_t lines) {
    const auto& meta = h.meta();
    if (!meta || meta->mu1 != 0 || meta->type != 1)
        throw std::invalid_argument("column deletion needs a type-1 matrix over points");
    if (g.kind() != meta->kind || g.r() != meta->r || g.q() != meta->q)
        throw std::invalid_argument("matrix was built from a different geometry");
    // an empty selection means every bundle is present, including next_bundle
    if (meta->selected_bundles.empty())
        throw std::invalid_argument("deletion bundle must not be part of the matrix");
    for (std::int64_t b : meta->selected_bundles)
        if (b == next_bundle.bundle_id)
            throw std::invalid_argument("deletion bundle must not be part of the matrix");
    if (lines < 0 || lines > static_cast<std::int64_t>(next_bundle.members.size()))
        throw std::invalid_argument("line count out of range");
    if (lines == 0) return h;

    const auto& line_flats = g.flats(meta->mu2);
    std::vector<bool> drop(h.cols(), false);
    std::int64_t dropped = 0;
    for (std::int64_t li = 0; li < lines; ++li) {
        for (std::int64_t p : g.flat_points(line_flats[next_bundle.members[li]])) {
            if (!drop[p]) {
                drop[p] = true;
                ++dropped;
            }
        }
    }
    if (dropped != lines * g.q())
        throw std::logic_error("covered points are expected to be pairwise distinct");

    BinaryMatrix out(h.rows(), h.cols() - dropped);
    std::vector<std::int64_t> col_map;
    col_map.reserve(h.cols() - dropped);
    for (std::int64_t j = 0; j < h.cols(); ++j)
        if (!drop[j]) col_map.push_back(j);
    for (std::int64_t i = 0; i < h.rows(); ++i)
        for (std::int64_t jj = 0; jj < static_cast<std::int64_t>(col_map.size()); ++jj)
            if (h.get(i, col_map[jj])) out.set(i, jj);

    BuildMeta m = *meta;
    for (std::int64_t j = 0; j < h.cols(); ++j)
        if (drop[j]) m.deleted_columns.push_back(j);
    m.cols_complete = false;
    out.set_meta(m);
    require_no_zero_column(out, "column deletion");
    return out;
}

BinaryMatrix transpose(const BinaryMatrix& h) {
    BinaryMatrix t = h.transposed();
    if (h.meta()) {
        BuildMeta m = *h.meta();
        m.type = m.type == 1 ? 2 : 1;
        std::swap(m.rows_complete, m.cols_complete);
        t.set_meta(m);
    }
    return t;
}

std::string to_bmm_string(const BinaryMatrix& h) {
    std::string out = "BMM " + std::to_string(h.rows()) + " " + std::to_string(h.cols()) + "\n";
    out.reserve(out.size() + (h.cols() + 1) * h.rows());
    for (std::int64_t i = 0; i < h.rows(); ++i) {
        for (std::int64_t j = 0; j < h.cols(); ++j) out.push_back(h.get(i, j) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

void write_bmm(const BinaryMatrix& h, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    const std::string s = to_bmm_string(h);
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!f) throw IoError("failed writing " + path);
}

BinaryMatrix from_bmm_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    std::int64_t rows = 0, cols = 0;
    {
        std::istringstream hs(line);
        std::string tag;
        if (!(hs >> tag >> rows >> cols) || tag != "BMM" || rows < 1 || cols < 1)
            throw ParseError("malformed header, expected 'BMM <rows> <cols>'", 1);
        std::string rest;
        if (hs >> rest) throw ParseError("trailing content in header", 1);
    }
    if (rows * cols > kMaxBits) throw TooLargeError("matrix exceeds the bit budget");

    BinaryMatrix m(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line))
            throw ParseError("unexpected end of file", static_cast<int>(i + 2));
        if (static_cast<std::int64_t>(line.size()) != cols)
            throw ParseError("row has " + std::to_string(line.size()) + " characters, expected " +
                                 std::to_string(cols),
                             static_cast<int>(i + 2));
        for (std::int64_t j = 0; j < cols; ++j) {
            if (line[j] == '1')
                m.set(i, j);
            else if (line[j] != '0')
                throw ParseError("invalid character", static_cast<int>(i + 2));
        }
    }
    return m;
}

BinaryMatrix read_bmm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_bmm_string(ss.str());
}

}  // namespace fgsense
