#include "fgsense/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "fgsense/errors.hpp"

namespace fgsense {

namespace {

using u128 = unsigned __int128;

constexpr std::int64_t kMaxEnumeratedFlats = 5'000'000;

u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > ~u128(0) / a) throw TooLargeError("count overflows 128-bit arithmetic");
    return a * b;
}

u128 qpow(std::int64_t q, int e) {
    u128 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, u128(q));
    return r;
}

std::int64_t to_i64(u128 v) {
    if (v > u128(INT64_MAX)) throw TooLargeError("count exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

// Product of (q^top[i] - 1) over / product of (q^bot[i] - 1), exact.
std::int64_t ratio_product(std::int64_t q, const std::vector<int>& top,
                           const std::vector<int>& bot) {
    u128 num = 1, den = 1;
    for (int e : top) num = checked_mul(num, qpow(q, e) - 1);
    for (int e : bot) den = checked_mul(den, qpow(q, e) - 1);
    return to_i64(num / den);
}

void append_be(std::string& s, Elt v) {
    s.push_back(static_cast<char>((v >> 24) & 0xff));
    s.push_back(static_cast<char>((v >> 16) & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>(v & 0xff));
}

std::string vec_key(const std::vector<Elt>& v) {
    std::string s;
    s.reserve(v.size() * 4);
    for (Elt e : v) append_be(s, e);
    return s;
}

// Pivot column of each RREF basis row (first nonzero entry).
std::vector<int> pivot_cols(const std::vector<Elt>& basis, int rows, int dims) {
    std::vector<int> piv(rows, -1);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < dims; ++j)
            if (basis[i * dims + j] != 0) {
                piv[i] = j;
                break;
            }
    return piv;
}

// v -= (component at each pivot) * basis row; true iff remainder is zero.
bool reduces_to_zero(const Field& f, std::vector<Elt> v, const std::vector<Elt>& basis,
                     const std::vector<int>& piv, int dims) {
    for (size_t i = 0; i < piv.size(); ++i) {
        const Elt c = v[piv[i]];
        if (c == 0) continue;
        for (int j = 0; j < dims; ++j)
            v[j] = f.sub(v[j], f.mul(c, basis[i * dims + j]));
    }
    for (Elt e : v)
        if (e != 0) return false;
    return true;
}

// Canonical coset representative: zero the pivot coordinates of v.
void canonicalize_offset(const Field& f, std::vector<Elt>& v, const std::vector<Elt>& basis,
                         const std::vector<int>& piv, int dims) {
    for (size_t i = 0; i < piv.size(); ++i) {
        const Elt c = v[piv[i]];
        if (c == 0) continue;
        for (int j = 0; j < dims; ++j)
            v[j] = f.sub(v[j], f.mul(c, basis[i * dims + j]));
    }
}

}  // namespace

std::string Flat::key() const {
    std::string s;
    s.reserve((basis.size() + offset.size()) * 4);
    for (Elt e : basis) append_be(s, e);
    for (Elt e : offset) append_be(s, e);
    return s;
}

std::int64_t contained_count(GeomKind kind, std::int64_t q, int mu2, int mu1) {
    if (mu1 < 0 || mu1 > mu2) throw std::invalid_argument("need 0 <= mu1 <= mu2");
    if (mu1 == mu2) return 1;
    std::vector<int> top, bot;
    if (kind == GeomKind::EG) {
        for (int i = 1; i <= mu1; ++i) {
            top.push_back(mu2 - i + 1);
            bot.push_back(mu1 - i + 1);
        }
        return to_i64(checked_mul(qpow(q, mu2 - mu1), u128(ratio_product(q, top, bot))));
    }
    for (int i = 0; i <= mu1; ++i) {
        top.push_back(mu2 - i + 1);
        bot.push_back(mu1 - i + 1);
    }
    return ratio_product(q, top, bot);
}

std::int64_t containing_count(GeomKind kind, int r, std::int64_t q, int mu2, int mu1) {
    (void)kind;  // identical for EG and PG
    if (mu1 < 0 || mu1 > mu2 || mu2 > r) throw std::invalid_argument("need 0 <= mu1 <= mu2 <= r");
    if (mu1 == mu2) return 1;
    std::vector<int> top, bot;
    for (int i = mu1 + 1; i <= mu2; ++i) {
        top.push_back(r - i + 1);
        bot.push_back(mu2 - i + 1);
    }
    return ratio_product(q, top, bot);
}

std::int64_t flat_count(GeomKind kind, int r, std::int64_t q, int mu) {
    if (mu < 0 || mu > r) throw std::invalid_argument("flat dimension out of range");
    return contained_count(kind, q, r, mu);
}

std::int64_t point_count(GeomKind kind, int r, std::int64_t q) {
    if (kind == GeomKind::EG) return to_i64(qpow(q, r));
    return to_i64((qpow(q, r + 1) - 1) / u128(q - 1));
}

std::vector<int> rref(const Field& f, std::vector<Elt>& mat, int rows, int dims) {
    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < dims && rank < rows; ++col) {
        int sel = -1;
        for (int i = rank; i < rows; ++i)
            if (mat[i * dims + col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != rank)
            for (int j = 0; j < dims; ++j) std::swap(mat[sel * dims + j], mat[rank * dims + j]);
        const Elt pinv = f.inv(mat[rank * dims + col]);
        for (int j = col; j < dims; ++j)
            mat[rank * dims + j] = f.mul(mat[rank * dims + j], pinv);
        for (int i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const Elt c = mat[i * dims + col];
            if (c == 0) continue;
            for (int j = col; j < dims; ++j)
                mat[i * dims + j] = f.sub(mat[i * dims + j], f.mul(c, mat[rank * dims + j]));
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

std::vector<std::vector<Elt>> enumerate_subspaces(const Field& f, int dims, int d) {
    if (d < 0 || d > dims) throw std::invalid_argument("subspace dimension out of range");
    if (d == 0) return {{}};
    const std::int64_t q = f.q();

    std::vector<std::vector<Elt>> out;
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) piv[i] = i;

    for (;;) {
        // free positions of this pivot pattern, row-major
        std::vector<bool> is_piv(dims, false);
        for (int p : piv) is_piv[p] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < d; ++i)
            for (int j = piv[i] + 1; j < dims; ++j)
                if (!is_piv[j]) free_pos.emplace_back(i, j);

        std::int64_t total = 1;
        for (size_t i = 0; i < free_pos.size(); ++i) {
            total *= q;
            if (total > kMaxEnumeratedFlats) throw TooLargeError("subspace enumeration too large");
        }
        if (static_cast<std::int64_t>(out.size()) + total > kMaxEnumeratedFlats)
            throw TooLargeError("subspace enumeration too large");

        for (std::int64_t it = 0; it < total; ++it) {
            std::vector<Elt> basis(d * dims, 0);
            for (int i = 0; i < d; ++i) basis[i * dims + piv[i]] = f.one();
            std::int64_t v = it;
            for (int idx = static_cast<int>(free_pos.size()) - 1; idx >= 0; --idx) {
                basis[free_pos[idx].first * dims + free_pos[idx].second] =
                    static_cast<Elt>(v % q);
                v /= q;
            }
            out.push_back(std::move(basis));
        }

        // next pivot combination
        int i = d - 1;
        while (i >= 0 && piv[i] == dims - d + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }

    std::sort(out.begin(), out.end());
    return out;
}

Geometry::Geometry(GeomKind kind, int r, std::int64_t q) : kind_(kind), r_(r), field_([q] {
          std::int64_t p;
          int m;
          factor_prime_power(q, p, m);
          return Field(p, m);
      }()) {
    if (r < 2) throw std::invalid_argument("geometry dimension must be >= 2");
}

void Geometry::check_mu(int mu) const {
    if (mu < 0 || mu > r_) throw std::invalid_argument("flat dimension out of range");
}

void Geometry::check_same_geometry(const Flat& f) const {
    if (f.kind != kind_ || f.r != r_ || f.q != q())
        throw std::invalid_argument("flat belongs to a different geometry");
}

const std::vector<std::vector<Elt>>& Geometry::points() const {
    if (!points_.empty()) return points_;
    const std::int64_t q = this->q();
    if (kind_ == GeomKind::EG) {
        const std::int64_t n = num_points();
        if (n > kMaxEnumeratedFlats) throw TooLargeError("point enumeration too large");
        points_.reserve(n);
        for (std::int64_t it = 0; it < n; ++it) {
            std::vector<Elt> v(r_);
            std::int64_t w = it;
            for (int i = r_ - 1; i >= 0; --i) {
                v[i] = static_cast<Elt>(w % q);
                w /= q;
            }
            points_.push_back(std::move(v));
        }
    } else {
        points_ = enumerate_subspaces(field_, dims(), 1);
    }
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(points_.size()); ++i)
        point_index_.emplace(vec_key(points_[i]), i);
    return points_;
}

const std::vector<Flat>& Geometry::flats(int mu) const {
    check_mu(mu);
    auto it = flat_cache_.find(mu);
    if (it != flat_cache_.end()) return it->second;

    const std::int64_t expected = num_flats(mu);
    if (expected > kMaxEnumeratedFlats) throw TooLargeError("flat enumeration too large");

    std::vector<Flat> out;
    out.reserve(expected);
    const std::int64_t q = this->q();

    if (kind_ == GeomKind::EG) {
        auto subspaces = enumerate_subspaces(field_, r_, mu);
        const std::int64_t cosets = num_points() / to_i64(qpow(q, mu));
        std::int64_t index = 0;
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(subspaces.size()); ++b) {
            const auto& basis = subspaces[b];
            const auto piv = pivot_cols(basis, mu, r_);
            std::vector<int> non_piv;
            for (int j = 0; j < r_; ++j)
                if (std::find(piv.begin(), piv.end(), j) == piv.end()) non_piv.push_back(j);
            for (std::int64_t itc = 0; itc < cosets; ++itc) {
                Flat f{kind_, r_, q, mu, r_, mu, basis, std::vector<Elt>(r_, 0), index, b};
                std::int64_t v = itc;
                for (int idx = static_cast<int>(non_piv.size()) - 1; idx >= 0; --idx) {
                    f.offset[non_piv[idx]] = static_cast<Elt>(v % q);
                    v /= q;
                }
                out.push_back(std::move(f));
                ++index;
            }
        }
    } else {
        auto subspaces = enumerate_subspaces(field_, dims(), mu + 1);
        std::int64_t index = 0;
        for (auto& basis : subspaces) {
            out.push_back(Flat{kind_, r_, q, mu, dims(), mu + 1, std::move(basis), {}, index, -1});
            ++index;
        }
    }
    return flat_cache_.emplace(mu, std::move(out)).first->second;
}

const std::unordered_map<std::string, std::int64_t>& Geometry::flat_index_map(int mu) const {
    auto it = index_cache_.find(mu);
    if (it != index_cache_.end()) return it->second;
    const auto& fl = flats(mu);
    std::unordered_map<std::string, std::int64_t> map;
    map.reserve(fl.size());
    for (const auto& f : fl) map.emplace(f.key(), f.index);
    return index_cache_.emplace(mu, std::move(map)).first->second;
}

std::int64_t Geometry::flat_index(const Flat& f) const {
    check_same_geometry(f);
    const auto& map = flat_index_map(f.mu);
    auto it = map.find(f.key());
    return it == map.end() ? -1 : it->second;
}

bool Geometry::contains(const Flat& outer, const Flat& inner) const {
    check_same_geometry(outer);
    check_same_geometry(inner);
    if (inner.mu > outer.mu) return false;
    const int dims = this->dims();
    const auto piv = pivot_cols(outer.basis, outer.brows, dims);
    for (int i = 0; i < inner.brows; ++i) {
        std::vector<Elt> row(inner.basis.begin() + i * dims, inner.basis.begin() + (i + 1) * dims);
        if (!reduces_to_zero(field_, std::move(row), outer.basis, piv, dims)) return false;
    }
    if (kind_ == GeomKind::EG) {
        std::vector<Elt> diff(dims);
        for (int j = 0; j < dims; ++j) diff[j] = field_.sub(inner.offset[j], outer.offset[j]);
        if (!reduces_to_zero(field_, std::move(diff), outer.basis, piv, dims)) return false;
    }
    return true;
}

std::vector<std::int64_t> Geometry::flats_within(const Flat& outer, int mu1) const {
    check_same_geometry(outer);
    if (mu1 < 0 || mu1 >= outer.mu) throw std::invalid_argument("need 0 <= mu1 < flat dimension");
    const int dims = this->dims();
    const std::int64_t q = this->q();
    const auto& index_map = flat_index_map(mu1);

    std::vector<std::int64_t> result;
    const int local_dims = outer.brows;
    const int local_rows = kind_ == GeomKind::EG ? mu1 : mu1 + 1;
    auto locals = enumerate_subspaces(field_, local_dims, local_rows);

    auto to_ambient = [&](const std::vector<Elt>& local, int rows) {
        std::vector<Elt> amb(rows * dims, 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < local_dims; ++j) {
                const Elt c = local[i * local_dims + j];
                if (c == 0) continue;
                for (int t = 0; t < dims; ++t)
                    amb[i * dims + t] =
                        field_.add(amb[i * dims + t], field_.mul(c, outer.basis[j * dims + t]));
            }
        return amb;
    };

    for (const auto& local : locals) {
        std::vector<Elt> amb = to_ambient(local, local_rows);
        const auto piv = rref(field_, amb, local_rows, dims);

        if (kind_ == GeomKind::PG) {
            Flat f{kind_, r_, q, mu1, dims, local_rows, std::move(amb), {}, -1, -1};
            result.push_back(index_map.at(f.key()));
            continue;
        }

        // EG: every coset of the local subspace inside the outer flat
        const auto local_piv = pivot_cols(local, local_rows, local_dims);
        std::vector<int> local_free;
        for (int j = 0; j < local_dims; ++j)
            if (std::find(local_piv.begin(), local_piv.end(), j) == local_piv.end())
                local_free.push_back(j);
        std::int64_t cosets = 1;
        for (size_t i = 0; i < local_free.size(); ++i) cosets *= q;

        for (std::int64_t itc = 0; itc < cosets; ++itc) {
            std::vector<Elt> local_off(local_dims, 0);
            std::int64_t v = itc;
            for (int idx = static_cast<int>(local_free.size()) - 1; idx >= 0; --idx) {
                local_off[local_free[idx]] = static_cast<Elt>(v % q);
                v /= q;
            }
            std::vector<Elt> off = outer.offset;
            for (int j = 0; j < local_dims; ++j) {
                const Elt c = local_off[j];
                if (c == 0) continue;
                for (int t = 0; t < dims; ++t)
                    off[t] = field_.add(off[t], field_.mul(c, outer.basis[j * dims + t]));
            }
            canonicalize_offset(field_, off, amb, piv, dims);
            Flat f{kind_, r_, q, mu1, dims, local_rows, amb, std::move(off), -1, -1};
            result.push_back(index_map.at(f.key()));
        }
    }
    return result;
}

std::vector<ParallelBundle> Geometry::parallel_bundles(int mu) const {
    if (kind_ != GeomKind::EG)
        throw std::invalid_argument("parallel bundles require Euclidean geometry");
    check_mu(mu);
    const auto& fl = flats(mu);
    std::vector<ParallelBundle> bundles;
    for (const auto& f : fl) {
        if (f.bundle_id >= static_cast<std::int64_t>(bundles.size()))
            bundles.push_back(ParallelBundle{f.bundle_id, f.basis, {}});
        bundles[f.bundle_id].members.push_back(f.index);
    }
    return bundles;
}

std::vector<std::int64_t> Geometry::flat_points(const Flat& f) const {
    check_same_geometry(f);
    points();  // ensure point_index_ is built
    const int dims = this->dims();
    const std::int64_t q = this->q();
    std::vector<std::int64_t> out;

    if (kind_ == GeomKind::EG) {
        std::int64_t total = 1;
        for (int i = 0; i < f.mu; ++i) total *= q;
        out.reserve(total);
        for (std::int64_t it = 0; it < total; ++it) {
            std::vector<Elt> pt = f.offset;
            std::int64_t v = it;
            for (int i = f.brows - 1; i >= 0; --i) {
                const Elt c = static_cast<Elt>(v % q);
                v /= q;
                if (c == 0) continue;
                for (int t = 0; t < dims; ++t)
                    pt[t] = field_.add(pt[t], field_.mul(c, f.basis[i * dims + t]));
            }
            out.push_back(point_index_.at(vec_key(pt)));
        }
    } else {
        auto locals = enumerate_subspaces(field_, f.brows, 1);
        out.reserve(locals.size());
        for (const auto& local : locals) {
            std::vector<Elt> pt(dims, 0);
            for (int j = 0; j < f.brows; ++j) {
                const Elt c = local[j];
                if (c == 0) continue;
                for (int t = 0; t < dims; ++t)
                    pt[t] = field_.add(pt[t], field_.mul(c, f.basis[j * dims + t]));
            }
            int first = -1;
            for (int t = 0; t < dims; ++t)
                if (pt[t] != 0) {
                    first = t;
                    break;
                }
            const Elt scale = field_.inv(pt[first]);
            for (int t = 0; t < dims; ++t) pt[t] = field_.mul(pt[t], scale);
            out.push_back(point_index_.at(vec_key(pt)));
        }
    }
    return out;
}

}  // namespace fgsense
