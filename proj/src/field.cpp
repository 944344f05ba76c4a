#include "fgsense/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fgsense {

namespace {

constexpr std::int64_t kMaxOrder = std::int64_t(1) << 20;
constexpr std::int64_t kTableLimit = 512;  // build q*q tables below this

// Polynomials over GF(p) as coefficient vectors, constant term first, no
// trailing-zero guarantees. Only what the modulus search and the generic
// (table-free) arithmetic need.

int poly_degree(const std::vector<int>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

// a mod b, b monic of degree db >= 0.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, std::int64_t p) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db && da >= 0; da = poly_degree(a)) {
        const std::int64_t c = a[da];
        if (c == 0) continue;
        for (int i = 0; i <= db; ++i) {
            std::int64_t v = a[da - db + i] - c * b[i];
            v %= p;
            if (v < 0) v += p;
            a[da - db + i] = static_cast<int>(v);
        }
    }
    return a;
}

bool poly_is_zero(const std::vector<int>& a) { return poly_degree(a) < 0; }

// Trial division by every monic polynomial of degree 1..deg(f)/2.
bool is_irreducible(const std::vector<int>& f, std::int64_t p) {
    const int m = poly_degree(f);
    if (m <= 0) return false;
    if (m == 1) return true;
    for (int d = 1; d <= m / 2; ++d) {
        // iterate all monic divisors of degree d: coefficients c0..c_{d-1}
        std::vector<int> div(d + 1, 0);
        div[d] = 1;
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t it = 0; it < count; ++it) {
            std::int64_t v = it;
            for (int i = 0; i < d; ++i) {
                div[i] = static_cast<int>(v % p);
                v /= p;
            }
            if (poly_is_zero(poly_mod(f, div, p))) return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void factor_prime_power(std::int64_t q, std::int64_t& p, int& m) {
    if (q < 2) throw std::invalid_argument("field order must be >= 2");
    for (std::int64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            m = 0;
            std::int64_t v = q;
            while (v % d == 0) {
                v /= d;
                ++m;
            }
            if (v != 1)
                throw std::invalid_argument(std::to_string(q) + " is not a prime power");
            return;
        }
    }
    p = q;  // q itself prime
    m = 1;
}

Field::Field(std::int64_t p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m < 1 || m > 16) throw std::invalid_argument("extension degree must be in [1, 16]");
    q_ = 1;
    for (int i = 0; i < m; ++i) {
        q_ *= p;
        if (q_ > kMaxOrder) throw std::invalid_argument("field order exceeds 2^20");
    }

    // Lexicographically smallest monic irreducible of degree m, scanning
    // candidates in the canonical order (constant coefficient varies slowest).
    modulus_.assign(m + 1, 0);
    modulus_[m] = 1;
    bool found = false;
    for (std::int64_t rank = 0; rank < q_ && !found; ++rank) {
        // same digit layout as element ranks: constant term most significant
        std::int64_t v = rank;
        for (int i = m - 1; i >= 0; --i) {
            modulus_[i] = static_cast<int>(v % p);
            v /= p;
        }
        found = is_irreducible(modulus_, p);
    }
    if (!found) throw std::runtime_error("no irreducible modulus found");

    std::vector<int> one_c(m, 0);
    one_c[0] = 1;
    one_ = encode(one_c);

    if (q_ <= kTableLimit) {
        has_tables_ = true;
        add_table_.resize(q_ * q_);
        mul_table_.resize(q_ * q_);
        neg_table_.resize(q_);
        inv_table_.assign(q_, 0);
        for (Elt a = 0; a < q_; ++a) {
            neg_table_[a] = neg_raw(a);
            for (Elt b = 0; b < q_; ++b) {
                add_table_[a * q_ + b] = add_raw(a, b);
                mul_table_[a * q_ + b] = mul_raw(a, b);
            }
        }
        for (Elt a = 1; a < q_; ++a) inv_table_[a] = inv_raw(a);
    }
}

void Field::check_range(Elt a) const {
    if (a >= static_cast<Elt>(q_)) throw std::invalid_argument("element rank out of range");
}

std::vector<int> Field::decode(Elt a) const {
    // rank = sum c_i * p^(m-1-i): constant term is the most significant digit
    std::vector<int> c(m_);
    std::int64_t v = a;
    for (int i = m_ - 1; i >= 0; --i) {
        c[i] = static_cast<int>(v % p_);
        v /= p_;
    }
    return c;
}

Elt Field::encode(const std::vector<int>& c) const {
    std::int64_t v = 0;
    for (int i = 0; i < m_; ++i) v = v * p_ + c[i];
    return static_cast<Elt>(v);
}

std::vector<int> Field::coeffs(Elt a) const {
    check_range(a);
    return decode(a);
}

Elt Field::from_coeffs(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) != m_)
        throw std::invalid_argument("coefficient vector has wrong length");
    for (int v : c)
        if (v < 0 || v >= p_) throw std::invalid_argument("coefficient out of range");
    return encode(c);
}

Elt Field::add_raw(Elt a, Elt b) const {
    auto ca = decode(a), cb = decode(b);
    for (int i = 0; i < m_; ++i) ca[i] = static_cast<int>((ca[i] + cb[i]) % p_);
    return encode(ca);
}

Elt Field::neg_raw(Elt a) const {
    auto c = decode(a);
    for (int i = 0; i < m_; ++i) c[i] = static_cast<int>((p_ - c[i]) % p_);
    return encode(c);
}

Elt Field::mul_raw(Elt a, Elt b) const {
    auto ca = decode(a), cb = decode(b);
    std::vector<int> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
        if (ca[i] == 0) continue;
        for (int j = 0; j < m_; ++j)
            prod[i + j] = static_cast<int>((prod[i + j] + std::int64_t(ca[i]) * cb[j]) % p_);
    }
    auto rem = poly_mod(std::move(prod), modulus_, p_);
    rem.resize(m_, 0);
    return encode(rem);
}

Elt Field::inv_raw(Elt a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // extended Euclid in GF(p)[x] between modulus and a
    auto mod_inv = [this](std::int64_t v) {
        // inverse mod p by Fermat (p prime, v != 0)
        std::int64_t r = 1, base = ((v % p_) + p_) % p_, e = p_ - 2;
        while (e > 0) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return r;
    };
    std::vector<int> r0 = modulus_, r1 = decode(a);
    std::vector<int> t0(1, 0), t1(1, 1);
    while (!poly_is_zero(r1)) {
        const int d1 = poly_degree(r1);
        const std::int64_t lead_inv = mod_inv(r1[d1]);
        // quotient of r0 by r1, updating (r0, t0) in place
        std::vector<int> quo(std::max(poly_degree(r0) - d1 + 1, 1), 0);
        std::vector<int> r = r0;
        for (int d = poly_degree(r); d >= d1 && d >= 0; d = poly_degree(r)) {
            const std::int64_t c = r[d] * lead_inv % p_;
            quo[d - d1] = static_cast<int>(c);
            for (int i = 0; i <= d1; ++i) {
                std::int64_t v = r[d - d1 + i] - c * r1[i];
                v %= p_;
                if (v < 0) v += p_;
                r[d - d1 + i] = static_cast<int>(v);
            }
        }
        // t = t0 - quo * t1
        std::vector<int> t(std::max(t0.size(), quo.size() + t1.size()), 0);
        for (size_t i = 0; i < t0.size(); ++i) t[i] = t0[i];
        for (size_t i = 0; i < quo.size(); ++i) {
            if (quo[i] == 0) continue;
            for (size_t j = 0; j < t1.size(); ++j) {
                std::int64_t v = t[i + j] - std::int64_t(quo[i]) * t1[j];
                v %= p_;
                if (v < 0) v += p_;
                t[i + j] = static_cast<int>(v);
            }
        }
        r0 = std::move(r1);
        t0 = std::move(t1);
        r1 = std::move(r);
        t1 = std::move(t);
    }
    // r0 = gcd (a nonzero constant since modulus is irreducible)
    const std::int64_t g_inv = mod_inv(r0[0]);
    std::vector<int> res(m_, 0);
    for (size_t i = 0; i < t0.size() && i < static_cast<size_t>(m_); ++i)
        res[i] = static_cast<int>(t0[i] * g_inv % p_);
    return encode(res);
}

Elt Field::add(Elt a, Elt b) const {
    check_range(a);
    check_range(b);
    if (has_tables_) return add_table_[std::int64_t(a) * q_ + b];
    return add_raw(a, b);
}

Elt Field::sub(Elt a, Elt b) const { return add(a, neg(b)); }

Elt Field::mul(Elt a, Elt b) const {
    check_range(a);
    check_range(b);
    if (has_tables_) return mul_table_[std::int64_t(a) * q_ + b];
    return mul_raw(a, b);
}

Elt Field::neg(Elt a) const {
    check_range(a);
    if (has_tables_) return neg_table_[a];
    return neg_raw(a);
}

Elt Field::inv(Elt a) const {
    check_range(a);
    if (a == 0) throw std::domain_error("inverse of zero");
    if (has_tables_) return inv_table_[a];
    return inv_raw(a);
}

std::vector<std::vector<int>> Field::enumerate() const {
    std::vector<std::vector<int>> out;
    out.reserve(q_);
    for (Elt a = 0; a < q_; ++a) out.push_back(decode(a));
    return out;
}

}  // namespace fgsense
