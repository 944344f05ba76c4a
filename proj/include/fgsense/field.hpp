#pragma once

#include <cstdint>
#include <vector>

namespace fgsense {

/// Field element handle: the rank of the element in the field's canonical
/// enumeration order (lexicographic on coefficient vectors, constant term
/// first, zero first). Always in [0, q).
using Elt = std::uint32_t;

/// Exact arithmetic in GF(p^m), elements represented on a polynomial basis
/// over GF(p) modulo the lexicographically smallest monic irreducible
/// polynomial of degree m (coefficients compared low-degree-first). The
/// construction is deterministic: the same (p, m) always yields the same
/// modulus and the same element order.
class Field {
public:
    // Builds GF(p^m). Requires p prime, 1 <= m <= 16, p^m <= 2^20.
    Field(std::int64_t p, int m);

    std::int64_t p() const { return p_; }
    int m() const { return m_; }
    std::int64_t q() const { return q_; }

    // Monic modulus polynomial, length m+1, constant term first. For m == 1
    // this is x, i.e. plain mod-p arithmetic.
    const std::vector<int>& modulus() const { return modulus_; }

    Elt zero() const { return 0; }
    Elt one() const { return one_; }

    Elt add(Elt a, Elt b) const;
    Elt sub(Elt a, Elt b) const;
    Elt mul(Elt a, Elt b) const;
    Elt neg(Elt a) const;
    // Multiplicative inverse; throws std::domain_error for a == 0.
    Elt inv(Elt a) const;

    // Coefficient vector of an element, length m, constant term first.
    std::vector<int> coeffs(Elt a) const;
    Elt from_coeffs(const std::vector<int>& c) const;

    // All q elements in canonical order. Element i of the result is simply
    // rank i; returned as coefficient vectors for inspection.
    std::vector<std::vector<int>> enumerate() const;

    bool operator==(const Field& other) const {
        return p_ == other.p_ && m_ == other.m_;
    }

private:
    std::int64_t p_;
    int m_;
    std::int64_t q_;
    Elt one_;
    std::vector<int> modulus_;

    // Lookup tables, built when q is small enough (always the case for the
    // geometries this library enumerates). Indexed by element rank.
    bool has_tables_ = false;
    std::vector<Elt> add_table_;
    std::vector<Elt> mul_table_;
    std::vector<Elt> neg_table_;
    std::vector<Elt> inv_table_;

    std::vector<int> decode(Elt a) const;
    Elt encode(const std::vector<int>& c) const;
    Elt add_raw(Elt a, Elt b) const;
    Elt mul_raw(Elt a, Elt b) const;
    Elt neg_raw(Elt a) const;
    Elt inv_raw(Elt a) const;
    void check_range(Elt a) const;
};

/// True iff n is prime (deterministic trial division; n <= 2^20 in practice).
bool is_prime(std::int64_t n);

/// Factors q as p^m with p prime; throws std::invalid_argument if q is not a
/// prime power >= 2.
void factor_prime_power(std::int64_t q, std::int64_t& p, int& m);

}  // namespace fgsense
