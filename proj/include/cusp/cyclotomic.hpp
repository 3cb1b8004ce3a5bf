#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace cusp {

// Exact element of the cyclotomic field Q(zeta_N), stored in the power
// basis 1, zeta, ..., zeta^(phi(N)-1) after reduction modulo the N-th
// cyclotomic polynomial. The representation is canonical: two elements
// of equal order are equal iff their coefficient vectors are equal.
class CycNum {
public:
    CycNum() : order_(1), coeffs_(1, mpq_class(0)) {}
    explicit CycNum(const mpq_class& rational);
    explicit CycNum(long integer) : CycNum(mpq_class(integer)) {}

    // zeta_N^k, reduced to canonical form.
    static CycNum root_of_unity(std::uint64_t order, std::int64_t exp);

    std::uint64_t order() const { return order_; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;
    // Requires is_rational(); returns the constant coefficient.
    mpq_class rational_value() const;

    CycNum operator+(const CycNum& rhs) const;
    CycNum operator-(const CycNum& rhs) const;
    CycNum operator-() const;
    CycNum operator*(const CycNum& rhs) const;
    CycNum& operator+=(const CycNum& rhs) { return *this = *this + rhs; }
    CycNum& operator*=(const CycNum& rhs) { return *this = *this * rhs; }

    // Integer power; k < 0 requires the element to be invertible.
    CycNum pow(std::int64_t k) const;
    CycNum inverse() const;
    // Complex conjugation, zeta_N -> zeta_N^(-1). A ring automorphism.
    CycNum conj() const;

    // Re-embeds into Q(zeta_new_order); new_order must be a multiple of order().
    CycNum embed(std::uint64_t new_order) const;

    // Equality embeds both sides into the lcm order first.
    bool operator==(const CycNum& rhs) const;
    bool operator!=(const CycNum& rhs) const { return !(*this == rhs); }

private:
    CycNum(std::uint64_t order, std::vector<mpq_class> coeffs)
        : order_(order), coeffs_(std::move(coeffs)) {}

    // Applies the Galois map zeta -> zeta^k; requires gcd(k, N) = 1.
    CycNum galois(std::uint64_t k) const;

    std::uint64_t order_;
    std::vector<mpq_class> coeffs_; // length phi(order_)

    friend CycNum cyc_from_exponent_counts(std::uint64_t order,
                                           const std::vector<mpz_class>& counts);
};

// Fast path for values in mu_N: zeta_order^exp with exp stored mod order.
// Not reduced to minimal order; equality compares the underlying root.
struct RootOfUnity {
    std::uint64_t order = 1;
    std::uint64_t exp = 0;

    RootOfUnity() = default;
    RootOfUnity(std::uint64_t order_, std::int64_t exp_);

    static RootOfUnity one() { return RootOfUnity(1, 0); }

    RootOfUnity operator*(const RootOfUnity& rhs) const;
    RootOfUnity inverse() const { return RootOfUnity(order, -static_cast<std::int64_t>(exp)); }
    RootOfUnity pow(std::int64_t k) const;

    bool is_one() const { return exp == 0; }
    bool operator==(const RootOfUnity& rhs) const;
    bool operator!=(const RootOfUnity& rhs) const { return !(*this == rhs); }

    CycNum to_cyc() const { return CycNum::root_of_unity(order, static_cast<std::int64_t>(exp)); }
    // Exponent rescaled to a given multiple of order.
    std::uint64_t exp_in_order(std::uint64_t ambient_order) const;
};

// Element base + half*sqrt(q) of the ring Q(zeta_N)[X]/(X^2 - q).
// The square root of q is a formal symbol, never identified with a
// cyclotomic expression; equality is componentwise.
class QHalfExt {
public:
    QHalfExt() : q_(0) {}
    QHalfExt(std::uint64_t q, CycNum base, CycNum half = CycNum())
        : q_(q), base_(std::move(base)), half_(std::move(half)) {}

    static QHalfExt from_cyc(std::uint64_t q, const CycNum& c) { return QHalfExt(q, c); }
    static QHalfExt from_root(std::uint64_t q, const RootOfUnity& r) { return QHalfExt(q, r.to_cyc()); }
    // q^(half_exponent/2); half_exponent may be negative or odd.
    static QHalfExt q_power(std::uint64_t q, std::int64_t half_exponent);

    std::uint64_t q() const { return q_; }
    const CycNum& base() const { return base_; }
    const CycNum& half() const { return half_; }
    bool is_zero() const { return base_.is_zero() && half_.is_zero(); }

    QHalfExt operator+(const QHalfExt& rhs) const;
    QHalfExt operator-(const QHalfExt& rhs) const;
    QHalfExt operator*(const QHalfExt& rhs) const;
    QHalfExt& operator*=(const QHalfExt& rhs) { return *this = *this * rhs; }
    QHalfExt pow(std::uint64_t k) const;
    QHalfExt conj() const { return QHalfExt(q_, base_.conj(), half_.conj()); }

    bool operator==(const QHalfExt& rhs) const;
    bool operator!=(const QHalfExt& rhs) const { return !(*this == rhs); }

private:
    std::uint64_t q_;
    CycNum base_;
    CycNum half_;
};

// Sum over k of counts[k] * zeta_order^k, assembled in one reduction.
// This is the merge step for partitioned exact character sums.
CycNum cyc_from_exponent_counts(std::uint64_t order, const std::vector<mpz_class>& counts);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

// N-th cyclotomic polynomial by the Moebius product method; cached.
// Returned vector holds coefficients from degree 0 upward, monic.
const std::vector<mpz_class>& cyclotomic_polynomial(std::uint64_t n);

} // namespace cusp
