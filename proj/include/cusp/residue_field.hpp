#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace cusp {

// Element of the residue field k = F_q, q = p^f, encoded as
// sum c_i p^i for the polynomial class sum c_i x^i mod res_modulus.
using ResElem = std::uint32_t;

// Parameters of the base local field F = k((t)): the residue field k
// with its defining polynomial and the fixed multiplicative generator
// eta of k^x (Teichmueller lift of a primitive root). Arithmetic tables
// are built once and shared read-only afterwards.
class FieldParams {
public:
    // Deterministic convention: for f = 1, eta is the smallest primitive
    // root mod p and res_modulus = x - eta; for f >= 2, res_modulus is the
    // first (by coefficient code) monic primitive polynomial of degree f
    // and eta is the class of x.
    static FieldParams make(std::uint64_t p, std::uint32_t f = 1);

    std::uint64_t p() const { return p_; }
    std::uint32_t f() const { return f_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& res_modulus() const { return modulus_; }
    ResElem eta() const { return eta_; }

    ResElem zero() const { return 0; }
    ResElem one() const { return 1; }
    ResElem add(ResElem a, ResElem b) const { return tables_->add[a * q_ + b]; }
    ResElem sub(ResElem a, ResElem b) const { return add(a, neg(b)); }
    ResElem mul(ResElem a, ResElem b) const { return tables_->mul[a * q_ + b]; }
    ResElem neg(ResElem a) const { return tables_->neg[a]; }
    ResElem inv(ResElem a) const;
    ResElem from_int(std::int64_t n) const; // image of the rational integer n
    // Discrete log base eta; input must be nonzero.
    std::uint64_t dlog(ResElem a) const;
    ResElem eta_pow(std::int64_t k) const;
    // Absolute trace k -> F_p, returned as an integer in [0, p).
    std::uint64_t trace_to_prime(ResElem a) const { return tables_->trace[a]; }

    bool operator==(const FieldParams& rhs) const {
        return p_ == rhs.p_ && f_ == rhs.f_ && modulus_ == rhs.modulus_;
    }

private:
    struct Tables {
        std::vector<ResElem> add, mul, neg;
        std::vector<ResElem> inv;          // inv[0] unused
        std::vector<std::uint64_t> dlog;   // dlog[0] unused
        std::vector<ResElem> eta_pow;      // length q-1
        std::vector<std::uint64_t> trace;
    };

    FieldParams(std::uint64_t p, std::uint32_t f, std::vector<std::uint32_t> modulus, ResElem eta);

    std::uint64_t p_;
    std::uint32_t f_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_; // monic, length f+1, coeffs in [0, p)
    ResElem eta_;
    std::shared_ptr<const Tables> tables_;
};

bool is_prime_u64(std::uint64_t n);

} // namespace cusp
