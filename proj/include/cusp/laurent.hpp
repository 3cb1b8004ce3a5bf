#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cusp/residue_field.hpp"

namespace cusp {

// Tame totally ramified extension E_r = F((pi eta^r)^(1/n)) of degree n.
// n = 1 is the base field F itself. As a Laurent field E_r = k((u)) with
// the embedding F -> E_r given by t -> eta^(-r) u^n.
struct TameExt {
    std::uint32_t n = 1;
    std::uint32_t r = 0;

    bool is_base() const { return n == 1; }
    bool operator==(const TameExt& rhs) const { return n == rhs.n && r == rhs.r; }
    bool operator!=(const TameExt& rhs) const { return !(*this == rhs); }
};

// Census of totally tamely ramified degree-n extensions: gcd(n, q-1).
std::uint64_t tame_ext_count(const FieldParams& k, std::uint32_t n);

// Validates gcd(n, p) = 1 and 0 <= r < gcd(n, q-1).
TameExt make_extension(const FieldParams& k, std::uint32_t n, std::uint32_t r);

// Truncated Laurent series over the residue field: an element of F or of
// a tame extension E_r, known modulo u^known_until. known_until = EXACT
// means the element is an exact Laurent polynomial (all further
// coefficients are zero). Reading a coefficient at or beyond the known
// precision throws precision_error; nothing is ever silently truncated.
class LaurentTrunc {
public:
    static constexpr std::int64_t EXACT = std::numeric_limits<std::int64_t>::max();

    static LaurentTrunc zero(const FieldParams& k, TameExt ext, std::int64_t known_until = EXACT);
    static LaurentTrunc one(const FieldParams& k, TameExt ext) { return monomial(k, ext, 1, 0); }
    static LaurentTrunc monomial(const FieldParams& k, TameExt ext, ResElem c, std::int64_t e);
    // Coefficients for exponents val, val+1, ...; trailing zeros permitted.
    static LaurentTrunc from_coeffs(const FieldParams& k, TameExt ext, std::int64_t val,
                                    std::vector<ResElem> coeffs, std::int64_t known_until = EXACT);

    const FieldParams& field() const { return k_; }
    TameExt ext() const { return ext_; }
    bool is_zero() const { return !nonzero_; }
    bool is_exact() const { return known_until_ == EXACT; }
    std::int64_t known_until() const { return known_until_; }
    // +infinity sentinel (INT64_MAX) for the zero element.
    std::int64_t valuation() const { return nonzero_ ? val_ : std::numeric_limits<std::int64_t>::max(); }
    // Exclusive end of the stored coefficient window; coefficients at or
    // beyond it are zero if exact, unknown otherwise. Equals valuation()
    // for the zero element.
    std::int64_t window_end() const {
        return nonzero_ ? val_ + static_cast<std::int64_t>(coeffs_.size()) : valuation();
    }
    ResElem leading_coeff() const;
    ResElem coeff_at(std::int64_t e) const;
    bool is_one_unit() const { return nonzero_ && val_ == 0 && coeffs_[0] == 1; }

    LaurentTrunc operator+(const LaurentTrunc& rhs) const;
    LaurentTrunc operator-(const LaurentTrunc& rhs) const;
    LaurentTrunc operator-() const;
    LaurentTrunc operator*(const LaurentTrunc& rhs) const;
    LaurentTrunc scaled(ResElem c) const;       // multiply by a residue constant
    LaurentTrunc shifted(std::int64_t d) const; // multiply by u^d
    // Forgets knowledge from exponent bound upward.
    LaurentTrunc truncated(std::int64_t bound) const;
    // Inverse with the unit part expanded to `digits` coefficients.
    LaurentTrunc inverse(std::uint32_t digits) const;

    // Structural equality (same field, extension, window, precision).
    bool operator==(const LaurentTrunc& rhs) const;
    bool operator!=(const LaurentTrunc& rhs) const { return !(*this == rhs); }

    std::string to_string() const;

private:
    LaurentTrunc(FieldParams k, TameExt ext) : k_(std::move(k)), ext_(ext) {}
    void normalize();

    FieldParams k_;
    TameExt ext_;
    bool nonzero_ = false;
    std::int64_t val_ = 0;
    std::vector<ResElem> coeffs_;
    std::int64_t known_until_ = EXACT;
};

// Image of an element of F in the extension E, via t -> eta^(-r) u^n.
LaurentTrunc embed(const LaurentTrunc& x, TameExt target);

// x = u^v * eta^a * w with w a one-unit, to the available precision.
struct UnitDecomposition {
    std::int64_t v;
    std::uint64_t a; // exponent of eta mod q-1
    LaurentTrunc w;
};
UnitDecomposition decompose_unit(const LaurentTrunc& x);

// Trace and norm from E_r down to F. The trace is coefficientwise
// (tr u^c = 0 unless n | c); the norm is the determinant of the
// multiplication matrix on the basis 1, u, ..., u^(n-1).
LaurentTrunc trace_from(const LaurentTrunc& x);
LaurentTrunc norm_from(const LaurentTrunc& x);

// Relative versions for the subextension K = k((u^g)) of E, g | n,
// with results written as series in u (supported on multiples of g).
LaurentTrunc trace_rel(const LaurentTrunc& x, std::uint32_t g);
LaurentTrunc norm_rel(const LaurentTrunc& x, std::uint32_t g);

// log(w) = sum_{i=1}^{level} (-1)^(i+1) (w-1)^i / i modulo p^(level+1).
// Requires p > level; a homomorphism U^1/U^(level+1) -> p/p^(level+1).
LaurentTrunc trunc_log(const LaurentTrunc& w, std::uint32_t level);
// exp(y) = sum y^i / i! modulo p^(level+1), for y of positive valuation.
LaurentTrunc trunc_exp(const LaurentTrunc& y, std::uint32_t level);

} // namespace cusp
