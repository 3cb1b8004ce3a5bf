#pragma once

#include <cstdint>

#include "cusp/characters.hpp"
#include "cusp/cyclotomic.hpp"
#include "cusp/pairs.hpp"

namespace cusp {

// Epsilon factor as an exact functional form: s -> C * q^(a(1/2 - s)),
// stored as the integer exponent a and the value C at s = 1/2. Function
// equality is exactly (exponent, constant) equality.
struct EpsilonFactor {
    std::int64_t exponent = 0;
    QHalfExt constant;

    bool operator==(const EpsilonFactor& rhs) const {
        return exponent == rhs.exponent && constant == rhs.constant;
    }
    bool operator!=(const EpsilonFactor& rhs) const { return !(*this == rhs); }
};

inline bool eps_equal(const EpsilonFactor& a, const EpsilonFactor& b) { return a == b; }

// epsilon(pi_(E,theta), 1/2, psi) = theta(alpha)^(-1) psi_{E/F}(alpha)
// for odd-level pairs; exponent l(theta). Refuses level 0 and even levels.
EpsilonFactor eps_simple_cuspidal(const AdmissiblePair& p, const AddChar& psi);

// Same value computed from an explicit representative alpha' = alpha(1+x),
// x in p^(k+1); used to check representative independence.
QHalfExt eps_constant_with_representative(const AdmissiblePair& p, const AddChar& psi,
                                          const LaurentTrunc& alpha_rep);

// tau(chi, psi) = sum over U_F/U_F^(l+1) of chi^(-1)(cu) psi(cu), c = alpha_chi.
CycNum gauss_sum_tate(const MultChar& chi, const AddChar& psi);

// epsilon(chi, s, psi) = q^(l(1/2-s)) * q^(-(l+1)/2) tau(chi, psi), l >= 1.
EpsilonFactor eps_character(const MultChar& chi, const AddChar& psi);

// epsilon(chi o det, s, psi) = epsilon(chi, s, psi)^n.
EpsilonFactor eps_det_twist(const MultChar& chi, std::uint32_t n, const AddChar& psi);

} // namespace cusp
