#pragma once

#include <cstdint>
#include <vector>

#include "cusp/cyclotomic.hpp"
#include "cusp/laurent.hpp"
#include "cusp/residue_field.hpp"

namespace cusp {

// Level-one additive character of F: psi(x) = psi0(x_0) on the t^0
// coefficient, where psi0(z) = zeta_p^Tr(b z) for the twisting unit b.
// psi is trivial on p_F and nontrivial on o_F. The character of an
// extension, psi_{E/F} = psi o tr_{E/F}, is derived rather than stored.
struct AddChar {
    FieldParams k;
    ResElem b = 1;
};

// psi(x) for x in the base field; fails loudly if the t^0 coefficient of
// x is outside the known precision.
RootOfUnity add_char_eval(const AddChar& psi, const LaurentTrunc& x);
// psi_{E/F}(x) = psi(tr(x)) for x in any tame extension (identity on F).
RootOfUnity add_char_tower_eval(const AddChar& psi, const LaurentTrunc& x);

// Finite-level multiplicative character of F^x or E^x:
//   chi(u^v eta^a w) = pi_value^v * zeta_{q-1}^(teich_exp a) * psi(tr(alpha log w))
// with the wild part held by the single parameter alpha in p^(-l)/o
// (canonical representative supported on exponents [-l, 0)).
struct MultChar {
    FieldParams k;
    TameExt ext;
    std::uint32_t level = 0;
    RootOfUnity pi_value;
    std::uint64_t teich_exp = 0;
    LaurentTrunc alpha;

    bool operator==(const MultChar& rhs) const {
        return ext == rhs.ext && level == rhs.level && pi_value == rhs.pi_value &&
               teich_exp == rhs.teich_exp && alpha == rhs.alpha;
    }
    bool operator!=(const MultChar& rhs) const { return !(*this == rhs); }
};

// Validates the stored data: alpha exact and supported on [-level, 0)
// with exact level (leading exponent -level), and p > level.
MultChar make_mult_char(const FieldParams& k, TameExt ext, RootOfUnity pi_value,
                        std::uint64_t teich_exp, const LaurentTrunc& alpha);
MultChar trivial_char(const FieldParams& k, TameExt ext);
// Tame character with chi(eta) = zeta_{q-1}^teich_exp and chi(uniformizer) = pi.
MultChar tame_char(const FieldParams& k, TameExt ext, RootOfUnity pi_value, std::uint64_t teich_exp);

RootOfUnity mult_char_eval(const MultChar& chi, const LaurentTrunc& x, const AddChar& psi);

// Pointwise product; the level is recomputed from the summed wild parameters.
MultChar mult_char_mul(const MultChar& a, const MultChar& b);
MultChar mult_char_inverse(const MultChar& a);

// chi_E = chi o N_{E/F}: level n*l(chi), wild parameter embedded, value at
// the uniformizer chi(N(u)). Requires p > n*l(chi) when l(chi) >= 1.
MultChar base_change(const MultChar& chi, TameExt ext);

// theta|_{F^x}: the central character of the pair (E, theta). The wild
// parameter restricts to tr_{E/F}(alpha).
MultChar restrict_to_base(const MultChar& theta);

// All characters of exact level `level` on the given field with
// pi_value in mu_M, in deterministic order: pi exponent, then teich
// exponent, then wild digits (leading digit as an eta power).
std::vector<MultChar> enumerate_mult_chars(const FieldParams& k, TameExt ext,
                                           std::uint32_t level, std::uint64_t M);

} // namespace cusp
