#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cusp/characters.hpp"
#include "cusp/laurent.hpp"

namespace cusp {

// Admissible pair (E_r/F, theta): the model of a simple cuspidal
// representation of GL(n, F). theta lives on E_r; admissible means
// l(theta) >= 1 with gcd(l(theta), n) = 1 (tame totally ramified case).
struct AdmissiblePair {
    TameExt ext;
    MultChar theta;

    bool operator==(const AdmissiblePair& rhs) const {
        return ext == rhs.ext && theta == rhs.theta;
    }
};

// F-isomorphism of equal-r extensions, u -> zeta u with
// zeta = eta^(zeta_exp (q-1)/e) an n-th root of unity in F.
struct FieldIso {
    TameExt source;
    TameExt target;
    std::uint32_t zeta_exp; // in [0, e)
};

// Applies the isomorphism coefficientwise: coefficient at u^j scales by zeta^j.
LaurentTrunc apply_iso(const FieldIso& iso, const LaurentTrunc& x);

bool is_admissible(const TameExt& ext, const MultChar& theta);

// Independent cross-check: theta is non-admissible iff theta|U^1 is
// trivial on the norm kernel of some proper subextension. Enumerates
// U^1/U^(l+1) outright; for tests, not the production verdict.
bool is_admissible_bruteforce(const TameExt& ext, const MultChar& theta, const AddChar& psi);

// All pairs with r in [0, e), theta(u) in mu_M, theta(eta) arbitrary and
// wild parameter of exact level 2k+1, in deterministic order (r, then pi
// exponent, then teich, then wild index).
std::vector<AdmissiblePair> enumerate_pairs(const FieldParams& k, std::uint32_t n,
                                            std::uint32_t level, std::uint64_t M);

// Some F-isomorphism sigma with theta1 = theta2 o sigma, if one exists.
// Pairs on extensions with different r are never isomorphic.
std::optional<FieldIso> are_isomorphic(const AdmissiblePair& p1, const AdmissiblePair& p2,
                                       const AddChar& psi);

// chi . pi_(E,theta) = pi_(E, chi_E theta).
AdmissiblePair twist_pair(const MultChar& chi, const AdmissiblePair& p);

// Whether the epsilon formula for odd-level pairs applies.
bool in_prop26_scope(const AdmissiblePair& p);

struct PairInvariants {
    mpq_class normalized_level; // l(theta) / n
    MultChar omega;             // central character theta|_{F^x}
};
PairInvariants pair_invariants(const AdmissiblePair& p);

} // namespace cusp
