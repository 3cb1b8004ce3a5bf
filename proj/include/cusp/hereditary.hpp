#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "cusp/characters.hpp"
#include "cusp/cyclotomic.hpp"
#include "cusp/epsilon.hpp"
#include "cusp/laurent.hpp"

namespace cusp {

// Principal hereditary order A in M_n(F) of ramification index e | n,
// block size n/e, with Jacobson radical P. (A : P^m) = q^((n^2/e) m).
struct HereditaryOrder {
    std::uint32_t n = 1;
    std::uint32_t e = 1;

    std::uint32_t block() const { return n / e; }
    // Valuation floor of the scalar entry (i, j) in P^m.
    std::int64_t floor_at(std::uint32_t i, std::uint32_t j, std::int64_t m) const;
};

HereditaryOrder make_order(std::uint32_t n, std::uint32_t e);
mpz_class order_index(const HereditaryOrder& ord, std::uint64_t q, std::uint64_t m);

// Matrix over F with the block-pattern valuation floors of A.
struct TruncMatrix {
    FieldParams k;
    HereditaryOrder ord;
    std::vector<LaurentTrunc> entries; // row-major n x n

    static TruncMatrix identity(const FieldParams& k, const HereditaryOrder& ord);
    const LaurentTrunc& at(std::uint32_t i, std::uint32_t j) const { return entries[i * ord.n + j]; }
    LaurentTrunc& at(std::uint32_t i, std::uint32_t j) { return entries[i * ord.n + j]; }
    TruncMatrix scaled(const LaurentTrunc& c) const;
    LaurentTrunc det() const;
    LaurentTrunc trace() const;
    // Invertibility of the residue: every diagonal block invertible mod p.
    bool residue_invertible() const;
};

// tau_A(chi, psi) = sum over U_A/U_A^(el+1) of chi^(-1)(det(c y)) psi_A(c y),
// c = alpha_chi. The number of enumerated residues q^((n^2/e)(el+1)) must
// stay within `budget` or the call refuses with the size estimate.
//
// The reference implementation is the plain serial sum over TruncMatrix
// values; matrix_gauss_full runs the OpenMP kernel (threads = 0 picks the
// available parallelism). Both produce identical exact results.
CycNum matrix_gauss_full_reference(const HereditaryOrder& ord, const MultChar& chi,
                                   const AddChar& psi, const mpz_class& budget);
CycNum matrix_gauss_full(const HereditaryOrder& ord, const MultChar& chi, const AddChar& psi,
                         const mpz_class& budget, unsigned threads = 0);
// One enumeration sweep evaluating several characters of the same level.
std::vector<CycNum> matrix_gauss_full_batch(const HereditaryOrder& ord,
                                            const std::vector<MultChar>& chis, const AddChar& psi,
                                            const mpz_class& budget, unsigned threads = 0);

// The collapsed form (A : P^[(el+1)/2]) * sum over U^[(el+1)/2]/U^([el/2]+1);
// equal to matrix_gauss_full, with a far smaller enumeration.
CycNum matrix_gauss_reduced(const HereditaryOrder& ord, const MultChar& chi, const AddChar& psi);

// epsilon(chi o det, s, psi) computed through the matrix Gauss sum:
// exponent n l, constant (A : P^(el+1))^(-1/2) tau_A(chi, psi).
EpsilonFactor eps_det_twist_via_order(const HereditaryOrder& ord, const MultChar& chi,
                                      const AddChar& psi, const CycNum& tau_matrix);

struct GaussCheck {
    MultChar chi;
    CycNum tau_matrix;
    CycNum tau_reduced;
    CycNum tau_tate;
    bool reduced_matches = false; // tau_reduced == tau_matrix
    bool identity_holds = false;  // index^(-1/2) tau_A == q^(-n(l+1)/2) tau^n
    bool lemma41_holds = false;   // matrix-route epsilon == eps_det_twist
    bool pass() const { return reduced_matches && identity_holds && lemma41_holds; }
};

struct GaussReport {
    std::uint32_t n = 0, e = 0, level = 0;
    std::uint64_t q = 0;
    mpz_class enumerated;         // residues per character
    bool easy_identity_holds = false; // sum_{a,b} psi(u a b) = q, all units u
    std::vector<GaussCheck> checks;
    double elapsed_ms = 0;
    bool pass() const;
};

// Runs the full identity battery for every tame-wild character of exact
// level `level` (trivial unramified part).
GaussReport verify_gauss_identity(const FieldParams& k, std::uint32_t n, std::uint32_t e,
                                  std::uint32_t level, const AddChar& psi, const mpz_class& budget,
                                  unsigned threads = 0);

} // namespace cusp
