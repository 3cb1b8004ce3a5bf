#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cusp/epsilon.hpp"
#include "cusp/hereditary.hpp"
#include "cusp/pairs.hpp"
#include "cusp/serialize.hpp"

namespace cusp {

// The twist data that determines a level-1 pair up to isomorphism: the
// epsilon exponent, the central character on (pi, eta), and the epsilon
// constants of all tame twists chi_j (teich exponent j).
struct Fingerprint {
    std::int64_t exponent = 0;
    RootOfUnity omega_pi;
    std::uint64_t omega_teich = 0;
    std::vector<QHalfExt> tame_eps; // length q-1

    bool operator==(const Fingerprint& rhs) const {
        return exponent == rhs.exponent && omega_pi == rhs.omega_pi &&
               omega_teich == rhs.omega_teich && tame_eps == rhs.tame_eps;
    }
    bool operator!=(const Fingerprint& rhs) const { return !(*this == rhs); }
};

Fingerprint fingerprint(const AdmissiblePair& p, const AddChar& psi);
json to_json(const Fingerprint& f);

struct VerifyReport {
    std::string check;
    std::string verdict; // PASS | FAIL | SKIPPED
    json parameters;
    std::size_t pair_count = 0;
    std::uint64_t comparisons = 0;
    json violations = json::array();
    json details;
    double elapsed_ms = 0;

    int exit_code() const { return verdict == "FAIL" ? 1 : 0; }
    json to_json() const;
};

// Exhaustive converse check at k = 0: fingerprint equality iff pair
// isomorphism over every enumerated pair of pairs. `corrupt_index`
// deliberately flips one tame epsilon entry of that fingerprint (negative
// control; must produce violations).
VerifyReport converse_check(const FieldParams& k, std::uint32_t n, std::uint64_t M,
                            const AddChar& psi, unsigned threads = 0,
                            std::optional<std::size_t> corrupt_index = std::nullopt);

// Cross-field separation at level 2k+1: every sampled pair of pairs living
// on different extensions is separated by some tame twist, and the
// separation pattern matches the arithmetic witness. samples = 0 runs
// exhaustively. Reports SKIPPED when e = gcd(n, q-1) = 1.
VerifyReport field_separation_check(const FieldParams& k, std::uint32_t n, std::uint32_t kk,
                                    std::uint64_t samples, std::uint64_t seed, const AddChar& psi,
                                    std::uint64_t M = 1, unsigned threads = 0);

struct StabilityRecord {
    bool equal = false;
    EpsilonFactor lhs;             // epsilon of the twisted pair
    EpsilonFactor rhs;             // omega(c)^(-1) epsilon(chi, s, psi)^n
    EpsilonFactor rhs_order_e1;    // same via the e = 1 hereditary order
    EpsilonFactor rhs_order_en;    // same via the e = n hereditary order
    json to_json() const;
};

// Lemma "epsilon(chi pi) = omega(c)^(-1) epsilon(chi o det)" for one pair
// and one character with l(chi) > 2 l(pi) and n l(chi) odd.
StabilityRecord stability_check(const AdmissiblePair& p, const MultChar& chi, const AddChar& psi,
                                const mpz_class& budget);

// All level-1 pairs against all tame-wild characters of the given level.
VerifyReport stability_sweep(const FieldParams& k, std::uint32_t n, std::uint64_t M,
                             std::uint32_t chi_level, const AddChar& psi, const mpz_class& budget,
                             unsigned threads = 0);

} // namespace cusp
