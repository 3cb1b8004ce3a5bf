#include "cusp/pairs.hpp"

#include <numeric>
#include <stdexcept>

namespace cusp {

LaurentTrunc apply_iso(const FieldIso& iso, const LaurentTrunc& x) {
    if (x.ext() != iso.source) throw std::invalid_argument("element not on the source field");
    const FieldParams& k = x.field();
    std::uint64_t e = tame_ext_count(k, iso.source.n);
    std::int64_t zeta_dlog = static_cast<std::int64_t>(iso.zeta_exp) *
                             static_cast<std::int64_t>((k.q() - 1) / e);
    if (x.is_zero()) return LaurentTrunc::zero(k, iso.target, x.known_until());
    std::int64_t v = x.valuation();
    std::vector<ResElem> coeffs;
    coeffs.reserve(static_cast<std::size_t>(x.window_end() - v));
    for (std::int64_t ee = v; ee < x.window_end(); ++ee)
        coeffs.push_back(k.mul(x.coeff_at(ee), k.eta_pow(zeta_dlog * ee)));
    return LaurentTrunc::from_coeffs(k, iso.target, v, std::move(coeffs), x.known_until());
}

bool is_admissible(const TameExt& ext, const MultChar& theta) {
    return theta.level >= 1 && std::gcd<std::uint64_t>(theta.level, ext.n) == 1;
}

bool is_admissible_bruteforce(const TameExt& ext, const MultChar& theta, const AddChar& psi) {
    if (theta.level == 0) return false;
    const FieldParams& k = theta.k;
    std::uint32_t l = theta.level;
    std::uint64_t q = k.q();

    // Enumerate one-units modulo U^(l+1).
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < l; ++i) count *= q;

    for (std::uint32_t g = 2; g <= ext.n; ++g) {
        if (ext.n % g != 0 || !is_prime_u64(g)) continue;
        std::uint64_t lam = l / g; // level of a would-be factoring character
        bool theta_trivial_on_kernel = true;
        for (std::uint64_t code = 0; code < count && theta_trivial_on_kernel; ++code) {
            std::vector<ResElem> digits(l + 1, 0);
            digits[0] = 1;
            std::uint64_t c = code;
            for (std::uint32_t i = 1; i <= l; ++i) {
                digits[i] = static_cast<ResElem>(c % q);
                c /= q;
            }
            LaurentTrunc w = LaurentTrunc::from_coeffs(k, ext, 0, std::move(digits),
                                                       static_cast<std::int64_t>(l) + 1);
            LaurentTrunc nw = norm_rel(w, g) - LaurentTrunc::one(k, ext);
            bool in_kernel = nw.is_zero() ||
                             nw.valuation() >= static_cast<std::int64_t>(g) * (static_cast<std::int64_t>(lam) + 1);
            if (in_kernel && !mult_char_eval(theta, w, psi).is_one())
                theta_trivial_on_kernel = false;
        }
        if (theta_trivial_on_kernel) return false; // theta|U^1 factors through N_{E/K}
    }
    return true;
}

std::vector<AdmissiblePair> enumerate_pairs(const FieldParams& k, std::uint32_t n,
                                            std::uint32_t level, std::uint64_t M) {
    if (std::gcd<std::uint64_t>(n, k.p()) != 1) throw std::invalid_argument("wild degree unsupported");
    if (level % 2 == 0 || level == 0) throw std::invalid_argument("pair level must be odd");
    if (std::gcd<std::uint64_t>(level, n) != 1) throw std::invalid_argument("level not coprime to the degree");
    if (k.p() <= level) throw std::invalid_argument("level exceeds wild-exponent bound");
    std::uint64_t e = tame_ext_count(k, n);
    std::vector<AdmissiblePair> out;
    for (std::uint32_t r = 0; r < e; ++r) {
        TameExt ext = make_extension(k, n, r);
        for (auto& theta : enumerate_mult_chars(k, ext, level, M))
            out.push_back(AdmissiblePair{ext, std::move(theta)});
    }
    return out;
}

namespace {

// theta1 == theta2 o sigma, tested on the generators u, eta and the
// one-units 1 + c u^i, 1 <= i <= l.
bool chars_equal_via_iso(const MultChar& t1, const MultChar& t2, const FieldIso& iso,
                         const AddChar& psi) {
    const FieldParams& k = t1.k;
    TameExt ext = t1.ext;
    auto matches = [&](const LaurentTrunc& x) {
        return mult_char_eval(t1, x, psi) == mult_char_eval(t2, apply_iso(iso, x), psi);
    };
    if (!matches(LaurentTrunc::monomial(k, ext, 1, 1))) return false;       // u
    if (!matches(LaurentTrunc::monomial(k, ext, k.eta(), 0))) return false; // eta
    for (std::uint32_t i = 1; i <= t1.level; ++i) {
        for (std::uint64_t c = 1; c < k.q(); ++c) {
            std::vector<ResElem> digits(i + 1, 0);
            digits[0] = 1;
            digits[i] = static_cast<ResElem>(c);
            if (!matches(LaurentTrunc::from_coeffs(k, ext, 0, std::move(digits)))) return false;
        }
    }
    return true;
}

} // namespace

std::optional<FieldIso> are_isomorphic(const AdmissiblePair& p1, const AdmissiblePair& p2,
                                       const AddChar& psi) {
    if (!(p1.theta.k == p2.theta.k) || p1.ext.n != p2.ext.n || p1.theta.level != p2.theta.level)
        throw std::invalid_argument("pairs not comparable: mismatched q, n or level");
    if (p1.ext.r != p2.ext.r) return std::nullopt; // distinct fields are never F-isomorphic
    std::uint64_t e = tame_ext_count(p1.theta.k, p1.ext.n);
    for (std::uint32_t z = 0; z < e; ++z) {
        FieldIso iso{p1.ext, p2.ext, z};
        if (chars_equal_via_iso(p1.theta, p2.theta, iso, psi)) return iso;
    }
    return std::nullopt;
}

AdmissiblePair twist_pair(const MultChar& chi, const AdmissiblePair& p) {
    if (!chi.ext.is_base()) throw std::invalid_argument("twisting character must live on F");
    MultChar chi_e = base_change(chi, p.ext);
    return AdmissiblePair{p.ext, mult_char_mul(chi_e, p.theta)};
}

bool in_prop26_scope(const AdmissiblePair& p) {
    return p.theta.level >= 1 && p.theta.level % 2 == 1;
}

PairInvariants pair_invariants(const AdmissiblePair& p) {
    mpq_class level(p.theta.level, p.ext.n);
    level.canonicalize();
    return PairInvariants{level, restrict_to_base(p.theta)};
}

} // namespace cusp
