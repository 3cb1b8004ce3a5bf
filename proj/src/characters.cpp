#include "cusp/characters.hpp"

#include <numeric>
#include <stdexcept>

#include "cusp/errors.hpp"

namespace cusp {

RootOfUnity add_char_eval(const AddChar& psi, const LaurentTrunc& x) {
    if (!x.ext().is_base()) throw std::invalid_argument("add_char_eval expects a base-field element");
    ResElem z = x.coeff_at(0); // throws precision_error on a gap at exponent 0
    std::uint64_t e = psi.k.trace_to_prime(psi.k.mul(psi.b, z));
    return RootOfUnity(psi.k.p(), static_cast<std::int64_t>(e));
}

RootOfUnity add_char_tower_eval(const AddChar& psi, const LaurentTrunc& x) {
    return add_char_eval(psi, trace_from(x));
}

MultChar make_mult_char(const FieldParams& k, TameExt ext, RootOfUnity pi_value,
                        std::uint64_t teich_exp, const LaurentTrunc& alpha) {
    if (alpha.ext() != ext) throw std::invalid_argument("alpha lives on the wrong field");
    std::uint32_t level = 0;
    if (!alpha.is_zero()) {
        if (!alpha.is_exact()) throw std::invalid_argument("wild parameter must be exact");
        if (alpha.valuation() >= 0 || alpha.window_end() > 0)
            throw std::invalid_argument("wild parameter must be supported on [-l, 0)");
        level = static_cast<std::uint32_t>(-alpha.valuation());
    }
    if (k.p() <= level) throw std::invalid_argument("level exceeds wild-exponent bound");
    return MultChar{k, ext, level, pi_value, teich_exp % (k.q() - 1), alpha};
}

MultChar trivial_char(const FieldParams& k, TameExt ext) {
    return make_mult_char(k, ext, RootOfUnity::one(), 0, LaurentTrunc::zero(k, ext));
}

MultChar tame_char(const FieldParams& k, TameExt ext, RootOfUnity pi_value, std::uint64_t teich_exp) {
    return make_mult_char(k, ext, pi_value, teich_exp, LaurentTrunc::zero(k, ext));
}

namespace {

RootOfUnity tame_part(const MultChar& chi, std::int64_t v, std::uint64_t a) {
    RootOfUnity out = chi.pi_value.pow(v);
    std::uint64_t m = chi.k.q() - 1;
    if (m > 1 && chi.teich_exp != 0 && a != 0)
        out = out * RootOfUnity(m, static_cast<std::int64_t>(chi.teich_exp * a % m));
    return out;
}

} // namespace

RootOfUnity mult_char_eval(const MultChar& chi, const LaurentTrunc& x, const AddChar& psi) {
    if (x.ext() != chi.ext) throw std::invalid_argument("element lives on the wrong field");
    if (x.is_zero()) throw std::domain_error("character of zero");
    UnitDecomposition d = decompose_unit(x);
    RootOfUnity out = tame_part(chi, d.v, d.a);
    if (chi.level >= 1) {
        LaurentTrunc lg = trunc_log(d.w, chi.level);
        out = out * add_char_tower_eval(psi, chi.alpha * lg);
    }
    return out;
}

MultChar mult_char_mul(const MultChar& a, const MultChar& b) {
    if (a.ext != b.ext || !(a.k == b.k)) throw std::invalid_argument("characters on different fields");
    return make_mult_char(a.k, a.ext, a.pi_value * b.pi_value,
                          a.teich_exp + b.teich_exp, a.alpha + b.alpha);
}

MultChar mult_char_inverse(const MultChar& a) {
    std::uint64_t m = a.k.q() - 1;
    return make_mult_char(a.k, a.ext, a.pi_value.inverse(),
                          m > 1 ? (m - a.teich_exp % m) % m : 0, -a.alpha);
}

MultChar base_change(const MultChar& chi, TameExt ext) {
    if (!chi.ext.is_base()) throw std::invalid_argument("base change starts from a character of F");
    const FieldParams& k = chi.k;
    std::uint32_t n = ext.n;
    if (chi.level >= 1 && k.p() <= static_cast<std::uint64_t>(n) * chi.level)
        throw std::invalid_argument("wild bound violated: p <= n*l(chi)");
    // N(u) = (-1)^(n+1) * pi * eta^r
    ResElem sign = k.from_int(n % 2 == 0 ? -1 : 1);
    LaurentTrunc norm_u = LaurentTrunc::monomial(k, TameExt{1, 0},
                                                 k.mul(sign, k.eta_pow(static_cast<std::int64_t>(ext.r))), 1);
    UnitDecomposition d = decompose_unit(norm_u);
    RootOfUnity pi_e = tame_part(chi, d.v, d.a);
    std::uint64_t m = k.q() - 1;
    std::uint64_t teich_e = m > 1 ? chi.teich_exp * n % m : 0;
    return make_mult_char(k, ext, pi_e, teich_e, embed(chi.alpha, ext));
}

MultChar restrict_to_base(const MultChar& theta) {
    const FieldParams& k = theta.k;
    TameExt base{1, 0};
    if (theta.ext.is_base()) return theta;
    // omega(pi) = theta(eta^(-r) u^n)
    std::uint64_t m = k.q() - 1;
    RootOfUnity pi_f = tame_part(theta, theta.ext.n,
                                 m > 1 ? static_cast<std::uint64_t>((m - theta.ext.r % m) % m) : 0);
    return make_mult_char(k, base, pi_f, theta.teich_exp, trace_from(theta.alpha));
}

std::vector<MultChar> enumerate_mult_chars(const FieldParams& k, TameExt ext,
                                           std::uint32_t level, std::uint64_t M) {
    if (M == 0) throw std::invalid_argument("root order bound must be positive");
    if (k.p() <= level) throw std::invalid_argument("level exceeds wild-exponent bound");
    std::uint64_t q = k.q();
    std::vector<MultChar> out;

    std::vector<std::vector<ResElem>> wilds;
    if (level == 0) {
        wilds.push_back({});
    } else {
        // leading digit eta^a, a ascending; further digits by element code
        std::uint64_t tail_count = 1;
        for (std::uint32_t i = 1; i < level; ++i) tail_count *= q;
        for (std::uint64_t a = 0; a < q - 1; ++a) {
            for (std::uint64_t code = 0; code < tail_count; ++code) {
                std::vector<ResElem> digits(level, 0);
                digits[0] = k.eta_pow(static_cast<std::int64_t>(a));
                std::uint64_t c = code;
                for (std::uint32_t i = 1; i < level; ++i) {
                    digits[i] = static_cast<ResElem>(c % q);
                    c /= q;
                }
                wilds.push_back(std::move(digits));
            }
        }
    }

    for (std::uint64_t pe = 0; pe < M; ++pe) {
        for (std::uint64_t te = 0; te < q - 1; ++te) {
            for (const auto& digits : wilds) {
                LaurentTrunc alpha = level == 0
                    ? LaurentTrunc::zero(k, ext)
                    : LaurentTrunc::from_coeffs(k, ext, -static_cast<std::int64_t>(level),
                                                std::vector<ResElem>(digits));
                out.push_back(make_mult_char(k, ext, RootOfUnity(M, static_cast<std::int64_t>(pe)),
                                             te, alpha));
            }
        }
    }
    return out;
}

} // namespace cusp
