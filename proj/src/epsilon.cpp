#include "cusp/epsilon.hpp"

#include <stdexcept>

namespace cusp {

namespace {

RootOfUnity eps_root(const MultChar& theta, const AddChar& psi, const LaurentTrunc& alpha) {
    return mult_char_eval(theta, alpha, psi).inverse() * add_char_tower_eval(psi, alpha);
}

} // namespace

EpsilonFactor eps_simple_cuspidal(const AdmissiblePair& p, const AddChar& psi) {
    if (p.theta.level == 0) throw std::invalid_argument("level-zero pair refused");
    if (p.theta.level % 2 == 0) throw std::invalid_argument("Prop 2.6 out of scope: even level");
    RootOfUnity c = eps_root(p.theta, psi, p.theta.alpha);
    return EpsilonFactor{p.theta.level, QHalfExt::from_root(p.theta.k.q(), c)};
}

QHalfExt eps_constant_with_representative(const AdmissiblePair& p, const AddChar& psi,
                                          const LaurentTrunc& alpha_rep) {
    if (p.theta.level == 0 || p.theta.level % 2 == 0)
        throw std::invalid_argument("Prop 2.6 out of scope");
    return QHalfExt::from_root(p.theta.k.q(), eps_root(p.theta, psi, alpha_rep));
}

CycNum gauss_sum_tate(const MultChar& chi, const AddChar& psi) {
    if (!chi.ext.is_base()) throw std::invalid_argument("Gauss sum expects a character of F");
    if (chi.level == 0) throw std::invalid_argument("level-zero Gauss sum refused");
    const FieldParams& k = chi.k;
    std::uint64_t q = k.q();
    std::uint32_t l = chi.level;
    const LaurentTrunc& c = chi.alpha;

    std::uint64_t order = lcm_u64(lcm_u64(k.p(), q - 1), chi.pi_value.order);
    std::vector<mpz_class> counts(order, mpz_class(0));

    std::uint64_t unit_count = 1;
    for (std::uint32_t i = 0; i < l; ++i) unit_count *= q;
    for (std::uint64_t a = 0; a < q - 1; ++a) {
        for (std::uint64_t code = 0; code < unit_count; ++code) {
            std::vector<ResElem> digits(l + 1, 0);
            digits[0] = k.eta_pow(static_cast<std::int64_t>(a));
            std::uint64_t cc = code;
            for (std::uint32_t i = 1; i <= l; ++i) {
                digits[i] = k.mul(digits[0], static_cast<ResElem>(cc % q));
                cc /= q;
            }
            LaurentTrunc u = LaurentTrunc::from_coeffs(k, TameExt{1, 0}, 0, std::move(digits));
            LaurentTrunc cu = c * u;
            RootOfUnity term = mult_char_eval(chi, cu, psi).inverse() * add_char_eval(psi, cu);
            counts[term.exp_in_order(order)] += 1;
        }
    }
    return cyc_from_exponent_counts(order, counts);
}

EpsilonFactor eps_character(const MultChar& chi, const AddChar& psi) {
    if (chi.level == 0) throw std::invalid_argument("level-zero Tate epsilon refused");
    CycNum tau = gauss_sum_tate(chi, psi);
    QHalfExt constant = QHalfExt::q_power(chi.k.q(), -static_cast<std::int64_t>(chi.level) - 1) *
                        QHalfExt::from_cyc(chi.k.q(), tau);
    return EpsilonFactor{chi.level, constant};
}

EpsilonFactor eps_det_twist(const MultChar& chi, std::uint32_t n, const AddChar& psi) {
    EpsilonFactor base = eps_character(chi, psi);
    return EpsilonFactor{static_cast<std::int64_t>(n) * base.exponent, base.constant.pow(n)};
}

} // namespace cusp
