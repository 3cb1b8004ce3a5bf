#include "cusp/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace cusp {

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / std::gcd(a, b) * b;
}

namespace {

int moebius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

using ZPoly = std::vector<mpz_class>;

// (x^d - 1) * f
ZPoly mul_by_xd_minus_1(const ZPoly& f, std::uint64_t d) {
    ZPoly out(f.size() + d, mpz_class(0));
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i + d] += f[i];
        out[i] -= f[i];
    }
    return out;
}

// Exact division f / (x^d - 1); f is assumed divisible.
ZPoly div_by_xd_minus_1(const ZPoly& f, std::uint64_t d) {
    ZPoly out(f.size() - d, mpz_class(0));
    ZPoly rem = f;
    for (std::size_t i = rem.size(); i-- > d;) {
        out[i - d] = rem[i];
        rem[i - d] += rem[i];
        rem[i] = 0;
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (rem[i] != 0) throw std::logic_error("inexact cyclotomic division");
    }
    return out;
}

} // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(std::uint64_t n) {
    static std::map<std::uint64_t, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = prod_{d | n} (x^(n/d) - 1)^moebius(d)
    ZPoly poly{mpz_class(1)};
    std::vector<std::uint64_t> neg;
    for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int mu_d = moebius(d);
        if (mu_d == 1) poly = mul_by_xd_minus_1(poly, n / d);
        else if (mu_d == -1) neg.push_back(n / d);
    }
    for (std::uint64_t d : neg) poly = div_by_xd_minus_1(poly, d);

    if (poly.size() != euler_phi(n) + 1 || poly.back() != 1)
        throw std::logic_error("cyclotomic polynomial construction failed");
    return cache.emplace(n, std::move(poly)).first->second;
}

namespace {

// Reduces a rational polynomial modulo the (monic, integer) cyclotomic
// polynomial of the given order, in place; then trims to length phi.
void reduce_mod_cyclo(std::vector<mpq_class>& v, std::uint64_t order) {
    const auto& phi = cyclotomic_polynomial(order);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = v.size(); i-- > deg;) {
        if (v[i] == 0) continue;
        mpq_class c = v[i];
        v[i] = 0;
        for (std::size_t j = 0; j < deg; ++j) v[i - deg + j] -= c * mpq_class(phi[j]);
    }
    v.resize(deg);
    for (auto& c : v) c.canonicalize();
}

} // namespace

CycNum::CycNum(const mpq_class& rational) : order_(1), coeffs_(1, rational) {
    coeffs_[0].canonicalize();
}

CycNum CycNum::root_of_unity(std::uint64_t order, std::int64_t exp) {
    if (order == 0) throw std::invalid_argument("root of unity order must be positive");
    std::int64_t e = exp % static_cast<std::int64_t>(order);
    if (e < 0) e += static_cast<std::int64_t>(order);
    std::vector<mpq_class> v(static_cast<std::size_t>(e) + 1, mpq_class(0));
    v[static_cast<std::size_t>(e)] = 1;
    reduce_mod_cyclo(v, order);
    return CycNum(order, std::move(v));
}

bool CycNum::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

mpq_class CycNum::rational_value() const {
    if (!is_rational()) throw std::domain_error("CycNum is not rational");
    return coeffs_[0];
}

CycNum CycNum::operator+(const CycNum& rhs) const {
    if (order_ != rhs.order_) {
        std::uint64_t n = lcm_u64(order_, rhs.order_);
        return embed(n) + rhs.embed(n);
    }
    std::vector<mpq_class> v = coeffs_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += rhs.coeffs_[i];
    return CycNum(order_, std::move(v));
}

CycNum CycNum::operator-() const {
    std::vector<mpq_class> v = coeffs_;
    for (auto& c : v) c = -c;
    return CycNum(order_, std::move(v));
}

CycNum CycNum::operator-(const CycNum& rhs) const { return *this + (-rhs); }

CycNum CycNum::operator*(const CycNum& rhs) const {
    if (order_ != rhs.order_) {
        std::uint64_t n = lcm_u64(order_, rhs.order_);
        return embed(n) * rhs.embed(n);
    }
    std::vector<mpq_class> v(coeffs_.size() + rhs.coeffs_.size(), mpq_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            v[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    reduce_mod_cyclo(v, order_);
    return CycNum(order_, std::move(v));
}

CycNum CycNum::pow(std::int64_t k) const {
    CycNum base = *this;
    if (k < 0) {
        base = inverse();
        k = -k;
    }
    CycNum acc(mpq_class(1));
    acc = acc.embed(order_);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw std::domain_error("not invertible");
    // Extended Euclid for (this, Phi_N) over Q[x]; Phi_N is irreducible,
    // so the gcd is a nonzero constant.
    using QPoly = std::vector<mpq_class>;
    auto deg = [](const QPoly& p) -> std::ptrdiff_t {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };
    const auto& phi_int = cyclotomic_polynomial(order_);
    QPoly r0(phi_int.size());
    for (std::size_t i = 0; i < phi_int.size(); ++i) r0[i] = mpq_class(phi_int[i]);
    QPoly r1 = coeffs_;
    QPoly s0(1, mpq_class(0)), s1(1, mpq_class(1)); // Bezout coefficients of *this
    while (deg(r1) > 0) {
        // r0 = q*r1 + r; update pairs.
        QPoly q(static_cast<std::size_t>(deg(r0) - deg(r1)) + 1, mpq_class(0));
        QPoly r = r0;
        while (deg(r) >= deg(r1)) {
            std::ptrdiff_t d = deg(r) - deg(r1);
            mpq_class c = r[static_cast<std::size_t>(deg(r))] / r1[static_cast<std::size_t>(deg(r1))];
            q[static_cast<std::size_t>(d)] += c;
            for (std::ptrdiff_t i = 0; i <= deg(r1); ++i)
                r[static_cast<std::size_t>(i + d)] -= c * r1[static_cast<std::size_t>(i)];
        }
        QPoly s(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
    }
    if (deg(r1) != 0) throw std::domain_error("not invertible");
    mpq_class unit = r1[0];
    std::vector<mpq_class> v(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) v[i] = s1[i] / unit;
    v.resize(coeffs_.size(), mpq_class(0));
    reduce_mod_cyclo(v, order_);
    return CycNum(order_, std::move(v));
}

CycNum CycNum::galois(std::uint64_t k) const {
    if (std::gcd(k, order_) != 1) throw std::invalid_argument("galois exponent not coprime to order");
    // zeta^j -> zeta^(jk mod N)
    std::vector<mpq_class> w(order_ == 1 ? 1 : order_, mpq_class(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) continue;
        w[(j * k) % order_] += coeffs_[j];
    }
    reduce_mod_cyclo(w, order_);
    return CycNum(order_, std::move(w));
}

CycNum CycNum::conj() const {
    if (order_ <= 2) return *this;
    return galois(order_ - 1);
}

CycNum CycNum::embed(std::uint64_t new_order) const {
    if (new_order == order_) return *this;
    if (new_order % order_ != 0) throw std::invalid_argument("embedding target must be a multiple of the order");
    std::uint64_t d = new_order / order_;
    std::vector<mpq_class> v(coeffs_.size() * d, mpq_class(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        if (coeffs_[j] != 0) v[j * d] = coeffs_[j];
    reduce_mod_cyclo(v, new_order);
    return CycNum(new_order, std::move(v));
}

bool CycNum::operator==(const CycNum& rhs) const {
    if (order_ == rhs.order_) return coeffs_ == rhs.coeffs_;
    std::uint64_t n = lcm_u64(order_, rhs.order_);
    return embed(n).coeffs_ == rhs.embed(n).coeffs_;
}

CycNum cyc_from_exponent_counts(std::uint64_t order, const std::vector<mpz_class>& counts) {
    std::vector<mpq_class> v(counts.size(), mpq_class(0));
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] != 0) v[i] = mpq_class(counts[i]);
    reduce_mod_cyclo(v, order);
    return CycNum(order, std::move(v));
}

RootOfUnity::RootOfUnity(std::uint64_t order_, std::int64_t exp_) : order(order_) {
    if (order == 0) throw std::invalid_argument("root of unity order must be positive");
    std::int64_t e = exp_ % static_cast<std::int64_t>(order);
    if (e < 0) e += static_cast<std::int64_t>(order);
    exp = static_cast<std::uint64_t>(e);
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& rhs) const {
    std::uint64_t n = lcm_u64(order, rhs.order);
    std::uint64_t e = (exp * (n / order) + rhs.exp * (n / rhs.order)) % n;
    return RootOfUnity(n, static_cast<std::int64_t>(e));
}

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
    std::int64_t e = static_cast<std::int64_t>(exp % order);
    __int128 prod = static_cast<__int128>(e) * k % static_cast<std::int64_t>(order);
    return RootOfUnity(order, static_cast<std::int64_t>(prod));
}

bool RootOfUnity::operator==(const RootOfUnity& rhs) const {
    std::uint64_t n = lcm_u64(order, rhs.order);
    return exp * (n / order) % n == rhs.exp * (n / rhs.order) % n;
}

std::uint64_t RootOfUnity::exp_in_order(std::uint64_t ambient_order) const {
    if (ambient_order % order != 0) throw std::invalid_argument("ambient order must be a multiple");
    return exp * (ambient_order / order) % ambient_order;
}

QHalfExt QHalfExt::q_power(std::uint64_t q, std::int64_t half_exponent) {
    mpq_class c(1);
    std::int64_t int_part = half_exponent >= 0 ? half_exponent / 2 : -((-half_exponent + 1) / 2);
    // half_exponent = 2*int_part + odd with odd in {0, 1}
    std::int64_t odd = half_exponent - 2 * int_part;
    mpz_class qz(static_cast<unsigned long>(q));
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(int_part >= 0 ? int_part : -int_part));
    if (int_part >= 0) c = mpq_class(power);
    else c = mpq_class(1) / mpq_class(power);
    if (odd == 0) return QHalfExt(q, CycNum(c));
    return QHalfExt(q, CycNum(mpq_class(0)), CycNum(c));
}

QHalfExt QHalfExt::operator+(const QHalfExt& rhs) const {
    if (q_ != rhs.q_ && q_ != 0 && rhs.q_ != 0) throw std::invalid_argument("mismatched sqrt(q) symbols");
    return QHalfExt(q_ ? q_ : rhs.q_, base_ + rhs.base_, half_ + rhs.half_);
}

QHalfExt QHalfExt::operator-(const QHalfExt& rhs) const {
    if (q_ != rhs.q_ && q_ != 0 && rhs.q_ != 0) throw std::invalid_argument("mismatched sqrt(q) symbols");
    return QHalfExt(q_ ? q_ : rhs.q_, base_ - rhs.base_, half_ - rhs.half_);
}

QHalfExt QHalfExt::operator*(const QHalfExt& rhs) const {
    if (q_ != rhs.q_ && q_ != 0 && rhs.q_ != 0) throw std::invalid_argument("mismatched sqrt(q) symbols");
    std::uint64_t q = q_ ? q_ : rhs.q_;
    CycNum qc{mpq_class(static_cast<unsigned long>(q))};
    return QHalfExt(q,
                    base_ * rhs.base_ + qc * (half_ * rhs.half_),
                    base_ * rhs.half_ + half_ * rhs.base_);
}

QHalfExt QHalfExt::pow(std::uint64_t k) const {
    QHalfExt acc(q_, CycNum(mpq_class(1)));
    QHalfExt base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool QHalfExt::operator==(const QHalfExt& rhs) const {
    if (q_ != rhs.q_ && !is_zero() && !rhs.is_zero()) return false;
    return base_ == rhs.base_ && half_ == rhs.half_;
}

} // namespace cusp
