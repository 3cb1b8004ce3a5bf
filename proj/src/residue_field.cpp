#include "cusp/residue_field.hpp"

#include <numeric>
#include <stdexcept>

namespace cusp {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Polynomial arithmetic over F_p on coefficient vectors, little-endian.
using Poly = std::vector<std::uint32_t>;

Poly decode(std::uint64_t code, std::uint64_t p, std::uint32_t len) {
    Poly out(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return out;
}

std::uint64_t encode(const Poly& poly, std::uint64_t p) {
    std::uint64_t code = 0;
    for (std::size_t i = poly.size(); i-- > 0;) code = code * p + poly[i];
    return code;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint64_t p) {
    std::uint32_t f = static_cast<std::uint32_t>(modulus.size() - 1);
    std::vector<std::uint64_t> prod(2 * f, 0);
    for (std::size_t i = 0; i < f; ++i) {
        if (i >= a.size() || a[i] == 0) continue;
        for (std::size_t j = 0; j < f; ++j) {
            if (j >= b.size() || b[j] == 0) continue;
            prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
        }
    }
    for (std::size_t i = 2 * f; i-- > f;) {
        std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < f; ++j) {
            std::uint64_t sub = c * modulus[j] % p;
            prod[i - f + j] = (prod[i - f + j] + p - sub) % p;
        }
    }
    Poly out(f, 0);
    for (std::size_t i = 0; i < f; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
}

// Multiplicative order of the class of x modulo the candidate polynomial,
// or 0 if x is a zero divisor. Order q-1 certifies both irreducibility
// and primitivity.
std::uint64_t order_of_x(const Poly& modulus, std::uint64_t p, std::uint64_t q) {
    std::uint32_t f = static_cast<std::uint32_t>(modulus.size() - 1);
    Poly x(f, 0);
    if (f == 1) x[0] = (p - modulus[0] % p) % p; // class of x is the root
    else x[1] = 1;
    Poly acc = x;
    Poly one(f, 0);
    one[0] = 1;
    for (std::uint64_t k = 1; k <= q; ++k) {
        if (acc == one) return k;
        bool all_zero = true;
        for (auto c : acc) all_zero &= (c == 0);
        if (all_zero) return 0;
        acc = mul_mod(acc, x, modulus, p);
    }
    return 0;
}

} // namespace

FieldParams FieldParams::make(std::uint64_t p, std::uint32_t f) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (f == 0) throw std::invalid_argument("f must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
        q *= p;
        if (q > (1u << 16)) throw std::invalid_argument("residue field too large for table model");
    }

    if (f == 1) {
        for (std::uint64_t g = 1; g < p; ++g) {
            // order of g mod p
            std::uint64_t acc = g % p, k = 1;
            while (acc != 1) { acc = acc * g % p; ++k; }
            if (k == p - 1 || p == 2) {
                std::vector<std::uint32_t> modulus{static_cast<std::uint32_t>((p - g % p) % p), 1};
                return FieldParams(p, f, std::move(modulus), static_cast<ResElem>(g));
            }
        }
        throw std::logic_error("no primitive root found");
    }

    // First monic degree-f polynomial (by coefficient code) whose x-class
    // generates the full multiplicative group.
    std::uint64_t limit = q; // codes of the non-leading coefficients
    for (std::uint64_t code = 0; code < limit; ++code) {
        Poly modulus = decode(code, p, f);
        modulus.push_back(1);
        if (modulus[0] == 0) continue; // x divides: reducible
        if (order_of_x(modulus, p, q) == q - 1) {
            ResElem eta = static_cast<ResElem>(p); // class of x has code p
            std::vector<std::uint32_t> m(modulus.begin(), modulus.end());
            return FieldParams(p, f, std::move(m), eta);
        }
    }
    throw std::logic_error("no primitive polynomial found");
}

FieldParams::FieldParams(std::uint64_t p, std::uint32_t f, std::vector<std::uint32_t> modulus, ResElem eta)
    : p_(p), f_(f), modulus_(std::move(modulus)), eta_(eta) {
    q_ = 1;
    for (std::uint32_t i = 0; i < f; ++i) q_ *= p;

    auto tables = std::make_shared<Tables>();
    Poly mod(modulus_.begin(), modulus_.end());
    tables->add.resize(q_ * q_);
    tables->mul.resize(q_ * q_);
    tables->neg.resize(q_);
    tables->inv.assign(q_, 0);
    tables->dlog.assign(q_, 0);
    tables->trace.assign(q_, 0);

    for (std::uint64_t a = 0; a < q_; ++a) {
        Poly pa = decode(a, p, f);
        Poly na(f, 0);
        for (std::uint32_t i = 0; i < f; ++i) na[i] = static_cast<std::uint32_t>((p - pa[i]) % p);
        tables->neg[a] = static_cast<ResElem>(encode(na, p));
        for (std::uint64_t b = 0; b < q_; ++b) {
            Poly pb = decode(b, p, f);
            Poly sum(f, 0);
            for (std::uint32_t i = 0; i < f; ++i) sum[i] = static_cast<std::uint32_t>((pa[i] + pb[i]) % p);
            tables->add[a * q_ + b] = static_cast<ResElem>(encode(sum, p));
            tables->mul[a * q_ + b] = static_cast<ResElem>(encode(mul_mod(pa, pb, mod, p), p));
        }
    }

    // Powers of eta, discrete logs, inverses.
    tables->eta_pow.resize(q_ - 1);
    ResElem acc = 1;
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
        tables->eta_pow[k] = acc;
        tables->dlog[acc] = k;
        acc = tables->mul[acc * q_ + eta_];
    }
    if (acc != 1) throw std::logic_error("eta does not have order q-1");
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
        ResElem x = tables->eta_pow[k];
        tables->inv[x] = tables->eta_pow[(q_ - 1 - k) % (q_ - 1)];
    }

    // Absolute trace via Frobenius iterates.
    for (std::uint64_t a = 0; a < q_; ++a) {
        ResElem frob = static_cast<ResElem>(a);
        ResElem total = 0;
        for (std::uint32_t i = 0; i < f; ++i) {
            total = tables->add[total * q_ + frob];
            // frob <- frob^p
            ResElem pw = 1;
            for (std::uint64_t e = 0; e < p; ++e) pw = tables->mul[pw * q_ + frob];
            frob = pw;
        }
        // total lies in F_p; its code is the integer itself.
        if (total >= p) throw std::logic_error("trace not in prime field");
        tables->trace[a] = total;
    }

    tables_ = std::move(tables);
}

ResElem FieldParams::inv(ResElem a) const {
    if (a == 0) throw std::domain_error("not invertible");
    return tables_->inv[a];
}

ResElem FieldParams::from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<ResElem>(r);
}

std::uint64_t FieldParams::dlog(ResElem a) const {
    if (a == 0) throw std::domain_error("dlog of zero");
    return tables_->dlog[a];
}

ResElem FieldParams::eta_pow(std::int64_t k) const {
    std::int64_t m = static_cast<std::int64_t>(q_ - 1);
    std::int64_t e = k % m;
    if (e < 0) e += m;
    return tables_->eta_pow[static_cast<std::uint64_t>(e)];
}

} // namespace cusp
