#include "cusp/laurent.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cusp/errors.hpp"

namespace cusp {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a == LaurentTrunc::EXACT || b == LaurentTrunc::EXACT) return LaurentTrunc::EXACT;
    return a + b;
}

} // namespace

std::uint64_t tame_ext_count(const FieldParams& k, std::uint32_t n) {
    return std::gcd<std::uint64_t>(n, k.q() - 1);
}

TameExt make_extension(const FieldParams& k, std::uint32_t n, std::uint32_t r) {
    if (n == 0) throw std::invalid_argument("extension degree must be positive");
    if (std::gcd<std::uint64_t>(n, k.p()) != 1) throw std::invalid_argument("wild degree unsupported");
    std::uint64_t e = tame_ext_count(k, n);
    if (r >= e) throw std::out_of_range("r out of range [0, gcd(n, q-1))");
    return TameExt{n, r};
}

LaurentTrunc LaurentTrunc::zero(const FieldParams& k, TameExt ext, std::int64_t known_until) {
    LaurentTrunc out(k, ext);
    out.known_until_ = known_until;
    return out;
}

LaurentTrunc LaurentTrunc::monomial(const FieldParams& k, TameExt ext, ResElem c, std::int64_t e) {
    LaurentTrunc out(k, ext);
    out.val_ = e;
    out.coeffs_ = {c};
    out.normalize();
    return out;
}

LaurentTrunc LaurentTrunc::from_coeffs(const FieldParams& k, TameExt ext, std::int64_t val,
                                       std::vector<ResElem> coeffs, std::int64_t known_until) {
    LaurentTrunc out(k, ext);
    out.val_ = val;
    out.coeffs_ = std::move(coeffs);
    out.known_until_ = known_until;
    if (known_until != EXACT && val + static_cast<std::int64_t>(out.coeffs_.size()) > known_until)
        throw std::invalid_argument("coefficients extend beyond stated precision");
    for (ResElem c : out.coeffs_)
        if (c >= k.q()) throw std::invalid_argument("coefficient not a residue element");
    out.normalize();
    return out;
}

void LaurentTrunc::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<std::int64_t>(lead);
    }
    if (coeffs_.empty()) {
        nonzero_ = false;
        val_ = 0;
        return;
    }
    nonzero_ = true;
    if (known_until_ == EXACT) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty()) { nonzero_ = false; val_ = 0; }
    } else {
        coeffs_.resize(static_cast<std::size_t>(known_until_ - val_), 0);
    }
}

ResElem LaurentTrunc::leading_coeff() const {
    if (!nonzero_) throw std::domain_error("zero element has no leading coefficient");
    return coeffs_[0];
}

ResElem LaurentTrunc::coeff_at(std::int64_t e) const {
    if (known_until_ != EXACT && e >= known_until_)
        throw precision_error("coefficient at exponent " + std::to_string(e) +
                              " beyond known precision " + std::to_string(known_until_));
    if (!nonzero_ || e < val_) return 0;
    std::int64_t idx = e - val_;
    if (idx < static_cast<std::int64_t>(coeffs_.size())) return coeffs_[static_cast<std::size_t>(idx)];
    return 0;
}

LaurentTrunc LaurentTrunc::operator+(const LaurentTrunc& rhs) const {
    if (!(k_ == rhs.k_) || ext_ != rhs.ext_) throw std::invalid_argument("mixed-field addition");
    std::int64_t bound = std::min(known_until_, rhs.known_until_);
    LaurentTrunc out(k_, ext_);
    out.known_until_ = bound;
    if (!nonzero_ && !rhs.nonzero_) return out;
    std::int64_t start = std::min(valuation(), rhs.valuation());
    std::int64_t end;
    if (bound == EXACT) {
        end = std::max(nonzero_ ? val_ + static_cast<std::int64_t>(coeffs_.size()) : start,
                       rhs.nonzero_ ? rhs.val_ + static_cast<std::int64_t>(rhs.coeffs_.size()) : start);
    } else {
        end = bound;
    }
    out.val_ = start;
    out.coeffs_.reserve(static_cast<std::size_t>(end - start));
    for (std::int64_t e = start; e < end; ++e)
        out.coeffs_.push_back(k_.add(coeff_at(e), rhs.coeff_at(e)));
    out.normalize();
    return out;
}

LaurentTrunc LaurentTrunc::operator-() const {
    LaurentTrunc out = *this;
    for (auto& c : out.coeffs_) c = k_.neg(c);
    return out;
}

LaurentTrunc LaurentTrunc::operator-(const LaurentTrunc& rhs) const { return *this + (-rhs); }

LaurentTrunc LaurentTrunc::operator*(const LaurentTrunc& rhs) const {
    if (!(k_ == rhs.k_) || ext_ != rhs.ext_) throw std::invalid_argument("mixed-field multiplication");
    LaurentTrunc out(k_, ext_);
    if (!nonzero_ || !rhs.nonzero_) {
        // x * y == 0 mod u^(ku_x + v_y) when x is zero to precision ku_x.
        std::int64_t b1 = sat_add(known_until_, rhs.nonzero_ ? rhs.val_ : rhs.known_until_);
        std::int64_t b2 = sat_add(rhs.known_until_, nonzero_ ? val_ : known_until_);
        out.known_until_ = std::min(b1, b2);
        return out;
    }
    std::int64_t bound = std::min(sat_add(val_, rhs.known_until_), sat_add(rhs.val_, known_until_));
    out.known_until_ = bound;
    out.val_ = val_ + rhs.val_;
    std::int64_t end = bound == EXACT
        ? val_ + static_cast<std::int64_t>(coeffs_.size()) + rhs.val_ + static_cast<std::int64_t>(rhs.coeffs_.size()) - 1
        : bound;
    out.coeffs_.assign(static_cast<std::size_t>(end - out.val_), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            std::int64_t e = val_ + static_cast<std::int64_t>(i) + rhs.val_ + static_cast<std::int64_t>(j);
            if (e >= end) break;
            std::size_t idx = static_cast<std::size_t>(e - out.val_);
            out.coeffs_[idx] = k_.add(out.coeffs_[idx], k_.mul(coeffs_[i], rhs.coeffs_[j]));
        }
    }
    out.normalize();
    return out;
}

LaurentTrunc LaurentTrunc::scaled(ResElem c) const {
    if (c == 0) return zero(k_, ext_, EXACT);
    LaurentTrunc out = *this;
    for (auto& x : out.coeffs_) x = k_.mul(x, c);
    return out;
}

LaurentTrunc LaurentTrunc::shifted(std::int64_t d) const {
    LaurentTrunc out = *this;
    if (out.nonzero_) out.val_ += d;
    out.known_until_ = sat_add(out.known_until_, d);
    return out;
}

LaurentTrunc LaurentTrunc::truncated(std::int64_t bound) const {
    if (bound >= known_until_) return *this;
    LaurentTrunc out = *this;
    out.known_until_ = bound;
    if (out.nonzero_) {
        if (out.val_ >= bound) { out.coeffs_.clear(); out.nonzero_ = false; out.val_ = 0; }
        else out.coeffs_.resize(static_cast<std::size_t>(bound - out.val_));
    }
    out.normalize();
    return out;
}

LaurentTrunc LaurentTrunc::inverse(std::uint32_t digits) const {
    if (!nonzero_) throw std::domain_error("not invertible");
    UnitDecomposition d = decompose_unit(*this);
    // (1+z)^(-1) = sum (-z)^i, truncated
    LaurentTrunc z = (d.w - one(k_, ext_)).truncated(digits);
    LaurentTrunc acc = one(k_, ext_).truncated(std::min<std::int64_t>(digits, d.w.known_until()));
    LaurentTrunc term = acc;
    for (std::uint32_t i = 1; i < digits && !z.is_zero(); ++i) {
        term = (term * (-z)).truncated(digits);
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc.scaled(k_.inv(k_.eta_pow(static_cast<std::int64_t>(d.a)))).shifted(-d.v);
}

bool LaurentTrunc::operator==(const LaurentTrunc& rhs) const {
    return k_ == rhs.k_ && ext_ == rhs.ext_ && nonzero_ == rhs.nonzero_ &&
           (!nonzero_ || val_ == rhs.val_) && coeffs_ == rhs.coeffs_ &&
           known_until_ == rhs.known_until_;
}

std::string LaurentTrunc::to_string() const {
    const char* sym = ext_.is_base() ? "t" : "u";
    std::ostringstream os;
    if (!nonzero_) {
        os << "0";
        if (known_until_ != EXACT) os << " + O(" << sym << "^" << known_until_ << ")";
        return os.str();
    }
    UnitDecomposition d = decompose_unit(*this);
    bool need_dot = false;
    if (d.a != 0) { os << "η^" << d.a; need_dot = true; }
    if (d.v != 0) {
        if (need_dot) os << "·";
        os << sym << "^" << d.v;
        need_dot = true;
    }
    std::ostringstream unit;
    unit << "1";
    for (std::int64_t e = 1; e < static_cast<std::int64_t>(d.w.coeffs_.size()); ++e) {
        ResElem c = d.w.coeffs_[static_cast<std::size_t>(e)];
        if (c == 0) continue;
        unit << " + ";
        std::uint64_t a = k_.dlog(c);
        if (a != 0) unit << "η^" << a << "·";
        unit << sym << "^" << e;
    }
    std::string u = unit.str();
    if (u != "1") {
        if (need_dot) os << "·";
        os << "(" << u << ")";
    } else if (!need_dot) {
        os << "1";
    }
    if (known_until_ != EXACT) os << " + O(" << sym << "^" << known_until_ << ")";
    return os.str();
}

LaurentTrunc embed(const LaurentTrunc& x, TameExt target) {
    if (!x.ext().is_base()) throw std::invalid_argument("embedding source must be the base field");
    if (target.is_base()) return x;
    const FieldParams& k = x.field();
    std::uint32_t n = target.n;
    std::int64_t ku = x.is_exact() ? LaurentTrunc::EXACT : x.known_until() * n;
    if (x.is_zero()) return LaurentTrunc::zero(k, target, ku);
    std::int64_t xa = x.valuation();
    std::int64_t xb = x.window_end();
    std::vector<ResElem> coeffs(static_cast<std::size_t>((xb - xa - 1) * n + 1), 0);
    for (std::int64_t e = xa; e < xb; ++e) {
        ResElem c = x.coeff_at(e);
        if (c == 0) continue;
        // t^e -> eta^(-r e) u^(n e)
        coeffs[static_cast<std::size_t>((e - xa) * n)] = k.mul(c, k.eta_pow(-static_cast<std::int64_t>(target.r) * e));
    }
    return LaurentTrunc::from_coeffs(k, target, xa * n, std::move(coeffs), ku);
}

UnitDecomposition decompose_unit(const LaurentTrunc& x) {
    if (x.is_zero()) throw std::domain_error("cannot decompose zero");
    const FieldParams& k = x.field();
    std::int64_t v = x.valuation();
    ResElem lead = x.leading_coeff();
    std::uint64_t a = k.dlog(lead);
    LaurentTrunc w = x.shifted(-v).scaled(k.inv(lead));
    return UnitDecomposition{v, a, w};
}

namespace {

// Shared implementation of trace down a tame totally ramified step of
// degree g: keep exponents divisible by g, coefficient at u^(g m) maps to
// g * c * eta^(r_param * m) at exponent m * exp_scale of the target.
LaurentTrunc trace_impl(const LaurentTrunc& x, std::uint32_t g, std::int64_t r_param,
                        TameExt target, std::int64_t exp_scale) {
    const FieldParams& k = x.field();
    std::int64_t ku = x.is_exact() ? LaurentTrunc::EXACT : ceil_div(x.known_until(), g) * exp_scale;
    if (x.is_zero()) return LaurentTrunc::zero(k, target, ku);
    std::int64_t m0 = ceil_div(x.valuation(), g);
    std::int64_t m1 = ceil_div(x.window_end(), g); // exclusive, in m units
    if (m1 <= m0) return LaurentTrunc::zero(k, target, ku);
    std::vector<ResElem> coeffs(static_cast<std::size_t>((m1 - m0 - 1) * exp_scale + 1), 0);
    ResElem gc = k.from_int(static_cast<std::int64_t>(g));
    for (std::int64_t m = m0; m < m1; ++m) {
        ResElem c = x.coeff_at(m * g);
        if (c == 0) continue;
        coeffs[static_cast<std::size_t>((m - m0) * exp_scale)] =
            k.mul(k.mul(c, gc), k.eta_pow(r_param * m));
    }
    return LaurentTrunc::from_coeffs(k, target, m0 * exp_scale, std::move(coeffs), ku);
}

using Matrix = std::vector<std::vector<LaurentTrunc>>;

LaurentTrunc matrix_det(const Matrix& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    // cofactor expansion along the first row
    LaurentTrunc acc = LaurentTrunc::zero(m[0][0].field(), m[0][0].ext(), LaurentTrunc::EXACT);
    for (std::size_t j = 0; j < n; ++j) {
        Matrix minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<LaurentTrunc> row;
            row.reserve(n - 1);
            for (std::size_t jj = 0; jj < n; ++jj)
                if (jj != j) row.push_back(m[i][jj]);
            minor.push_back(std::move(row));
        }
        LaurentTrunc term = m[0][j] * matrix_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Norm as the determinant of the multiplication matrix of x on the basis
// 1, u, ..., u^(g-1) over the subfield; exact whenever x is exact.
LaurentTrunc norm_impl(const LaurentTrunc& x, std::uint32_t g, std::int64_t r_param,
                       TameExt target, std::int64_t exp_scale) {
    if (x.is_zero()) throw std::domain_error("norm of zero");
    const FieldParams& k = x.field();
    if (g == 1) return x;
    std::int64_t v = x.valuation();
    std::int64_t xb = x.window_end();
    TameExt column_field{1, 0}; // entries use exponent m before rescaling
    Matrix m(g, std::vector<LaurentTrunc>(g, LaurentTrunc::zero(k, column_field, LaurentTrunc::EXACT)));
    for (std::uint32_t j = 0; j < g; ++j) {
        for (std::uint32_t i = 0; i < g; ++i) {
            // coefficient of u^(g m + i) in x * u^j, i.e. x-coefficient at g m + i - j
            std::int64_t lo = ceil_div(v + j - i, g);
            std::int64_t hi = ceil_div(xb + j - i, g); // exclusive
            std::vector<ResElem> entry;
            if (hi > lo) {
                entry.assign(static_cast<std::size_t>(hi - lo), 0);
                for (std::int64_t mm = lo; mm < hi; ++mm) {
                    std::int64_t e = mm * g + i - j;
                    if (e < v || e >= xb) continue;
                    entry[static_cast<std::size_t>(mm - lo)] = k.mul(x.coeff_at(e), k.eta_pow(r_param * mm));
                }
            }
            std::int64_t ku = x.is_exact() ? LaurentTrunc::EXACT : ceil_div(x.known_until() + j - i, g);
            m[i][j] = LaurentTrunc::from_coeffs(k, column_field, lo, std::move(entry), ku);
        }
    }
    LaurentTrunc det = matrix_det(m);
    if (det.is_zero())
        return LaurentTrunc::zero(k, target,
                                  det.is_exact() ? LaurentTrunc::EXACT : det.known_until() * exp_scale);
    // rewrite exponent m as m * exp_scale in the target field
    std::int64_t dv = det.valuation();
    std::int64_t de = det.window_end();
    std::vector<ResElem> spread(static_cast<std::size_t>((de - dv - 1) * exp_scale + 1), 0);
    for (std::int64_t e = dv; e < de; ++e)
        spread[static_cast<std::size_t>((e - dv) * exp_scale)] = det.coeff_at(e);
    std::int64_t ku = det.is_exact() ? LaurentTrunc::EXACT : det.known_until() * exp_scale;
    return LaurentTrunc::from_coeffs(k, target, dv * exp_scale, std::move(spread), ku);
}

} // namespace

LaurentTrunc trace_from(const LaurentTrunc& x) {
    TameExt e = x.ext();
    if (e.is_base()) return x;
    return trace_impl(x, e.n, static_cast<std::int64_t>(e.r), TameExt{1, 0}, 1);
}

LaurentTrunc norm_from(const LaurentTrunc& x) {
    TameExt e = x.ext();
    if (e.is_base()) return x;
    return norm_impl(x, e.n, static_cast<std::int64_t>(e.r), TameExt{1, 0}, 1);
}

LaurentTrunc trace_rel(const LaurentTrunc& x, std::uint32_t g) {
    if (x.ext().n % g != 0) throw std::invalid_argument("g must divide the extension degree");
    if (g == 1) return x;
    return trace_impl(x, g, 0, x.ext(), static_cast<std::int64_t>(g));
}

LaurentTrunc norm_rel(const LaurentTrunc& x, std::uint32_t g) {
    if (x.ext().n % g != 0) throw std::invalid_argument("g must divide the extension degree");
    if (g == 1) return x;
    return norm_impl(x, g, 0, x.ext(), static_cast<std::int64_t>(g));
}

LaurentTrunc trunc_log(const LaurentTrunc& w, std::uint32_t level) {
    const FieldParams& k = w.field();
    if (k.p() <= level) throw std::invalid_argument("level exceeds wild-exponent bound");
    if (w.is_zero() || w.valuation() != 0 || w.leading_coeff() != 1)
        throw std::invalid_argument("log requires a one-unit");
    std::int64_t bound = static_cast<std::int64_t>(level) + 1;
    if (!w.is_exact() && w.known_until() < bound)
        throw precision_error("one-unit known only modulo " + std::to_string(w.known_until()));
    LaurentTrunc z = (w - LaurentTrunc::one(k, w.ext())).truncated(bound);
    LaurentTrunc acc = LaurentTrunc::zero(k, w.ext(), bound);
    LaurentTrunc pw = LaurentTrunc::one(k, w.ext()).truncated(bound);
    for (std::uint32_t i = 1; i <= level; ++i) {
        pw = (pw * z).truncated(bound);
        if (pw.is_zero()) break;
        LaurentTrunc term = pw.scaled(k.inv(k.from_int(static_cast<std::int64_t>(i))));
        acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    return acc;
}

LaurentTrunc trunc_exp(const LaurentTrunc& y, std::uint32_t level) {
    const FieldParams& k = y.field();
    if (k.p() <= level) throw std::invalid_argument("level exceeds wild-exponent bound");
    if (!y.is_zero() && y.valuation() < 1)
        throw std::invalid_argument("exp requires positive valuation");
    std::int64_t bound = static_cast<std::int64_t>(level) + 1;
    if (!y.is_exact() && y.known_until() < bound)
        throw precision_error("argument known only modulo " + std::to_string(y.known_until()));
    LaurentTrunc z = y.truncated(bound);
    LaurentTrunc acc = LaurentTrunc::one(k, y.ext()).truncated(bound);
    LaurentTrunc pw = LaurentTrunc::one(k, y.ext()).truncated(bound);
    ResElem fact_inv = 1;
    for (std::uint32_t i = 1; i <= level; ++i) {
        pw = (pw * z).truncated(bound);
        if (pw.is_zero()) break;
        fact_inv = k.mul(fact_inv, k.inv(k.from_int(static_cast<std::int64_t>(i))));
        acc = acc + pw.scaled(fact_inv);
    }
    return acc;
}

} // namespace cusp
