#include "cusp/serialize.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cusp {

json to_json(const CycNum& c) {
    json coeffs = json::array();
    for (const auto& x : c.coeffs())
        coeffs.push_back({x.get_num().get_str(), x.get_den().get_str()});
    return json{{"order", c.order()}, {"coeffs", coeffs}};
}

json to_json(const RootOfUnity& r) {
    return json{{"order", r.order}, {"exp", r.exp}};
}

json to_json(const QHalfExt& x) {
    return json{{"q", x.q()}, {"base", to_json(x.base())}, {"half", to_json(x.half())}};
}

json to_json(const LaurentTrunc& x) {
    json out;
    if (x.ext().is_base()) out["field"] = "F";
    else out["field"] = json{{"n", x.ext().n}, {"r", x.ext().r}};
    if (x.is_zero()) {
        out["zero"] = true;
    } else {
        out["val"] = x.valuation();
        json coeffs = json::array();
        for (std::int64_t e = x.valuation(); e < x.window_end(); ++e) coeffs.push_back(x.coeff_at(e));
        out["coeffs"] = coeffs;
    }
    if (x.is_exact()) out["known_until"] = "exact";
    else out["known_until"] = x.known_until();
    out["text"] = x.to_string();
    return out;
}

json to_json(const MultChar& chi) {
    json field;
    if (chi.ext.is_base()) field = "F";
    else field = json{{"n", chi.ext.n}, {"r", chi.ext.r}};
    return json{{"field", field},
                {"level", chi.level},
                {"pi", to_json(chi.pi_value)},
                {"teich", chi.teich_exp},
                {"alpha", to_json(chi.alpha)}};
}

json to_json(const AdmissiblePair& p) {
    json out = to_json(p.theta);
    out["n"] = p.ext.n;
    out["r"] = p.ext.r;
    return out;
}

json to_json(const EpsilonFactor& e) {
    return json{{"exponent", e.exponent}, {"constant", to_json(e.constant)}};
}

std::string csv_flat(const CycNum& c) {
    std::ostringstream os;
    os << c.order() << ":";
    bool first = true;
    for (const auto& x : c.coeffs()) {
        if (!first) os << ";";
        first = false;
        os << x.get_num().get_str() << "/" << x.get_den().get_str();
    }
    return os.str();
}

std::string csv_flat(const QHalfExt& x) {
    return csv_flat(x.base()) + "+sqrt(" + std::to_string(x.q()) + ")*" + csv_flat(x.half());
}

std::complex<double> approx_complex(const CycNum& c) {
    std::complex<double> acc(0.0, 0.0);
    double angle = 2.0 * std::numbers::pi / static_cast<double>(c.order());
    for (std::size_t j = 0; j < c.coeffs().size(); ++j) {
        double coeff = mpq_get_d(c.coeffs()[j].get_mpq_t());
        if (coeff == 0.0) continue;
        acc += coeff * std::polar(1.0, angle * static_cast<double>(j));
    }
    return acc;
}

} // namespace cusp
