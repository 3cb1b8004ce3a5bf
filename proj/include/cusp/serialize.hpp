#pragma once

#include <complex>
#include <string>

#include <json.hpp>

#include "cusp/characters.hpp"
#include "cusp/cyclotomic.hpp"
#include "cusp/epsilon.hpp"
#include "cusp/laurent.hpp"
#include "cusp/pairs.hpp"

namespace cusp {

using json = nlohmann::ordered_json;

// Canonical JSON forms, stable across versions. Rational coefficients are
// serialized as [numerator, denominator] decimal strings.
json to_json(const CycNum& c);
json to_json(const RootOfUnity& r);
json to_json(const QHalfExt& x);
json to_json(const LaurentTrunc& x);
json to_json(const MultChar& chi);
json to_json(const AdmissiblePair& p);
json to_json(const EpsilonFactor& e);

// CSV flattening: "order:num/den;num/den;..." for cyclotomic numbers.
std::string csv_flat(const CycNum& c);
std::string csv_flat(const QHalfExt& x);

// Floating-point embedding zeta_N -> exp(2 pi i / N). Display helper only;
// never on a verdict path.
std::complex<double> approx_complex(const CycNum& c);

} // namespace cusp
