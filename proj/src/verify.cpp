#include "cusp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cusp {

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int resolve_threads(unsigned threads) {
#ifdef _OPENMP
    return threads == 0 ? omp_get_max_threads() : static_cast<int>(threads);
#else
    (void)threads;
    return 1;
#endif
}

// Uniform value in [0, n) from a seeded mt19937_64, by rejection; the
// engine is fully specified by the standard, so reports are reproducible
// across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

json base_parameters(const FieldParams& k, const AddChar& psi) {
    return json{{"p", k.p()}, {"f", k.f()}, {"q", k.q()}, {"psi_b", psi.b}};
}

} // namespace

Fingerprint fingerprint(const AdmissiblePair& p, const AddChar& psi) {
    const FieldParams& k = p.theta.k;
    Fingerprint fp;
    fp.exponent = p.theta.level;
    PairInvariants inv = pair_invariants(p);
    fp.omega_pi = inv.omega.pi_value;
    fp.omega_teich = inv.omega.teich_exp;
    fp.tame_eps.reserve(k.q() - 1);
    for (std::uint64_t j = 0; j < k.q() - 1; ++j) {
        MultChar chi_j = tame_char(k, TameExt{1, 0}, RootOfUnity::one(), j);
        fp.tame_eps.push_back(eps_simple_cuspidal(twist_pair(chi_j, p), psi).constant);
    }
    return fp;
}

json to_json(const Fingerprint& f) {
    json eps = json::array();
    for (const auto& e : f.tame_eps) eps.push_back(cusp::to_json(e));
    return json{{"exponent", f.exponent},
                {"omega_pi", cusp::to_json(f.omega_pi)},
                {"omega_teich", f.omega_teich},
                {"tame_eps", eps}};
}

json VerifyReport::to_json() const {
    return json{{"schema", 1},
                {"check", check},
                {"verdict", verdict},
                {"parameters", parameters},
                {"pair_count", pair_count},
                {"comparisons", comparisons},
                {"violations", violations},
                {"details", details.is_null() ? json::object() : details},
                {"timing", json{{"elapsed_ms", elapsed_ms}}}};
}

VerifyReport converse_check(const FieldParams& k, std::uint32_t n, std::uint64_t M,
                            const AddChar& psi, unsigned threads,
                            std::optional<std::size_t> corrupt_index) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<AdmissiblePair> pairs = enumerate_pairs(k, n, 1, M);
    const std::size_t count = pairs.size();

    std::vector<Fingerprint> fps(count);
    int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
        fps[static_cast<std::size_t>(i)] = fingerprint(pairs[static_cast<std::size_t>(i)], psi);

    if (corrupt_index) {
        if (*corrupt_index >= count) throw std::invalid_argument("corrupt index out of range");
        std::size_t entry = k.q() >= 3 ? 1 : 0;
        Fingerprint& fp = fps[*corrupt_index];
        fp.tame_eps[entry] = fp.tame_eps[entry] * QHalfExt::from_cyc(k.q(), CycNum(-1L));
    }

    struct Hit {
        std::size_t i, j;
        bool fp_equal;
    };
    std::vector<Hit> hits;
    std::uint64_t comparisons = 0;

#pragma omp parallel num_threads(nthreads)
    {
        std::vector<Hit> local;
        std::uint64_t local_cmp = 0;
#pragma omp for schedule(dynamic)
        for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(count); ++ii) {
            std::size_t i = static_cast<std::size_t>(ii);
            for (std::size_t j = i; j < count; ++j) {
                bool fp_equal = fps[i] == fps[j];
                bool iso = are_isomorphic(pairs[i], pairs[j], psi).has_value();
                ++local_cmp;
                if (fp_equal != iso) local.push_back(Hit{i, j, fp_equal});
            }
        }
#pragma omp critical
        {
            hits.insert(hits.end(), local.begin(), local.end());
            comparisons += local_cmp;
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    VerifyReport report;
    report.check = "converse";
    report.parameters = base_parameters(k, psi);
    report.parameters["n"] = n;
    report.parameters["level"] = 1;
    report.parameters["M"] = M;
    if (corrupt_index) report.parameters["corrupt_index"] = *corrupt_index;
    report.pair_count = count;
    report.comparisons = comparisons;
    for (const Hit& h : hits) {
        report.violations.push_back(
            json{{"i", h.i},
                 {"j", h.j},
                 {"direction", h.fp_equal ? "fingerprints-equal-but-not-isomorphic"
                                          : "isomorphic-but-fingerprints-differ"},
                 {"pair_i", cusp::to_json(pairs[h.i])},
                 {"pair_j", cusp::to_json(pairs[h.j])},
                 {"fingerprint_i", cusp::to_json(fps[h.i])},
                 {"fingerprint_j", cusp::to_json(fps[h.j])}});
    }
    report.verdict = report.violations.empty() ? "PASS" : "FAIL";
    report.elapsed_ms = ms_since(t0);
    return report;
}

namespace {

// Tame epsilon list indexed by the teich exponent of the twist.
std::vector<QHalfExt> tame_eps_list(const AdmissiblePair& p, const AddChar& psi) {
    const FieldParams& k = p.theta.k;
    std::vector<QHalfExt> out;
    out.reserve(k.q() - 1);
    for (std::uint64_t j = 0; j < k.q() - 1; ++j) {
        MultChar chi_j = tame_char(k, TameExt{1, 0}, RootOfUnity::one(), j);
        out.push_back(eps_simple_cuspidal(twist_pair(chi_j, p), psi).constant);
    }
    return out;
}

struct SeparationCase {
    std::size_t i, j;       // indices into the two per-field pair lists
    std::uint32_t r1, r2;
    bool ok = false;
    json record;
};

SeparationCase check_separation(const AdmissiblePair& p1, const AdmissiblePair& p2,
                                const AddChar& psi) {
    const FieldParams& k = p1.theta.k;
    const std::uint64_t qm1 = k.q() - 1;
    const std::uint32_t n = p1.ext.n;
    const std::uint32_t level = p1.theta.level;

    std::vector<QHalfExt> e1 = tame_eps_list(p1, psi);
    std::vector<QHalfExt> e2 = tame_eps_list(p2, psi);
    std::vector<std::uint64_t> separating;
    for (std::uint64_t j = 0; j < qm1; ++j)
        if (e1[j] != e2[j]) separating.push_back(j);

    // Arithmetic witness. Write level = a' n + b with 0 < b <= n-1; the
    // paper's eta exponent of alpha_i relative to pi^(-a') pi_i^(-b) is
    // a_i = dlog(lead alpha_i) - r_i a'.
    std::int64_t b = static_cast<std::int64_t>(level % n);
    std::int64_t ap = (static_cast<std::int64_t>(level) - b) / n;
    auto paper_a = [&](const AdmissiblePair& p) {
        std::int64_t lead = static_cast<std::int64_t>(k.dlog(p.theta.alpha.leading_coeff()));
        std::int64_t a = (lead - static_cast<std::int64_t>(p.ext.r) * ap) % static_cast<std::int64_t>(qm1);
        return a < 0 ? a + static_cast<std::int64_t>(qm1) : a;
    };
    std::int64_t a1 = paper_a(p1), a2 = paper_a(p2);
    std::int64_t a = static_cast<std::int64_t>(p2.ext.r) - static_cast<std::int64_t>(p1.ext.r);
    std::int64_t d = (static_cast<std::int64_t>(n) * (a1 - a2) - a * b) % static_cast<std::int64_t>(qm1);
    if (d < 0) d += static_cast<std::int64_t>(qm1);

    // Exact twist-ratio exponent: eps_i(j) = eps_i(0) zeta^(-j U_i) with
    // U_i the eta exponent of N(alpha_i).
    auto norm_dlog = [&](const AdmissiblePair& p) {
        return decompose_unit(norm_from(p.theta.alpha)).a;
    };
    std::uint64_t u1 = norm_dlog(p1), u2 = norm_dlog(p2);
    std::uint64_t delta = (u1 + qm1 - u2 % qm1) % qm1;

    // Twist law: e1[j] == e1[0] zeta^(-j u1) and e2[j] == e2[0] zeta^(-j u2);
    // verify it and derive the predicted separating set from it.
    bool predicted_matches = true;
    std::vector<std::uint64_t> predicted_set;
    for (std::uint64_t j = 0; j < qm1; ++j) {
        QHalfExt p1j = e1[0] * QHalfExt::from_root(k.q(), RootOfUnity(qm1, -static_cast<std::int64_t>(j * u1 % qm1)));
        QHalfExt p2j = e2[0] * QHalfExt::from_root(k.q(), RootOfUnity(qm1, -static_cast<std::int64_t>(j * u2 % qm1)));
        if (p1j != e1[j] || p2j != e2[j]) predicted_matches = false;
        if (p1j != p2j) predicted_set.push_back(j);
    }

    SeparationCase out;
    out.r1 = p1.ext.r;
    out.r2 = p2.ext.r;
    out.ok = !separating.empty() && d != 0 && delta != 0 && predicted_matches &&
             predicted_set == separating;
    out.record = json{{"pair_1", cusp::to_json(p1)},
                      {"pair_2", cusp::to_json(p2)},
                      {"witness_d", d},
                      {"ratio_exponent", delta},
                      {"separating_twists", separating},
                      {"predicted_twists", predicted_set},
                      {"separated", !separating.empty()},
                      {"witness_nonzero", d != 0},
                      {"prediction_matches", predicted_matches}};
    return out;
}

} // namespace

VerifyReport field_separation_check(const FieldParams& k, std::uint32_t n, std::uint32_t kk,
                                    std::uint64_t samples, std::uint64_t seed, const AddChar& psi,
                                    std::uint64_t M, unsigned threads) {
    auto t0 = std::chrono::steady_clock::now();
    std::uint32_t level = 2 * kk + 1;
    VerifyReport report;
    report.check = "field-separation";
    report.parameters = base_parameters(k, psi);
    report.parameters["n"] = n;
    report.parameters["level"] = level;
    report.parameters["M"] = M;
    report.parameters["samples"] = samples;
    report.parameters["seed"] = seed;

    std::uint64_t e = tame_ext_count(k, n);
    if (e <= 1) {
        report.verdict = "SKIPPED";
        report.details = json{{"reason", "only one tame totally ramified extension (e = 1)"}};
        report.elapsed_ms = ms_since(t0);
        return report;
    }

    std::vector<AdmissiblePair> all = enumerate_pairs(k, n, level, M);
    report.pair_count = all.size();
    std::vector<std::vector<std::size_t>> by_r(e);
    for (std::size_t i = 0; i < all.size(); ++i) by_r[all[i].ext.r].push_back(i);

    // cross-field index space: ordered field pairs r1 < r2
    struct Cross {
        std::size_t i, j;
    };
    std::vector<Cross> selected;
    std::uint64_t per_field = by_r[0].size();
    std::uint64_t field_pairs = e * (e - 1) / 2;
    std::uint64_t total = field_pairs * per_field * per_field;
    bool exhaustive = samples == 0 || samples >= total;
    if (exhaustive) {
        for (std::uint32_t r1 = 0; r1 < e; ++r1)
            for (std::uint32_t r2 = r1 + 1; r2 < e; ++r2)
                for (std::size_t i : by_r[r1])
                    for (std::size_t j : by_r[r2]) selected.push_back(Cross{i, j});
    } else {
        std::mt19937_64 rng(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            std::uint64_t flat = uniform_below(rng, total);
            std::uint64_t fp_idx = flat / (per_field * per_field);
            std::uint64_t rest = flat % (per_field * per_field);
            // decode r1 < r2 from the flat field-pair index
            std::uint32_t r1 = 0, r2 = 1;
            std::uint64_t c = fp_idx;
            for (r1 = 0; r1 < e; ++r1) {
                std::uint64_t span = e - 1 - r1;
                if (c < span) { r2 = r1 + 1 + static_cast<std::uint32_t>(c); break; }
                c -= span;
            }
            selected.push_back(Cross{by_r[r1][rest / per_field], by_r[r2][rest % per_field]});
        }
    }

    std::vector<SeparationCase> cases(selected.size());
    int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(selected.size()); ++s) {
        const Cross& c = selected[static_cast<std::size_t>(s)];
        cases[static_cast<std::size_t>(s)] = check_separation(all[c.i], all[c.j], psi);
    }

    report.comparisons = cases.size();
    for (const auto& c : cases)
        if (!c.ok) report.violations.push_back(c.record);
    report.details = json{{"mode", exhaustive ? "exhaustive" : "sampled"},
                          {"cross_pairs_total", total},
                          {"checked", cases.size()}};
    report.verdict = report.violations.empty() ? "PASS" : "FAIL";
    report.elapsed_ms = ms_since(t0);
    return report;
}

json StabilityRecord::to_json() const {
    return json{{"equal", equal},
                {"lhs", cusp::to_json(lhs)},
                {"rhs", cusp::to_json(rhs)},
                {"rhs_order_e1", cusp::to_json(rhs_order_e1)},
                {"rhs_order_en", cusp::to_json(rhs_order_en)}};
}

namespace {

EpsilonFactor with_omega_factor(EpsilonFactor eps, const RootOfUnity& omega_c_inv, std::uint64_t q) {
    eps.constant = QHalfExt::from_root(q, omega_c_inv) * eps.constant;
    return eps;
}

EpsilonFactor rhs_via_order(const HereditaryOrder& ord, const MultChar& chi, const AddChar& psi,
                            const mpz_class& budget) {
    CycNum tau;
    mpz_class size;
    mpz_class qz(static_cast<unsigned long>(chi.k.q()));
    mpz_pow_ui(size.get_mpz_t(), qz.get_mpz_t(),
               static_cast<unsigned long>(static_cast<std::uint64_t>(ord.n) * ord.n / ord.e *
                                          (static_cast<std::uint64_t>(ord.e) * chi.level + 1)));
    if (size <= budget) tau = matrix_gauss_full(ord, chi, psi, budget);
    else tau = matrix_gauss_reduced(ord, chi, psi);
    return eps_det_twist_via_order(ord, chi, psi, tau);
}

} // namespace

StabilityRecord stability_check(const AdmissiblePair& p, const MultChar& chi, const AddChar& psi,
                                const mpz_class& budget) {
    const FieldParams& k = p.theta.k;
    const std::uint32_t n = p.ext.n;
    if (chi.level == 0) throw std::invalid_argument("stability requires l(chi) >= 1");
    // strict bound m > 2 l(pi) = 2 l(theta)/n
    if (static_cast<std::uint64_t>(n) * chi.level <= 2 * static_cast<std::uint64_t>(p.theta.level))
        throw std::invalid_argument("stability requires l(chi) > 2 l(pi)");
    if ((static_cast<std::uint64_t>(n) * chi.level) % 2 == 0)
        throw std::invalid_argument("twisted level n*l(chi) must be odd for the epsilon formula");

    StabilityRecord rec;
    rec.lhs = eps_simple_cuspidal(twist_pair(chi, p), psi);

    MultChar omega = restrict_to_base(p.theta);
    RootOfUnity omega_c_inv = mult_char_eval(omega, chi.alpha, psi).inverse();
    rec.rhs = with_omega_factor(eps_det_twist(chi, n, psi), omega_c_inv, k.q());
    rec.rhs_order_e1 = with_omega_factor(rhs_via_order(make_order(n, 1), chi, psi, budget),
                                         omega_c_inv, k.q());
    rec.rhs_order_en = with_omega_factor(rhs_via_order(make_order(n, n), chi, psi, budget),
                                         omega_c_inv, k.q());
    rec.equal = rec.lhs == rec.rhs && rec.rhs == rec.rhs_order_e1 && rec.rhs == rec.rhs_order_en;
    return rec;
}

VerifyReport stability_sweep(const FieldParams& k, std::uint32_t n, std::uint64_t M,
                             std::uint32_t chi_level, const AddChar& psi, const mpz_class& budget,
                             unsigned threads) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<AdmissiblePair> pairs = enumerate_pairs(k, n, 1, M);
    std::vector<MultChar> chis = enumerate_mult_chars(k, TameExt{1, 0}, chi_level, 1);

    VerifyReport report;
    report.check = "stability";
    report.parameters = base_parameters(k, psi);
    report.parameters["n"] = n;
    report.parameters["M"] = M;
    report.parameters["chi_level"] = chi_level;
    report.pair_count = pairs.size();

    // The chi-only data is shared across pairs: epsilon(chi o det) through
    // all three routes, which must agree among themselves.
    struct ChiData {
        EpsilonFactor det_twist, order_e1, order_en;
    };
    std::vector<ChiData> chi_data(chis.size());
    int nthreads = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chis.size()); ++c) {
        auto& d = chi_data[static_cast<std::size_t>(c)];
        const MultChar& chi = chis[static_cast<std::size_t>(c)];
        d.det_twist = eps_det_twist(chi, n, psi);
        d.order_e1 = rhs_via_order(make_order(n, 1), chi, psi, budget);
        d.order_en = rhs_via_order(make_order(n, n), chi, psi, budget);
    }

    struct Hit {
        std::size_t pi, ci;
        json record;
    };
    std::vector<Hit> hits;
    std::uint64_t comparisons = 0;

#pragma omp parallel num_threads(nthreads)
    {
        std::vector<Hit> local;
        std::uint64_t local_cmp = 0;
#pragma omp for schedule(dynamic)
        for (std::int64_t flat = 0; flat < static_cast<std::int64_t>(pairs.size() * chis.size()); ++flat) {
            std::size_t pi = static_cast<std::size_t>(flat) / chis.size();
            std::size_t ci = static_cast<std::size_t>(flat) % chis.size();
            const AdmissiblePair& p = pairs[pi];
            const MultChar& chi = chis[ci];
            const ChiData& d = chi_data[ci];

            EpsilonFactor lhs = eps_simple_cuspidal(twist_pair(chi, p), psi);
            MultChar omega = restrict_to_base(p.theta);
            RootOfUnity omega_c_inv = mult_char_eval(omega, chi.alpha, psi).inverse();
            EpsilonFactor rhs = with_omega_factor(d.det_twist, omega_c_inv, k.q());
            EpsilonFactor rhs1 = with_omega_factor(d.order_e1, omega_c_inv, k.q());
            EpsilonFactor rhsn = with_omega_factor(d.order_en, omega_c_inv, k.q());
            ++local_cmp;
            bool ok = lhs == rhs && rhs == rhs1 && rhs == rhsn;
            if (!ok) {
                StabilityRecord rec{ok, lhs, rhs, rhs1, rhsn};
                json rj = rec.to_json();
                rj["pair"] = cusp::to_json(p);
                rj["chi"] = cusp::to_json(chi);
                local.push_back(Hit{pi, ci, std::move(rj)});
            }
        }
#pragma omp critical
        {
            hits.insert(hits.end(), local.begin(), local.end());
            comparisons += local_cmp;
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.pi != b.pi ? a.pi < b.pi : a.ci < b.ci;
    });

    report.comparisons = comparisons;
    for (auto& h : hits) report.violations.push_back(std::move(h.record));
    report.details = json{{"chi_count", chis.size()}};
    report.verdict = report.violations.empty() ? "PASS" : "FAIL";
    report.elapsed_ms = ms_since(t0);
    return report;
}

} // namespace cusp
