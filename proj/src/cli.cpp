#include "cusp/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cusp/errors.hpp"
#include "cusp/hereditary.hpp"
#include "cusp/serialize.hpp"
#include "cusp/verify.hpp"

namespace cusp {

namespace {

struct CommonOpts {
    std::uint64_t p = 0;
    std::uint32_t f = 1;
    std::uint32_t n = 1;
    std::uint32_t level = 1;
    std::uint64_t M = 1;
    std::uint32_t e = 1;
    std::uint32_t chi_level = 1;
    std::uint64_t samples = 200;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::uint64_t budget = 20000000;
    std::uint32_t psi_b = 1;
    std::string out = "-";
    std::string format = "json";
};

void add_field_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "residue characteristic (prime)")->required();
    cmd->add_option("--f", o.f, "residue degree, q = p^f");
    cmd->add_option("--psi-b", o.psi_b, "twisting unit of the additive character");
}

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "output path, '-' for stdout");
    cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void write_output(const CommonOpts& o, const std::string& text) {
    if (o.out == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream f(o.out);
        if (!f) throw std::runtime_error("cannot open output path " + o.out);
        f << text << "\n";
    }
}

std::string report_csv(const json& j) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [key, value] : j.items()) {
        if (key == "violations" || key == "pairs" || key == "details") continue;
        os << key << "," << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    if (j.contains("violations")) os << "violations," << j["violations"].size() << "\n";
    return os.str();
}

// Flattens cyclotomic constants for csv rows.
std::string csv_of_constant(const json& qhalf) {
    auto cyc = [](const json& c) {
        std::string s = std::to_string(c["order"].get<std::uint64_t>()) + ":";
        bool first = true;
        for (const auto& pair : c["coeffs"]) {
            if (!first) s += ";";
            first = false;
            s += pair[0].get<std::string>() + "/" + pair[1].get<std::string>();
        }
        return s;
    };
    return cyc(qhalf["base"]) + "+sqrt(" + qhalf["q"].dump() + ")*" + cyc(qhalf["half"]);
}

FieldParams make_params(const CommonOpts& o) { return FieldParams::make(o.p, o.f); }

AddChar make_psi(const CommonOpts& o, const FieldParams& k) {
    if (o.psi_b == 0 || o.psi_b >= k.q())
        throw std::invalid_argument("psi twisting unit must be a nonzero residue");
    return AddChar{k, static_cast<ResElem>(o.psi_b)};
}

int emit_report(const CommonOpts& o, const VerifyReport& report) {
    if (o.format == "csv") write_output(o, report_csv(report.to_json()));
    else write_output(o, report.to_json().dump(2));
    return report.exit_code();
}

json gauss_report_json(const GaussReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back(json{{"chi", to_json(c.chi)},
                              {"tau_matrix", to_json(c.tau_matrix)},
                              {"tau_reduced", to_json(c.tau_reduced)},
                              {"tau_tate", to_json(c.tau_tate)},
                              {"reduced_matches", c.reduced_matches},
                              {"identity_holds", c.identity_holds},
                              {"lemma41_holds", c.lemma41_holds}});
    }
    return json{{"schema", 1},
                {"check", "gauss"},
                {"verdict", r.pass() ? "PASS" : "FAIL"},
                {"parameters", json{{"q", r.q}, {"n", r.n}, {"e", r.e}, {"chi_level", r.level}}},
                {"enumerated_per_chi", r.enumerated.get_str()},
                {"easy_identity_holds", r.easy_identity_holds},
                {"checks", checks},
                {"timing", json{{"elapsed_ms", r.elapsed_ms}}}};
}

std::string pretty_root(const json& r) {
    return "zeta_" + r["order"].dump() + "^" + r["exp"].dump();
}

std::string pretty_pair(const json& p) {
    std::ostringstream os;
    os << "E(n=" << p["n"] << ", r=" << p["r"] << ")  theta: level=" << p["level"]
       << " pi=" << pretty_root(p["pi"]) << " teich=" << p["teich"]
       << " alpha=" << p["alpha"]["text"].get<std::string>();
    return os.str();
}

int run_show(const std::string& in_path) {
    json j;
    if (in_path == "-" || in_path.empty()) {
        j = json::parse(std::cin);
    } else {
        std::ifstream f(in_path);
        if (!f) throw std::runtime_error("cannot open " + in_path);
        j = json::parse(f);
    }
    if (j.contains("check") && j.contains("verdict")) {
        std::cout << j["check"].get<std::string>() << ": " << j["verdict"].get<std::string>() << "\n";
        if (j.contains("parameters")) std::cout << "parameters: " << j["parameters"].dump() << "\n";
        if (j.contains("pair_count")) std::cout << "pairs: " << j["pair_count"] << "\n";
        if (j.contains("comparisons")) std::cout << "comparisons: " << j["comparisons"] << "\n";
        if (j.contains("violations"))
            std::cout << "violations: " << j["violations"].size() << "\n";
        for (const auto& v : j.value("violations", json::array()))
            std::cout << "  " << v.dump() << "\n";
        return 0;
    }
    if (j.contains("pairs")) {
        for (const auto& item : j["pairs"]) {
            if (item.contains("pair")) {
                std::cout << pretty_pair(item["pair"]) << "\n";
                if (item.contains("epsilon"))
                    std::cout << "    epsilon: exponent " << item["epsilon"]["exponent"]
                              << ", constant " << csv_of_constant(item["epsilon"]["constant"]) << "\n";
            } else {
                std::cout << pretty_pair(item) << "\n";
            }
        }
        return 0;
    }
    if (j.contains("exponent") && j.contains("constant")) {
        std::cout << "epsilon: C * q^(" << j["exponent"] << "(1/2-s)), C = "
                  << csv_of_constant(j["constant"]) << "\n";
        return 0;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"exact epsilon-factor verification for simple cuspidal representations"};
    app.require_subcommand(1);

    CommonOpts o;
    std::optional<std::int64_t> corrupt;
    std::string show_in = "-";

    auto* cmd_enum = app.add_subcommand("enumerate", "list admissible pairs");
    add_field_opts(cmd_enum, o);
    cmd_enum->add_option("--n", o.n, "extension degree")->required();
    cmd_enum->add_option("--level", o.level, "character level 2k+1");
    cmd_enum->add_option("--M", o.M, "root order bound for theta(u)");
    add_output_opts(cmd_enum, o);

    auto* cmd_eps = app.add_subcommand("epsilon", "epsilon factors of enumerated pairs");
    add_field_opts(cmd_eps, o);
    cmd_eps->add_option("--n", o.n, "extension degree")->required();
    cmd_eps->add_option("--level", o.level, "character level 2k+1");
    cmd_eps->add_option("--M", o.M, "root order bound for theta(u)");
    add_output_opts(cmd_eps, o);

    auto* cmd_conv = app.add_subcommand("verify-converse", "fingerprint equality iff isomorphism");
    add_field_opts(cmd_conv, o);
    cmd_conv->add_option("--n", o.n, "extension degree")->required();
    cmd_conv->add_option("--M", o.M, "root order bound for theta(u)");
    cmd_conv->add_option("--threads", o.threads, "worker threads (0 = available parallelism)");
    cmd_conv->add_option("--corrupt", corrupt, "negative control: corrupt this fingerprint index");
    add_output_opts(cmd_conv, o);

    auto* cmd_stab = app.add_subcommand("verify-stability", "stability of epsilon under high-level twists");
    add_field_opts(cmd_stab, o);
    cmd_stab->add_option("--n", o.n, "extension degree")->required();
    cmd_stab->add_option("--M", o.M, "root order bound for theta(u)");
    cmd_stab->add_option("--chi-level", o.chi_level, "level of the twisting characters");
    cmd_stab->add_option("--threads", o.threads, "worker threads");
    cmd_stab->add_option("--budget", o.budget, "enumeration budget");
    add_output_opts(cmd_stab, o);

    auto* cmd_gauss = app.add_subcommand("verify-gauss", "matrix Gauss sum identities");
    add_field_opts(cmd_gauss, o);
    cmd_gauss->add_option("--n", o.n, "matrix size")->required();
    cmd_gauss->add_option("--e", o.e, "ramification index of the order");
    cmd_gauss->add_option("--chi-level", o.chi_level, "level of the characters");
    cmd_gauss->add_option("--threads", o.threads, "worker threads");
    cmd_gauss->add_option("--budget", o.budget, "enumeration budget");
    add_output_opts(cmd_gauss, o);

    auto* cmd_sep = app.add_subcommand("verify-field-separation", "cross-field twist separation");
    add_field_opts(cmd_sep, o);
    cmd_sep->add_option("--n", o.n, "extension degree")->required();
    cmd_sep->add_option("--level", o.level, "character level 2k+1");
    cmd_sep->add_option("--M", o.M, "root order bound for theta(u)");
    cmd_sep->add_option("--samples", o.samples, "sample count (0 = exhaustive)");
    cmd_sep->add_option("--seed", o.seed, "sampling seed");
    cmd_sep->add_option("--threads", o.threads, "worker threads");
    add_output_opts(cmd_sep, o);

    auto* cmd_show = app.add_subcommand("show", "pretty-print serialized objects");
    cmd_show->add_option("--in", show_in, "input path, '-' for stdin");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_show->parsed()) return run_show(show_in);

        FieldParams k = make_params(o);
        AddChar psi = make_psi(o, k);

        if (cmd_enum->parsed() || cmd_eps->parsed()) {
            auto pairs = enumerate_pairs(k, o.n, o.level, o.M);
            json out = json{{"schema", 1},
                            {"command", cmd_enum->parsed() ? "enumerate" : "epsilon"},
                            {"parameters", json{{"p", k.p()}, {"f", k.f()}, {"q", k.q()},
                                                {"n", o.n}, {"level", o.level}, {"M", o.M}}},
                            {"count", pairs.size()}};
            json list = json::array();
            for (const auto& p : pairs) {
                if (cmd_eps->parsed()) {
                    list.push_back(json{{"pair", to_json(p)},
                                        {"epsilon", to_json(eps_simple_cuspidal(p, psi))}});
                } else {
                    list.push_back(to_json(p));
                }
            }
            out["pairs"] = list;
            if (o.format == "csv") {
                std::ostringstream os;
                os << "index,n,r,level,pi,teich,alpha\n";
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    const auto& p = pairs[i];
                    os << i << "," << p.ext.n << "," << p.ext.r << "," << p.theta.level << ","
                       << "zeta_" << p.theta.pi_value.order << "^" << p.theta.pi_value.exp << ","
                       << p.theta.teich_exp << "," << p.theta.alpha.to_string() << "\n";
                }
                write_output(o, os.str());
            } else {
                write_output(o, out.dump(2));
            }
            return 0;
        }

        if (cmd_conv->parsed()) {
            std::optional<std::size_t> ci;
            if (corrupt) ci = static_cast<std::size_t>(*corrupt);
            return emit_report(o, converse_check(k, o.n, o.M, psi, o.threads, ci));
        }
        if (cmd_stab->parsed()) {
            return emit_report(o, stability_sweep(k, o.n, o.M, o.chi_level, psi,
                                                  mpz_class(static_cast<unsigned long>(o.budget)),
                                                  o.threads));
        }
        if (cmd_gauss->parsed()) {
            GaussReport r = verify_gauss_identity(k, o.n, o.e, o.chi_level, psi,
                                                  mpz_class(static_cast<unsigned long>(o.budget)),
                                                  o.threads);
            json rj = gauss_report_json(r);
            if (o.format == "csv") write_output(o, report_csv(rj));
            else write_output(o, rj.dump(2));
            return r.pass() ? 0 : 1;
        }
        if (cmd_sep->parsed()) {
            if (o.level % 2 == 0) throw std::invalid_argument("level must be odd (2k+1)");
            std::uint32_t kk = (o.level - 1) / 2;
            return emit_report(o, field_separation_check(k, o.n, kk, o.samples, o.seed, psi, o.M,
                                                         o.threads));
        }
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace cusp
