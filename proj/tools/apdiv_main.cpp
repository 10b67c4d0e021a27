#include "apdiv/decompose.hpp"
#include "apdiv/divisor.hpp"
#include "apdiv/divisor_file.hpp"
#include "apdiv/errors.hpp"
#include "apdiv/numerics.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

using apdiv::Divisor;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ordered_json field_json(const apdiv::FieldPtr& f) {
    ordered_json j;
    j["describe"] = f->describe();
    ordered_json mp = ordered_json::array();
    for (const auto& c : f->minpoly) mp.push_back(apdiv::rat_to_string(c));
    j["minpoly"] = mp;
    j["interval"] = {apdiv::rat_to_string(f->lo), apdiv::rat_to_string(f->hi)};
    j["degree"] = f->degree();
    return j;
}

ordered_json matrix_json(const apdiv::ScalarMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int j = 0; j < m.size(); ++j) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < m.size(); ++k) row.push_back(apdiv::to_literal(m.at(j, k)));
        rows.push_back(row);
    }
    return rows;
}

ordered_json wedge_json(const apdiv::Wedge2& w) {
    ordered_json arr = ordered_json::array();
    for (const auto& [key, c] : w.terms())
        arr.push_back({key.first + 1, key.second + 1, apdiv::rat_to_string(c)});
    return arr;
}

std::string matrix_text(const apdiv::ScalarMatrix& m) {
    std::string out;
    for (int j = 0; j < m.size(); ++j) {
        out += "  row " + std::to_string(j + 1) + ":";
        for (int k = 0; k < m.size(); ++k) out += " " + apdiv::to_literal(m.at(j, k));
        out += "\n";
    }
    return out;
}

int run_check(const Divisor& d, bool json_mode) {
    apdiv::AMatrix a = apdiv::skew_matrix(d);
    bool symmetric = apdiv::is_symmetric(apdiv::gram_sum(d));
    bool criterion = a.entries.is_zero();
    if (json_mode) {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "check";
        j["field"] = field_json(d.field());
        j["m"] = d.m();
        j["pairs"] = d.pairs().size();
        j["gram_symmetric"] = symmetric;
        j["a_matrix"] = matrix_json(a.entries);
        j["ap_modulus"] = criterion;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "field: " << d.field()->describe() << "\n";
        std::cout << "m: " << d.m() << "\n";
        std::cout << "pairs: " << d.pairs().size() << "\n";
        std::cout << "gram symmetric: " << (symmetric ? "yes" : "no") << "\n";
        std::cout << "A-matrix:\n" << matrix_text(a.entries);
        std::cout << "AP-modulus: " << (criterion ? "YES" : "NO") << "\n";
    }
    return criterion ? 0 : 1;
}

int run_decompose(const Divisor& d, bool json_mode, const std::string& output) {
    std::vector<apdiv::DegeneratePair> pairs;
    apdiv::Certificate cert;
    try {
        std::tie(pairs, cert) = apdiv::decompose(d);
    } catch (const apdiv::NotSymmetricGram& e) {
        if (json_mode) {
            ordered_json j;
            j["schema"] = 1;
            j["command"] = "decompose";
            j["error"] = e.what();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "decompose failed: " << e.what() << "\n";
        }
        return 1;
    }
    const bool verified = apdiv::verify_certificate(d, pairs);
    const std::string cert_text = cert.to_text();
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "error: cannot write '" << output << "'\n";
            return 2;
        }
        out << cert_text;
    }
    if (json_mode) {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "decompose";
        j["degenerate_pairs"] = ordered_json::array();
        for (const auto& p : pairs) {
            ordered_json pj;
            pj["gamma"] = apdiv::to_literal(p.gamma);
            ordered_json nu = ordered_json::array();
            for (const auto& s : p.nu) nu.push_back(apdiv::to_literal(s));
            pj["nu"] = nu;
            j["degenerate_pairs"].push_back(pj);
        }
        j["certificate"] = cert_text;
        j["input_class"] = wedge_json(cert.input_class);
        j["output_class"] = wedge_json(cert.output_class);
        j["verified"] = verified;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "degenerate pairs: " << pairs.size() << "\n";
        std::cout << cert_text;
        std::cout << "verified: " << (verified ? "yes" : "no") << "\n";
    }
    return verified ? 0 : 1;
}

int run_classify(const Divisor& d, bool json_mode) {
    ordered_json arr = ordered_json::array();
    std::string text;
    for (std::size_t i = 0; i < d.pairs().size(); ++i) {
        const auto& p = d.pairs()[i];
        apdiv::PairClass c = apdiv::classify_pair(p.lambda, p.mu);
        if (json_mode) {
            ordered_json pj;
            pj["index"] = i + 1;
            pj["q_dependent"] = c.q_dependent;
            pj["r_dependent"] = c.r_dependent;
            pj["periodic"] = c.periodic;
            pj["holo_ap_divisor"] = c.holo_ap_divisor;
            pj["ap_modulus"] = c.ap_modulus;
            arr.push_back(pj);
        } else {
            text += "pair " + std::to_string(i + 1) + ": q_dependent=" +
                    (c.q_dependent ? "yes" : "no") + " r_dependent=" +
                    (c.r_dependent ? "yes" : "no") + " periodic=" +
                    (c.periodic ? "yes" : "no") + " holo_ap_divisor=" +
                    (c.holo_ap_divisor ? "yes" : "no") + " ap_modulus=" +
                    (c.ap_modulus ? "yes" : "no") + "\n";
        }
    }
    if (json_mode) {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "classify";
        j["pairs"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
    return 0;
}

int run_periods(const Divisor& d, bool json_mode) {
    bool any_dependent = false;
    ordered_json arr = ordered_json::array();
    std::string text;
    auto vec_literals = [](const apdiv::ScalarVec& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += apdiv::to_literal(v[i]);
        }
        return s + ")";
    };
    auto vec_floats = [](const apdiv::ScalarVec& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += fmt_double(apdiv::to_double(v[i]));
        }
        return s + ")";
    };
    for (std::size_t i = 0; i < d.pairs().size(); ++i) {
        const auto& p = d.pairs()[i];
        try {
            auto [p1, p2] = apdiv::periods(p.lambda, p.mu);
            if (json_mode) {
                ordered_json pj;
                pj["index"] = i + 1;
                ordered_json p1j = ordered_json::array(), p2j = ordered_json::array();
                ordered_json p1f = ordered_json::array(), p2f = ordered_json::array();
                for (const auto& s : p1) {
                    p1j.push_back(apdiv::to_literal(s));
                    p1f.push_back(apdiv::to_double(s));
                }
                for (const auto& s : p2) {
                    p2j.push_back(apdiv::to_literal(s));
                    p2f.push_back(apdiv::to_double(s));
                }
                pj["p1"] = p1j;
                pj["p1_float"] = p1f;
                pj["p2"] = p2j;
                pj["p2_float"] = p2f;
                arr.push_back(pj);
            } else {
                text += "pair " + std::to_string(i + 1) + ": P1=" + vec_literals(p1) +
                        " ~ " + vec_floats(p1) + "\n";
                text += "pair " + std::to_string(i + 1) + ": P2=" + vec_literals(p2) +
                        " ~ " + vec_floats(p2) + "\n";
            }
        } catch (const apdiv::RDependentPair&) {
            any_dependent = true;
            if (json_mode) {
                ordered_json pj;
                pj["index"] = i + 1;
                pj["error"] = "dependent over R: no periods";
                arr.push_back(pj);
            } else {
                text += "pair " + std::to_string(i + 1) +
                        ": dependent over R: no periods\n";
            }
        }
    }
    if (json_mode) {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "periods";
        j["pairs"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
    return any_dependent ? 1 : 0;
}

int run_verify_numeric(const Divisor& d, bool json_mode,
                       const apdiv::numerics::QuadratureParams& params,
                       unsigned long seed) {
    namespace num = apdiv::numerics;
    const int m = d.m();
    const double tol = params.tolerance;
    bool all_pass = true;

    ordered_json j;
    j["schema"] = 1;
    j["command"] = "verify-numeric";
    std::string text;

    // Calibration check against the bump integral (m = 2 only).
    if (m == 2) {
        num::BumpFunction phi =
            num::BumpFunction::make(num::default_bump_center(4), params.epsilon, 1.0);
        num::NumericReport rep = num::lebesgue_mean_check(phi, params);
        bool pass = rep.rel_error <= tol;
        all_pass = all_pass && pass;
        if (json_mode) {
            ordered_json cj;
            cj["value"] = rep.value;
            cj["reference"] = rep.reference;
            cj["abs_error"] = rep.abs_error;
            cj["rel_error"] = rep.rel_error;
            cj["pass"] = pass;
            j["mean_lebesgue_check"] = cj;
        } else {
            text += "mean-vs-lebesgue: value=" + fmt_double(rep.value) +
                    " reference=" + fmt_double(rep.reference) +
                    " rel_error=" + fmt_double(rep.rel_error) +
                    (pass ? " PASS" : " FAIL") + "\n";
        }
    }

    // Numeric A-matrix (sum over pairs) against the exact entries.
    apdiv::AMatrix exact = apdiv::skew_matrix(d);
    std::vector<std::vector<double>> numeric(m, std::vector<double>(m, 0.0));
    for (const auto& p : d.pairs()) {
        std::vector<double> lf, mf;
        for (const auto& s : p.lambda) lf.push_back(apdiv::to_double(s));
        for (const auto& s : p.mu) mf.push_back(apdiv::to_double(s));
        auto mat = num::mean_skew_matrix(lf, mf, params);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                numeric[a][b] += static_cast<double>(p.mult) * mat[a][b];
    }
    double max_err = 0;
    ordered_json entries = ordered_json::array();
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            double ex = apdiv::to_double(exact.entries.at(a, b));
            double err = std::abs(numeric[a][b] - ex);
            max_err = std::max(max_err, err);
            if (json_mode) {
                ordered_json ej;
                ej["j"] = a + 1;
                ej["k"] = b + 1;
                ej["numeric"] = numeric[a][b];
                ej["exact"] = ex;
                ej["abs_error"] = err;
                entries.push_back(ej);
            } else {
                text += "a[" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                        "]: numeric=" + fmt_double(numeric[a][b]) +
                        " exact=" + fmt_double(ex) + " abs_error=" + fmt_double(err) +
                        "\n";
            }
        }
    }
    bool a_pass = max_err <= tol;
    all_pass = all_pass && a_pass;

    if (json_mode) {
        j["a_matrix_entries"] = entries;
        j["a_matrix_max_abs_error"] = max_err;
        j["a_matrix_pass"] = a_pass;
        j["tolerance"] = tol;
        j["seed"] = seed;
        j["verdict"] = all_pass ? "PASS" : "FAIL";
        std::cout << j.dump(2) << "\n";
    } else {
        text += "a-matrix max abs_error: " + fmt_double(max_err) +
                (a_pass ? " PASS" : " FAIL") + "\n";
        text += std::string("verdict: ") + (all_pass ? "PASS" : "FAIL") + "\n";
        std::cout << text;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numeric checks for almost-periodic model divisors"};
    app.require_subcommand(1);

    std::string input, format = "text", output;
    apdiv::numerics::QuadratureParams params;
    unsigned long seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "divisor file")->required();
        cmd->add_option("--format", format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* c_check = app.add_subcommand("check", "exact AP-modulus criterion");
    add_common(c_check);
    CLI::App* c_dec = app.add_subcommand("decompose", "degenerate-pair certificate");
    add_common(c_dec);
    c_dec->add_option("--output", output, "also write the certificate to a file");
    CLI::App* c_cls = app.add_subcommand("classify", "per-pair classification");
    add_common(c_cls);
    CLI::App* c_per = app.add_subcommand("periods", "per-pair period vectors");
    add_common(c_per);
    CLI::App* c_num =
        app.add_subcommand("verify-numeric", "quadrature checks against exact values");
    add_common(c_num);
    c_num->add_option("--half-width", params.half_width, "box half-width");
    c_num->add_option("--nodes", params.nodes, "per-axis quadrature nodes");
    c_num->add_option("--lattice-radius", params.lattice_radius, "truncation radius");
    c_num->add_option("--epsilon", params.epsilon, "bump support radius");
    c_num->add_option("--tolerance", params.tolerance, "pass/fail threshold");
    c_num->add_option("--seed", seed, "reserved for randomized self-tests");

    CLI11_PARSE(app, argc, argv);

    try {
        Divisor d = apdiv::load_divisor_file(input);
        const bool json_mode = format == "json";
        if (c_check->parsed()) return run_check(d, json_mode);
        if (c_dec->parsed()) return run_decompose(d, json_mode, output);
        if (c_cls->parsed()) return run_classify(d, json_mode);
        if (c_per->parsed()) return run_periods(d, json_mode);
        if (c_num->parsed()) return run_verify_numeric(d, json_mode, params, seed);
    } catch (const apdiv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
