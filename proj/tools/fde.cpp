// fde — construct and verify entire solutions of the three Fermat-type
// functional-equation systems.
//
// Subcommands:
//   verify <manifest.fde>      check a manifest symbolically and numerically
//   construct <case-label>     build a solution family instance and verify it
//   examples                   run the built-in example suite
//
// Exit codes: 0 pass, 1 verification fail, 2 input/parameter error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fermat/families.hpp"
#include "fermat/fixtures.hpp"
#include "fermat/parser.hpp"
#include "fermat/systems.hpp"

namespace {

using namespace fermat;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FDE_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring invalid FDE_SEED value\n";
        }
    }
    return kDefaultSeed;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void print_report_text(std::ostream& os, const ResidualReport& report) {
    for (std::size_t e = 0; e < 2; ++e) {
        const auto& eq = report.eq[e];
        os << "  equation " << e + 1 << ": symbolic " << (eq.symbolic_zero ? "zero" : "NONZERO")
           << " (max coeff defect " << fmt(eq.max_coeff_defect) << "), numeric max rel residual "
           << fmt(eq.max_rel_residual);
        if (eq.skipped_points > 0) os << " (" << eq.skipped_points << " points skipped)";
        os << " -> " << (eq.symbolic_zero && eq.numeric_pass ? "pass" : "FAIL") << "\n";
    }
    for (const auto& w : report.warnings) os << "  warning: " << w << "\n";
    os << "  tol " << fmt(report.tol) << ", seed " << report.sampling.seed << ", points "
       << report.sampling.num_points << ", radius " << fmt(report.sampling.radius) << "\n";
    os << (report.pass() ? "PASS" : "FAIL") << "\n";
}

nlohmann::json report_to_json(const ResidualReport& report) {
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& eq : report.eq)
        eqs.push_back({{"symbolic_zero", eq.symbolic_zero},
                       {"max_coeff_defect", eq.max_coeff_defect},
                       {"max_rel_residual", eq.max_rel_residual},
                       {"skipped_points", eq.skipped_points},
                       {"pass", eq.symbolic_zero && eq.numeric_pass}});
    return {{"equations", eqs},
            {"warnings", report.warnings},
            {"tol", report.tol},
            {"seed", report.sampling.seed},
            {"points", report.sampling.num_points},
            {"radius", report.sampling.radius},
            {"pass", report.pass()}};
}

struct ConstructFlags {
    std::string n, k, c, xi1, xi2, B1, B2, B3, B4;
    std::string L, L1, L2, phi, psi, H, H1, H2;
    std::string alpha1, alpha2, beta, eta;
};

ParamOverrides build_overrides(const ConstructFlags& f) {
    ParamOverrides ov;
    auto scalar = [](const std::string& text) { return parse_complex(text); };
    if (!f.n.empty()) ov.n = static_cast<std::size_t>(std::stoull(f.n));
    if (!f.k.empty()) ov.k = std::stoi(f.k);
    std::size_t dim = ov.n.value_or(2);
    auto linear = [dim](const std::string& text) {
        ExpSum x = parse_expr(text, dim);
        if (!x.is_polynomial()) throw std::invalid_argument("linear form expected: " + text);
        return LinearForm::from_poly(x.as_polynomial());
    };
    auto poly = [dim](const std::string& text) {
        ExpSum x = parse_expr(text, dim);
        if (!x.is_polynomial()) throw std::invalid_argument("polynomial expected: " + text);
        return x.as_polynomial();
    };
    if (!f.c.empty()) {
        // same vector syntax as manifest files: (expr, expr, ...)
        const std::string& body = f.c;
        if (body.size() < 2 || body.front() != '(' || body.back() != ')')
            throw std::invalid_argument("--c expects (expr, ...)");
        std::vector<Complex> entries;
        int depth = 0;
        std::string current;
        for (char ch : body.substr(1, body.size() - 2)) {
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (ch == ',' && depth == 0) {
                entries.push_back(parse_complex(current));
                current.clear();
            } else {
                current += ch;
            }
        }
        entries.push_back(parse_complex(current));
        ov.shift = std::move(entries);
    }
    if (!f.xi1.empty()) ov.xi1 = scalar(f.xi1);
    if (!f.xi2.empty()) ov.xi2 = scalar(f.xi2);
    if (!f.B1.empty()) ov.B1 = scalar(f.B1);
    if (!f.B2.empty()) ov.B2 = scalar(f.B2);
    if (!f.B3.empty()) ov.B3 = scalar(f.B3);
    if (!f.B4.empty()) ov.B4 = scalar(f.B4);
    if (!f.alpha1.empty()) ov.alpha1 = scalar(f.alpha1);
    if (!f.alpha2.empty()) ov.alpha2 = scalar(f.alpha2);
    if (!f.beta.empty()) ov.beta = scalar(f.beta);
    if (!f.eta.empty()) ov.eta = scalar(f.eta);
    if (!f.L.empty()) ov.L1 = linear(f.L);
    if (!f.L1.empty()) ov.L1 = linear(f.L1);
    if (!f.L2.empty()) ov.L2 = linear(f.L2);
    if (!f.phi.empty()) ov.phi = poly(f.phi);
    if (!f.psi.empty()) ov.psi = poly(f.psi);
    if (!f.H.empty()) ov.H = poly(f.H);
    if (!f.H1.empty()) ov.H1 = poly(f.H1);
    if (!f.H2.empty()) ov.H2 = poly(f.H2);
    return ov;
}

int cmd_verify(const std::string& path, std::optional<double> tol,
               std::optional<std::uint64_t> seed, std::optional<int> points,
               std::optional<double> radius, const std::string& format) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    ManifestDocument doc;
    try {
        doc = parse_manifest(buffer.str());
    } catch (const std::exception& err) {
        std::cerr << "error: " << path << ": " << err.what() << "\n";
        return 2;
    }
    double use_tol = tol.value_or(doc.tol);
    Sampling sampling = doc.sampling;
    if (seed) sampling.seed = *seed;
    if (points) sampling.num_points = *points;
    if (radius) sampling.radius = *radius;

    try {
        ResidualReport report = verify(doc.manifest, use_tol, sampling);
        if (format == "json") {
            nlohmann::json j = report_to_json(report);
            j["manifest"] = path;
            if (!doc.manifest.provenance.empty()) j["provenance"] = doc.manifest.provenance;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "verify " << path;
            if (!doc.manifest.provenance.empty()) std::cout << " [" << doc.manifest.provenance << "]";
            std::cout << "\n";
            print_report_text(std::cout, report);
        }
        return report.pass() ? 0 : 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}

int cmd_construct(const std::string& label_text, const ConstructFlags& flags,
                  std::uint64_t seed, const std::string& out_path, const std::string& format) {
    auto label = parse_case_label(label_text);
    if (!label) {
        std::cerr << "error: unknown case label '" << label_text << "'\n";
        std::cerr << "known labels:";
        for (const auto& l : all_case_labels()) std::cerr << " " << to_string(l);
        std::cerr << "\n";
        return 2;
    }
    try {
        ParamOverrides overrides = build_overrides(flags);
        ConstructResult result = construct_from_label(*label, seed, overrides);

        for (const auto& rel : result.relations)
            std::cout << "relation " << rel.name << ": actual " << format_complex(rel.actual)
                      << ", required " << format_complex(rel.required) << ", defect "
                      << fmt(rel.defect) << "\n";

        ManifestDocument doc;
        doc.manifest = result.manifest;
        ResidualReport report = verify(doc.manifest, doc.tol, doc.sampling);
        if (format == "json") {
            std::cout << report_to_json(report).dump(2) << "\n";
        } else {
            print_report_text(std::cout, report);
        }
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return 2;
            }
            out << print_manifest(doc);
            std::cout << "wrote " << out_path << "\n";
        } else {
            std::cout << print_manifest(doc);
        }
        return report.pass() ? 0 : 1;
    } catch (const RelationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}

int cmd_examples(const std::string& only, std::optional<std::uint64_t> seed,
                 const std::string& format) {
    bool all_match = true;
    bool found = false;
    nlohmann::json rows = nlohmann::json::array();
    if (format != "json")
        std::printf("%-22s %-9s %-9s %-14s %s\n", "fixture", "expected", "symbolic",
                    "max_residual", "note");
    for (const auto& fixture : builtin_fixtures()) {
        if (!only.empty() && fixture.name != only) continue;
        found = true;
        Sampling sampling = fixture.doc.sampling;
        if (seed) sampling.seed = *seed;
        ResidualReport report = verify(fixture.doc.manifest, fixture.doc.tol, sampling);
        bool expected_pass = fixture.doc.expected != Expectation::Fail;
        bool matched = report.pass() == expected_pass;
        all_match = all_match && matched;
        double worst = std::max(report.eq[0].max_rel_residual, report.eq[1].max_rel_residual);
        if (format == "json") {
            rows.push_back({{"fixture", fixture.name},
                            {"expected", expected_pass ? "pass" : "fail"},
                            {"outcome", report.pass() ? "pass" : "fail"},
                            {"matched", matched},
                            {"symbolic", report.eq[0].symbolic_zero && report.eq[1].symbolic_zero},
                            {"max_rel_residual", worst},
                            {"note", fixture.note}});
        } else {
            std::printf("%-22s %-9s %-9s %-14s %s%s\n", fixture.name.c_str(),
                        expected_pass ? "pass" : "fail",
                        report.eq[0].symbolic_zero && report.eq[1].symbolic_zero ? "zero"
                                                                                : "nonzero",
                        fmt(worst).c_str(), fixture.note.c_str(),
                        matched ? "" : "  << UNEXPECTED OUTCOME");
        }
    }
    if (!found) {
        std::cerr << "error: no fixture named '" << only << "'\n";
        return 2;
    }
    if (format == "json") std::cout << rows.dump(2) << "\n";
    return all_match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fermat-type functional-equation system toolkit"};
    app.require_subcommand(1);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify a manifest file");
    std::string verify_path, verify_format = "text";
    std::optional<double> verify_tol, verify_radius;
    std::optional<std::uint64_t> verify_seed;
    std::optional<int> verify_points;
    verify_cmd->add_option("path", verify_path, "manifest file")->required();
    verify_cmd->add_option("--tol", verify_tol, "override tolerance");
    verify_cmd->add_option("--seed", verify_seed, "override sampling seed");
    verify_cmd->add_option("--points", verify_points, "override sample point count");
    verify_cmd->add_option("--radius", verify_radius, "override polydisc radius");
    verify_cmd->add_option("--format", verify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "construct a theorem-case solution");
    std::string label, out_path, construct_format = "text";
    std::optional<std::uint64_t> construct_seed;
    ConstructFlags flags;
    construct_cmd->add_option("case-label", label, "e.g. t1.i, t1.ii.c, t2.iii.a, t3.odd")
        ->required();
    construct_cmd->add_option("--out", out_path, "write the manifest here");
    construct_cmd->add_option("--seed", construct_seed, "seed for unpinned parameters");
    construct_cmd->add_option("--format", construct_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    construct_cmd->add_option("--n", flags.n, "ambient dimension");
    construct_cmd->add_option("--k", flags.k, "derivative order");
    construct_cmd->add_option("--c", flags.c, "shift vector, e.g. \"(1+i, 0)\"");
    construct_cmd->add_option("--xi1", flags.xi1, "xi_1");
    construct_cmd->add_option("--xi2", flags.xi2, "xi_2");
    construct_cmd->add_option("--B1", flags.B1, "constant B1");
    construct_cmd->add_option("--B2", flags.B2, "constant B2");
    construct_cmd->add_option("--B3", flags.B3, "constant B3");
    construct_cmd->add_option("--B4", flags.B4, "constant B4");
    construct_cmd->add_option("--L", flags.L, "linear form (case I)");
    construct_cmd->add_option("--L1", flags.L1, "linear form L1");
    construct_cmd->add_option("--L2", flags.L2, "linear form L2");
    construct_cmd->add_option("--phi", flags.phi, "shift-invariant polynomial Phi");
    construct_cmd->add_option("--psi", flags.psi, "shift-invariant polynomial Psi");
    construct_cmd->add_option("--H", flags.H, "z2 polynomial H");
    construct_cmd->add_option("--H1", flags.H1, "z2 polynomial H1");
    construct_cmd->add_option("--H2", flags.H2, "z2 polynomial H2");
    construct_cmd->add_option("--alpha1", flags.alpha1, "alpha_1");
    construct_cmd->add_option("--alpha2", flags.alpha2, "alpha_2");
    construct_cmd->add_option("--beta", flags.beta, "beta");
    construct_cmd->add_option("--eta", flags.eta, "eta");

    // examples
    auto* examples_cmd = app.add_subcommand("examples", "run the built-in example suite");
    std::string only, examples_format = "text";
    std::optional<std::uint64_t> examples_seed;
    examples_cmd->add_option("--only", only, "run a single fixture by name");
    examples_cmd->add_option("--seed", examples_seed, "override sampling seed");
    examples_cmd->add_option("--format", examples_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    if (verify_cmd->parsed())
        return cmd_verify(verify_path, verify_tol, verify_seed, verify_points, verify_radius,
                          verify_format);
    if (construct_cmd->parsed())
        return cmd_construct(label, flags, construct_seed.value_or(default_seed()), out_path,
                             construct_format);
    if (examples_cmd->parsed()) return cmd_examples(only, examples_seed, examples_format);
    return 2;
}
