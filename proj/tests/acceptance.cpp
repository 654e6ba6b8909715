// Acceptance suite: one line per criterion, nonzero exit when any fails.
//
//   1. example-1 reproduction at 1e-9 (200 points, radius 0.5, < 1 s)
//   2. example-3/4/5 reproduction with the enforced relation values
//   3. erratum handling: examples 2 and 6 as printed vs corrected siblings
//   4. 100-draw property sweep over the case labels at 1e-8 (< 60 s)
//   5. ambiguity-resolution oracles pin exactly one candidate each
//   6. operator correctness (differences oracle, invariance, identity engine)
//   7. parser round trips and fixture files

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "fermat/families.hpp"
#include "fermat/fixtures.hpp"
#include "fermat/parser.hpp"
#include "fermat/systems.hpp"
#include "test_support.hpp"

using namespace fermat;
using testsupport::fd_derivative;
using testsupport::random_expsum;
using testsupport::random_point;
using testsupport::random_poly;

namespace {

int failures = 0;

void criterion(int index, const std::string& label, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& err) {
        detail = std::string("exception: ") + err.what();
    }
    std::printf("%s - criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", index, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double max_residual(const ResidualReport& report) {
    return std::max(report.eq[0].max_rel_residual, report.eq[1].max_rel_residual);
}

const Complex kI{0.0, 1.0};

Complex sample_xi(Rng& rng) {
    for (;;) {
        Complex xi = 1.3 * rng.cbox();
        Complex xi4 = xi * xi * xi * xi;
        if (std::abs(xi) >= 0.3 && std::abs(xi4 - 1.0) >= 0.1) return xi;
    }
}

SolutionManifest raw_t1_case1(Complex xi1, Complex xi2, const LinearForm& L,
                              const std::vector<Complex>& c, Complex B1, Complex B2) {
    SolutionManifest m;
    m.kind = SystemKind{SystemTag::Difference, 0};
    m.dim = L.dim();
    m.shift = c;
    SparsePoly base = L.to_poly();
    auto expo = [&](Complex b) { return (base + SparsePoly::constant(m.dim, b)).scaled(0.5); };
    m.f1 = ExpSum::exponential(expo(B1)).scaled((xi1 * xi1 + 1.0) / (2.0 * xi1));
    m.f2 = ExpSum::exponential(expo(B2)).scaled((xi2 * xi2 + 1.0) / (2.0 * xi2));
    m.g1 = base + SparsePoly::constant(m.dim, B1);
    m.g2 = base + SparsePoly::constant(m.dim, B2);
    return m;
}

SolutionManifest raw_t2_case1(Complex xi1, Complex xi2, const LinearForm& L, int k,
                              const std::vector<Complex>& c, Complex B1, Complex B2) {
    SolutionManifest m;
    m.kind = SystemKind{SystemTag::Pdd, k};
    m.dim = 2;
    m.shift = c;
    SparsePoly base = L.to_poly();
    Complex Lc = L.evaluate(c);
    auto expo = [&](Complex b) { return (base + SparsePoly::constant(2, b)).scaled(0.5); };
    m.f1 = ExpSum::exponential(expo(B2 - Lc)).scaled((xi2 * xi2 - 1.0) / (2.0 * kI * xi2));
    m.f2 = ExpSum::exponential(expo(B1 - Lc)).scaled((xi1 * xi1 - 1.0) / (2.0 * kI * xi1));
    m.g1 = base + SparsePoly::constant(2, B1);
    m.g2 = base + SparsePoly::constant(2, B2);
    return m;
}

bool relation_value(const ConstructResult& result, const std::string& prefix, Complex expected,
                    std::string& detail) {
    for (const auto& rel : result.relations) {
        if (rel.name.rfind(prefix, 0) != 0) continue;
        if (std::abs(rel.actual - expected) < 1e-9 && rel.defect < 1e-9) return true;
        detail += prefix + " actual " + format_complex(rel.actual) + " expected " +
                  format_complex(expected) + "; ";
        return false;
    }
    detail += "relation " + prefix + " not found in trace; ";
    return false;
}

}  // namespace

int main() {
    criterion(1, "example-1 reproduction (t1.i, xi=2, e^{L(c)}=-9/25) at 1e-9", [](std::string& d) {
        auto start = std::chrono::steady_clock::now();
        const auto& doc = fixture_by_name("example1").doc;
        ResidualReport report = verify(doc.manifest, 1e-9, Sampling{kDefaultSeed, 200, 0.5});
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[128];
        std::snprintf(buf, sizeof(buf), "max residual %.3g, %.3f s", max_residual(report), elapsed);
        d = buf;
        return report.pass() && max_residual(report) < 1e-9 && elapsed < 1.0;
    });

    criterion(2, "example-3/4/5 reproduction with enforced relation values", [](std::string& d) {
        bool ok = true;
        for (const char* name : {"example3", "example4", "example5"}) {
            const auto& doc = fixture_by_name(name).doc;
            ResidualReport report = verify(doc.manifest, 1e-9, doc.sampling);
            if (!report.pass() || max_residual(report) >= 1e-9) {
                d += std::string(name) + " residual " + std::to_string(max_residual(report)) + "; ";
                ok = false;
            }
        }
        // reconstruct example 4 and check the printed relation values:
        // e^{L1(c)} = i*a11^k = i, e^{L2(c)} = i*a21^k = 4i
        ParamOverrides ov;
        ov.k = 2;
        ov.L1 = LinearForm({1.0, 1.0});
        ov.L2 = LinearForm({2.0, 1.0});
        ov.shift = fixture_by_name("example4").doc.manifest.shift;
        ov.B1 = Complex(0.0, 2.0 * std::acos(-1.0));
        ov.B2 = Complex(0.0, std::acos(-1.0));
        ov.B3 = Complex(0.0, std::acos(-1.0));
        ov.B4 = Complex(0.0, std::acos(-1.0));
        ov.H1 = SparsePoly(2);
        ov.H2 = SparsePoly(2);
        ConstructResult ex4 = construct_from_label(*parse_case_label("t2.ii.a"), 1, ov);
        ok = relation_value(ex4, "e^{L1(c)}", kI, d) && ok;
        ok = relation_value(ex4, "e^{L2(c)}", 4.0 * kI, d) && ok;
        // example 3 via construct: e^{L(c)} = -9/25
        ParamOverrides ov3;
        ov3.k = 1;
        ov3.xi1 = Complex(2.0);
        ov3.xi2 = Complex(2.0);
        ov3.L1 = LinearForm({2.0, 1.0});
        ov3.shift = fixture_by_name("example3").doc.manifest.shift;
        ov3.B1 = Complex(0.0, std::acos(-1.0));
        ov3.B2 = Complex(0.0, std::acos(-1.0));
        ov3.H1 = SparsePoly(2);
        ConstructResult ex3 = construct_from_label(*parse_case_label("t2.i"), 1, ov3);
        ok = relation_value(ex3, "e^{L(c)}", Complex(-9.0 / 25.0), d) && ok;

        // the constructed pairs coincide with the published closed forms
        const ExpSum& f3 = fixture_by_name("example3").doc.manifest.f1;
        if (!approx_equal(f3, parse_expr("-1.25*i*exp(z1 + 0.5*z2)", 2), 1e-12)) {
            d += "example3 f1 shape mismatch; ";
            ok = false;
        }
        const ExpSum& f4 = fixture_by_name("example4").doc.manifest.f1;
        if (!approx_equal(f4, parse_expr("0.5*exp(z1 + z2) - 0.125*exp(2*z1 + z2)", 2), 1e-12)) {
            d += "example4 f1 shape mismatch; ";
            ok = false;
        }
        const ExpSum& f5 = fixture_by_name("example5").doc.manifest.f2;
        if (!approx_equal(
                f5,
                parse_expr("-(1/(4*i))*(exp(2*z1 + 3*z2 + z2^3) + i*exp(2*z1 - z2 + z2^5))", 2),
                1e-12)) {
            d += "example5 f2 shape mismatch; ";
            ok = false;
        }
        return ok;
    });

    criterion(3, "erratum fixtures recorded, corrected siblings pass at 1e-9", [](std::string& d) {
        bool ok = true;
        for (const auto& [printed, corrected] :
             {std::pair{"example2_as_printed", "example2_corrected"},
              std::pair{"example6_as_printed", "example6_corrected"}}) {
            const auto& bad = fixture_by_name(printed).doc;
            if (bad.expected != Expectation::Fail) {
                d += std::string(printed) + " must be recorded as expected=fail; ";
                ok = false;
            }
            if (verify(bad.manifest, bad.tol, bad.sampling).pass()) {
                d += std::string(printed) + " unexpectedly verifies; ";
                ok = false;
            }
            const auto& good = fixture_by_name(corrected).doc;
            ResidualReport report = verify(good.manifest, 1e-9, good.sampling);
            if (!report.pass()) {
                d += std::string(corrected) + " fails; ";
                ok = false;
            }
        }
        // the corrected example-6 sibling keeps the published solution pair
        const ExpSum& f6 = fixture_by_name("example6_corrected").doc.manifest.f1;
        ExpSum printed_f6 = parse_expr(
            "(1/(4*i))*(exp(2*i*z1 - z2 - z2^10) - exp(-2*i*z1 + z2 + z2^10))", 2);
        if (!approx_equal(f6, printed_f6, 1e-12)) {
            d += "example6 f1 shape mismatch; ";
            ok = false;
        }
        return ok;
    });

    criterion(4, "100-draw admissible sweep per case label at 1e-8 (< 60 s)", [](std::string& d) {
        auto start = std::chrono::steady_clock::now();
        Sampling sampling;
        sampling.num_points = 60;
        int built = 0;
        for (const auto& label : sweep_case_labels()) {
            for (std::uint64_t draw = 0; draw < 100; ++draw) {
                std::uint64_t seed = 1000003 * (draw + 1) + 17 * built;
                ConstructResult result = construct_from_label(label, seed);
                sampling.seed = seed;
                ResidualReport report = verify(result.manifest, 1e-8, sampling);
                if (!report.pass()) {
                    d = to_string(label) + " seed " + std::to_string(seed) + " residual " +
                        std::to_string(max_residual(report));
                    return false;
                }
            }
            ++built;
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%d labels x 100 draws in %.1f s",
                      static_cast<int>(sweep_case_labels().size()), elapsed);
        d = buf;
        return elapsed < 60.0;
    });

    criterion(5, "ambiguity oracles select exactly one candidate over 50 draws", [](std::string& d) {
        Rng rng(515151);
        Sampling sampling;
        sampling.num_points = 40;
        int b_statement = 0, b_proof = 0, a_proof = 0, a_statement = 0, draws = 0;
        while (draws < 50) {
            Complex xi1 = sample_xi(rng), xi2 = sample_xi(rng);
            if (std::abs(xi1 * xi1 - 2.0) < 0.1) continue;
            Complex a1 = 0.5 + 1.5 * Complex(rng.unit(), rng.unit());
            if (std::abs(a1 / 2.0 - 1.0) < 0.05) continue;
            int k = rng.range(1, 3);

            LinearForm L({rng.cbox(), rng.cbox() + Complex(1.2)});
            std::vector<Complex> dir{1.0, 0.4};
            if (std::abs(L.evaluate(dir)) < 0.2) continue;
            Complex B2 = rng.cbox();
            Complex statement_ratio = t1_case1_b_ratio(xi1, xi2);
            Complex proof_ratio =
                xi1 * xi1 * (xi2 * xi2 * xi2 * xi2 - 1.0) / (xi2 * xi2 * (xi1 * xi1 + 1.0));
            auto c = solve_shift_constraint(L, t1_case1_shift_target(xi1, xi2), dir, 0);
            if (verify(raw_t1_case1(xi1, xi2, L, c, B2 + std::log(statement_ratio), B2), 1e-9,
                       sampling)
                    .pass())
                ++b_statement;
            if (verify(raw_t1_case1(xi1, xi2, L, c, B2 + std::log(proof_ratio), B2), 1e-9,
                       sampling)
                    .pass())
                ++b_proof;

            LinearForm L2({a1, rng.cbox()});
            std::vector<Complex> dir2{1.0, 0.0};
            Complex B1 = B2 + std::log(statement_ratio);
            Complex ratio_part = t1_case1_shift_target(xi1, xi2);
            auto c_proof = solve_shift_constraint(L2, cpow_int(a1 / 2.0, 2 * k) * ratio_part, dir2, 0);
            auto c_statement =
                solve_shift_constraint(L2, cpow_int(a1 / 2.0, k) * ratio_part, dir2, 0);
            if (verify(raw_t2_case1(xi1, xi2, L2, k, c_proof, B1, B2), 1e-9, sampling).pass())
                ++a_proof;
            if (verify(raw_t2_case1(xi1, xi2, L2, k, c_statement, B1, B2), 1e-9, sampling).pass())
                ++a_statement;
            ++draws;
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "e^{B1-B2}: statement %d/50, proof %d/50; (a1/2) power: 2k %d/50, k %d/50",
                      b_statement, b_proof, a_proof, a_statement);
        d = buf;
        bool pinned = std::abs(t1_case1_b_ratio(2.0, 2.0) - Complex(1.0)) < 1e-15 &&
                      std::abs(t2_case1_shift_target(2.0, 2.0, 2.0, 1) - Complex(-9.0 / 25.0)) <
                          1e-15;
        return b_statement == 50 && b_proof == 0 && a_proof == 50 && a_statement == 0 && pinned;
    });

    criterion(6, "operator correctness: differences, invariance, identity engine",
              [](std::string& d) {
        Rng rng(616161);
        // derive vs Richardson on 50 random sums
        int checked = 0;
        while (checked < 50) {
            std::size_t dim = 1 + static_cast<std::size_t>(rng.range(0, 2));
            ExpSum x = random_expsum(rng, dim, 3);
            std::size_t axis = static_cast<std::size_t>(rng.range(0, static_cast<int>(dim) - 1));
            int order = rng.range(1, 2);
            auto z = random_point(rng, dim, 0.5);
            Complex exact = x.derivative(axis, static_cast<unsigned>(order)).evaluate(z);
            if (std::abs(exact) < 1e-8) continue;
            Complex numeric = fd_derivative(x, z, axis, order);
            if (std::abs(exact - numeric) > 1e-6 * std::abs(exact)) {
                d = "finite-difference mismatch";
                return false;
            }
            ++checked;
        }
        // shift-invariance of built invariants
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t dim = 2 + static_cast<std::size_t>(rng.range(0, 1));
            std::vector<Complex> c(dim);
            double biggest = 0.0;
            for (auto& v : c) {
                v = rng.cbox();
                biggest = std::max(biggest, std::abs(v));
            }
            if (biggest < 0.3) continue;
            KernelBasis basis = kernel_basis(c);
            InvariantPolySpec spec;
            for (int b = 0; b < 2; ++b) {
                std::vector<Complex> coeffs(dim, 0.0);
                for (const auto& form : basis.forms) {
                    Complex w = rng.cbox();
                    for (std::size_t j = 0; j < dim; ++j) coeffs[j] += w * form.coeffs()[j];
                }
                spec.blocks.push_back(InvariantBlock{LinearForm(coeffs),
                                                     1u + (unsigned)rng.range(0, 3), rng.cbox()});
            }
            SparsePoly phi = build_invariant(spec, basis);
            if (!check_shift_invariant(phi, c, 1e-10).pass) {
                d = "invariant defect above 1e-10";
                return false;
            }
        }
        // the cancellation identity behind every decomposition
        int pairs = 0;
        while (pairs < 100) {
            std::size_t dim = 1 + static_cast<std::size_t>(rng.range(0, 2));
            SparsePoly P = random_poly(rng, dim, 3, 3);
            SparsePoly Q = random_poly(rng, dim, 3, 3);
            if (P == Q) continue;
            ExpSum u = ExpSum::exponential(P), v = ExpSum::exponential(Q);
            ExpSum lhs =
                (u + v).scaled(0.5).squared() + (u - v).scaled(1.0 / (2.0 * kI)).squared();
            if (!(lhs - u * v).is_zero()) {
                d = "identity residual nonzero";
                return false;
            }
            ++pairs;
        }
        return true;
    });

    criterion(7, "parser round trips and shipped fixture files", [](std::string& d) {
        Rng rng(717171);
        for (int trial = 0; trial < 1000; ++trial) {
            std::size_t dim = 1 + static_cast<std::size_t>(rng.range(0, 2));
            ExpSum x = random_expsum(rng, dim, 3);
            if (!(parse_expr(print_expr(x), dim) == x)) {
                d = "expression round trip failed: " + print_expr(x);
                return false;
            }
        }
        for (const auto& fixture : builtin_fixtures()) {
            std::string path = std::string(FDE_FIXTURE_DIR) + "/" + fixture.name + ".fde";
            std::ifstream in(path);
            if (!in) {
                d = "missing fixture file " + path;
                return false;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            ManifestDocument doc = parse_manifest(buffer.str());
            if (print_manifest(doc) != buffer.str()) {
                d = "fixture file not byte-stable: " + path;
                return false;
            }
            ResidualReport report = verify(doc.manifest, doc.tol, doc.sampling);
            bool expected_pass = doc.expected != Expectation::Fail;
            if (report.pass() != expected_pass) {
                d = "fixture outcome mismatch: " + path;
                return false;
            }
        }
        return true;
    });

    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
