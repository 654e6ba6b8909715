#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fermat/shiftinv.hpp"
#include "test_support.hpp"

using namespace fermat;
using testsupport::random_poly;

namespace {

Complex dot(const LinearForm& form, const std::vector<Complex>& c) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) s += form.coeffs()[j] * c[j];
    return s;
}

// rank via modulus-pivoted elimination on the forms-by-variables matrix
std::size_t rank_of(const std::vector<LinearForm>& forms) {
    if (forms.empty()) return 0;
    std::size_t rows = forms.size(), cols = forms[0].dim();
    std::vector<std::vector<Complex>> a(rows);
    for (std::size_t r = 0; r < rows; ++r) a[r] = forms[r].coeffs();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        for (std::size_t r = rank + 1; r < rows; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            Complex f = a[r][col] / a[rank][col];
            for (std::size_t k = col; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("kernel basis in C^2 is the (c2, -c1) direction") {
    std::vector<Complex> c{Complex(1.5, 0.5), Complex(-0.25, 2.0)};
    KernelBasis basis = kernel_basis(c);
    REQUIRE(basis.forms.size() == 1);
    CHECK(std::abs(dot(basis.forms[0], c)) < 1e-12);
    // parallel to (c2, -c1): cross-determinant vanishes
    Complex det = basis.forms[0].coeffs()[0] * (-c[0]) - basis.forms[0].coeffs()[1] * c[1];
    CHECK(std::abs(det) < 1e-12);
}

TEST_CASE("kernel basis for an axis shift") {
    std::vector<Complex> c{1.0, 0.0, 0.0};
    KernelBasis basis = kernel_basis(c);
    REQUIRE(basis.forms.size() == 2);
    for (const auto& form : basis.forms) {
        CHECK(std::abs(form.coeffs()[0]) < 1e-15);  // span of {d : d1 = 0}
        CHECK(std::abs(dot(form, c)) < 1e-15);
    }
    CHECK(rank_of(basis.forms) == 2);
}

TEST_CASE("kernel basis annihilates random shifts in C^3") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> c(3);
        for (auto& v : c) v = rng.cbox();
        if (std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) < 0.2) continue;
        KernelBasis basis = kernel_basis(c);
        REQUIRE(basis.forms.size() == 2);
        for (const auto& form : basis.forms) CHECK(std::abs(dot(form, c)) < 1e-12);
        CHECK(rank_of(basis.forms) == 2);
    }
}

TEST_CASE("zero shift is rejected") {
    std::vector<Complex> zero{0.0, 0.0};
    CHECK_THROWS_AS(kernel_basis(zero), std::invalid_argument);
}

TEST_CASE("build_invariant expands (c2 z1 - c1 z2)^5") {
    std::vector<Complex> c{Complex(0.3, 1.1), Complex(-0.7, 0.2)};
    KernelBasis basis = kernel_basis(c);
    InvariantPolySpec spec;
    spec.blocks.push_back(InvariantBlock{LinearForm({c[1], -c[0]}), 5, 1.0});
    SparsePoly phi = build_invariant(spec, basis);

    SparsePoly direct = LinearForm({c[1], -c[0]}).to_poly().pow(5);
    CHECK(approx_equal(phi, direct, 1e-13));
    CHECK(check_shift_invariant(phi, c, 1e-10).pass);
}

TEST_CASE("build_invariant reproduces the -(pi^2/25)(2 z1 + 7 z2)^2 block") {
    const double pi = std::acos(-1.0);
    std::vector<Complex> c{Complex(0.0, 7.0 * pi / 5.0), Complex(0.0, -2.0 * pi / 5.0)};
    // the form (2, 7) annihilates c: 2 c1 + 7 c2 = 0
    CHECK(std::abs(2.0 * c[0] + 7.0 * c[1]) < 1e-12);
    KernelBasis basis = kernel_basis(c);
    InvariantPolySpec spec;
    spec.blocks.push_back(InvariantBlock{LinearForm({2.0, 7.0}), 2, -pi * pi / 25.0});
    SparsePoly phi = build_invariant(spec, basis);
    CHECK(check_shift_invariant(phi, c, 1e-10).pass);

    MultiIndex z1z2(2);
    z1z2[0] = 1, z1z2[1] = 1;
    CHECK(std::abs(phi.coeff(z1z2) - Complex(-pi * pi / 25.0 * 28.0)) < 1e-12);
}

TEST_CASE("empty spec builds the zero polynomial") {
    std::vector<Complex> c{1.0, 1.0};
    SparsePoly zero = build_invariant(InvariantPolySpec{}, kernel_basis(c));
    CHECK(zero.is_zero());
}

TEST_CASE("out-of-span blocks are rejected with their index") {
    std::vector<Complex> c{1.0, 1.0};
    InvariantPolySpec spec;
    spec.blocks.push_back(InvariantBlock{LinearForm({1.0, -1.0}), 2, 1.0});  // fine: d.c = 0
    spec.blocks.push_back(InvariantBlock{LinearForm({1.0, 0.0}), 2, 1.0});   // d.c = 1
    try {
        build_invariant(spec, kernel_basis(c));
        FAIL("expected rejection");
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("block 1") != std::string::npos);
    }
}

TEST_CASE("build_invariant outputs are shift-invariant for random specs") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
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
        int blocks = rng.range(1, 3);
        for (int b = 0; b < blocks; ++b) {
            std::vector<Complex> coeffs(dim, 0.0);
            for (const auto& form : basis.forms) {
                Complex w = rng.cbox();
                for (std::size_t j = 0; j < dim; ++j) coeffs[j] += w * form.coeffs()[j];
            }
            spec.blocks.push_back(
                InvariantBlock{LinearForm(coeffs), 1u + (unsigned)rng.range(0, 3), rng.cbox()});
        }
        SparsePoly phi = build_invariant(spec, basis);
        auto report = check_shift_invariant(phi, c, 1e-10);
        CHECK(report.pass);
    }
}

TEST_CASE("build_invariant is linear in the spec") {
    Rng rng(19);
    std::vector<Complex> c{Complex(0.9, -0.4), Complex(0.3, 0.8)};
    KernelBasis basis = kernel_basis(c);
    auto random_spec = [&](int blocks) {
        InvariantPolySpec spec;
        for (int b = 0; b < blocks; ++b) {
            Complex w = rng.cbox();
            std::vector<Complex> coeffs{w * basis.forms[0].coeffs()[0],
                                        w * basis.forms[0].coeffs()[1]};
            spec.blocks.push_back(
                InvariantBlock{LinearForm(coeffs), 1u + (unsigned)rng.range(0, 2), rng.cbox()});
        }
        return spec;
    };
    for (int trial = 0; trial < 20; ++trial) {
        InvariantPolySpec a = random_spec(rng.range(1, 2));
        InvariantPolySpec b = random_spec(rng.range(1, 2));
        InvariantPolySpec both = a;
        both.blocks.insert(both.blocks.end(), b.blocks.begin(), b.blocks.end());
        SparsePoly sum = build_invariant(a, basis) + build_invariant(b, basis);
        CHECK(approx_equal(build_invariant(both, basis), sum, 1e-12));
    }
}

TEST_CASE("check_shift_invariant defect reporting") {
    std::vector<Complex> c{Complex(0.8, 0.1), Complex(-0.3, 0.6)};
    SparsePoly good = LinearForm({c[1], -c[0]}).to_poly().pow(3);
    CHECK(check_shift_invariant(good, c, 1e-12).pass);
    CHECK(check_shift_invariant(good, c, 1e-12).max_defect < 1e-12);

    std::vector<Complex> e1{1.0, 0.0};
    auto report = check_shift_invariant(SparsePoly::variable(2, 0), e1, 1e-9);
    CHECK_FALSE(report.pass);
    CHECK(report.max_defect == doctest::Approx(1.0));

    // any polynomial in z2 only is invariant when c2 = 0
    Rng rng(29);
    SparsePoly h(2);
    for (int d = 1; d <= 4; ++d) {
        MultiIndex m(2);
        m[1] = static_cast<std::uint32_t>(d);
        h.set_coeff(m, rng.cbox());
    }
    std::vector<Complex> c2zero{Complex(2.0, -1.0), 0.0};
    CHECK(check_shift_invariant(h, c2zero, 1e-12).pass);
}
