#include "fermat/fixtures.hpp"

#include <cmath>

#include "fermat/families.hpp"

namespace fermat {

namespace {

const double kPi = std::acos(-1.0);
const Complex kI{0.0, 1.0};

SparsePoly linear_poly(std::vector<Complex> coeffs) {
    return LinearForm(std::move(coeffs)).to_poly();
}

SparsePoly z2_power(unsigned degree, Complex coeff = 1.0) {
    SparsePoly p(2);
    MultiIndex m(2);
    m[1] = degree;
    p.set_coeff(m, coeff);
    return p;
}

ManifestDocument wrap(SolutionManifest m, Expectation expected) {
    ManifestDocument doc;
    doc.manifest = std::move(m);
    doc.expected = expected;
    return doc;
}

// xi1 = xi2 = 2, L = z1 + 2 z2, e^{L(c)} = -9/25, Phi = (c2 z1 - c1 z2)^5,
// B1 - B2 = 2 pi i.
Fixture make_example1() {
    LinearForm L({1.0, 2.0});
    std::vector<Complex> c =
        solve_shift_constraint(L, Complex(-9.0 / 25.0), {{Complex(1.0), Complex(1.0)}}, 0);

    KernelBasis basis = kernel_basis(c);
    InvariantPolySpec spec;
    spec.blocks.push_back(InvariantBlock{LinearForm({c[1], -c[0]}), 5, 1.0});
    SparsePoly phi = build_invariant(spec, basis);

    T1Params params;
    params.family = FamilyCase::I;
    params.dim = 2;
    params.shift = c;
    params.L1 = L;
    params.phi = phi;
    params.psi = SparsePoly(2);
    params.xi1 = params.xi2 = 2.0;
    params.B1 = 2.0 * kPi * kI;
    params.B2 = 0.0;

    auto result = construct_t1(params);
    result.manifest.provenance = "example1 t1.i";
    return Fixture{"example1",
                   "displayed solution shows the invariant block cubed; its definition uses "
                   "power 5, kept here",
                   wrap(std::move(result.manifest), Expectation::Pass)};
}

// As printed: c = (7 pi i/5, -2 pi i/5), B = (3 pi i/2, pi i, 2 pi i, pi i/2).
// The constants satisfy no listed subcase relation set: e^{L1(c)} = -1 and
// e^{L2(c)} = 1 select case (iii)(c), which needs e^{B3-B4} = i, but the
// printed B3, B4 give -i. Recorded as expected=fail.
Fixture make_example2_as_printed() {
    std::vector<Complex> c{7.0 * kPi * kI / 5.0, -2.0 * kPi * kI / 5.0};
    SparsePoly L1 = linear_poly({1.0, 1.0});
    SparsePoly L2 = linear_poly({2.0, -3.0});
    SparsePoly phi = linear_poly({2.0, 7.0}).pow(2).scaled(-kPi * kPi / 25.0);
    Complex B1 = 1.5 * kPi * kI, B2 = kPi * kI, B3 = 2.0 * kPi * kI, B4 = 0.5 * kPi * kI;

    auto expterm = [](const SparsePoly& p, Complex b) {
        return ExpSum::exponential(p + SparsePoly::constant(2, b));
    };
    SolutionManifest m;
    m.kind = SystemKind{SystemTag::Difference, 0};
    m.dim = 2;
    m.shift = c;
    m.f1 = (expterm(L1 + phi, B1) + expterm(L2, B3)).scaled(0.5);
    m.f2 = (expterm(L1 + phi, B2) + expterm(L2, B4)).scaled(0.5);
    m.g1 = L1 + L2 + phi + SparsePoly::constant(2, B1 + B3);
    m.g2 = L1 + L2 + phi + SparsePoly::constant(2, B2 + B4);
    m.provenance = "example2_as_printed t1.ii";
    return Fixture{"example2_as_printed",
                   "printed constants match no (ii)/(iii) subcase relation set",
                   wrap(std::move(m), Expectation::Fail)};
}

// Corrected sibling: keep c, L1, L2, Phi, B1, B2, B3 and rederive B4 from the
// case (iii)(c) relation e^{B3-B4} = i, giving B4 = 3 pi i/2.
Fixture make_example2_corrected() {
    std::vector<Complex> c{7.0 * kPi * kI / 5.0, -2.0 * kPi * kI / 5.0};
    KernelBasis basis = kernel_basis(c);
    InvariantPolySpec spec;
    spec.blocks.push_back(InvariantBlock{LinearForm({2.0, 7.0}), 2, -kPi * kPi / 25.0});

    T1Params params;
    params.family = FamilyCase::III;
    params.subcase = Sub::C;
    params.dim = 2;
    params.shift = c;
    params.L1 = LinearForm({1.0, 1.0});
    params.L2 = LinearForm({2.0, -3.0});
    params.phi = build_invariant(spec, basis);
    params.psi = SparsePoly(2);
    params.B1 = 1.5 * kPi * kI;
    params.B2 = kPi * kI;
    params.B3 = 2.0 * kPi * kI;
    params.B4 = 1.5 * kPi * kI;

    auto result = construct_t1(params);
    result.manifest.provenance = "example2_corrected t1.iii.c";
    return Fixture{"example2_corrected", "B4 rederived from e^{B3-B4} = i",
                   wrap(std::move(result.manifest), Expectation::Pass)};
}

// k = 1, xi1 = xi2 = 2, L = 2 z1 + z2, g1 = g2 = L + pi i, e^{L(c)} = -9/25.
Fixture make_example3() {
    LinearForm L({2.0, 1.0});
    T2Params params;
    params.family = FamilyCase::I;
    params.k = 1;
    params.L1 = L;
    params.H1 = SparsePoly(2);
    params.H2 = SparsePoly(2);
    params.xi1 = params.xi2 = 2.0;
    params.B1 = params.B2 = kPi * kI;
    params.shift =
        solve_shift_constraint(L, Complex(-9.0 / 25.0), {{Complex(1.0), Complex(0.0)}}, 0);

    auto result = construct_t2(params);
    result.manifest.provenance = "example3 t2.i";
    return Fixture{"example3", "", wrap(std::move(result.manifest), Expectation::Pass)};
}

// k = 2, L1 = z1 + z2, L2 = 2 z1 + z2, c = (2 log 2, pi i/2 - 2 log 2),
// case (ii)(a): e^{L1(c)} = i = i*a11^k, e^{L2(c)} = 4i = i*a21^k.
Fixture make_example4() {
    T2Params params;
    params.family = FamilyCase::II;
    params.subcase = Sub::A;
    params.k = 2;
    params.L1 = LinearForm({1.0, 1.0});
    params.L2 = LinearForm({2.0, 1.0});
    params.H1 = SparsePoly(2);
    params.H2 = SparsePoly(2);
    params.shift = {2.0 * std::log(2.0), 0.5 * kPi * kI - 2.0 * std::log(2.0)};
    params.B1 = 2.0 * kPi * kI;
    params.B2 = kPi * kI;
    params.B3 = kPi * kI;
    params.B4 = kPi * kI;

    auto result = construct_t2(params);
    result.manifest.provenance = "example4 t2.ii.a";
    return Fixture{"example4", "", wrap(std::move(result.manifest), Expectation::Pass)};
}

// k = 1, L1 = 2 z1 + 3 z2, L2 = 2 z1 - z2, H1 = z2^3, H2 = z2^5,
// c = (log(2)/2, 0), case (iii)(a).
Fixture make_example5() {
    T2Params params;
    params.family = FamilyCase::III;
    params.subcase = Sub::A;
    params.k = 1;
    params.L1 = LinearForm({2.0, 3.0});
    params.L2 = LinearForm({2.0, -1.0});
    params.H1 = z2_power(3);
    params.H2 = z2_power(5);
    params.shift = {0.5 * std::log(2.0), 0.0};
    params.B1 = kPi * kI;
    params.B2 = 0.5 * kPi * kI;
    params.B3 = 0.5 * kPi * kI;
    params.B4 = kPi * kI;

    auto result = construct_t2(params);
    result.manifest.provenance = "example5 t2.iii.a";
    return Fixture{"example5", "", wrap(std::move(result.manifest), Expectation::Pass)};
}

// As printed: f1 = f2 = [e^{2i z1 - z2 - z2^10} - e^{-2i z1 + z2 + z2^10}]/(4i)
// with the shift constraint -2i c1 + c2 = (2m+1) pi i. Reading it with c1 = 0
// gives c = (0, pi i): then H = z2^10 is not c2-periodic and the system fails.
Fixture make_example6_as_printed() {
    SparsePoly P = linear_poly({2.0 * kI, -1.0}) - z2_power(10);
    SolutionManifest m;
    m.kind = SystemKind{SystemTag::DiffPdd, 1};
    m.dim = 2;
    m.shift = {0.0, kPi * kI};
    m.f1 = (ExpSum::exponential(P) - ExpSum::exponential(-P)).scaled(1.0 / (4.0 * kI));
    m.f2 = m.f1;
    m.provenance = "example6_as_printed t3.odd";
    return Fixture{"example6_as_printed",
                   "printed constraint admits c2 != 0, which breaks the z2^10 periodicity",
                   wrap(std::move(m), Expectation::Fail)};
}

// Corrected sibling: same solution pair with alpha1 = -2i (the sinh form
// absorbs the printed sign), c rederived from e^{L(c)} = -1 with c2 = 0.
Fixture make_example6_corrected() {
    T3Params params;
    params.odd_case = true;
    params.k = 1;
    params.alpha1 = -2.0 * kI;
    params.alpha2 = 1.0;
    params.beta = 0.0;
    params.eta = 4.0 * kPi * kI;
    params.H = z2_power(10);
    params.shift =
        solve_shift_constraint(LinearForm({-2.0 * kI, 1.0}), Complex(-1.0),
                               {{Complex(1.0), Complex(0.0)}}, 0);

    auto result = construct_t3(params);
    result.manifest.provenance = "example6_corrected t3.odd";
    return Fixture{"example6_corrected", "c rederived from e^{L(c)} = -1 with c2 = 0",
                   wrap(std::move(result.manifest), Expectation::Pass)};
}

}  // namespace

const std::vector<Fixture>& builtin_fixtures() {
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> out;
        out.push_back(make_example1());
        out.push_back(make_example2_as_printed());
        out.push_back(make_example2_corrected());
        out.push_back(make_example3());
        out.push_back(make_example4());
        out.push_back(make_example5());
        out.push_back(make_example6_as_printed());
        out.push_back(make_example6_corrected());
        return out;
    }();
    return fixtures;
}

const Fixture& fixture_by_name(std::string_view name) {
    for (const auto& f : builtin_fixtures())
        if (f.name == name) return f;
    throw std::invalid_argument("no fixture named '" + std::string(name) + "'");
}

}  // namespace fermat
