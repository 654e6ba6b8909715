#include "fermat/families.hpp"

#include <algorithm>
#include <cmath>

namespace fermat {

namespace {

constexpr double kRelationTol = 1e-9;
constexpr double kInvarianceTol = 1e-10;
const Complex kI{0.0, 1.0};

double two_pi() { return 2.0 * std::acos(-1.0); }

void check_relation(std::vector<RelationCheck>& trace, const std::string& name, Complex actual,
                    Complex required) {
    double defect = std::abs(actual - required) / (1.0 + std::abs(required));
    trace.push_back(RelationCheck{name, actual, required, defect});
    if (defect > kRelationTol) throw RelationError(name, defect);
}

void check_invariant_poly(const SparsePoly& p, std::span<const Complex> c, const std::string& name) {
    auto report = check_shift_invariant(p, c, kInvarianceTol);
    if (!report.pass) throw RelationError(name + " is not shift-invariant under c", report.max_defect);
}

void check_xi(Complex xi, const std::string& name) {
    if (std::abs(xi) < kRelationTol) throw RelationError(name + " != 0", std::abs(xi));
    Complex xi4 = xi * xi * xi * xi;
    if (std::abs(xi4 - 1.0) < kRelationTol)
        throw RelationError(name + "^4 != 1", std::abs(xi4 - 1.0));
}

void check_z2_only(const SparsePoly& h, const std::string& name) {
    if (h.dim() != 2) throw std::invalid_argument(name + " must live in C^2");
    if (h.degree_in(0) != 0) throw RelationError(name + " depends on z2 only", h.degree_in(0));
}

SparsePoly plus_constant(const SparsePoly& p, Complex value) {
    return p + SparsePoly::constant(p.dim(), value);
}

std::string sign_prefix(int s) { return s > 0 ? "" : "-"; }

}  // namespace

Complex cpow_int(Complex base, int exponent) {
    if (exponent < 0) return 1.0 / cpow_int(base, -exponent);
    Complex acc = 1.0;
    for (int i = 0; i < exponent; ++i) acc *= base;
    return acc;
}

Complex t1_case1_shift_target(Complex xi1, Complex xi2) {
    Complex a = xi1 * xi1, b = xi2 * xi2;
    return -((a - 1.0) * (b - 1.0)) / ((a + 1.0) * (b + 1.0));
}

// Statement formula; the proof's variant with denominator xi2^2(xi1^2+1) is a
// typo (it fails direct verification for generic xi), see the oracle test.
Complex t1_case1_b_ratio(Complex xi1, Complex xi2) {
    Complex a = xi1 * xi1, b = xi2 * xi2;
    return a * (b * b - 1.0) / (b * (a * a - 1.0));
}

// Proof formula with (a1/2)^{2k}; the statement prints (a1/2)^k, which fails
// direct verification for generic a1, see the oracle test.
Complex t2_case1_shift_target(Complex xi1, Complex xi2, Complex a1, int k) {
    return cpow_int(a1 / 2.0, 2 * k) * t1_case1_shift_target(xi1, xi2);
}

std::pair<int, int> subcase_signs(Sub sub) {
    switch (sub) {
        case Sub::A: return {+1, +1};
        case Sub::B: return {+1, -1};
        case Sub::C: return {-1, +1};
        case Sub::D: return {-1, -1};
    }
    throw std::logic_error("subcase_signs: unreachable");
}

ConstructResult construct_t1(const T1Params& p) {
    const std::size_t n = p.dim;
    if (n < 1) throw std::invalid_argument("construct_t1: dimension must be >= 1");
    if (p.shift.size() != n || p.L1.dim() != n || p.phi.dim() != n)
        throw std::invalid_argument("construct_t1: dimension mismatch");

    std::vector<RelationCheck> trace;
    SolutionManifest m;
    m.kind = SystemKind{SystemTag::Difference, 0};
    m.dim = n;
    m.shift = p.shift;

    if (p.family == FamilyCase::I) {
        check_xi(p.xi1, "xi1");
        check_xi(p.xi2, "xi2");
        check_invariant_poly(p.phi, p.shift, "Phi");

        Complex eLc = std::exp(p.L1.evaluate(p.shift));
        Complex target = t1_case1_shift_target(p.xi1, p.xi2);
        check_relation(trace, "e^{L(c)} = -(xi1^2-1)(xi2^2-1)/((xi1^2+1)(xi2^2+1))", eLc, target);

        Complex ratio = t1_case1_b_ratio(p.xi1, p.xi2);
        check_relation(trace, "e^{B1-B2} = xi1^2(xi2^4-1)/(xi2^2(xi1^4-1))",
                       std::exp(p.B1 - p.B2), ratio);

        // Guard against transcription drift: the two half relations of the
        // derivation must square to the same e^{2L(c)}.
        Complex h1 = (p.xi2 - 1.0 / p.xi2) / (kI * (p.xi1 + 1.0 / p.xi1));
        Complex h2 = (p.xi1 - 1.0 / p.xi1) / (kI * (p.xi2 + 1.0 / p.xi2));
        check_relation(trace, "consistency e^{2L(c)} = (h1*h2)^2", eLc * eLc,
                       (h1 * h2) * (h1 * h2));

        SparsePoly base = p.L1.to_poly() + p.phi;
        Complex nu1 = (p.xi1 * p.xi1 + 1.0) / (2.0 * p.xi1);
        Complex nu2 = (p.xi2 * p.xi2 + 1.0) / (2.0 * p.xi2);
        m.f1 = ExpSum::exponential(plus_constant(base, p.B1).scaled(0.5)).scaled(nu1);
        m.f2 = ExpSum::exponential(plus_constant(base, p.B2).scaled(0.5)).scaled(nu2);
        m.g1 = plus_constant(base, p.B1);
        m.g2 = plus_constant(base, p.B2);
        m.provenance = to_string(CaseLabel{1, p.family, p.subcase});
        return {std::move(m), std::move(trace)};
    }

    if (p.L2.dim() != n || p.psi.dim() != n)
        throw std::invalid_argument("construct_t1: dimension mismatch");
    check_invariant_poly(p.phi, p.shift, "Phi");
    check_invariant_poly(p.psi, p.shift, "Psi");

    SparsePoly lhs_pol = p.L1.to_poly() + p.phi;
    SparsePoly rhs_pol = p.L2.to_poly() + p.psi;
    if (approx_equal(lhs_pol, rhs_pol, 1e-12))
        throw std::invalid_argument("construct_t1: degenerate parameters, L1+Phi == L2+Psi");

    auto [s1, s2] = subcase_signs(p.subcase);
    Complex tL1, tL2, tB12, tB34;
    std::string nL1, nL2, nB12, nB34;
    if (p.family == FamilyCase::II) {
        tL1 = Complex(0, s1);
        tL2 = Complex(0, s2);
        tB12 = Complex(-s1, 0);
        tB34 = Complex(s2, 0);
        nL1 = "e^{L1(c)} = " + sign_prefix(s1) + "i";
        nL2 = "e^{L2(c)} = " + sign_prefix(s2) + "i";
        nB12 = "e^{B1-B2} = " + sign_prefix(-s1) + "1";
        nB34 = "e^{B3-B4} = " + sign_prefix(s2) + "1";
    } else {
        tL1 = Complex(s1, 0);
        tL2 = Complex(s2, 0);
        tB12 = Complex(0, -s1);
        tB34 = Complex(0, s2);
        nL1 = "e^{L1(c)} = " + sign_prefix(s1) + "1";
        nL2 = "e^{L2(c)} = " + sign_prefix(s2) + "1";
        nB12 = "e^{B1-B2} = " + sign_prefix(-s1) + "i";
        nB34 = "e^{B3-B4} = " + sign_prefix(s2) + "i";
    }
    check_relation(trace, nL1, std::exp(p.L1.evaluate(p.shift)), tL1);
    check_relation(trace, nL2, std::exp(p.L2.evaluate(p.shift)), tL2);
    check_relation(trace, nB12, std::exp(p.B1 - p.B2), tB12);
    check_relation(trace, nB34, std::exp(p.B3 - p.B4), tB34);

    m.f1 = (ExpSum::exponential(plus_constant(lhs_pol, p.B1)) +
            ExpSum::exponential(plus_constant(rhs_pol, p.B3)))
               .scaled(0.5);
    m.f2 = (ExpSum::exponential(plus_constant(lhs_pol, p.B2)) +
            ExpSum::exponential(plus_constant(rhs_pol, p.B4)))
               .scaled(0.5);
    SparsePoly gbase = lhs_pol + rhs_pol;
    m.g1 = plus_constant(gbase, p.B1 + p.B3);
    m.g2 = plus_constant(gbase, p.B2 + p.B4);
    m.provenance = to_string(CaseLabel{1, p.family, p.subcase});
    return {std::move(m), std::move(trace)};
}

ConstructResult construct_t2(const T2Params& p) {
    if (p.k < 1) throw std::invalid_argument("construct_t2: k must be >= 1");
    if (p.shift.size() != 2 || p.L1.dim() != 2)
        throw std::invalid_argument("construct_t2: system lives in C^2");

    std::vector<RelationCheck> trace;
    SolutionManifest m;
    m.kind = SystemKind{SystemTag::Pdd, p.k};
    m.dim = 2;
    m.shift = p.shift;

    if (p.family == FamilyCase::I) {
        check_xi(p.xi1, "xi1");
        check_xi(p.xi2, "xi2");
        Complex a1 = p.L1.coeffs()[0];
        if (std::abs(a1) < kRelationTol) throw RelationError("a1 != 0", std::abs(a1));
        check_z2_only(p.H1, "H");
        check_invariant_poly(p.H1, p.shift, "H");

        Complex Lc = p.L1.evaluate(p.shift);
        Complex target = t2_case1_shift_target(p.xi1, p.xi2, a1, p.k);
        check_relation(trace,
                       "e^{L(c)} = -(a1/2)^{2k}(xi1^2-1)(xi2^2-1)/((xi1^2+1)(xi2^2+1))",
                       std::exp(Lc), target);
        check_relation(trace, "e^{B1-B2} = xi1^2(xi2^4-1)/(xi2^2(xi1^4-1))",
                       std::exp(p.B1 - p.B2), t1_case1_b_ratio(p.xi1, p.xi2));

        SparsePoly base = p.L1.to_poly() + p.H1;
        Complex pre1 = (p.xi2 * p.xi2 - 1.0) / (2.0 * kI * p.xi2);
        Complex pre2 = (p.xi1 * p.xi1 - 1.0) / (2.0 * kI * p.xi1);
        m.f1 = ExpSum::exponential(plus_constant(base, p.B2 - Lc).scaled(0.5)).scaled(pre1);
        m.f2 = ExpSum::exponential(plus_constant(base, p.B1 - Lc).scaled(0.5)).scaled(pre2);
        m.g1 = plus_constant(base, p.B1);
        m.g2 = plus_constant(base, p.B2);
        m.provenance = to_string(CaseLabel{2, p.family, p.subcase});
        return {std::move(m), std::move(trace)};
    }

    if (p.L2.dim() != 2) throw std::invalid_argument("construct_t2: system lives in C^2");
    check_z2_only(p.H1, "H1");
    check_z2_only(p.H2, "H2");
    check_invariant_poly(p.H1, p.shift, "H1");
    check_invariant_poly(p.H2, p.shift, "H2");

    Complex a11 = p.L1.coeffs()[0];
    Complex a21 = p.L2.coeffs()[0];
    if (std::abs(a11) < kRelationTol) throw RelationError("a11 != 0", std::abs(a11));
    if (std::abs(a21) < kRelationTol) throw RelationError("a21 != 0", std::abs(a21));

    SparsePoly lhs_pol = p.L1.to_poly() + p.H1;
    SparsePoly rhs_pol = p.L2.to_poly() + p.H2;
    if (approx_equal(lhs_pol, rhs_pol, 1e-12))
        throw std::invalid_argument("construct_t2: degenerate parameters, L1+H1 == L2+H2");

    auto [s1, s2] = subcase_signs(p.subcase);
    Complex ak1 = cpow_int(a11, p.k);
    Complex ak2 = cpow_int(a21, p.k);
    Complex tL1, tL2, tB12, tB34;
    std::string nL1, nL2, nB12, nB34;
    if (p.family == FamilyCase::II) {
        tL1 = Complex(0, s1) * ak1;
        tL2 = Complex(0, s2) * ak2;
        tB12 = Complex(-s1, 0);
        tB34 = Complex(s2, 0);
        nL1 = "e^{L1(c)} = " + sign_prefix(s1) + "i*a11^k";
        nL2 = "e^{L2(c)} = " + sign_prefix(s2) + "i*a21^k";
        nB12 = "e^{B1-B2} = " + sign_prefix(-s1) + "1";
        nB34 = "e^{B3-B4} = " + sign_prefix(s2) + "1";
    } else {
        tL1 = Complex(s1, 0) * ak1;
        tL2 = Complex(s2, 0) * ak2;
        tB12 = Complex(0, s1);
        tB34 = Complex(0, -s2);
        nL1 = "e^{L1(c)} = " + sign_prefix(s1) + "a11^k";
        nL2 = "e^{L2(c)} = " + sign_prefix(s2) + "a21^k";
        nB12 = "e^{B1-B2} = " + sign_prefix(s1) + "i";
        nB34 = "e^{B3-B4} = " + sign_prefix(-s2) + "i";
    }
    Complex L1c = p.L1.evaluate(p.shift);
    Complex L2c = p.L2.evaluate(p.shift);
    check_relation(trace, nL1, std::exp(L1c), tL1);
    check_relation(trace, nL2, std::exp(L2c), tL2);
    check_relation(trace, nB12, std::exp(p.B1 - p.B2), tB12);
    check_relation(trace, nB34, std::exp(p.B3 - p.B4), tB34);

    Complex pref = 1.0 / (2.0 * kI);
    if (p.family == FamilyCase::III) pref = -pref;
    m.f1 = (ExpSum::exponential(plus_constant(lhs_pol, p.B2 - L1c)) -
            ExpSum::exponential(plus_constant(rhs_pol, p.B4 - L2c)))
               .scaled(pref);
    m.f2 = (ExpSum::exponential(plus_constant(lhs_pol, p.B1 - L1c)) -
            ExpSum::exponential(plus_constant(rhs_pol, p.B3 - L2c)))
               .scaled(1.0 / (2.0 * kI));
    SparsePoly gbase = lhs_pol + rhs_pol;
    m.g1 = plus_constant(gbase, p.B1 + p.B3);
    m.g2 = plus_constant(gbase, p.B2 + p.B4);
    m.provenance = to_string(CaseLabel{2, p.family, p.subcase});
    return {std::move(m), std::move(trace)};
}

ConstructResult construct_t3(const T3Params& p) {
    if (p.k < 1) throw std::invalid_argument("construct_t3: k must be >= 1");
    const bool k_is_odd = (p.k % 2) == 1;
    if (k_is_odd != p.odd_case)
        throw RelationError(p.odd_case ? "odd case requires odd k" : "even case requires even k",
                            1.0);
    if (p.shift.size() != 2) throw std::invalid_argument("construct_t3: system lives in C^2");
    if (std::abs(p.alpha1) < kRelationTol) throw RelationError("alpha1 != 0", std::abs(p.alpha1));

    std::vector<RelationCheck> trace;
    check_z2_only(p.H, "H");
    check_invariant_poly(p.H, p.shift, "H");

    Complex eeta = std::exp(p.eta);
    Complex ak = cpow_int(p.alpha1, p.k);
    Complex Lc = p.alpha1 * p.shift[0] + p.alpha2 * p.shift[1];

    SolutionManifest m;
    m.kind = SystemKind{SystemTag::DiffPdd, p.k};
    m.dim = 2;
    m.shift = p.shift;

    SparsePoly P(2);
    P.set_coeff(MultiIndex::unit(2, 0), p.alpha1);
    P.set_coeff(MultiIndex::unit(2, 1), p.alpha2);
    P = plus_constant(P + p.H, p.beta);
    Complex pre = 1.0 / (2.0 * ak);

    if (p.odd_case) {
        check_relation(trace, "e^{2eta} = 1", std::exp(2.0 * p.eta), 1.0);
        check_relation(trace, "alpha1^k = -2i*e^{-eta}", ak, -2.0 * kI * std::exp(-p.eta));
        check_relation(trace, "e^{L(c)} = i*e^{eta}/(alpha1^k+i*e^{eta})", std::exp(Lc),
                       kI * eeta / (ak + kI * eeta));
        m.f1 = (ExpSum::exponential(P) - ExpSum::exponential(-P)).scaled(pre);
        SparsePoly Pe = plus_constant(P, p.eta);
        m.f2 = (ExpSum::exponential(Pe) - ExpSum::exponential(-Pe)).scaled(pre);
    } else {
        check_relation(trace, "e^{2eta} = -1", std::exp(2.0 * p.eta), -1.0);
        check_relation(trace, "alpha1^k = 2i*e^{eta}", ak, 2.0 * kI * eeta);
        check_relation(trace, "e^{L(c)} = 1+i*e^{-eta}*alpha1^k", std::exp(Lc),
                       1.0 + kI * std::exp(-p.eta) * ak);
        m.f1 = (ExpSum::exponential(P) + ExpSum::exponential(-P)).scaled(pre);
        m.f2 = (ExpSum::exponential(plus_constant(-P, p.eta)) +
                ExpSum::exponential(plus_constant(P, -p.eta)))
                   .scaled(pre);
    }
    m.provenance = to_string(CaseLabel{3, p.odd_case ? FamilyCase::I : FamilyCase::II, Sub::A});
    m.validate();
    return {std::move(m), std::move(trace)};
}

std::vector<Complex> solve_shift_constraint(const LinearForm& L, Complex target,
                                            std::span<const Complex> direction, int branch) {
    if (L.dim() != direction.size())
        throw std::invalid_argument("solve_shift_constraint: dimension mismatch");
    if (L.constant() != Complex(0.0))
        throw std::invalid_argument("solve_shift_constraint: L must have zero constant term");
    if (target == Complex(0.0))
        throw std::invalid_argument("solve_shift_constraint: target must be nonzero");
    Complex denom = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < direction.size(); ++j) {
        denom += L.coeffs()[j] * direction[j];
        scale = std::max(scale, std::abs(L.coeffs()[j]) * std::abs(direction[j]));
    }
    if (std::abs(denom) <= 1e-12 * (1.0 + scale))
        throw std::invalid_argument("solve_shift_constraint: direction lies in the kernel of L");
    Complex t = (std::log(target) + Complex(0.0, two_pi() * branch)) / denom;
    std::vector<Complex> c(direction.size());
    for (std::size_t j = 0; j < direction.size(); ++j) c[j] = t * direction[j];
    return c;
}

// ---- labels ----------------------------------------------------------------

std::string to_string(const CaseLabel& label) {
    if (label.theorem == 3) return label.family == FamilyCase::I ? "t3.odd" : "t3.even";
    std::string out = "t" + std::to_string(label.theorem) + ".";
    switch (label.family) {
        case FamilyCase::I: return out + "i";
        case FamilyCase::II: out += "ii"; break;
        case FamilyCase::III: out += "iii"; break;
    }
    out += '.';
    out += static_cast<char>('a' + static_cast<int>(label.subcase));
    return out;
}

std::optional<CaseLabel> parse_case_label(std::string_view text) {
    for (const auto& label : all_case_labels())
        if (to_string(label) == text) return label;
    return std::nullopt;
}

std::vector<CaseLabel> all_case_labels() {
    std::vector<CaseLabel> labels;
    labels.push_back({1, FamilyCase::I, Sub::A});
    for (auto fam : {FamilyCase::II, FamilyCase::III})
        for (auto sub : {Sub::A, Sub::B, Sub::C, Sub::D}) labels.push_back({1, fam, sub});
    labels.push_back({2, FamilyCase::I, Sub::A});
    for (auto fam : {FamilyCase::II, FamilyCase::III})
        for (auto sub : {Sub::A, Sub::B, Sub::C, Sub::D}) labels.push_back({2, fam, sub});
    labels.push_back({3, FamilyCase::I, Sub::A});
    labels.push_back({3, FamilyCase::II, Sub::A});
    return labels;
}

std::vector<CaseLabel> sweep_case_labels() {
    std::vector<CaseLabel> labels;
    labels.push_back({1, FamilyCase::I, Sub::A});
    for (auto fam : {FamilyCase::II, FamilyCase::III})
        for (auto sub : {Sub::A, Sub::B, Sub::C, Sub::D}) labels.push_back({1, fam, sub});
    labels.push_back({2, FamilyCase::I, Sub::A});
    for (auto fam : {FamilyCase::II, FamilyCase::III})
        for (auto sub : {Sub::A, Sub::C}) labels.push_back({2, fam, sub});
    labels.push_back({3, FamilyCase::I, Sub::A});
    labels.push_back({3, FamilyCase::II, Sub::A});
    return labels;
}

// ---- samplers ---------------------------------------------------------------

namespace {

Complex sample_modulus(Rng& rng, double lo, double hi) {
    double r = lo + (hi - lo) * rng.unit();
    double theta = two_pi() * rng.unit();
    return std::polar(r, theta);
}

Complex sample_xi(Rng& rng) {
    for (;;) {
        Complex xi = 1.3 * rng.cbox();
        Complex xi4 = xi * xi * xi * xi;
        if (std::abs(xi) >= 0.25 && std::abs(xi4 - 1.0) >= 0.05) return xi;
    }
}

Complex branch_offset(Rng& rng) { return Complex(0.0, two_pi() * rng.range(-1, 1)); }

LinearForm random_linear(Rng& rng, std::size_t n) {
    for (;;) {
        std::vector<Complex> coeffs(n);
        double biggest = 0.0;
        for (auto& a : coeffs) {
            a = rng.cbox();
            biggest = std::max(biggest, std::abs(a));
        }
        if (biggest >= 0.3) return LinearForm(std::move(coeffs));
    }
}

// Linear form with e^{L(c)} = target: every coefficient free except the pivot,
// which absorbs the constraint.
LinearForm linear_with_target(Rng& rng, const std::vector<Complex>& c, Complex target) {
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < c.size(); ++j)
        if (std::abs(c[j]) > std::abs(c[pivot])) pivot = j;
    Complex w = std::log(target) + branch_offset(rng);
    std::vector<Complex> coeffs(c.size());
    Complex rest = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j == pivot) continue;
        coeffs[j] = rng.cbox();
        rest += coeffs[j] * c[j];
    }
    coeffs[pivot] = (w - rest) / c[pivot];
    return LinearForm(std::move(coeffs));
}

SparsePoly random_invariant(Rng& rng, const std::vector<Complex>& c, bool allow_zero) {
    const std::size_t n = c.size();
    if (n < 2) return SparsePoly(n);
    int blocks = rng.range(allow_zero ? 0 : 1, 2);
    if (blocks == 0) return SparsePoly(n);
    KernelBasis basis = kernel_basis(c);
    InvariantPolySpec spec;
    for (int b = 0; b < blocks; ++b) {
        std::vector<Complex> coeffs(n, 0.0);
        for (;;) {
            double biggest = 0.0;
            for (std::size_t j = 0; j < n; ++j) coeffs[j] = 0.0;
            for (const auto& form : basis.forms) {
                Complex w = rng.cbox();
                for (std::size_t j = 0; j < n; ++j) coeffs[j] += w * form.coeffs()[j];
            }
            for (std::size_t j = 0; j < n; ++j) biggest = std::max(biggest, std::abs(coeffs[j]));
            if (biggest >= 0.2) break;
        }
        spec.blocks.push_back(InvariantBlock{LinearForm(coeffs), 1u + (unsigned)rng.range(0, 3),
                                             rng.cbox()});
    }
    return build_invariant(spec, basis);
}

SparsePoly random_z2_poly(Rng& rng, int max_degree, bool allow_zero) {
    SparsePoly h(2);
    int degree = rng.range(allow_zero ? 0 : 1, max_degree);
    for (int d = 1; d <= degree; ++d) {
        if (d < degree && rng.unit() < 0.35) continue;
        MultiIndex m(2);
        m[1] = static_cast<std::uint32_t>(d);
        h.set_coeff(m, rng.cbox());
    }
    return h;
}

std::vector<Complex> random_shift(Rng& rng, std::size_t n) {
    for (;;) {
        std::vector<Complex> c(n);
        double biggest = 0.0;
        for (auto& v : c) {
            v = rng.cbox();
            biggest = std::max(biggest, std::abs(v));
        }
        if (biggest >= 0.5) return c;
    }
}

// c solving L1(c) = w1 and L2(c) = w2, using the two best-pivoted coordinates;
// remaining coordinates are zero.
std::vector<Complex> solve_two_targets(const LinearForm& L1, const LinearForm& L2, Complex w1,
                                       Complex w2) {
    const std::size_t n = L1.dim();
    std::size_t p1 = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (std::abs(L1.coeffs()[j]) > std::abs(L1.coeffs()[p1])) p1 = j;
    std::size_t p2 = n;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == p1) continue;
        Complex det = L1.coeffs()[p1] * L2.coeffs()[j] - L1.coeffs()[j] * L2.coeffs()[p1];
        if (std::abs(det) > best) {
            best = std::abs(det);
            p2 = j;
        }
    }
    if (p2 == n || best < 1e-10)
        throw std::invalid_argument("cannot place shift: L1, L2 are linearly dependent");
    Complex a = L1.coeffs()[p1], b = L1.coeffs()[p2];
    Complex d = L2.coeffs()[p1], e = L2.coeffs()[p2];
    Complex det = a * e - b * d;
    std::vector<Complex> c(n, 0.0);
    c[p1] = (w1 * e - b * w2) / det;
    c[p2] = (a * w2 - w1 * d) / det;
    return c;
}

std::pair<Complex, Complex> t1_subcase_targets(FamilyCase family, Sub sub) {
    auto [s1, s2] = subcase_signs(sub);
    if (family == FamilyCase::II) return {Complex(0, s1), Complex(0, s2)};
    return {Complex(s1, 0), Complex(s2, 0)};
}

std::pair<Complex, Complex> t1_subcase_b_targets(FamilyCase family, Sub sub) {
    auto [s1, s2] = subcase_signs(sub);
    if (family == FamilyCase::II) return {Complex(-s1, 0), Complex(s2, 0)};
    return {Complex(0, -s1), Complex(0, s2)};
}

}  // namespace

namespace {

std::size_t resolve_dim(const ParamOverrides& ov, std::size_t fallback) {
    if (ov.n) return *ov.n;
    if (ov.L1) return ov.L1->dim();
    if (ov.L2) return ov.L2->dim();
    if (ov.shift) return ov.shift->size();
    if (ov.phi) return ov.phi->dim();
    if (ov.psi) return ov.psi->dim();
    return fallback;
}

}  // namespace

T1Params make_t1_params(FamilyCase family, Sub sub, std::uint64_t seed,
                        const ParamOverrides& ov) {
    Rng rng(seed);
    T1Params p;
    p.family = family;
    p.subcase = sub;

    if (family == FamilyCase::I) {
        p.dim = resolve_dim(ov, static_cast<std::size_t>(rng.range(2, 3)));
        p.xi1 = ov.xi1 ? *ov.xi1 : sample_xi(rng);
        p.xi2 = ov.xi2 ? *ov.xi2 : sample_xi(rng);
        p.L1 = ov.L1 ? *ov.L1 : random_linear(rng, p.dim);
        p.B2 = ov.B2 ? *ov.B2 : rng.cbox();
        p.B1 = ov.B1 ? *ov.B1
                     : p.B2 + std::log(t1_case1_b_ratio(p.xi1, p.xi2)) + branch_offset(rng);
        if (ov.shift) {
            p.shift = *ov.shift;
        } else {
            Complex target = t1_case1_shift_target(p.xi1, p.xi2);
            std::vector<Complex> direction;
            for (int tries = 0;; ++tries) {
                direction = random_shift(rng, p.dim);
                if (std::abs(p.L1.evaluate(direction)) >= 0.25 || tries > 64) break;
            }
            p.shift = solve_shift_constraint(p.L1, target, direction, 0);
        }
        p.phi = ov.phi ? *ov.phi : random_invariant(rng, p.shift, true);
        p.psi = SparsePoly(p.dim);
        return p;
    }

    p.dim = resolve_dim(ov, 2);
    auto [tL1, tL2] = t1_subcase_targets(family, sub);
    auto [tB12, tB34] = t1_subcase_b_targets(family, sub);

    if (ov.shift) {
        p.shift = *ov.shift;
    } else if (ov.L1 && ov.L2) {
        p.shift = solve_two_targets(*ov.L1, *ov.L2, std::log(tL1) + branch_offset(rng),
                                    std::log(tL2) + branch_offset(rng));
    } else if (ov.L1) {
        p.shift = solve_shift_constraint(*ov.L1, tL1, random_shift(rng, p.dim), rng.range(-1, 1));
    } else if (ov.L2) {
        p.shift = solve_shift_constraint(*ov.L2, tL2, random_shift(rng, p.dim), rng.range(-1, 1));
    } else {
        p.shift = random_shift(rng, p.dim);
    }
    p.L1 = ov.L1 ? *ov.L1 : linear_with_target(rng, p.shift, tL1);
    p.L2 = ov.L2 ? *ov.L2 : linear_with_target(rng, p.shift, tL2);
    p.phi = ov.phi ? *ov.phi : random_invariant(rng, p.shift, true);
    p.psi = ov.psi ? *ov.psi : random_invariant(rng, p.shift, true);
    p.B2 = ov.B2 ? *ov.B2 : rng.cbox();
    p.B4 = ov.B4 ? *ov.B4 : rng.cbox();
    p.B1 = ov.B1 ? *ov.B1 : p.B2 + std::log(tB12) + branch_offset(rng);
    p.B3 = ov.B3 ? *ov.B3 : p.B4 + std::log(tB34) + branch_offset(rng);
    return p;
}

T2Params make_t2_params(FamilyCase family, Sub sub, std::uint64_t seed,
                        const ParamOverrides& ov) {
    Rng rng(seed);
    T2Params p;
    p.family = family;
    p.subcase = sub;
    p.k = ov.k.value_or(rng.range(1, 3));

    if (family == FamilyCase::I) {
        p.xi1 = ov.xi1 ? *ov.xi1 : sample_xi(rng);
        p.xi2 = ov.xi2 ? *ov.xi2 : sample_xi(rng);
        const SparsePoly* ovH = ov.H ? &*ov.H : (ov.H1 ? &*ov.H1 : nullptr);
        p.H1 = ovH ? *ovH : random_z2_poly(rng, 3, true);
        const bool h_const = p.H1.is_constant();
        Complex a1, a2;
        if (ov.L1) {
            a1 = ov.L1->coeffs()[0];
            a2 = ov.L1->coeffs()[1];
            p.L1 = *ov.L1;
        } else {
            a1 = sample_modulus(rng, 0.6, 1.8);
            a2 = rng.cbox();
            p.L1 = LinearForm({a1, a2});
        }
        if (ov.shift) {
            p.shift = *ov.shift;
        } else {
            Complex c2 = h_const ? sample_modulus(rng, 0.3, 1.0) : Complex(0.0);
            Complex target = t2_case1_shift_target(p.xi1, p.xi2, a1, p.k);
            Complex c1 = (std::log(target) + branch_offset(rng) - a2 * c2) / a1;
            p.shift = {c1, c2};
        }
        p.B2 = ov.B2 ? *ov.B2 : rng.cbox();
        p.B1 = ov.B1 ? *ov.B1
                     : p.B2 + std::log(t1_case1_b_ratio(p.xi1, p.xi2)) + branch_offset(rng);
        return p;
    }

    auto [s1, s2] = subcase_signs(sub);
    const Complex unitL1 = family == FamilyCase::II ? Complex(0, s1) : Complex(s1, 0);
    const Complex unitL2 = family == FamilyCase::II ? Complex(0, s2) : Complex(s2, 0);
    const Complex u1 = unitL1, u2 = unitL2;
    const int k = p.k;
    auto targetL1 = [u1, k](Complex a) { return u1 * cpow_int(a, k); };
    auto targetL2 = [u2, k](Complex a) { return u2 * cpow_int(a, k); };
    // Builds L for a fixed shift: a11 is free, the z2 coefficient absorbs the
    // constraint e^{L(c)} = unit*a11^k. Needs |c2| away from zero.
    auto linear_for_shift = [&rng](const std::vector<Complex>& c, Complex unit,
                                   int order) -> LinearForm {
        if (std::abs(c[1]) < 0.05)
            throw std::invalid_argument(
                "cannot derive L for a shift with c2 ~ 0; supply L1/L2 explicitly");
        Complex a1 = sample_modulus(rng, 0.5, 1.5);
        Complex w = std::log(unit * cpow_int(a1, order)) + branch_offset(rng);
        return LinearForm({a1, (w - a1 * c[0]) / c[1]});
    };

    if (ov.shift || ov.L1 || ov.L2) {
        if (static_cast<bool>(ov.L1) != static_cast<bool>(ov.L2))
            throw std::invalid_argument("t2 construction needs both L1 and L2 (or neither)");
        if (ov.shift) {
            p.shift = *ov.shift;
        } else {
            p.shift = solve_two_targets(*ov.L1, *ov.L2,
                                        std::log(targetL1(ov.L1->coeffs()[0])) + branch_offset(rng),
                                        std::log(targetL2(ov.L2->coeffs()[0])) + branch_offset(rng));
        }
        p.L1 = ov.L1 ? *ov.L1 : linear_for_shift(p.shift, unitL1, p.k);
        p.L2 = ov.L2 ? *ov.L2 : linear_for_shift(p.shift, unitL2, p.k);
        p.H1 = ov.H1 ? *ov.H1 : SparsePoly(2);
        p.H2 = ov.H2 ? *ov.H2 : SparsePoly(2);
    } else {
        const bool poly_mode = rng.unit() < 0.5;
        if (!poly_mode) {
            // c2 != 0, so H1, H2 must be constants; the z2 coefficients absorb
            // the two shift constraints.
            Complex a11 = sample_modulus(rng, 0.5, 1.5);
            Complex a21 = sample_modulus(rng, 0.5, 1.5);
            Complex c1 = rng.cbox();
            Complex c2 = sample_modulus(rng, 0.4, 1.2);
            Complex w1 = std::log(targetL1(a11)) + branch_offset(rng);
            Complex w2 = std::log(targetL2(a21)) + branch_offset(rng);
            p.L1 = LinearForm({a11, (w1 - a11 * c1) / c2});
            p.L2 = LinearForm({a21, (w2 - a21 * c1) / c2});
            p.shift = {c1, c2};
            p.H1 = SparsePoly(2);
            p.H2 = SparsePoly(2);
        } else {
            // c2 = 0 with genuine z2-polynomials. Both constraints then pin
            // a11*c1; equal signs share one constraint, opposite signs force
            // a11 onto the 2k-th roots of +-1.
            Complex a11;
            Complex a21;
            if (s1 == s2) {
                a11 = sample_modulus(rng, 0.5, 1.5);
                a21 = a11;
            } else {
                double arg0;
                if (family == FamilyCase::II)
                    arg0 = (p.k % 2 == 0) ? 0.0 : std::acos(-1.0);  // a11^{2k} = (-1)^k
                else
                    arg0 = (p.k % 2 == 0) ? std::acos(-1.0) : 0.0;  // a11^{2k} = (-1)^{k+1}
                int j = rng.range(0, 2 * p.k - 1);
                a11 = std::polar(1.0, (arg0 + two_pi() * j) / (2.0 * p.k));
                a21 = -a11;
            }
            Complex u = std::log(targetL1(a11)) + branch_offset(rng);
            Complex c1 = u / a11;
            p.L1 = LinearForm({a11, rng.cbox()});
            p.L2 = LinearForm({a21, rng.cbox()});
            p.shift = {c1, Complex(0.0)};
            p.H1 = random_z2_poly(rng, 3, true);
            p.H2 = random_z2_poly(rng, 3, true);
        }
    }

    Complex tB12, tB34;
    if (family == FamilyCase::II) {
        tB12 = Complex(-s1, 0);
        tB34 = Complex(s2, 0);
    } else {
        tB12 = Complex(0, s1);
        tB34 = Complex(0, -s2);
    }
    p.B2 = ov.B2 ? *ov.B2 : rng.cbox();
    p.B4 = ov.B4 ? *ov.B4 : rng.cbox();
    p.B1 = ov.B1 ? *ov.B1 : p.B2 + std::log(tB12) + branch_offset(rng);
    p.B3 = ov.B3 ? *ov.B3 : p.B4 + std::log(tB34) + branch_offset(rng);
    return p;
}

T3Params make_t3_params(bool odd_case, std::uint64_t seed, const ParamOverrides& ov) {
    Rng rng(seed);
    T3Params p;
    p.odd_case = odd_case;
    p.k = ov.k.value_or(odd_case ? 2 * rng.range(0, 2) + 1 : 2 * rng.range(1, 2));

    // e^{2eta} = +-1 pins eta to (half-)integer multiples of pi*i.
    const double pi = std::acos(-1.0);
    if (ov.eta)
        p.eta = *ov.eta;
    else
        p.eta = odd_case ? Complex(0.0, pi * rng.range(-2, 2))
                         : Complex(0.0, pi * (0.5 + rng.range(-2, 2)));

    Complex required_ak = p.odd_case ? -2.0 * kI * std::exp(-p.eta) : 2.0 * kI * std::exp(p.eta);
    if (ov.alpha1) {
        p.alpha1 = *ov.alpha1;
    } else {
        int j = rng.range(0, p.k - 1);
        p.alpha1 = std::polar(std::pow(std::abs(required_ak), 1.0 / p.k),
                              (std::arg(required_ak) + two_pi() * j) / p.k);
    }
    p.alpha2 = ov.alpha2 ? *ov.alpha2 : rng.cbox();
    p.beta = ov.beta ? *ov.beta : rng.cbox();
    p.H = ov.H ? *ov.H : random_z2_poly(rng, 4, true);

    if (ov.shift) {
        p.shift = *ov.shift;
    } else {
        Complex ak = cpow_int(p.alpha1, p.k);
        Complex target = p.odd_case ? kI * std::exp(p.eta) / (ak + kI * std::exp(p.eta))
                                    : 1.0 + kI * std::exp(-p.eta) * ak;
        Complex c2 = p.H.is_constant() ? rng.cbox() : Complex(0.0);
        Complex c1 = (std::log(target) + branch_offset(rng) - p.alpha2 * c2) / p.alpha1;
        p.shift = {c1, c2};
    }
    return p;
}

ConstructResult construct_from_label(const CaseLabel& label, std::uint64_t seed,
                                     const ParamOverrides& overrides) {
    switch (label.theorem) {
        case 1: return construct_t1(make_t1_params(label.family, label.subcase, seed, overrides));
        case 2: return construct_t2(make_t2_params(label.family, label.subcase, seed, overrides));
        case 3: return construct_t3(make_t3_params(label.family == FamilyCase::I, seed, overrides));
        default: throw std::invalid_argument("unknown theorem index");
    }
}

}  // namespace fermat
