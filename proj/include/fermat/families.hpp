// families.hpp
// ------------
// Constructors for every classified solution family of the three systems.
// Each constructor checks the case's constraint relations numerically before
// assembling the manifest; a violated relation is rejected by name together
// with its defect, never turned into a silently failing manifest.
//
// The samplers draw admissible random parameters for a case label, deriving
// the constrained quantities (shift vectors, B-offsets, leading coefficients)
// from the free ones so that every draw satisfies the relations by
// construction.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/manifest.hpp"
#include "fermat/shiftinv.hpp"

namespace fermat {

class RelationError : public std::runtime_error {
public:
    RelationError(const std::string& relation, double defect)
        : std::runtime_error("relation violated: " + relation +
                             " (defect " + std::to_string(defect) + ")"),
          relation_(relation),
          defect_(defect) {}

    const std::string& relation() const { return relation_; }
    double defect() const { return defect_; }

private:
    std::string relation_;
    double defect_;
};

enum class FamilyCase { I, II, III };
enum class Sub { A, B, C, D };

struct RelationCheck {
    std::string name;
    Complex actual;
    Complex required;
    double defect;
};

struct ConstructResult {
    SolutionManifest manifest;
    std::vector<RelationCheck> relations;
};

struct T1Params {
    FamilyCase family = FamilyCase::I;
    Sub subcase = Sub::A;  // meaningful for II/III
    std::size_t dim = 2;
    std::vector<Complex> shift;
    LinearForm L1, L2;  // case I uses L1 as its single L
    SparsePoly phi{2}, psi{2};
    Complex xi1 = 0.0, xi2 = 0.0;       // case I
    Complex B1 = 0.0, B2 = 0.0, B3 = 0.0, B4 = 0.0;
};

struct T2Params {
    FamilyCase family = FamilyCase::I;
    Sub subcase = Sub::A;
    int k = 1;
    std::vector<Complex> shift;
    LinearForm L1, L2;
    SparsePoly H1{2}, H2{2};  // polynomials in z2 only; case I uses H1
    Complex xi1 = 0.0, xi2 = 0.0;
    Complex B1 = 0.0, B2 = 0.0, B3 = 0.0, B4 = 0.0;
};

struct T3Params {
    bool odd_case = true;  // case (i) requires odd k, case (ii) even k
    int k = 1;
    Complex alpha1 = 0.0, alpha2 = 0.0, beta = 0.0, eta = 0.0;
    SparsePoly H{2};  // polynomial in z2 only
    std::vector<Complex> shift;
};

ConstructResult construct_t1(const T1Params& params);
ConstructResult construct_t2(const T2Params& params);
ConstructResult construct_t3(const T3Params& params);

// Solves e^{L(c)} = target along the given direction:
// c = t*direction with t = (Log(target) + 2*pi*i*branch) / L(direction).
std::vector<Complex> solve_shift_constraint(const LinearForm& L, Complex target,
                                            std::span<const Complex> direction, int branch);

// Pinned resolutions of the statement-vs-proof discrepancies. The regression
// and oracle tests in the suite guard these against drift.
Complex t1_case1_shift_target(Complex xi1, Complex xi2);
Complex t1_case1_b_ratio(Complex xi1, Complex xi2);
Complex t2_case1_shift_target(Complex xi1, Complex xi2, Complex a1, int k);

// Subcase sign pair: a=(+,+), b=(+,-), c=(-,+), d=(-,-).
std::pair<int, int> subcase_signs(Sub sub);

// ---- case labels and random admissible draws ------------------------------

struct CaseLabel {
    int theorem = 1;                     // 1, 2 or 3
    FamilyCase family = FamilyCase::I;   // theorem 3: I = odd, II = even
    Sub subcase = Sub::A;
};

std::optional<CaseLabel> parse_case_label(std::string_view text);  // "t1.ii.c", "t3.odd"
std::string to_string(const CaseLabel& label);
std::vector<CaseLabel> all_case_labels();    // every label construct accepts
std::vector<CaseLabel> sweep_case_labels();  // property-sweep set (t2 subcases spot a, c)

// Free parameters are drawn from the complex box [-1,1]^2; quantities pinned
// by the case relations are derived from them.
struct ParamOverrides {
    std::optional<std::size_t> n;
    std::optional<int> k;
    std::optional<std::vector<Complex>> shift;
    std::optional<Complex> xi1, xi2, B1, B2, B3, B4;
    std::optional<Complex> alpha1, alpha2, beta, eta;
    std::optional<LinearForm> L1, L2;
    std::optional<SparsePoly> phi, psi, H1, H2, H;
};

T1Params make_t1_params(FamilyCase family, Sub sub, std::uint64_t seed,
                        const ParamOverrides& overrides = {});
T2Params make_t2_params(FamilyCase family, Sub sub, std::uint64_t seed,
                        const ParamOverrides& overrides = {});
T3Params make_t3_params(bool odd_case, std::uint64_t seed,
                        const ParamOverrides& overrides = {});

ConstructResult construct_from_label(const CaseLabel& label, std::uint64_t seed,
                                     const ParamOverrides& overrides = {});

// Small seeded RNG shared by the samplers and the property tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
    double box() { return std::uniform_real_distribution<double>(-1.0, 1.0)(gen_); }
    Complex cbox() { return {box(), box()}; }
    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

private:
    std::mt19937_64 gen_;
};

Complex cpow_int(Complex base, int exponent);

}  // namespace fermat
