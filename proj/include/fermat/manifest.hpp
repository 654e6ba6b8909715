// manifest.hpp
// ------------
// Problem instances and verification reports for the three functional-equation
// systems:
//
//   difference   f1(z)^2 + f2(z+c)^2 = e^{g1(z)}          (any n >= 1)
//                f2(z)^2 + f1(z+c)^2 = e^{g2(z)}
//   pdd          (d^k f1/dz1^k)^2 + f2(z+c)^2 = e^{g1}    (n = 2)
//                (d^k f2/dz1^k)^2 + f1(z+c)^2 = e^{g2}
//   diffpdd      (d^k f1/dz1^k)^2 + (f2(z+c)-f2(z))^2 = 1 (n = 2, c != 0)
//                (d^k f2/dz1^k)^2 + (f1(z+c)-f1(z))^2 = 1

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fermat/expsum.hpp"

namespace fermat {

inline constexpr std::uint64_t kDefaultSeed = 20250811;
inline constexpr int kDefaultPoints = 200;
inline constexpr double kDefaultRadius = 0.5;
inline constexpr double kDefaultTol = 1e-9;

enum class SystemTag { Difference, Pdd, DiffPdd };

struct SystemKind {
    SystemTag tag = SystemTag::Difference;
    int k = 0;  // derivative order; 0 for difference, >= 1 otherwise
};

std::string to_string(SystemTag tag);

struct SolutionManifest {
    SystemKind kind;
    std::size_t dim = 0;
    std::vector<Complex> shift;  // the vector c
    ExpSum f1{0}, f2{0};
    std::optional<SparsePoly> g1, g2;  // absent for diffpdd (RHS is 1)
    std::string provenance;

    // Throws std::invalid_argument on any structural violation.
    void validate() const;
};

struct Sampling {
    std::uint64_t seed = kDefaultSeed;
    int num_points = kDefaultPoints;
    double radius = kDefaultRadius;
};

struct EquationResidual {
    bool symbolic_zero = false;
    double max_coeff_defect = 0.0;  // residual coefficient modulus, absolute
    double max_rel_residual = 0.0;  // over sampled points
    int skipped_points = 0;         // overflow skips
    bool numeric_pass = false;
};

struct ResidualReport {
    std::array<EquationResidual, 2> eq;
    double tol = kDefaultTol;
    Sampling sampling;
    std::vector<std::string> warnings;

    bool pass() const {
        return eq[0].symbolic_zero && eq[1].symbolic_zero && eq[0].numeric_pass &&
               eq[1].numeric_pass;
    }
};

}  // namespace fermat
