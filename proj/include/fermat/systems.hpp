// systems.hpp
// -----------
// Residual engines: assemble the left/right sides of each system equation as
// exponential sums and verify a candidate manifest both symbolically (the
// difference normalizes to zero) and numerically (relative residual over
// seeded sample points in a polydisc).

#pragma once

#include "fermat/manifest.hpp"

namespace fermat {

struct EquationSides {
    ExpSum lhs{0}, rhs{0};
};

// The two equations of the manifest's system. Validates the manifest first.
std::array<EquationSides, 2> lhs_rhs(const SolutionManifest& m);

// Symbolic pass: every coefficient of normalize(LHS-RHS) has modulus at most
// tol*(1 + max input coefficient modulus). Numeric pass: at every sampled z,
// |LHS(z)-RHS(z)| / (1+|LHS(z)|+|RHS(z)|) <= tol; overflowing points are
// skipped with a warning and more than 20% skips fails the equation.
ResidualReport verify(const SolutionManifest& m, double tol, const Sampling& sampling);

inline ResidualReport verify(const SolutionManifest& m) {
    return verify(m, kDefaultTol, Sampling{});
}

}  // namespace fermat
