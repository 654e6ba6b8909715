// shiftinv.hpp
// ------------
// Construction of shift-invariant polynomials: polynomials in linear forms
// d.z with d.c = 0, which satisfy P(z+c) = P(z) identically. These are the
// periodic building blocks that may ride along in the exponents of every
// solution family.

#pragma once

#include <cstddef>
#include <vector>

#include "fermat/algebra.hpp"

namespace fermat {

// n-1 independent linear forms annihilating the shift vector c.
struct KernelBasis {
    std::vector<Complex> c;
    std::vector<LinearForm> forms;  // zero-constant forms with form.c == 0
};

// One block contributes coefficient * (form(z))^degree; a spec is the sum of
// its blocks. Every block form must lie in the span of the kernel basis.
struct InvariantBlock {
    LinearForm form;
    unsigned degree = 1;
    Complex coefficient = 1.0;
};

struct InvariantPolySpec {
    std::vector<InvariantBlock> blocks;
};

struct ShiftInvarianceReport {
    double max_defect = 0.0;
    bool pass = false;
};

// Deterministic basis of the annihilator of c: pivot on the largest-modulus
// component of c, forms e_j - (c_j/c_pivot) e_pivot for j != pivot.
// Rejects c = 0.
KernelBasis kernel_basis(std::span<const Complex> c);

// Expands the spec into a SparsePoly. Rejects blocks whose form is not in the
// basis span (least-squares projection residual above 1e-10 relative), naming
// the offending block index.
SparsePoly build_invariant(const InvariantPolySpec& spec, const KernelBasis& basis);

// Symbolic check that shift(p, c) - p vanishes; the defect is the largest
// residual coefficient modulus, pass means defect <= tol*(1 + max |coeff of p|).
ShiftInvarianceReport check_shift_invariant(const SparsePoly& p, std::span<const Complex> c,
                                            double tol);

}  // namespace fermat
