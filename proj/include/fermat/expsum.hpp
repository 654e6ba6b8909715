// expsum.hpp
// ----------
// Exponential sums: finite sums  sum_j Q_j(z) * exp(P_j(z))  with SparsePoly
// coefficients Q_j and exponents P_j. The class is closed under the ring
// operations, shift z -> z+c and partial differentiation, which is exactly
// what the functional-equation residual engine needs.
//
// Canonical form (established by normalized(), maintained by every operation):
//   * exponent polynomials have zero constant term (constants are folded into
//     the coefficient via exp(const)),
//   * exponent polynomials are pairwise distinct; same-direction terms are
//     merged by coefficient addition,
//   * no coefficient polynomial is zero,
//   * terms are sorted by grlex of the exponent's leading monomial, ties by
//     the coefficient's leading monomial, then a full structural comparison.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fermat/algebra.hpp"

namespace fermat {

struct ExpTerm {
    SparsePoly coeff;
    SparsePoly exponent;
};

// Diagnostics produced while merging exponent directions. Two exponent
// polynomials merge when their coefficient distance is at most the shared
// grid step delta = kPruneEps*(1 + largest exponent coefficient modulus);
// pairs that stay apart but come within 8*delta are borderline and reported
// instead of silently decided.
struct NormalizeStats {
    int merged_nonidentical = 0;  // merges where the maps were not bitwise equal
    std::vector<std::string> borderline;
};

class ExpSum {
public:
    explicit ExpSum(std::size_t dim) : dim_(dim) {}

    static ExpSum constant(std::size_t dim, Complex value);
    static ExpSum polynomial(const SparsePoly& q);       // q * exp(0)
    static ExpSum exponential(const SparsePoly& p);      // 1 * exp(p)
    static ExpSum term(const SparsePoly& q, const SparsePoly& p);

    std::size_t dim() const { return dim_; }
    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Largest coefficient modulus across all coefficient polynomials.
    double max_coeff_modulus() const;

    ExpSum normalized(NormalizeStats* stats = nullptr) const;

    ExpSum operator+(const ExpSum& other) const;
    ExpSum operator-(const ExpSum& other) const;
    ExpSum operator*(const ExpSum& other) const;
    ExpSum squared() const { return *this * *this; }
    ExpSum scaled(Complex factor) const;

    ExpSum derivative(std::size_t axis, unsigned order = 1) const;
    ExpSum shifted(std::span<const Complex> c) const;

    // Throws EvalOverflow when an exponent's real part exceeds the limit.
    Complex evaluate(std::span<const Complex> z) const;

    // If the sum is a plain polynomial (all exponents zero), returns it.
    bool is_polynomial() const;
    SparsePoly as_polynomial() const;

    bool operator==(const ExpSum& other) const;

private:
    std::size_t dim_;
    std::vector<ExpTerm> terms_;

    static ExpSum raw(std::size_t dim, std::vector<ExpTerm> terms);
    void check_same_dim(const ExpSum& other) const;
};

// Semantic near-equality: max residual coefficient of a-b is at most
// tol*(1 + max coefficient modulus of a and b).
bool approx_equal(const ExpSum& a, const ExpSum& b, double tol);

}  // namespace fermat
