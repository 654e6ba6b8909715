// algebra.hpp
// ----------
// Core value types for multivariate complex polynomials.
//
// SparsePoly is a sparse exponent-map polynomial over C in a fixed number of
// variables. All arithmetic is exact structure manipulation on double-precision
// coefficients; the only rounding policy is the relative pruning threshold
// below, which removes cancellation dust after multiplies and shifts.
//
// Everything here is an immutable value after construction and safe to share
// across threads.

#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermat {

using Complex = std::complex<double>;

// Relative pruning threshold: a coefficient counts as zero iff its modulus is
// below kPruneEps * (1 + largest coefficient modulus of the polynomial).
inline constexpr double kPruneEps = 1e-12;

// exp() arguments with real part above this are treated as overflow.
inline constexpr double kExpOverflowLimit = 700.0;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Thrown by evaluation when an exponential argument would overflow double range.
class EvalOverflow : public std::range_error {
public:
    explicit EvalOverflow(double re)
        : std::range_error("exp argument real part " + std::to_string(re) +
                           " exceeds overflow limit") {}
};

// Exponent vector of one monomial z_1^{e_1}...z_n^{e_n}.
// Ordered by graded lexicographic comparison (degree first, then lex).
class MultiIndex {
public:
    explicit MultiIndex(std::size_t dim) : exps_(dim, 0) {}

    static MultiIndex unit(std::size_t dim, std::size_t axis);

    std::size_t size() const { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
    unsigned total_degree() const;

    MultiIndex plus(const MultiIndex& other) const;

    bool operator==(const MultiIndex& other) const { return exps_ == other.exps_; }
    std::strong_ordering operator<=>(const MultiIndex& other) const;

private:
    std::vector<std::uint32_t> exps_;
};

// Sparse multivariate polynomial over C.
//
// Invariants: every stored coefficient is finite and nonzero; every key has
// length dim(); the zero polynomial is the empty map.
class SparsePoly {
public:
    using TermMap = std::map<MultiIndex, Complex>;

    explicit SparsePoly(std::size_t dim) : dim_(dim) {}

    static SparsePoly constant(std::size_t dim, Complex value);
    static SparsePoly variable(std::size_t dim, std::size_t axis);  // axis is 0-based

    std::size_t dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Complex constant_term() const;
    unsigned degree() const;               // total degree; 0 for the zero polynomial
    unsigned degree_in(std::size_t axis) const;
    double max_coeff_modulus() const;      // 0 for the zero polynomial
    MultiIndex leading_monomial() const;   // grlex-largest; all-zero for zero poly

    void set_coeff(const MultiIndex& m, Complex value);  // drops exact zeros
    Complex coeff(const MultiIndex& m) const;

    SparsePoly operator+(const SparsePoly& other) const;
    SparsePoly operator-(const SparsePoly& other) const;
    SparsePoly operator*(const SparsePoly& other) const;
    SparsePoly operator-() const;
    SparsePoly scaled(Complex factor) const;
    SparsePoly pow(unsigned exponent) const;

    SparsePoly derivative(std::size_t axis) const;
    SparsePoly shifted(std::span<const Complex> c) const;  // z -> z + c
    Complex evaluate(std::span<const Complex> z) const;

    // Splits off the constant term: returns the polynomial without it.
    SparsePoly without_constant() const;

    // Drops coefficients below kPruneEps*(1 + max modulus of this polynomial).
    SparsePoly pruned() const;

    bool operator==(const SparsePoly& other) const;

    // Total order used for deterministic term arrangement and printing.
    static std::strong_ordering compare(const SparsePoly& a, const SparsePoly& b);

private:
    std::size_t dim_;
    TermMap terms_;

    void check_same_dim(const SparsePoly& other) const;
};

// max |a_m - b_m| over the union of supports.
double coeff_distance(const SparsePoly& a, const SparsePoly& b);

// True when every coefficient of a-b has modulus <= tol*(1 + max coeff modulus
// of a and b).
bool approx_equal(const SparsePoly& a, const SparsePoly& b, double tol);

// Degree <= 1 form sum(coeffs_j * z_j) + constant.
class LinearForm {
public:
    LinearForm() = default;
    LinearForm(std::vector<Complex> coeffs, Complex constant = 0.0)
        : coeffs_(std::move(coeffs)), constant_(constant) {}

    // Fails unless p has total degree <= 1.
    static LinearForm from_poly(const SparsePoly& p);

    std::size_t dim() const { return coeffs_.size(); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex constant() const { return constant_; }

    Complex evaluate(std::span<const Complex> z) const;
    SparsePoly to_poly() const;

private:
    std::vector<Complex> coeffs_;
    Complex constant_ = 0.0;
};

std::string format_complex(Complex z, int precision = 9);

}  // namespace fermat
