#include "fermat/shiftinv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fermat {

KernelBasis kernel_basis(std::span<const Complex> c) {
    const std::size_t n = c.size();
    if (n == 0) throw std::invalid_argument("kernel_basis: empty shift vector");
    std::size_t pivot = 0;
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(c[j]) > best) {
            best = std::abs(c[j]);
            pivot = j;
        }
    if (best == 0.0) throw std::invalid_argument("kernel_basis: shift vector is zero");

    KernelBasis basis;
    basis.c.assign(c.begin(), c.end());
    for (std::size_t j = 0; j < n; ++j) {
        if (j == pivot) continue;
        std::vector<Complex> coeffs(n, 0.0);
        coeffs[j] = 1.0;
        coeffs[pivot] = -c[j] / c[pivot];
        basis.forms.emplace_back(std::move(coeffs), Complex(0.0));
    }
    return basis;
}

namespace {

// Least-squares projection of f onto span(basis forms) via the Hermitian
// normal equations; returns the relative residual norm.
double span_residual(const LinearForm& f, const std::vector<LinearForm>& forms) {
    const std::size_t n = f.dim();
    const std::size_t m = forms.size();
    if (m == 0) {
        double norm = 0.0;
        for (auto v : f.coeffs()) norm += std::norm(v);
        return std::sqrt(norm);
    }
    auto dot = [n](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::conj(a[j]) * b[j];
        return s;
    };
    std::vector<std::vector<Complex>> gram(m, std::vector<Complex>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) gram[i][k] = dot(forms[i].coeffs(), forms[k].coeffs());
        gram[i][m] = dot(forms[i].coeffs(), f.coeffs());
    }
    // Gaussian elimination with partial pivoting on the (m x m+1) system.
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(gram[r][col]) > std::abs(gram[piv][col])) piv = r;
        std::swap(gram[col], gram[piv]);
        if (std::abs(gram[col][col]) < 1e-300) continue;  // rank-deficient column
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            Complex factor = gram[r][col] / gram[col][col];
            for (std::size_t k = col; k <= m; ++k) gram[r][k] -= factor * gram[col][k];
        }
    }
    std::vector<Complex> x(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(gram[i][i]) >= 1e-300) x[i] = gram[i][m] / gram[i][i];

    double resid = 0.0, fnorm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += x[i] * forms[i].coeffs()[j];
        resid += std::norm(f.coeffs()[j] - proj);
        fnorm += std::norm(f.coeffs()[j]);
    }
    return std::sqrt(resid) / (1.0 + std::sqrt(fnorm));
}

}  // namespace

SparsePoly build_invariant(const InvariantPolySpec& spec, const KernelBasis& basis) {
    const std::size_t n = basis.c.size();
    SparsePoly out(n);
    for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
        const InvariantBlock& block = spec.blocks[b];
        if (block.form.dim() != n)
            throw std::invalid_argument("build_invariant: block " + std::to_string(b) +
                                        " has wrong dimension");
        if (block.degree == 0)
            throw std::invalid_argument("build_invariant: block " + std::to_string(b) +
                                        " has zero inner-degree");
        if (block.form.constant() != Complex(0.0))
            throw std::invalid_argument("build_invariant: block " + std::to_string(b) +
                                        " form carries a constant term");
        if (span_residual(block.form, basis.forms) > 1e-10)
            throw std::invalid_argument("build_invariant: block " + std::to_string(b) +
                                        " form is not in the kernel span");
        out = out + block.form.to_poly().pow(block.degree).scaled(block.coefficient);
    }
    return out.pruned();
}

ShiftInvarianceReport check_shift_invariant(const SparsePoly& p, std::span<const Complex> c,
                                            double tol) {
    SparsePoly diff = p.shifted(c) - p;
    ShiftInvarianceReport report;
    report.max_defect = diff.max_coeff_modulus();
    report.pass = report.max_defect <= tol * (1.0 + p.max_coeff_modulus());
    return report;
}

}  // namespace fermat
