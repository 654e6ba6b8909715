#include "fermat/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace fermat {

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw std::invalid_argument("MultiIndex::unit: axis out of range");
    MultiIndex m(dim);
    m[axis] = 1;
    return m;
}

unsigned MultiIndex::total_degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
    if (size() != other.size()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    MultiIndex out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = exps_[i] + other.exps_[i];
    return out;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
    if (auto c = total_degree() <=> other.total_degree(); c != 0) return c;
    return exps_ <=> other.exps_;
}

SparsePoly SparsePoly::constant(std::size_t dim, Complex value) {
    SparsePoly p(dim);
    p.set_coeff(MultiIndex(dim), value);
    return p;
}

SparsePoly SparsePoly::variable(std::size_t dim, std::size_t axis) {
    SparsePoly p(dim);
    p.set_coeff(MultiIndex::unit(dim, axis), 1.0);
    return p;
}

bool SparsePoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

Complex SparsePoly::constant_term() const {
    auto it = terms_.find(MultiIndex(dim_));
    return it == terms_.end() ? Complex(0.0) : it->second;
}

unsigned SparsePoly::degree() const {
    // terms_ is grlex-sorted, so the last key carries the maximal total degree
    return terms_.empty() ? 0u : terms_.rbegin()->first.total_degree();
}

unsigned SparsePoly::degree_in(std::size_t axis) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[axis]);
    return d;
}

double SparsePoly::max_coeff_modulus() const {
    double m = 0.0;
    for (const auto& [mi, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

MultiIndex SparsePoly::leading_monomial() const {
    return terms_.empty() ? MultiIndex(dim_) : terms_.rbegin()->first;
}

void SparsePoly::set_coeff(const MultiIndex& m, Complex value) {
    if (m.size() != dim_) throw std::invalid_argument("SparsePoly: monomial dimension mismatch");
    if (!is_finite(value)) throw std::invalid_argument("SparsePoly: non-finite coefficient");
    if (value == Complex(0.0)) {
        terms_.erase(m);
    } else {
        terms_[m] = value;
    }
}

Complex SparsePoly::coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

void SparsePoly::check_same_dim(const SparsePoly& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("SparsePoly: dimension mismatch");
}

SparsePoly SparsePoly::operator+(const SparsePoly& other) const {
    check_same_dim(other);
    SparsePoly out = *this;
    for (const auto& [m, c] : other.terms_) out.set_coeff(m, out.coeff(m) + c);
    return out;
}

SparsePoly SparsePoly::operator-(const SparsePoly& other) const {
    check_same_dim(other);
    SparsePoly out = *this;
    for (const auto& [m, c] : other.terms_) out.set_coeff(m, out.coeff(m) - c);
    return out;
}

SparsePoly SparsePoly::operator*(const SparsePoly& other) const {
    check_same_dim(other);
    SparsePoly out(dim_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_) {
            MultiIndex m = ma.plus(mb);
            out.set_coeff(m, out.coeff(m) + ca * cb);
        }
    return out.pruned();
}

SparsePoly SparsePoly::operator-() const { return scaled(-1.0); }

SparsePoly SparsePoly::scaled(Complex factor) const {
    SparsePoly out(dim_);
    if (factor == Complex(0.0)) return out;
    for (const auto& [m, c] : terms_) out.set_coeff(m, c * factor);
    return out;
}

SparsePoly SparsePoly::pow(unsigned exponent) const {
    SparsePoly result = constant(dim_, 1.0);
    for (unsigned i = 0; i < exponent; ++i) result = result * *this;
    return result;
}

SparsePoly SparsePoly::derivative(std::size_t axis) const {
    if (axis >= dim_) throw std::invalid_argument("SparsePoly::derivative: axis out of range");
    SparsePoly out(dim_);
    for (const auto& [m, c] : terms_) {
        if (m[axis] == 0) continue;
        MultiIndex dm = m;
        dm[axis] -= 1;
        out.set_coeff(dm, out.coeff(dm) + c * static_cast<double>(m[axis]));
    }
    return out;
}

SparsePoly SparsePoly::shifted(std::span<const Complex> c) const {
    if (c.size() != dim_) throw std::invalid_argument("SparsePoly::shifted: shift dimension mismatch");
    // Per-variable binomial powers (z_j + c_j)^e, cached by (axis, exponent).
    std::vector<std::vector<SparsePoly>> powers(dim_);
    auto var_power = [&](std::size_t j, unsigned e) -> const SparsePoly& {
        auto& cache = powers[j];
        if (cache.empty()) cache.push_back(constant(dim_, 1.0));
        while (cache.size() <= e) {
            SparsePoly base = variable(dim_, j) + constant(dim_, c[j]);
            cache.push_back(cache.back() * base);
        }
        return cache[e];
    };
    SparsePoly out(dim_);
    for (const auto& [m, coeff] : terms_) {
        SparsePoly term = constant(dim_, coeff);
        for (std::size_t j = 0; j < dim_; ++j)
            if (m[j] > 0) term = term * var_power(j, m[j]);
        out = out + term;
    }
    return out.pruned();
}

Complex SparsePoly::evaluate(std::span<const Complex> z) const {
    if (z.size() != dim_) throw std::invalid_argument("SparsePoly::evaluate: point dimension mismatch");
    // Power tables avoid repeated pow() calls and keep evaluation deterministic.
    std::vector<std::vector<Complex>> powers(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        unsigned d = degree_in(j);
        powers[j].resize(d + 1);
        powers[j][0] = 1.0;
        for (unsigned e = 1; e <= d; ++e) powers[j][e] = powers[j][e - 1] * z[j];
    }
    Complex acc = 0.0;
    for (const auto& [m, c] : terms_) {
        Complex mono = c;
        for (std::size_t j = 0; j < dim_; ++j)
            if (m[j] > 0) mono *= powers[j][m[j]];
        acc += mono;
    }
    return acc;
}

SparsePoly SparsePoly::without_constant() const {
    SparsePoly out = *this;
    out.terms_.erase(MultiIndex(dim_));
    return out;
}

SparsePoly SparsePoly::pruned() const {
    const double threshold = kPruneEps * (1.0 + max_coeff_modulus());
    SparsePoly out(dim_);
    for (const auto& [m, c] : terms_)
        if (std::abs(c) >= threshold) out.terms_[m] = c;
    return out;
}

bool SparsePoly::operator==(const SparsePoly& other) const {
    return dim_ == other.dim_ && terms_ == other.terms_;
}

std::strong_ordering SparsePoly::compare(const SparsePoly& a, const SparsePoly& b) {
    auto ita = a.terms_.begin();
    auto itb = b.terms_.begin();
    auto cmp_complex = [](Complex x, Complex y) {
        if (auto c = x.real() <=> y.real(); c != 0) return c;
        return x.imag() <=> y.imag();
    };
    while (ita != a.terms_.end() && itb != b.terms_.end()) {
        if (auto c = ita->first <=> itb->first; c != 0) return c;
        if (auto c = cmp_complex(ita->second, itb->second); c != 0)
            return c == std::partial_ordering::less ? std::strong_ordering::less
                                                    : std::strong_ordering::greater;
        ++ita;
        ++itb;
    }
    if (ita != a.terms_.end()) return std::strong_ordering::greater;
    if (itb != b.terms_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

double coeff_distance(const SparsePoly& a, const SparsePoly& b) {
    double d = 0.0;
    for (const auto& [m, c] : a.terms()) d = std::max(d, std::abs(c - b.coeff(m)));
    for (const auto& [m, c] : b.terms())
        if (!a.terms().contains(m)) d = std::max(d, std::abs(c));
    return d;
}

bool approx_equal(const SparsePoly& a, const SparsePoly& b, double tol) {
    const double scale = 1.0 + std::max(a.max_coeff_modulus(), b.max_coeff_modulus());
    return coeff_distance(a, b) <= tol * scale;
}

LinearForm LinearForm::from_poly(const SparsePoly& p) {
    if (p.degree() > 1) throw std::invalid_argument("LinearForm: polynomial has degree > 1");
    std::vector<Complex> coeffs(p.dim(), 0.0);
    Complex constant = 0.0;
    for (const auto& [m, c] : p.terms()) {
        if (m.total_degree() == 0) {
            constant = c;
            continue;
        }
        for (std::size_t j = 0; j < p.dim(); ++j)
            if (m[j] == 1) coeffs[j] = c;
    }
    return LinearForm(std::move(coeffs), constant);
}

Complex LinearForm::evaluate(std::span<const Complex> z) const {
    if (z.size() != coeffs_.size()) throw std::invalid_argument("LinearForm: point dimension mismatch");
    Complex acc = constant_;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) acc += coeffs_[j] * z[j];
    return acc;
}

SparsePoly LinearForm::to_poly() const {
    SparsePoly p(coeffs_.size());
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        if (coeffs_[j] != Complex(0.0)) p.set_coeff(MultiIndex::unit(coeffs_.size(), j), coeffs_[j]);
    if (constant_ != Complex(0.0)) p.set_coeff(MultiIndex(coeffs_.size()), constant_);
    return p;
}

std::string format_complex(Complex z, int precision) {
    char buf[128];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, z.real());
        return buf;
    }
    if (z.real() == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.*gi", precision, z.imag());
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.*g%+.*gi", precision, z.real(), precision, z.imag());
    return buf;
}

}  // namespace fermat
