#include "fermat/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fermat {

namespace {

// Term order: grlex of the exponent's leading monomial (descending), ties by
// the coefficient's leading monomial (descending), then full structural
// comparison for a deterministic total order.
bool term_less(const ExpTerm& a, const ExpTerm& b) {
    if (auto c = a.exponent.leading_monomial() <=> b.exponent.leading_monomial(); c != 0)
        return c == std::strong_ordering::greater;
    if (auto c = a.coeff.leading_monomial() <=> b.coeff.leading_monomial(); c != 0)
        return c == std::strong_ordering::greater;
    if (auto c = SparsePoly::compare(a.exponent, b.exponent); c != 0)
        return c == std::strong_ordering::less;
    return SparsePoly::compare(a.coeff, b.coeff) == std::strong_ordering::less;
}

}  // namespace

ExpSum ExpSum::raw(std::size_t dim, std::vector<ExpTerm> terms) {
    ExpSum s(dim);
    s.terms_ = std::move(terms);
    return s;
}

ExpSum ExpSum::constant(std::size_t dim, Complex value) {
    return polynomial(SparsePoly::constant(dim, value));
}

ExpSum ExpSum::polynomial(const SparsePoly& q) {
    return term(q, SparsePoly(q.dim()));
}

ExpSum ExpSum::exponential(const SparsePoly& p) {
    return term(SparsePoly::constant(p.dim(), 1.0), p);
}

ExpSum ExpSum::term(const SparsePoly& q, const SparsePoly& p) {
    if (q.dim() != p.dim()) throw std::invalid_argument("ExpSum::term: dimension mismatch");
    return raw(q.dim(), {ExpTerm{q, p}}).normalized();
}

double ExpSum::max_coeff_modulus() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, t.coeff.max_coeff_modulus());
    return m;
}

ExpSum ExpSum::normalized(NormalizeStats* stats) const {
    // 1. Fold exponent constants into coefficients, prune exponent dust.
    std::vector<ExpTerm> work;
    work.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.coeff.is_zero()) continue;
        SparsePoly coeff = t.coeff;
        Complex c0 = t.exponent.constant_term();
        SparsePoly expo = t.exponent;
        if (c0 != Complex(0.0)) {
            if (c0.real() > kExpOverflowLimit) throw EvalOverflow(c0.real());
            coeff = coeff.scaled(std::exp(c0));
            expo = expo.without_constant();
        }
        expo = expo.pruned();
        if (coeff.is_zero()) continue;
        work.push_back(ExpTerm{std::move(coeff), std::move(expo)});
    }

    // 2. Shared merge tolerance from the largest exponent coefficient.
    double max_exp_coeff = 0.0;
    for (const auto& t : work) max_exp_coeff = std::max(max_exp_coeff, t.exponent.max_coeff_modulus());
    const double delta = kPruneEps * (1.0 + max_exp_coeff);

    // 3. Cluster exponent directions by coefficient distance (union-find so a
    //    chain of within-delta neighbours lands in one group).
    const std::size_t n = work.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = coeff_distance(work[i].exponent, work[j].exponent);
            if (d <= delta) {
                std::size_t ri = find(i), rj = find(j);
                if (ri != rj) parent[ri] = rj;
                if (stats && !(work[i].exponent == work[j].exponent)) stats->merged_nonidentical++;
            } else if (d <= 8.0 * delta && stats) {
                stats->borderline.push_back("exponent directions within " +
                                            std::to_string(d / (delta > 0 ? delta : 1.0)) +
                                            "x merge tolerance left unmerged");
            }
        }

    // 4. Merge each cluster; representative exponent is the structurally
    //    smallest member so the result is independent of input term order.
    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<ExpTerm> merged;
    for (auto& group : groups) {
        if (group.empty()) continue;
        std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
            return SparsePoly::compare(work[a].exponent, work[b].exponent) ==
                   std::strong_ordering::less;
        });
        SparsePoly coeff = work[group.front()].coeff;
        for (std::size_t k = 1; k < group.size(); ++k) coeff = coeff + work[group[k]].coeff;
        coeff = coeff.pruned();
        if (coeff.is_zero()) continue;
        merged.push_back(ExpTerm{std::move(coeff), work[group.front()].exponent});
    }

    std::sort(merged.begin(), merged.end(), term_less);
    return raw(dim_, std::move(merged));
}

void ExpSum::check_same_dim(const ExpSum& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("ExpSum: dimension mismatch");
}

ExpSum ExpSum::operator+(const ExpSum& other) const {
    check_same_dim(other);
    std::vector<ExpTerm> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return raw(dim_, std::move(all)).normalized();
}

ExpSum ExpSum::operator-(const ExpSum& other) const { return *this + other.scaled(-1.0); }

ExpSum ExpSum::operator*(const ExpSum& other) const {
    check_same_dim(other);
    std::vector<ExpTerm> cross;
    cross.reserve(terms_.size() * other.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : other.terms_)
            cross.push_back(ExpTerm{a.coeff * b.coeff, a.exponent + b.exponent});
    return raw(dim_, std::move(cross)).normalized();
}

ExpSum ExpSum::scaled(Complex factor) const {
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(ExpTerm{t.coeff.scaled(factor), t.exponent});
    return raw(dim_, std::move(out)).normalized();
}

ExpSum ExpSum::derivative(std::size_t axis, unsigned order) const {
    if (axis >= dim_) throw std::invalid_argument("ExpSum::derivative: axis out of range");
    // d/dz [Q e^P] = (Q' + Q P') e^P, iterated.
    std::vector<ExpTerm> work = terms_;
    for (unsigned it = 0; it < order; ++it) {
        std::vector<ExpTerm> next;
        next.reserve(work.size());
        for (const auto& t : work) {
            SparsePoly q = t.coeff.derivative(axis) + t.coeff * t.exponent.derivative(axis);
            if (q.is_zero()) continue;
            next.push_back(ExpTerm{std::move(q), t.exponent});
        }
        work = std::move(next);
    }
    return raw(dim_, std::move(work)).normalized();
}

ExpSum ExpSum::shifted(std::span<const Complex> c) const {
    if (c.size() != dim_) throw std::invalid_argument("ExpSum::shifted: shift dimension mismatch");
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(ExpTerm{t.coeff.shifted(c), t.exponent.shifted(c)});
    return raw(dim_, std::move(out)).normalized();
}

Complex ExpSum::evaluate(std::span<const Complex> z) const {
    if (z.size() != dim_) throw std::invalid_argument("ExpSum::evaluate: point dimension mismatch");
    Complex acc = 0.0;
    for (const auto& t : terms_) {
        Complex p = t.exponent.evaluate(z);
        if (p.real() > kExpOverflowLimit) throw EvalOverflow(p.real());
        acc += t.coeff.evaluate(z) * std::exp(p);
    }
    return acc;
}

bool ExpSum::is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const ExpTerm& t) { return t.exponent.is_zero(); });
}

SparsePoly ExpSum::as_polynomial() const {
    if (!is_polynomial()) throw std::invalid_argument("ExpSum: not a plain polynomial");
    SparsePoly p(dim_);
    for (const auto& t : terms_) p = p + t.coeff;
    return p;
}

bool ExpSum::operator==(const ExpSum& other) const {
    if (dim_ != other.dim_ || terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].coeff == other.terms_[i].coeff) ||
            !(terms_[i].exponent == other.terms_[i].exponent))
            return false;
    return true;
}

bool approx_equal(const ExpSum& a, const ExpSum& b, double tol) {
    const double scale = 1.0 + std::max(a.max_coeff_modulus(), b.max_coeff_modulus());
    ExpSum diff = a - b;
    return diff.max_coeff_modulus() <= tol * scale;
}

}  // namespace fermat
