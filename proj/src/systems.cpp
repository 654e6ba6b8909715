#include "fermat/systems.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace fermat {

std::string to_string(SystemTag tag) {
    switch (tag) {
        case SystemTag::Difference: return "difference";
        case SystemTag::Pdd: return "pdd";
        case SystemTag::DiffPdd: return "diffpdd";
    }
    return "?";
}

void SolutionManifest::validate() const {
    if (dim < 1) throw std::invalid_argument("manifest: dimension must be >= 1");
    if (shift.size() != dim) throw std::invalid_argument("manifest: shift vector has wrong length");
    if (f1.dim() != dim || f2.dim() != dim)
        throw std::invalid_argument("manifest: f1/f2 dimension mismatch");
    for (Complex v : shift)
        if (!is_finite(v)) throw std::invalid_argument("manifest: non-finite shift entry");

    const bool needs_k = kind.tag != SystemTag::Difference;
    if (needs_k && kind.k < 1)
        throw std::invalid_argument("manifest: derivative order k must be >= 1");
    if (!needs_k && kind.k != 0)
        throw std::invalid_argument("manifest: difference system has no derivative order");
    if (needs_k && dim != 2)
        throw std::invalid_argument("manifest: " + to_string(kind.tag) + " system requires n = 2");

    if (kind.tag == SystemTag::DiffPdd) {
        bool all_zero = true;
        for (Complex v : shift) all_zero = all_zero && v == Complex(0.0);
        if (all_zero) throw std::invalid_argument("manifest: diffpdd requires a nonzero shift");
        if (g1 || g2) throw std::invalid_argument("manifest: diffpdd carries no g1/g2 (RHS is 1)");
    } else {
        if (!g1 || !g2) throw std::invalid_argument("manifest: g1 and g2 are required");
        if (g1->dim() != dim || g2->dim() != dim)
            throw std::invalid_argument("manifest: g1/g2 dimension mismatch");
    }
}

namespace {

// Sides of one equation; index 0 pairs f1's derivative/square with shifted f2.
EquationSides equation_sides(const SolutionManifest& m, int eq) {
    const auto& c = m.shift;
    const ExpSum& own = eq == 0 ? m.f1 : m.f2;
    const ExpSum& other = eq == 0 ? m.f2 : m.f1;
    const auto& g = eq == 0 ? m.g1 : m.g2;

    switch (m.kind.tag) {
        case SystemTag::Difference:
            return {own.squared() + other.shifted(c).squared(), ExpSum::exponential(*g)};
        case SystemTag::Pdd: {
            unsigned k = static_cast<unsigned>(m.kind.k);
            return {own.derivative(0, k).squared() + other.shifted(c).squared(),
                    ExpSum::exponential(*g)};
        }
        case SystemTag::DiffPdd: {
            unsigned k = static_cast<unsigned>(m.kind.k);
            ExpSum difference = other.shifted(c) - other;
            return {own.derivative(0, k).squared() + difference.squared(),
                    ExpSum::constant(m.dim, 1.0)};
        }
    }
    throw std::logic_error("equation_sides: unreachable");
}

}  // namespace

std::array<EquationSides, 2> lhs_rhs(const SolutionManifest& m) {
    m.validate();
    return {equation_sides(m, 0), equation_sides(m, 1)};
}

namespace {

std::vector<std::vector<Complex>> sample_polydisc(std::size_t dim, const Sampling& s) {
    std::mt19937_64 gen(s.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<Complex>> points(static_cast<std::size_t>(s.num_points));
    for (auto& z : points) {
        z.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            double r = s.radius * std::sqrt(unit(gen));
            double theta = 2.0 * std::acos(-1.0) * unit(gen);
            z[j] = Complex(r * std::cos(theta), r * std::sin(theta));
        }
    }
    return points;
}

}  // namespace

ResidualReport verify(const SolutionManifest& m, double tol, const Sampling& sampling) {
    if (tol <= 0.0) throw std::invalid_argument("verify: tolerance must be positive");
    if (sampling.num_points < 1) throw std::invalid_argument("verify: need at least one sample point");
    m.validate();

    ResidualReport report;
    report.tol = tol;
    report.sampling = sampling;

    auto points = sample_polydisc(m.dim, sampling);

    for (std::size_t e = 0; e < 2; ++e) {
        EquationSides sides;
        try {
            sides = equation_sides(m, static_cast<int>(e));
        } catch (const EvalOverflow& err) {
            // e.g. a shift drives an exponent constant out of double range;
            // the candidate cannot be a solution at this working precision
            report.warnings.push_back("eq" + std::to_string(e + 1) +
                                      ": symbolic assembly overflowed: " + err.what());
            report.eq[e].symbolic_zero = false;
            report.eq[e].numeric_pass = false;
            report.eq[e].max_coeff_defect = std::numeric_limits<double>::infinity();
            continue;
        }
        const ExpSum& lhs = sides.lhs;
        const ExpSum& rhs = sides.rhs;
        const double scale = 1.0 + std::max(lhs.max_coeff_modulus(), rhs.max_coeff_modulus());

        NormalizeStats stats;
        ExpSum residual = (lhs - rhs).normalized(&stats);
        for (const auto& note : stats.borderline)
            report.warnings.push_back("eq" + std::to_string(e + 1) + ": " + note);

        auto& eq = report.eq[e];
        eq.max_coeff_defect = residual.max_coeff_modulus();
        eq.symbolic_zero = eq.max_coeff_defect <= tol * scale;

        double worst = 0.0;
        int skipped = 0;
        for (const auto& z : points) {
            try {
                Complex l = lhs.evaluate(z);
                Complex r = rhs.evaluate(z);
                double rel = std::abs(l - r) / (1.0 + std::abs(l) + std::abs(r));
                worst = std::max(worst, rel);
            } catch (const EvalOverflow&) {
                ++skipped;
            }
        }
        eq.max_rel_residual = worst;
        eq.skipped_points = skipped;
        if (skipped > 0)
            report.warnings.push_back("eq" + std::to_string(e + 1) + ": skipped " +
                                      std::to_string(skipped) + " overflowing sample points");
        const bool too_many_skips = skipped * 5 > sampling.num_points;
        if (too_many_skips)
            report.warnings.push_back("eq" + std::to_string(e + 1) +
                                      ": more than 20% of sample points overflowed");
        eq.numeric_pass = !too_many_skips && worst <= tol;
    }
    return report;
}

}  // namespace fermat
