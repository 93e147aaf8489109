// uncertainty.hpp — entropic uncertainty bookkeeping for a pair of POVMs:
// relative-entropy terms, the deficit of the POVM uncertainty inequality,
// the basis-pair constants K and K', and the intermediate quantities of its
// proof (trace product bound, operator Jensen gap, refinement monotonicity).

#pragma once

#include "entropic/povm.hpp"

namespace entropic {

inline constexpr double kMajorantTolerance = 1e-12;
inline constexpr double kDeficitTolerance = 1e-8;

/// -Σ_{ν_i > 0} ν_i ln(ν_i / μ_i).
///
/// Requires ν ≪ μ; a label with ν_i > 0 and μ_i = 0 is an error. Indices
/// with ν_i = 0 contribute nothing, whatever μ_i is.
inline double relative_entropy_term(const WeightedMeasure& nu, const WeightedMeasure& mu) {
    if (nu.size() != mu.size()) throw std::invalid_argument("relative_entropy_term: measures differ in size");
    if (!nu.labels.empty() && !mu.labels.empty() && nu.labels != mu.labels)
        throw std::invalid_argument("relative_entropy_term: measures carry different labels");
    double s = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double v = nu.masses[i];
        if (!(v > 0.0)) continue;
        const double m = mu.masses[i];
        if (!(m > 0.0)) {
            const std::string label = i < nu.labels.size() ? nu.labels[i] : std::to_string(i);
            throw std::domain_error("relative_entropy_term: not absolutely continuous at label '" + label + "'");
        }
        s -= v * std::log(v / m);
    }
    return s;
}

struct UncertaintyDeficit {
    double lhs;      // sum of both relative-entropy terms
    double entropy;  // S(ρ)
    double deficit;  // lhs - S(ρ)
};

/// Throws std::domain_error naming the worst (i, j) when μ_P ⊗ μ_Q fails to
/// majorize the Liouville matrix by more than kMajorantTolerance.
inline void require_majorant(const LiouvilleMatrix& l, const WeightedMeasure& mu_p, const WeightedMeasure& mu_q) {
    const MajorantCheck c = check_majorant(l, mu_p, mu_q);
    if (c.worst_excess > kMajorantTolerance) {
        std::ostringstream os;
        os << "majorant violated at (" << c.row << ", " << c.col << "): L - mu_P mu_Q = " << c.worst_excess;
        throw std::domain_error(os.str());
    }
}

inline UncertaintyDeficit theorem1_deficit(const DensityMatrix& rho, const FinitePOVM& p, const FinitePOVM& q,
                                           const WeightedMeasure& mu_p, const WeightedMeasure& mu_q) {
    require_majorant(liouville_matrix(p, q), mu_p, mu_q);
    const double lhs = relative_entropy_term(measurement_distribution(rho, p), mu_p) +
                       relative_entropy_term(measurement_distribution(rho, q), mu_q);
    const double s = von_neumann_entropy(rho);
    return {lhs, s, lhs - s};
}

/// Same, with the default product majorant built from the pair.
inline UncertaintyDeficit theorem1_deficit(const DensityMatrix& rho, const FinitePOVM& p, const FinitePOVM& q) {
    const ProductMajorant mj = product_majorant(liouville_matrix(p, q), false, p.labels(), q.labels());
    return theorem1_deficit(rho, p, q, mj.mu_p, mj.mu_q);
}

/// K = -Σ p_i ln μ_P(i) - Σ q_j ln μ_Q(j).
inline double constant_K(const WeightedMeasure& p, const WeightedMeasure& q, const WeightedMeasure& mu_p,
                         const WeightedMeasure& mu_q) {
    auto term = [](const WeightedMeasure& w, const WeightedMeasure& mu) {
        if (w.size() != mu.size()) throw std::invalid_argument("constant_K: size mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!(w.masses[i] > 0.0)) continue;
            if (!(mu.masses[i] > 0.0))
                throw std::domain_error("constant_K: zero majorant mass on the support at index " + std::to_string(i));
            s -= w.masses[i] * std::log(mu.masses[i]);
        }
        return s;
    };
    return term(p, mu_p) + term(q, mu_q);
}

/// K' = -2 ln sup_{i,j} |⟨e_i, f_j⟩|.
inline double constant_Kprime(const Matrix& basis1, const Matrix& basis2) {
    if (basis1.rows() != basis2.rows()) throw std::invalid_argument("constant_Kprime: dimension mismatch");
    return -2.0 * std::log((basis1.adjoint() * basis2).cwiseAbs().maxCoeff());
}

/// Σ_ij ϱ_P(i) ϱ_Q(j) L(i,j) with ϱ = ν/μ; at most 1 under a valid majorant.
inline double trace_product_bound(const DensityMatrix& rho, const FinitePOVM& p, const FinitePOVM& q,
                                  const WeightedMeasure& mu_p, const WeightedMeasure& mu_q) {
    const LiouvilleMatrix l = liouville_matrix(p, q);
    require_majorant(l, mu_p, mu_q);
    auto density = [](const WeightedMeasure& nu, const WeightedMeasure& mu) {
        RealVector d = RealVector::Zero(static_cast<Index>(nu.size()));
        for (std::size_t i = 0; i < nu.size(); ++i)
            if (nu.masses[i] > 0.0) {
                if (!(mu.masses[i] > 0.0))
                    throw std::domain_error("trace_product_bound: not absolutely continuous at index " +
                                            std::to_string(i));
                d(static_cast<Index>(i)) = nu.masses[i] / mu.masses[i];
            }
        return d;
    };
    const RealVector rp = density(measurement_distribution(rho, p), mu_p);
    const RealVector rq = density(measurement_distribution(rho, q), mu_q);
    return rp.dot(l.entries * rq);
}

/// Smallest eigenvalue of Σ(-ln w_i) P_i + ln(Σ w_i P_i). Operator convexity
/// of -ln makes this nonnegative; it vanishes on projection valued measures.
inline double choi_jensen_deficit(const FinitePOVM& p, std::span<const double> weights) {
    if (weights.size() != p.size()) throw std::invalid_argument("choi_jensen_deficit: one weight per element");
    const Index d = p.dim();
    Matrix lin = Matrix::Zero(d, d);
    Matrix avg = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double w = weights[i];
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("choi_jensen_deficit: weight " + std::to_string(i) + " is not positive");
        lin -= std::log(w) * p[i].matrix();
        avg += w * p[i].matrix();
    }
    const HermitianOperator log_avg = matrix_log(HermitianOperator::hermitian_part(std::move(avg)));
    const HermitianOperator gap = HermitianOperator::hermitian_part(lin + log_avg.matrix());
    return eig_hermitian(gap).eigenvalues.minCoeff();
}

/// S_{P'} - S_P where S_X = -Σ ν ln(ν/μ) and P' = P coarsened along `groups`.
/// `mu_coarse` must be the pushforward of `mu`.
inline double refinement_gap(const DensityMatrix& rho, const FinitePOVM& p, const Partition& groups,
                             const WeightedMeasure& mu, const WeightedMeasure& mu_coarse) {
    const FinitePOVM coarse = povm_coarsen(p, groups);
    const WeightedMeasure expected = pushforward(mu, groups);
    if (expected.size() != mu_coarse.size()) throw std::invalid_argument("refinement_gap: coarse measure size mismatch");
    for (std::size_t k = 0; k < expected.size(); ++k)
        if (std::abs(expected.masses[k] - mu_coarse.masses[k]) > 1e-12 * std::max(1.0, expected.masses[k]))
            throw std::invalid_argument("refinement_gap: coarse measure is not the pushforward of the fine one");
    WeightedMeasure fine_nu = measurement_distribution(rho, p);
    WeightedMeasure coarse_nu = measurement_distribution(rho, coarse);
    const WeightedMeasure mu_fine{fine_nu.labels, mu.masses};
    const WeightedMeasure mu_c{coarse_nu.labels, mu_coarse.masses};
    return relative_entropy_term(coarse_nu, mu_c) - relative_entropy_term(fine_nu, mu_fine);
}

struct EqualityDiagnostics {
    bool independent;
    bool projective_p;
    bool projective_q;
    bool commuting;
    double deficit;
};

/// Rank-one test on the support of L: every 2×2 minor L(i,j)L(k,l) - L(i,l)L(k,j)
/// over nonzero rows and columns vanishes within `tolerance`.
inline bool is_product_matrix(const LiouvilleMatrix& l, double tolerance = 1e-9) {
    std::vector<Index> rows, cols;
    for (Index i = 0; i < l.rows(); ++i)
        if (l.entries.row(i).cwiseAbs().maxCoeff() > tolerance) rows.push_back(i);
    for (Index j = 0; j < l.cols(); ++j)
        if (l.entries.col(j).cwiseAbs().maxCoeff() > tolerance) cols.push_back(j);
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t e = c + 1; e < cols.size(); ++e) {
                    const double minor = l(rows[a], cols[c]) * l(rows[b], cols[e]) -
                                         l(rows[a], cols[e]) * l(rows[b], cols[c]);
                    if (std::abs(minor) > tolerance) return false;
                }
    return true;
}

inline EqualityDiagnostics equality_diagnostics(const FinitePOVM& p, const FinitePOVM& q, const DensityMatrix& rho,
                                                const WeightedMeasure& mu_p, const WeightedMeasure& mu_q) {
    double comm = 0.0;
    for (const auto& a : p.elements())
        for (const auto& b : q.elements()) comm = std::max(comm, max_commutator(a.matrix(), b.matrix()));
    return {is_product_matrix(liouville_matrix(p, q)), p.is_projective(1e-9), q.is_projective(1e-9), comm < 1e-9,
            theorem1_deficit(rho, p, q, mu_p, mu_q).deficit};
}

}  // namespace entropic
