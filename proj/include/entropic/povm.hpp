// povm.hpp — finite POVMs, measurement distributions, Liouville pairings and
// product majorants.

#pragma once

#include "entropic/operator_core.hpp"

#include <numbers>
#include <numeric>
#include <optional>

namespace entropic {

inline constexpr double kPovmPsdTolerance = 1e-10;
inline constexpr double kPovmSumTolerance = 1e-9;
inline constexpr double kOrthonormalTolerance = 1e-10;
inline constexpr double kProjectorTolerance = 1e-10;

/// Partition of {0..n-1}: each inner vector is one group.
using Partition = std::vector<std::vector<std::size_t>>;

/// Discrete measure on labeled atoms.
struct WeightedMeasure {
    std::vector<std::string> labels;
    std::vector<double> masses;

    std::size_t size() const noexcept { return masses.size(); }
    double total() const { return std::accumulate(masses.begin(), masses.end(), 0.0); }

    /// Validates nonnegativity (and unit mass when `probability`).
    void validate(bool probability = false) const {
        if (labels.size() != masses.size())
            throw std::invalid_argument("WeightedMeasure: labels and masses differ in length");
        for (std::size_t i = 0; i < masses.size(); ++i)
            if (!(masses[i] >= 0.0) || !std::isfinite(masses[i]))
                throw std::invalid_argument("WeightedMeasure: invalid mass at label '" + labels[i] + "'");
        if (probability && !(std::abs(total() - 1.0) <= 1e-9))
            throw std::invalid_argument("WeightedMeasure: probability masses do not sum to 1");
    }
};

inline std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
    return out;
}

// ---------------------------------------------------------------------------
// FinitePOVM
// ---------------------------------------------------------------------------

class FinitePOVM {
  public:
    FinitePOVM(std::vector<HermitianOperator> elements, std::vector<std::string> labels)
        : elements_(std::move(elements)), labels_(std::move(labels)) {
        if (elements_.empty()) throw std::invalid_argument("FinitePOVM: no elements");
        if (labels_.size() != elements_.size())
            throw std::invalid_argument("FinitePOVM: labels and elements differ in length");
        const Index d = elements_.front().dim();
        Matrix sum = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            const auto& e = elements_[i];
            if (e.dim() != d) throw std::invalid_argument("FinitePOVM: element dimensions differ");
            const double lmin = eig_hermitian(e).eigenvalues.minCoeff();
            if (!(lmin >= -kPovmPsdTolerance))
                throw std::invalid_argument("FinitePOVM: element '" + labels_[i] +
                                            "' is not positive semidefinite (min eigenvalue " +
                                            std::to_string(lmin) + ")");
            sum += e.matrix();
        }
        const double err = max_abs(sum - Matrix::Identity(d, d));
        if (!(err <= kPovmSumTolerance))
            throw std::invalid_argument("FinitePOVM: elements do not sum to identity (max deviation " +
                                        std::to_string(err) + ")");
    }

    explicit FinitePOVM(std::vector<HermitianOperator> elements)
        : FinitePOVM(elements, index_labels(elements.size())) {}

    Index dim() const noexcept { return elements_.front().dim(); }
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<HermitianOperator>& elements() const noexcept { return elements_; }
    const HermitianOperator& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// U P_i U*
    FinitePOVM conjugated(const Matrix& u) const {
        std::vector<HermitianOperator> els;
        els.reserve(elements_.size());
        for (const auto& e : elements_) els.push_back(e.conjugated(u));
        return FinitePOVM(std::move(els), labels_);
    }

    bool is_projective(double tolerance = 1e-9) const {
        for (const auto& e : elements_)
            if (max_abs(e.matrix() * e.matrix() - e.matrix()) > tolerance) return false;
        return true;
    }

  private:
    std::vector<HermitianOperator> elements_;
    std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// constructions
// ---------------------------------------------------------------------------

/// Columns of `basis` as orthonormal vectors; throws if U*U deviates from I.
inline void require_orthonormal(const Matrix& basis, const char* who) {
    if (basis.rows() != basis.cols() || basis.rows() == 0)
        throw std::invalid_argument(std::string(who) + ": basis must be a square, non-empty matrix");
    const double err = max_abs(basis.adjoint() * basis - Matrix::Identity(basis.cols(), basis.cols()));
    if (!(err <= kOrthonormalTolerance))
        throw std::invalid_argument(std::string(who) + ": vectors are not orthonormal (max |U*U - I| = " +
                                    std::to_string(err) + ")");
}

/// P(i) = projector onto column i.
inline FinitePOVM povm_from_basis(const Matrix& basis) {
    require_orthonormal(basis, "povm_from_basis");
    std::vector<HermitianOperator> els;
    els.reserve(static_cast<std::size_t>(basis.cols()));
    for (Index i = 0; i < basis.cols(); ++i)
        els.push_back(HermitianOperator::hermitian_part(basis.col(i) * basis.col(i).adjoint()));
    return FinitePOVM(std::move(els));
}

/// Orthonormal basis of the range of an orthogonal projector (as columns).
inline Matrix projector_range(const HermitianOperator& proj) {
    const double idem = max_abs(proj.matrix() * proj.matrix() - proj.matrix());
    if (!(idem <= kProjectorTolerance))
        throw std::invalid_argument("projector_range: operator is not idempotent (max |P^2 - P| = " +
                                    std::to_string(idem) + ")");
    const EigenDecomposition eig = eig_hermitian(proj);
    // eigenvalues ascending: the trailing ones are ≈ 1
    Index rank = 0;
    for (Index i = 0; i < eig.dim(); ++i)
        if (eig.eigenvalues(i) > 0.5) ++rank;
    if (rank == 0) throw std::invalid_argument("projector_range: projector has rank 0");
    return eig.eigenvectors.rightCols(rank);
}

/// V* P_i V with V an orthonormal basis of range(proj). Elements sum to I_r.
inline FinitePOVM povm_compress(const FinitePOVM& p, const HermitianOperator& proj) {
    if (proj.dim() != p.dim()) throw std::invalid_argument("povm_compress: dimension mismatch");
    const Matrix v = projector_range(proj);
    std::vector<HermitianOperator> els;
    els.reserve(p.size());
    for (const auto& e : p.elements()) els.push_back(HermitianOperator::hermitian_part(v.adjoint() * e.matrix() * v));
    return FinitePOVM(std::move(els), p.labels());
}

/// P(i) = Π_{e_i} ⊗ 1_b and Q(j) = 1_a ⊗ Π_{f_j} on C^a ⊗ C^b.
inline std::pair<FinitePOVM, FinitePOVM> povm_tensor_pair(const Matrix& basis1, const Matrix& basis2) {
    require_orthonormal(basis1, "povm_tensor_pair");
    require_orthonormal(basis2, "povm_tensor_pair");
    const Index a = basis1.cols();
    const Index b = basis2.cols();
    std::vector<HermitianOperator> ps, qs;
    for (Index i = 0; i < a; ++i)
        ps.push_back(HermitianOperator::hermitian_part(
            kron(basis1.col(i) * basis1.col(i).adjoint(), Matrix::Identity(b, b))));
    for (Index j = 0; j < b; ++j)
        qs.push_back(HermitianOperator::hermitian_part(
            kron(Matrix::Identity(a, a), basis2.col(j) * basis2.col(j).adjoint())));
    return {FinitePOVM(std::move(ps)), FinitePOVM(std::move(qs))};
}

/// Throws unless `groups` is a partition of {0..n-1}.
inline void require_partition(const Partition& groups, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("partition: empty group");
        for (std::size_t i : g) {
            if (i >= n) throw std::invalid_argument("partition: index " + std::to_string(i) + " out of range");
            if (seen[i]++) throw std::invalid_argument("partition: index " + std::to_string(i) + " appears twice");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i]) throw std::invalid_argument("partition: index " + std::to_string(i) + " is missing");
}

inline std::string group_label(const std::vector<std::string>& labels, const std::vector<std::size_t>& group) {
    std::string out;
    for (std::size_t k = 0; k < group.size(); ++k) {
        if (k) out += '+';
        out += labels[group[k]];
    }
    return out;
}

/// One element per group: the sum of its members.
inline FinitePOVM povm_coarsen(const FinitePOVM& p, const Partition& groups) {
    require_partition(groups, p.size());
    std::vector<HermitianOperator> els;
    std::vector<std::string> labels;
    for (const auto& g : groups) {
        Matrix m = Matrix::Zero(p.dim(), p.dim());
        for (std::size_t i : g) m += p[i].matrix();
        els.push_back(HermitianOperator::hermitian_part(std::move(m)));
        labels.push_back(group_label(p.labels(), g));
    }
    return FinitePOVM(std::move(els), std::move(labels));
}

/// Pushforward of a measure along a partition.
inline WeightedMeasure pushforward(const WeightedMeasure& mu, const Partition& groups) {
    require_partition(groups, mu.size());
    WeightedMeasure out;
    for (const auto& g : groups) {
        double m = 0.0;
        for (std::size_t i : g) m += mu.masses[i];
        out.masses.push_back(m);
        out.labels.push_back(group_label(mu.labels, g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// measurement and Liouville pairing
// ---------------------------------------------------------------------------

/// ν_P^ρ(i) = τ(ρ P_i), negative rounding clamped to 0.
inline WeightedMeasure measurement_distribution(const DensityMatrix& rho, const FinitePOVM& p) {
    if (rho.dim() != p.dim()) throw std::invalid_argument("measurement_distribution: dimension mismatch");
    WeightedMeasure nu{p.labels(), std::vector<double>(p.size())};
    for (std::size_t i = 0; i < p.size(); ++i) nu.masses[i] = std::max(0.0, trace_product(rho.op(), p[i]));
    return nu;
}

/// |P| × |Q| matrix of τ(P_i Q_j).
struct LiouvilleMatrix {
    RealMatrix entries;

    Index rows() const noexcept { return entries.rows(); }
    Index cols() const noexcept { return entries.cols(); }
    double operator()(Index i, Index j) const { return entries(i, j); }
    double total() const { return entries.sum(); }
};

inline LiouvilleMatrix liouville_matrix(const FinitePOVM& p, const FinitePOVM& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("liouville_matrix: dimension mismatch");
    LiouvilleMatrix l{RealMatrix(static_cast<Index>(p.size()), static_cast<Index>(q.size()))};
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) {
            const Complex v = trace_product(p[i].matrix(), q[j].matrix());
            if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
                throw std::runtime_error("liouville_matrix: non-real pairing " + std::to_string(v.imag()));
            l.entries(static_cast<Index>(i), static_cast<Index>(j)) = v.real();
        }
    return l;
}

// ---------------------------------------------------------------------------
// product majorants
// ---------------------------------------------------------------------------

struct ProductMajorant {
    WeightedMeasure mu_p;
    WeightedMeasure mu_q;
};

namespace detail {

/// -mean ln μ over the support, for both marginals (uniform weights).
inline double uniform_constant(const std::vector<double>& mp, const std::vector<double>& mq) {
    auto term = [](const std::vector<double>& m) {
        double s = 0.0;
        std::size_t n = 0;
        for (double x : m)
            if (x > 0.0) {
                s -= std::log(x);
                ++n;
            }
        return n ? s / double(n) : 0.0;
    };
    return term(mp) + term(mq);
}

}  // namespace detail

/// Factorized majorant μ_P(i) μ_Q(j) ≥ L(i,j).
///
/// Default: μ_P(i) = max_j √L(i,j) and μ_Q(j) = max_i √L(i,j), which on a
/// basis pair is sup_j |⟨e_i, f_j⟩|. With `refine`, alternately shrinks each
/// side to max L/μ_other until the uniform-weight constant stops improving
/// by more than 1e-10. Zero rows/columns get mass 0.
inline ProductMajorant product_majorant(const LiouvilleMatrix& l, bool refine = false,
                                        std::vector<std::string> labels_p = {},
                                        std::vector<std::string> labels_q = {}) {
    const Index m = l.rows();
    const Index n = l.cols();
    if ((l.entries.array() < -1e-10).any()) throw std::invalid_argument("product_majorant: negative entry");
    const RealMatrix a = l.entries.cwiseMax(0.0);

    std::vector<double> mp(static_cast<std::size_t>(m), 0.0), mq(static_cast<std::size_t>(n), 0.0);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) {
            const double s = std::sqrt(a(i, j));
            mp[static_cast<std::size_t>(i)] = std::max(mp[static_cast<std::size_t>(i)], s);
            mq[static_cast<std::size_t>(j)] = std::max(mq[static_cast<std::size_t>(j)], s);
        }

    if (refine) {
        double k = detail::uniform_constant(mp, mq);
        for (int iter = 0; iter < 10000; ++iter) {
            std::vector<double> np(mp.size(), 0.0), nq(mq.size(), 0.0);
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < n; ++j)
                    if (a(i, j) > 0.0)
                        np[static_cast<std::size_t>(i)] =
                            std::max(np[static_cast<std::size_t>(i)], a(i, j) / mq[static_cast<std::size_t>(j)]);
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < n; ++j)
                    if (a(i, j) > 0.0)
                        nq[static_cast<std::size_t>(j)] =
                            std::max(nq[static_cast<std::size_t>(j)], a(i, j) / np[static_cast<std::size_t>(i)]);
            const double nk = detail::uniform_constant(np, nq);
            if (!(nk > k + 1e-10)) {
                if (nk > k) {
                    mp = std::move(np);
                    mq = std::move(nq);
                }
                break;
            }
            mp = std::move(np);
            mq = std::move(nq);
            k = nk;
        }
    }

    if (labels_p.empty()) labels_p = index_labels(mp.size());
    if (labels_q.empty()) labels_q = index_labels(mq.size());
    return {WeightedMeasure{std::move(labels_p), std::move(mp)}, WeightedMeasure{std::move(labels_q), std::move(mq)}};
}

/// Worst entrywise violation max(L(i,j) - μ_P(i)μ_Q(j)), with its position.
struct MajorantCheck {
    double worst_excess;
    Index row;
    Index col;
};

inline MajorantCheck check_majorant(const LiouvilleMatrix& l, const WeightedMeasure& mu_p,
                                    const WeightedMeasure& mu_q) {
    if (static_cast<Index>(mu_p.size()) != l.rows() || static_cast<Index>(mu_q.size()) != l.cols())
        throw std::invalid_argument("check_majorant: size mismatch");
    MajorantCheck c{-std::numeric_limits<double>::infinity(), 0, 0};
    for (Index i = 0; i < l.rows(); ++i)
        for (Index j = 0; j < l.cols(); ++j) {
            const double ex = l(i, j) - mu_p.masses[static_cast<std::size_t>(i)] * mu_q.masses[static_cast<std::size_t>(j)];
            if (ex > c.worst_excess) c = {ex, i, j};
        }
    return c;
}

// ---------------------------------------------------------------------------
// bases
// ---------------------------------------------------------------------------

/// Columns f_j(k) = d^{-1/2} e^{-2πi jk/d}.
inline Matrix dft_basis(Index d) {
    if (d < 1) throw std::invalid_argument("dft_basis: d must be positive");
    Matrix f(d, d);
    const double s = 1.0 / std::sqrt(double(d));
    for (Index j = 0; j < d; ++j)
        for (Index k = 0; k < d; ++k) {
            // reduce jk mod d before scaling to keep the phase exact for large d
            const double phase = -2.0 * std::numbers::pi * double((j * k) % d) / double(d);
            f(k, j) = std::polar(s, phase);
        }
    return f;
}

/// Standard basis and DFT basis; mutually unbiased in every dimension.
inline std::pair<Matrix, Matrix> mub_pair(Index d) {
    return {Matrix::Identity(d, d), dft_basis(d)};
}

}  // namespace entropic
