// operator_core.hpp — dense Hermitian linear algebra, matrix functions,
// von Neumann entropy and the Gibbs / Golden-Thompson trace inequalities.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entropic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDensityEigenTolerance = 1e-10;
inline constexpr double kDensityTraceTolerance = 1e-10;

// ---------------------------------------------------------------------------
// small matrix helpers
// ---------------------------------------------------------------------------

/// max_{ij} |m_ij - conj(m_ji)|
inline double max_asymmetry(const Matrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// τ(XY) without forming the product.
inline Complex trace_product(const Matrix& x, const Matrix& y) {
    return x.cwiseProduct(y.transpose()).sum();
}

/// Kronecker product, row-major block layout: (a ⊗ b)(i*rb+k, j*cb+l) = a(i,j) b(k,l).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline double max_commutator(const Matrix& a, const Matrix& b) {
    return max_abs(a * b - b * a);
}

// ---------------------------------------------------------------------------
// errors
// ---------------------------------------------------------------------------

class NonHermitianError : public std::invalid_argument {
  public:
    explicit NonHermitianError(double asymmetry)
        : std::invalid_argument(message(asymmetry)), asymmetry_(asymmetry) {}

    double max_asymmetry() const noexcept { return asymmetry_; }

  private:
    static std::string message(double asym) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max |a_ij - conj(a_ji)| = " << asym;
        return os.str();
    }
    double asymmetry_;
};

// ---------------------------------------------------------------------------
// HermitianOperator
// ---------------------------------------------------------------------------

/// Square complex matrix with exact Hermitian symmetry.
///
/// Construction accepts inputs whose asymmetry is below
/// kHermitianTolerance * max(1, max|a_ij|) and stores the Hermitian part,
/// so the stored entries are symmetric to the last bit.
class HermitianOperator {
  public:
    HermitianOperator() = default;

    explicit HermitianOperator(Matrix m, double tolerance = kHermitianTolerance) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
        const double asym = max_asymmetry(m);
        if (!(asym <= tolerance * std::max(1.0, max_abs(m)))) throw NonHermitianError(asym);
        m_ = symmetrize(std::move(m));
    }

    /// Hermitian part (M + M*)/2 with no tolerance check; for values that are
    /// Hermitian up to rounding by construction.
    static HermitianOperator hermitian_part(Matrix m) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
        HermitianOperator h;
        h.m_ = symmetrize(std::move(m));
        return h;
    }

    static HermitianOperator identity(Index dim) {
        return hermitian_part(Matrix::Identity(dim, dim));
    }

    static HermitianOperator zero(Index dim) { return hermitian_part(Matrix::Zero(dim, dim)); }

    static HermitianOperator diagonal(std::span<const double> diag) {
        Matrix m = Matrix::Zero(static_cast<Index>(diag.size()), static_cast<Index>(diag.size()));
        for (std::size_t i = 0; i < diag.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = diag[i];
        return hermitian_part(std::move(m));
    }

    static HermitianOperator diagonal(std::initializer_list<double> diag) {
        return diagonal(std::span<const double>(diag.begin(), diag.size()));
    }

    /// Rank-one projector onto span{v}; v is normalized first.
    static HermitianOperator projector(const Vector& v) {
        const double n = v.norm();
        if (!(n > 0.0)) throw std::invalid_argument("projector: zero vector");
        const Vector u = v / n;
        return hermitian_part(u * u.adjoint());
    }

    Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    Complex operator()(Index i, Index j) const { return m_(i, j); }
    double trace() const { return m_.trace().real(); }

    /// U A U*
    HermitianOperator conjugated(const Matrix& u) const {
        return hermitian_part(u * m_ * u.adjoint());
    }

    friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
        check_same_dim(a, b);
        return hermitian_part(a.m_ + b.m_);
    }
    friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
        check_same_dim(a, b);
        return hermitian_part(a.m_ - b.m_);
    }
    friend HermitianOperator operator*(double s, const HermitianOperator& a) {
        return hermitian_part(s * a.m_);
    }

  private:
    static Matrix symmetrize(Matrix m) {
        Matrix h = 0.5 * (m + m.adjoint());
        return h;
    }
    static void check_same_dim(const HermitianOperator& a, const HermitianOperator& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("HermitianOperator: dimension mismatch");
    }

    Matrix m_;
};

inline double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
    return trace_product(a.matrix(), b.matrix()).real();
}

inline HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator::hermitian_part(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// eigendecomposition and matrix functions
// ---------------------------------------------------------------------------

/// Ascending eigenvalues with orthonormal eigenvector columns.
struct EigenDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;

    Index dim() const noexcept { return eigenvalues.size(); }

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
    }
};

inline EigenDecomposition eig_hermitian(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Rejects matrices that are not Hermitian within kHermitianTolerance.
inline EigenDecomposition eig_hermitian(const Matrix& a) {
    return eig_hermitian(HermitianOperator(a));
}

/// U diag(f(λ)) U*. Throws std::domain_error naming the first eigenvalue on
/// which f is not finite.
template <class F>
HermitianOperator matrix_function(const EigenDecomposition& eig, F&& f) {
    RealVector fl(eig.dim());
    for (Index i = 0; i < eig.dim(); ++i) {
        const double lambda = eig.eigenvalues(i);
        const double v = f(lambda);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os.precision(17);
            os << "matrix_function: f is not finite at eigenvalue " << lambda;
            throw std::domain_error(os.str());
        }
        fl(i) = v;
    }
    return HermitianOperator::hermitian_part(eig.eigenvectors * fl.cast<Complex>().asDiagonal() *
                                             eig.eigenvectors.adjoint());
}

template <class F>
HermitianOperator matrix_function(const HermitianOperator& a, F&& f) {
    return matrix_function(eig_hermitian(a), std::forward<F>(f));
}

inline HermitianOperator matrix_exp(const HermitianOperator& a) {
    return matrix_function(a, [](double x) { return std::exp(x); });
}

inline HermitianOperator matrix_log(const HermitianOperator& a) {
    return matrix_function(a, [](double x) { return std::log(x); });
}

/// ln Σ exp(v_i), shifted by the maximum.
inline double log_sum_exp(const RealVector& v) {
    if (v.size() == 0) return -std::numeric_limits<double>::infinity();
    const double m = v.maxCoeff();
    if (!std::isfinite(m)) return m;
    return m + std::log((v.array() - m).exp().sum());
}

/// ln τ(e^A), stable for large spectra.
inline double log_trace_exp(const HermitianOperator& a) {
    return log_sum_exp(eig_hermitian(a).eigenvalues);
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// Positive semidefinite, unit trace. Keeps its eigendecomposition.
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianOperator op) : op_(std::move(op)), eig_(eig_hermitian(op_)) {
        const double tr = op_.trace();
        if (!(std::abs(tr - 1.0) <= kDensityTraceTolerance)) {
            std::ostringstream os;
            os << "DensityMatrix: trace is " << tr << ", expected 1";
            throw std::invalid_argument(os.str());
        }
        const double lmin = eig_.eigenvalues.minCoeff();
        if (!(lmin >= -kDensityEigenTolerance)) {
            std::ostringstream os;
            os << "DensityMatrix: negative eigenvalue " << lmin;
            throw std::invalid_argument(os.str());
        }
    }

    explicit DensityMatrix(const Matrix& m) : DensityMatrix(HermitianOperator(m)) {}

    static DensityMatrix maximally_mixed(Index dim) {
        return DensityMatrix(HermitianOperator::hermitian_part(Matrix::Identity(dim, dim) / double(dim)));
    }

    static DensityMatrix pure(const Vector& v) { return DensityMatrix(HermitianOperator::projector(v)); }

    static DensityMatrix diagonal(std::span<const double> probabilities) {
        return DensityMatrix(HermitianOperator::diagonal(probabilities));
    }
    static DensityMatrix diagonal(std::initializer_list<double> p) {
        return diagonal(std::span<const double>(p.begin(), p.size()));
    }

    Index dim() const noexcept { return op_.dim(); }
    const HermitianOperator& op() const noexcept { return op_; }
    const Matrix& matrix() const noexcept { return op_.matrix(); }
    const EigenDecomposition& eigen() const noexcept { return eig_; }

    /// U ρ U*
    DensityMatrix conjugated(const Matrix& u) const { return DensityMatrix(op_.conjugated(u)); }

  private:
    HermitianOperator op_;
    EigenDecomposition eig_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.op(), b.op()));
}

// ---------------------------------------------------------------------------
// entropy and the two trace inequalities
// ---------------------------------------------------------------------------

/// -Σ p ln p, with 0 ln 0 = 0. Negative inputs are treated as 0.
inline double shannon_entropy(std::span<const double> p) {
    double s = 0.0;
    for (double x : p)
        if (x > 0.0) s -= x * std::log(x);
    return s;
}

/// S(ρ) = -τ(ρ ln ρ). Eigenvalues are clamped to [0, 1] first.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (Index i = 0; i < rho.dim(); ++i) {
        const double l = std::clamp(rho.eigen().eigenvalues(i), 0.0, 1.0);
        if (l > 0.0) s -= l * std::log(l);
    }
    return s;
}

/// τ(Aρ) - S(ρ) + ln τ(e^{-A}); nonnegative, zero exactly at the Gibbs state.
inline double gibbs_deficit(const HermitianOperator& a, const DensityMatrix& rho) {
    if (a.dim() != rho.dim()) throw std::invalid_argument("gibbs_deficit: dimension mismatch");
    const double energy = trace_product(a, rho.op());
    return energy - von_neumann_entropy(rho) + log_trace_exp(-1.0 * a);
}

/// e^{-A} / τ(e^{-A})
inline DensityMatrix gibbs_state(const HermitianOperator& a) {
    const EigenDecomposition eig = eig_hermitian(a);
    const double shift = eig.eigenvalues.minCoeff();
    const HermitianOperator w = matrix_function(eig, [shift](double x) { return std::exp(-(x - shift)); });
    return DensityMatrix(HermitianOperator::hermitian_part(w.matrix() / w.trace()));
}

/// τ(e^{A/2} e^B e^{A/2}) - τ(e^{A+B}) ≥ 0.
inline double golden_thompson_deficit(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("golden_thompson_deficit: dimension mismatch");
    // τ(e^{A/2} e^B e^{A/2}) = τ(e^A e^B)
    const double sandwiched = trace_product(matrix_exp(a), matrix_exp(b));
    const double joint = matrix_exp(a + b).trace();
    return sandwiched - joint;
}

// ---------------------------------------------------------------------------
// random instances
// ---------------------------------------------------------------------------

inline Matrix random_gaussian_matrix(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
    return g;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) moved into Q.
inline Matrix random_unitary(Index dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("random_unitary: dim must be positive");
    const Matrix g = random_gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Index j = 0; j < dim; ++j) {
        const double a = std::abs(r(j, j));
        const Complex phase = a > 0.0 ? r(j, j) / a : Complex(1.0);
        q.col(j) *= phase;
    }
    return q;
}

/// G G* / τ(G G*) with G a dim×rank complex Gaussian matrix.
inline DensityMatrix random_density(Index dim, Index rank, Rng& rng) {
    if (rank < 1 || rank > dim)
        throw std::invalid_argument("random_density: rank must lie in [1, dim]");
    const Matrix g = random_gaussian_matrix(dim, rank, rng);
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(HermitianOperator::hermitian_part(std::move(m)));
}

/// (G + G*)/2 scaled so entries are O(scale).
inline HermitianOperator random_hermitian(Index dim, Rng& rng, double scale = 1.0) {
    const Matrix g = random_gaussian_matrix(dim, dim, rng);
    return HermitianOperator::hermitian_part(scale * (g + g.adjoint()) / std::sqrt(2.0));
}

}  // namespace entropic
