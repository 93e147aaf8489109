#include "entropic/operator_core.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace entropic;

namespace {

// Scaling-and-squaring Taylor exponential, independent of the eigensolver.
Matrix taylor_exp(const Matrix& a) {
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2;
        ++squarings;
    }
    const Matrix x = a / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(a.rows(), a.cols()), sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * x / double(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace

TEST(HermitianOperator, RejectsAsymmetryAndReportsIt) {
    Matrix m(2, 2);
    m << 1, Complex(0, 1), Complex(0, 1), 2;  // not Hermitian
    try {
        HermitianOperator h(m);
        FAIL() << "accepted a non-Hermitian matrix";
    } catch (const NonHermitianError& e) {
        EXPECT_NEAR(e.max_asymmetry(), 2.0, 1e-15);
    }
    EXPECT_THROW(eig_hermitian(m), NonHermitianError);
}

TEST(HermitianOperator, ToleratesRoundoffAsymmetry) {
    Matrix m(2, 2);
    m << 1, Complex(0.5, 1e-14), Complex(0.5, 0), 2;
    HermitianOperator h(m);
    EXPECT_EQ(max_asymmetry(h.matrix()), 0.0);
}

TEST(Eigen, IdentityHasUnitEigenvalues) {
    const EigenDecomposition e = eig_hermitian(HermitianOperator::identity(3));
    for (Index i = 0; i < 3; ++i) EXPECT_NEAR(e.eigenvalues(i), 1.0, 1e-14);
}

TEST(Eigen, DiagonalGivesAscendingEigenvaluesAndPermutation) {
    const EigenDecomposition e = eig_hermitian(HermitianOperator::diagonal({2.0, -1.0}));
    EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues(1), 2.0, 1e-14);
    const RealMatrix mag = e.eigenvectors.cwiseAbs();
    EXPECT_NEAR(mag(1, 0), 1.0, 1e-14);
    EXPECT_NEAR(mag(0, 1), 1.0, 1e-14);
    EXPECT_NEAR(mag(0, 0), 0.0, 1e-14);
    EXPECT_NEAR(mag(1, 1), 0.0, 1e-14);
}

TEST(Eigen, RandomReconstructionSeed7) {
    Rng rng(7);
    const HermitianOperator a = random_hermitian(4, rng);
    const EigenDecomposition e = eig_hermitian(a);
    EXPECT_LT(max_abs(e.reconstruct() - a.matrix()), 1e-10);
    EXPECT_LT(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - Matrix::Identity(4, 4)), 1e-10);
    for (Index i = 1; i < 4; ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
}

TEST(Eigen, ReconstructionPropertyAcrossScales) {
    Rng rng(100);
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 1 + trial % 9;
        const double scale = std::pow(10.0, trial % 7 - 3);
        const HermitianOperator a = random_hermitian(d, rng, scale);
        const EigenDecomposition e = eig_hermitian(a);
        const double ref = std::max(1.0, e.eigenvalues.cwiseAbs().maxCoeff());
        ASSERT_LT(max_abs(e.reconstruct() - a.matrix()), 1e-10 * ref);
        ASSERT_LT(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - Matrix::Identity(d, d)), 1e-10);
    }
}

TEST(MatrixFunction, ExpOfZeroIsIdentity) {
    EXPECT_LT(max_abs(matrix_exp(HermitianOperator::zero(3)).matrix() - Matrix::Identity(3, 3)), 1e-15);
}

TEST(MatrixFunction, LogOfDiagonal) {
    const HermitianOperator l = matrix_log(HermitianOperator::diagonal({1.0, std::numbers::e}));
    EXPECT_LT(max_abs(l.matrix() - HermitianOperator::diagonal({0.0, 1.0}).matrix()), 1e-14);
}

TEST(MatrixFunction, ExpLogRoundTripSeed3) {
    Rng rng(3);
    const Matrix g = random_gaussian_matrix(4, 4, rng);
    const HermitianOperator a = HermitianOperator::hermitian_part(g * g.adjoint() + 0.1 * Matrix::Identity(4, 4));
    EXPECT_LT(max_abs(matrix_exp(matrix_log(a)).matrix() - a.matrix()), 1e-9);
}

TEST(MatrixFunction, ExpMatchesTaylorOracle) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const HermitianOperator a = random_hermitian(5, rng, 2.0);
        const Matrix want = taylor_exp(a.matrix());
        EXPECT_LT(max_abs(matrix_exp(a).matrix() - want), 1e-10 * want.cwiseAbs().maxCoeff());
    }
}

TEST(MatrixFunction, LogAtNonPositiveEigenvalueNamesIt) {
    try {
        matrix_log(HermitianOperator::diagonal({1.0, -2.0}));
        FAIL() << "log of a negative eigenvalue succeeded";
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("-2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(matrix_log(HermitianOperator::diagonal({0.0, 1.0})), std::domain_error);
}

TEST(DensityMatrix, ValidatesTraceAndPositivity) {
    EXPECT_THROW(DensityMatrix::diagonal({0.5, 0.4}), std::invalid_argument);
    EXPECT_THROW(DensityMatrix::diagonal({1.1, -0.1}), std::invalid_argument);
    EXPECT_NO_THROW(DensityMatrix::diagonal({1.0 + 5e-11, -5e-11}));
}

TEST(Entropy, PureStateIsZero) {
    Vector v(3);
    v << Complex(1, 1), 2, Complex(0, -1);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(v.normalized())), 0.0, 1e-12);
}

TEST(Entropy, MaximallyMixed) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(4)), std::log(4.0), 1e-14);
}

TEST(Entropy, DiagonalHalfQuarterQuarter) {
    // -Σ p ln p = ½ln2 + 2·¼ln4
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal({0.5, 0.25, 0.25})), 1.0397207708399179, 1e-14);
}

TEST(Entropy, BoundsAndUnitaryInvariance) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 1 + trial % 7;
        const DensityMatrix rho = random_density(d, 1 + trial % d, rng);
        const double s = von_neumann_entropy(rho);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, std::log(double(d)) + 1e-10);
        EXPECT_NEAR(von_neumann_entropy(rho.conjugated(random_unitary(d, rng))), s, 1e-9);
        // min-entropy never exceeds the von Neumann entropy
        EXPECT_LE(-std::log(rho.eigen().eigenvalues.maxCoeff()), s + 1e-12);
    }
}

TEST(Gibbs, EqualityAtGibbsState) {
    const HermitianOperator a = HermitianOperator::diagonal({0.0, 1.0});
    EXPECT_NEAR(gibbs_deficit(a, gibbs_state(a)), 0.0, 1e-10);
    // the Gibbs state of diag(0,1) is diag(e, 1)/(e + 1)
    const double p0 = std::numbers::e / (std::numbers::e + 1.0);
    EXPECT_NEAR(gibbs_deficit(a, DensityMatrix::diagonal({p0, 1.0 - p0})), 0.0, 1e-10);
}

TEST(Gibbs, ZeroOperatorGivesLogDimMinusEntropy) {
    Rng rng(4);
    const DensityMatrix rho = random_density(3, 2, rng);
    const double v = gibbs_deficit(HermitianOperator::zero(3), rho);
    EXPECT_NEAR(v, std::log(3.0) - von_neumann_entropy(rho), 1e-12);
    EXPECT_GE(v, 0.0);
}

TEST(Gibbs, RandomSeed11IsNonnegative) {
    Rng rng(11);
    const HermitianOperator a = random_hermitian(5, rng);
    const DensityMatrix rho = random_density(5, 5, rng);
    EXPECT_GE(gibbs_deficit(a, rho), 0.0);
}

TEST(Gibbs, PropertyNonnegativeAndEqualityCharacterization) {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const Index d = 2 + trial % 5;
        const HermitianOperator a = random_hermitian(d, rng, 3.0);
        const DensityMatrix rho = random_density(d, 1 + trial % d, rng);
        const double v = gibbs_deficit(a, rho);
        ASSERT_GE(v, -1e-9);
        const DensityMatrix g = gibbs_state(a);
        if (max_abs(rho.matrix() - g.matrix()) >= 1e-6) {
            EXPECT_GT(v, 1e-9);
        }
        ASSERT_NEAR(gibbs_deficit(a, g), 0.0, 1e-9);
    }
}

TEST(Gibbs, LargeSpectrumDoesNotOverflow) {
    const HermitianOperator a = HermitianOperator::diagonal({-800.0, -790.0, 10.0});
    EXPECT_NEAR(gibbs_deficit(a, gibbs_state(a)), 0.0, 1e-9);
}

TEST(GoldenThompson, CommutingDiagonalIsZero) {
    EXPECT_NEAR(golden_thompson_deficit(HermitianOperator::diagonal({1.0, -2.0, 0.5}),
                                        HermitianOperator::diagonal({0.3, 0.7, -1.0})),
                0.0, 1e-10);
}

TEST(GoldenThompson, EqualArgumentsGiveZero) {
    Rng rng(8);
    const HermitianOperator a = random_hermitian(4, rng);
    EXPECT_NEAR(golden_thompson_deficit(a, a), 0.0, 1e-10);
}

TEST(GoldenThompson, RandomSeed2IsNonnegative) {
    Rng rng(2);
    const HermitianOperator a = random_hermitian(4, rng);
    const HermitianOperator b = random_hermitian(4, rng);
    const double v = golden_thompson_deficit(a, b);
    EXPECT_GE(v, 0.0);
    // sandwiched form via the Taylor oracle
    const Matrix half = taylor_exp(0.5 * a.matrix());
    const double sandwiched = (half * taylor_exp(b.matrix()) * half).trace().real();
    EXPECT_NEAR(v, sandwiched - taylor_exp((a + b).matrix()).trace().real(), 1e-9);
}

TEST(GoldenThompson, PropertyAndCommutingEquality) {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 2 + trial % 5;
        const HermitianOperator a = random_hermitian(d, rng), b = random_hermitian(d, rng);
        ASSERT_GE(golden_thompson_deficit(a, b), -1e-9);
        // commuting pair: shared eigenbasis
        const Matrix u = random_unitary(d, rng);
        std::normal_distribution<double> n(0.0, 1.0);
        RealVector x(d), y(d);
        for (Index i = 0; i < d; ++i) x(i) = n(rng), y(i) = n(rng);
        const HermitianOperator ca = HermitianOperator::diagonal(std::span<const double>(x.data(), d)).conjugated(u);
        const HermitianOperator cb = HermitianOperator::diagonal(std::span<const double>(y.data(), d)).conjugated(u);
        ASSERT_LT(max_commutator(ca.matrix(), cb.matrix()), 1e-10);
        ASSERT_NEAR(golden_thompson_deficit(ca, cb), 0.0, 1e-9);
    }
}

TEST(GoldenThompson, DimensionMismatch) {
    EXPECT_THROW(golden_thompson_deficit(HermitianOperator::identity(2), HermitianOperator::identity(3)),
                 std::invalid_argument);
}

TEST(Random, UnitaryOfDimensionOneIsAPhase) {
    Rng rng(1);
    const Matrix u = random_unitary(1, rng);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
}

TEST(Random, UnitaryIsUnitary) {
    Rng rng(5);
    for (Index d = 1; d <= 10; ++d) {
        const Matrix u = random_unitary(d, rng);
        EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(d, d)), 1e-10);
    }
}

TEST(Random, HaarFirstEntryMoments) {
    // For Haar U on C^d, E|u_00|² = 1/d and E|u_00|⁴ = 2/(d(d+1)).
    Rng rng(17);
    const Index d = 3;
    const int n = 20000;
    double m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::norm(random_unitary(d, rng)(0, 0));
        m2 += a;
        m4 += a * a;
    }
    EXPECT_NEAR(m2 / n, 1.0 / 3.0, 0.01);
    EXPECT_NEAR(m4 / n, 2.0 / 12.0, 0.01);
}

TEST(Random, RankOneDensityIsPure) {
    Rng rng(9);
    EXPECT_NEAR(von_neumann_entropy(random_density(3, 1, rng)), 0.0, 1e-10);
}

TEST(Random, DensityRankOutOfRange) {
    Rng rng(9);
    EXPECT_THROW(random_density(3, 4, rng), std::invalid_argument);
    EXPECT_THROW(random_density(3, 0, rng), std::invalid_argument);
}

TEST(Tensor, IdentityTimesDiagonal) {
    const HermitianOperator t = tensor(HermitianOperator::identity(2), HermitianOperator::diagonal({1.0, 2.0}));
    EXPECT_LT(max_abs(t.matrix() - HermitianOperator::diagonal({1.0, 2.0, 1.0, 2.0}).matrix()), 1e-15);
}

TEST(Tensor, EntropyIsAdditive) {
    Rng rng(14);
    const DensityMatrix a = random_density(2, 2, rng), b = random_density(3, 2, rng);
    EXPECT_NEAR(von_neumann_entropy(tensor(a, b)), von_neumann_entropy(a) + von_neumann_entropy(b), 1e-10);
}
