#include "entropic/spectral.hpp"

#include "harmonic_oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

using namespace entropic;

constexpr double pi = std::numbers::pi;

TEST(SpectralMeasure, DiscreteValidation) {
    EXPECT_THROW(SpectralMeasure::discrete({1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::discrete({2.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::discrete({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::discrete({1.0}, {1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::discrete({}, {}), std::invalid_argument);
}

TEST(SpectralMeasure, SampledValidation) {
    EXPECT_NO_THROW(SpectralMeasure::sampled({0.0, 1.0, 2.0}, {0.0, 3.0}));
    EXPECT_THROW(SpectralMeasure::sampled({0.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::sampled({0.0, 0.0}, {1.0}), std::invalid_argument);
    EXPECT_THROW(SpectralMeasure::sampled({0.0, 1.0}, {-1.0}), std::invalid_argument);
    const SpectralMeasure s = SpectralMeasure::sampled({0.0, 1.0, 2.0}, {0.0, 3.0});
    EXPECT_EQ(s.infimum(), 1.0);
    EXPECT_EQ(s.labels()[1], "[1,2)");
}

TEST(SpectralState, Validation) {
    const SpectralMeasure mu = SpectralMeasure::sampled({0.0, 1.0, 2.0}, {0.0, 3.0});
    EXPECT_THROW(SpectralState(mu, {0.5, 0.5}), std::domain_error);
    EXPECT_THROW(SpectralState(mu, {0.0, 0.9}), std::invalid_argument);
    EXPECT_THROW(SpectralState(mu, {1.0}), std::invalid_argument);
    EXPECT_NO_THROW(SpectralState(mu, {0.0, 1.0}));
}

TEST(Sphere, TwoSphereDegreeTwo) { EXPECT_EQ(sphere_eigenspace_dim(3, 2), 5u); }

TEST(Sphere, CircleDimensions) {
    EXPECT_EQ(sphere_eigenspace_dim(2, 0), 1u);
    for (int d = 1; d <= 10; ++d) EXPECT_EQ(sphere_eigenspace_dim(2, d), 2u);
}

TEST(Sphere, DegreeOneHarmonicsAreCoordinates) {
    for (int n = 2; n <= 8; ++n) EXPECT_EQ(sphere_eigenspace_dim(n, 1), std::uint64_t(n));
}

TEST(Sphere, RejectsLowAmbientDimension) {
    EXPECT_THROW(sphere_eigenspace_dim(1, 2), std::invalid_argument);
    EXPECT_THROW(sphere_eigenspace_dim(3, -1), std::invalid_argument);
}

TEST(Sphere, MatchesHarmonicRankOracle) {
    for (int n = 2; n <= 5; ++n)
        for (int d = 0; d <= 5; ++d) EXPECT_EQ(sphere_eigenspace_dim(n, d), oracle::harmonic_dimension(n, d)) << n << "," << d;
}

TEST(Sphere, MeasureAtoms) {
    const SpectralMeasure s = sphere_spectral_measure(3, 1);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.positions()[0], 0.0);
    EXPECT_EQ(s.masses()[0], 1.0);
    EXPECT_EQ(s.positions()[1], 2.0);
    EXPECT_EQ(s.masses()[1], 3.0);
    const SpectralMeasure c = sphere_spectral_measure(2, 2);
    EXPECT_EQ(c.positions(), (std::vector<double>{0.0, 1.0, 4.0}));
    EXPECT_EQ(c.masses(), (std::vector<double>{1.0, 2.0, 2.0}));
}

TEST(Sphere, TotalMassIsSumOfDimensions) {
    // Σ_{d≤D} dim E_d = dim P_D + dim P_{D-1}
    const SpectralMeasure s = sphere_spectral_measure(4, 6);
    EXPECT_EQ(s.total_mass(), double(binomial(9, 3) + binomial(8, 3)));
}

TEST(Landau, SingleLevelAtTwoPi) {
    const SpectralMeasure l = landau_spectral_measure(2 * pi, 0);
    ASSERT_EQ(l.size(), 1u);
    EXPECT_NEAR(l.positions()[0], 2 * pi, 1e-15);
    EXPECT_NEAR(l.masses()[0], 1.0, 1e-15);
}

TEST(Landau, MassesAndSpacing) {
    const SpectralMeasure l = landau_spectral_measure(1.0, 20);
    for (std::size_t k = 0; k < l.size(); ++k) {
        EXPECT_NEAR(l.masses()[k], 1.0 / (2 * pi), 1e-16);
        if (k) {
            EXPECT_NEAR(l.positions()[k] - l.positions()[k - 1], 2.0, 1e-14);
        }
    }
    EXPECT_THROW(landau_spectral_measure(0.0, 3), std::invalid_argument);
    EXPECT_THROW(landau_spectral_measure(-1.0, 3), std::invalid_argument);
}

TEST(Euclidean, Cumulative) {
    EXPECT_NEAR(euclidean_laplacian_cumulative(1, pi * pi), 1.0, 1e-15);
    EXPECT_NEAR(euclidean_laplacian_cumulative(2, 4 * pi * pi), pi, 1e-14);
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(euclidean_laplacian_cumulative(n, 0.0), 0.0);
    EXPECT_THROW(euclidean_laplacian_cumulative(2, -1.0), std::invalid_argument);
    // unit 3-ball
    EXPECT_NEAR(ball_volume(3, 1.0), 4.0 * pi / 3.0, 1e-14);
}

TEST(MonteCarlo, DiskMassWithinThreeSigma) {
    Rng rng(2024);
    const MonteCarloMeasure m = symbol_measure_montecarlo(Polynomial::laplacian_symbol(2), 1.5, 200000, {0.0, 4 * pi * pi}, rng);
    EXPECT_NEAR(m.measure.masses()[0], pi, 3 * m.standard_errors[0]);
}

TEST(MonteCarlo, ConstantSymbolPutsAllMassInOneBin) {
    Rng rng(1);
    const MonteCarloMeasure m = symbol_measure_montecarlo(Polynomial::constant(3, 2.5), 0.5, 1000, {0.0, 1.0, 2.0, 3.0}, rng);
    EXPECT_EQ(m.measure.masses(), (std::vector<double>{0.0, 0.0, 1.0}));
    EXPECT_EQ(m.standard_errors[2], 0.0);
}

TEST(MonteCarlo, LastBinIsClosed) {
    Rng rng(1);
    const MonteCarloMeasure m = symbol_measure_montecarlo(Polynomial::constant(1, 3.0), 1.0, 10, {0.0, 1.0, 3.0}, rng);
    EXPECT_EQ(m.measure.masses()[1], 2.0);
}

TEST(MonteCarlo, StandardErrorScalesAsInverseSqrtN) {
    Rng rng(5);
    const Polynomial sigma = Polynomial::laplacian_symbol(2);
    const std::vector<double> edges{0.0, 20.0, 40.0};
    const MonteCarloMeasure a = symbol_measure_montecarlo(sigma, 1.5, 100000, edges, rng);
    const MonteCarloMeasure b = symbol_measure_montecarlo(sigma, 1.5, 200000, edges, rng);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(a.standard_errors[k] / b.standard_errors[k], std::sqrt(2.0), 0.03);
}

TEST(MonteCarlo, SeveralBinsAgainstBallVolumes) {
    Rng rng(77);
    std::vector<double> edges;
    for (int k = 0; k <= 6; ++k) edges.push_back(10.0 * k);
    const MonteCarloMeasure m = symbol_measure_montecarlo(Polynomial::laplacian_symbol(2), 1.5, 400000, edges, rng);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double want = euclidean_laplacian_cumulative(2, edges[k + 1]) - euclidean_laplacian_cumulative(2, edges[k]);
        EXPECT_NEAR(m.measure.masses()[k], want, 3 * m.standard_errors[k]) << k;
    }
}

TEST(MonteCarlo, ArgumentErrors) {
    Rng rng(1);
    const Polynomial s = Polynomial::laplacian_symbol(2);
    EXPECT_THROW(symbol_measure_montecarlo(s, 0.0, 10, {0.0, 1.0}, rng), std::invalid_argument);
    EXPECT_THROW(symbol_measure_montecarlo(s, 1.0, 0, {0.0, 1.0}, rng), std::invalid_argument);
    EXPECT_THROW(symbol_measure_montecarlo(s, 1.0, 10, {0.0}, rng), std::invalid_argument);
    EXPECT_THROW(Polynomial(2, {Monomial{1.0, {1}}}), std::invalid_argument);
}

TEST(Polynomial, Evaluation) {
    const Polynomial p(2, {Monomial{3.0, {2, 1}}, Monomial{-1.0, {0, 0}}});
    const double x[] = {2.0, -1.5};
    EXPECT_DOUBLE_EQ(p(x), 3.0 * 4.0 * -1.5 - 1.0);
}

TEST(SpectralEntropy, ProportionalStateGivesLogTotalMass) {
    const SpectralMeasure mu = sphere_spectral_measure(3, 3);
    std::vector<double> nu = mu.masses();
    for (auto& v : nu) v /= mu.total_mass();
    EXPECT_NEAR(spectral_entropy(SpectralState(mu, nu), mu), std::log(mu.total_mass()), 1e-14);
}

TEST(SpectralEntropy, SingleLandauLevel) {
    const double b = 0.7;
    const SpectralMeasure mu = landau_spectral_measure(b, 5);
    std::vector<double> nu(mu.size(), 0.0);
    nu[3] = 1.0;
    EXPECT_NEAR(spectral_entropy(SpectralState(mu, nu), mu), std::log(b / (2 * pi)), 1e-15);
}

TEST(SpectralEntropy, SpherePurelySpectralStateMatchesVonNeumannSum) {
    const SpectralMeasure mu = sphere_spectral_measure(3, 4);
    const std::vector<double> w{0.1, 0.2, 0.3, 0.25, 0.15};
    // each eigenvector of level d carries w_d / dim E_d
    double s = 0.0;
    for (std::size_t d = 0; d < w.size(); ++d) {
        const double p = w[d] / mu.masses()[d];
        s -= mu.masses()[d] * p * std::log(p);
    }
    EXPECT_NEAR(spectral_entropy(SpectralState(mu, w), mu), s, 1e-14);
}

TEST(SpectralEntropy, InvariantUnderRelabeling) {
    Rng rng(6);
    const SpectralMeasure mu = sphere_spectral_measure(4, 5);
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> nu(mu.size());
    for (auto& v : nu) v = ex(rng);
    const double z = std::accumulate(nu.begin(), nu.end(), 0.0);
    for (auto& v : nu) v /= z;
    const double s = spectral_entropy(SpectralState(mu, nu), mu);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> perm(mu.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> pos, mass, nu2;
        double x = -3.0;
        for (std::size_t i : perm) {
            x += 0.5 + ex(rng);
            pos.push_back(x);
            mass.push_back(mu.masses()[i]);
            nu2.push_back(nu[i]);
        }
        const SpectralMeasure relabeled = SpectralMeasure::discrete(pos, mass);
        ASSERT_NEAR(spectral_entropy(SpectralState(relabeled, nu2), relabeled), s, 1e-13);
    }
}
