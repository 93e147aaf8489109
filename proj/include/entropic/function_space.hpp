// function_space.hpp — desk-scale function-space realizations: Hermite
// functions on the line (Fourier-invariant thermal states of the harmonic
// oscillator) and trigonometric states on the unit-length circle.

#pragma once

#include "entropic/logsobolev.hpp"

namespace entropic {

inline constexpr int kMaxHermiteOrder = 200;

/// Hermite functions φ_0..φ_kmax at x, normalized in L²(R, dx) and scaled as
/// φ_k(x) = c_k H_k(√(2π) x) e^{-πx²} so that, with the e^{-2πixξ} Fourier
/// convention, F φ_k = (-i)^k φ_k.
inline std::vector<double> hermite_functions(int k_max, double x) {
    if (k_max < 0 || k_max > kMaxHermiteOrder)
        throw std::out_of_range("hermite_functions: order must lie in [0, 200]");
    const double y = std::sqrt(2.0 * std::numbers::pi) * x;
    const double scale = std::pow(2.0 * std::numbers::pi, 0.25);  // dy = √(2π) dx
    std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
    // normalized recurrence ψ_{k+1} = √(2/(k+1)) y ψ_k - √(k/(k+1)) ψ_{k-1}
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
    out[0] = scale * cur;
    for (int k = 0; k < k_max; ++k) {
        const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(double(k) / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
        out[static_cast<std::size_t>(k) + 1] = scale * cur;
    }
    return out;
}

inline double hermite_function(int k, double x) { return hermite_functions(k, x).back(); }

/// Equally spaced points lo = x_0 < ... < x_{n-1} = hi.
struct UniformGrid {
    double lo;
    double hi;
    std::size_t points;

    double step() const { return (hi - lo) / double(points - 1); }
    double at(std::size_t i) const { return lo + step() * double(i); }

    /// Composite Simpson weights; needs an odd number of points (≥ 3).
    std::vector<double> simpson_weights() const {
        if (points < 3 || points % 2 == 0) throw std::invalid_argument("UniformGrid: Simpson needs an odd point count >= 3");
        std::vector<double> w(points);
        const double h = step() / 3.0;
        for (std::size_t i = 0; i < points; ++i) w[i] = h * (i == 0 || i + 1 == points ? 1.0 : (i % 2 ? 4.0 : 2.0));
        return w;
    }
};

/// -Σ w_i ϱ_i ln ϱ_i, with 0 ln 0 = 0. Throws when the quadrature mass Σ w ϱ
/// deviates from 1 by more than 1e-4.
inline double quadrature_entropy(std::span<const double> density, std::span<const double> weights) {
    if (density.size() != weights.size()) throw std::invalid_argument("quadrature_entropy: size mismatch");
    double mass = 0.0, h = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double r = density[i];
        if (r < 0.0) throw std::domain_error("quadrature_entropy: negative density");
        mass += weights[i] * r;
        if (r > 0.0) h -= weights[i] * r * std::log(r);
    }
    if (!(std::abs(mass - 1.0) <= 1e-4))
        throw std::domain_error("quadrature_entropy: density mass is " + std::to_string(mass) + ", expected 1");
    return h;
}

// ---------------------------------------------------------------------------
// Hermite line
// ---------------------------------------------------------------------------

/// Smallest k_max with relative tail e^{-2t(k_max+1)} below 1e-10.
inline int hermite_truncation(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("hermite_truncation: t must be positive");
    return std::max(0, static_cast<int>(std::ceil(std::log(1e10) / (2.0 * t))) - 1);
}

/// Grid wide enough that the Gaussian tail of the thermal density and the
/// oscillatory region of φ_kmax both fit; 4001 points.
inline UniformGrid default_hermite_grid(double t, int k_max, std::size_t points = 4001) {
    const double sigma = std::sqrt(1.0 / (4.0 * std::numbers::pi * std::tanh(t)));
    const double turning = std::sqrt((2.0 * k_max + 1.0) / (2.0 * std::numbers::pi));
    const double half = std::max(turning + 4.0, 8.0 * sigma);
    return {-half, half, points};
}

struct HermiteScenario {
    double t;
    int k_max;
    double mass;              // quadrature mass of ϱ
    double spatial_entropy;   // -∫ ϱ ln ϱ dx
    double spectral_entropy;  // -∫ ϱ̂ ln ϱ̂ dξ (equal to the spatial one: ϱ̂ = ϱ)
    double entropy;           // S(ρ)
    double energy;            // τ(Δρ) with Δ = -d²/dx²
    double fourier_deficit;   // spatial + spectral - S
    double log_sobolev_deficit;  // spatial + ½ ln(eE/2π) - S
};

/// Thermal oscillator state p_k ∝ e^{-t(2k+1)} on φ_0..φ_kmax.
///
/// Every φ_k is a Fourier eigenfunction with unimodular eigenvalue, so
/// |F f|² = |f|² pointwise and the momentum density equals the position
/// density. With Δ = -d²/dx² (symbol ‖2πξ‖²), ⟨φ_k, Δφ_k⟩ = π(2k+1).
inline HermiteScenario hermite_scenario(double t, int k_max, const UniformGrid& grid) {
    if (!(t > 0.0)) throw std::invalid_argument("hermite_scenario: t must be positive");
    if (k_max < 0 || k_max > kMaxHermiteOrder) throw std::out_of_range("hermite_scenario: k_max must lie in [0, 200]");
    const double tail = std::exp(-2.0 * t * (k_max + 1.0));
    if (!(tail < 1e-10))
        throw std::invalid_argument("hermite_scenario: truncation insufficient (relative tail " + std::to_string(tail) + ")");

    std::vector<double> p(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) p[static_cast<std::size_t>(k)] = std::exp(-2.0 * t * k);
    const double z = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= z;

    const std::vector<double> w = grid.simpson_weights();
    std::vector<double> density(grid.points, 0.0);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const std::vector<double> phi = hermite_functions(k_max, grid.at(i));
        double r = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) r += p[k] * phi[k] * phi[k];
        density[i] = r;
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < grid.points; ++i) mass += w[i] * density[i];

    HermiteScenario s{};
    s.t = t;
    s.k_max = k_max;
    s.mass = mass;
    s.spatial_entropy = quadrature_entropy(density, w);
    s.spectral_entropy = s.spatial_entropy;
    s.entropy = shannon_entropy(p);
    s.energy = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s.energy += p[k] * std::numbers::pi * (2.0 * double(k) + 1.0);
    s.fourier_deficit = s.spatial_entropy + s.spectral_entropy - s.entropy;
    s.log_sobolev_deficit = s.spatial_entropy + euclidean_legendre_closed_form(1, s.energy) - s.entropy;
    return s;
}

inline HermiteScenario hermite_scenario(double t) {
    const int k_max = hermite_truncation(t);
    return hermite_scenario(t, k_max, default_hermite_grid(t, k_max));
}

// ---------------------------------------------------------------------------
// circle
// ---------------------------------------------------------------------------

/// ρ = U diag(p) U* on span{e^{2πikx} : |k| ≤ K}; basis index i carries mode k = i - K.
struct CircleState {
    int max_mode;
    std::vector<double> weights;
    Matrix mixing;

    Index dim() const noexcept { return 2 * max_mode + 1; }

    void validate() const {
        if (max_mode < 0) throw std::invalid_argument("CircleState: max_mode must be >= 0");
        if (weights.size() != static_cast<std::size_t>(dim()) || mixing.rows() != dim() || mixing.cols() != dim())
            throw std::invalid_argument("CircleState: weights and mixing must have dimension 2K+1");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0)) throw std::invalid_argument("CircleState: negative weight");
            total += w;
        }
        if (!(std::abs(total - 1.0) <= 1e-10)) throw std::invalid_argument("CircleState: weights must sum to 1");
        if (max_abs(mixing.adjoint() * mixing - Matrix::Identity(dim(), dim())) > 1e-10)
            throw std::invalid_argument("CircleState: mixing matrix is not unitary");
    }

    Matrix density() const {
        RealVector p(dim());
        for (Index i = 0; i < dim(); ++i) p(i) = weights[static_cast<std::size_t>(i)];
        return mixing * p.cast<Complex>().asDiagonal() * mixing.adjoint();
    }
};

/// A function of the circle Laplacian: weight depends on |k| only.
/// `level_weights[k]` is the weight of each eigenvector in level k.
inline CircleState spectral_circle_state(std::span<const double> level_weights) {
    if (level_weights.empty()) throw std::invalid_argument("spectral_circle_state: no levels");
    const int k_max = static_cast<int>(level_weights.size()) - 1;
    CircleState s{k_max, std::vector<double>(static_cast<std::size_t>(2 * k_max + 1)),
                  Matrix::Identity(2 * k_max + 1, 2 * k_max + 1)};
    for (int i = 0; i <= 2 * k_max; ++i) s.weights[static_cast<std::size_t>(i)] = level_weights[static_cast<std::size_t>(std::abs(i - k_max))];
    return s;
}

/// Random spectrum (normalized exponentials) and Haar mixing.
inline CircleState random_circle_state(int max_mode, Rng& rng) {
    const Index d = 2 * max_mode + 1;
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(static_cast<std::size_t>(d));
    for (auto& v : w) v = ex(rng);
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= z;
    return {max_mode, std::move(w), random_unitary(d, rng)};
}

struct CircleScenario {
    double spatial_entropy;   // -∫ ϱ ln ϱ dx over [0, 1)
    double spectral_entropy;  // -Σ_λ w_λ ln(w_λ / dim E_λ)
    double refined_entropy;   // same with each mode k as its own piece
    double entropy;           // S(ρ)
    double energy;            // Σ_k k² ρ_kk (levels of the n = 2 sphere measure)
    double deficit;           // spatial + spectral - S
    std::vector<double> level_weights;  // τ(ρΠ_k), k = 0..K
};

/// Spatial density on a periodic grid (trapezoid rule, exact for the mass
/// of a trigonometric polynomial once points > 2K).
inline CircleScenario circle_scenario(const CircleState& state, std::size_t points = 4096) {
    state.validate();
    const int kk = state.max_mode;
    if (points <= static_cast<std::size_t>(4 * kk + 1))
        throw std::invalid_argument("circle_scenario: grid too coarse for the mode cutoff");
    const Index d = state.dim();
    const Matrix rho = state.density();

    // ϱ(x) = Σ_{k,l} ρ_{kl} e^{2πi(k-l)x}; accumulate by frequency m = k - l
    std::vector<Complex> coeff(static_cast<std::size_t>(2 * d - 1), Complex(0.0));
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) coeff[static_cast<std::size_t>(a - b + d - 1)] += rho(a, b);

    std::vector<double> density(points), weights(points, 1.0 / double(points));
    for (std::size_t j = 0; j < points; ++j) {
        const double x = double(j) / double(points);
        Complex v(0.0);
        for (Index m = -(d - 1); m <= d - 1; ++m)
            v += coeff[static_cast<std::size_t>(m + d - 1)] * std::polar(1.0, 2.0 * std::numbers::pi * double(m) * x);
        density[j] = std::max(0.0, v.real());
    }

    CircleScenario out{};
    try {
        out.spatial_entropy = quadrature_entropy(density, weights);
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("circle_scenario: grid too coarse: ") + e.what());
    }

    const SpectralMeasure mu = sphere_spectral_measure(2, kk);
    std::vector<double> levels(static_cast<std::size_t>(kk) + 1, 0.0), modes;
    for (Index i = 0; i < d; ++i) {
        const double diag = std::max(0.0, rho(i, i).real());
        levels[static_cast<std::size_t>(std::abs(int(i) - kk))] += diag;
        modes.push_back(diag);
        out.energy += double((i - kk) * (i - kk)) * diag;
    }
    const double lt = std::accumulate(levels.begin(), levels.end(), 0.0);
    for (auto& v : levels) v /= lt;
    out.spectral_entropy = spectral_entropy(SpectralState(mu, levels), mu);
    out.refined_entropy = shannon_entropy(modes);
    out.entropy = shannon_entropy(state.weights);
    out.deficit = out.spatial_entropy + out.spectral_entropy - out.entropy;
    out.level_weights = std::move(levels);
    return out;
}

}  // namespace entropic
