// spectral.hpp — spectral measures of invariant operators (sphere Laplacian,
// Landau Hamiltonian, Euclidean Laplacian, Monte-Carlo symbol volumes) and
// the spectral entropy of a state's energy distribution.

#pragma once

#include "entropic/operator_core.hpp"

#include <concepts>
#include <cstdint>
#include <numbers>
#include <numeric>

namespace entropic {

/// Measure on the real line: finitely many atoms (λ, mass), or a histogram
/// given by ascending bin edges and one mass per bin.
class SpectralMeasure {
  public:
    enum class Kind { discrete, sampled };

    static SpectralMeasure discrete(std::vector<double> positions, std::vector<double> masses) {
        if (positions.empty() || positions.size() != masses.size())
            throw std::invalid_argument("SpectralMeasure: need one mass per atom");
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (!std::isfinite(positions[i])) throw std::invalid_argument("SpectralMeasure: non-finite atom");
            if (!(masses[i] > 0.0) || !std::isfinite(masses[i]))
                throw std::invalid_argument("SpectralMeasure: atom masses must be positive");
            if (i && !(positions[i] > positions[i - 1]))
                throw std::invalid_argument("SpectralMeasure: atoms must be strictly ascending");
        }
        return SpectralMeasure(Kind::discrete, std::move(positions), std::move(masses));
    }

    /// Empty bins (mass 0) are allowed.
    static SpectralMeasure sampled(std::vector<double> edges, std::vector<double> masses) {
        if (edges.size() < 2 || edges.size() != masses.size() + 1)
            throw std::invalid_argument("SpectralMeasure: need n+1 edges for n bins");
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (!(edges[i] > edges[i - 1])) throw std::invalid_argument("SpectralMeasure: edges must be strictly ascending");
        for (double m : masses)
            if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("SpectralMeasure: bin masses must be >= 0");
        return SpectralMeasure(Kind::sampled, std::move(edges), std::move(masses));
    }

    Kind kind() const noexcept { return kind_; }
    bool is_discrete() const noexcept { return kind_ == Kind::discrete; }

    /// Atom positions (discrete) or bin edges (sampled).
    const std::vector<double>& positions() const noexcept { return positions_; }
    const std::vector<double>& masses() const noexcept { return masses_; }
    std::size_t size() const noexcept { return masses_.size(); }
    double total_mass() const { return std::accumulate(masses_.begin(), masses_.end(), 0.0); }

    /// Smallest point of the support.
    double infimum() const {
        for (std::size_t i = 0; i < masses_.size(); ++i)
            if (masses_[i] > 0.0) return positions_[i];
        return std::numeric_limits<double>::infinity();
    }

    /// "λ=…" for atoms, "[a,b)" for bins.
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) {
            std::ostringstream os;
            os.precision(12);
            if (is_discrete())
                os << "λ=" << positions_[i];
            else
                os << '[' << positions_[i] << ',' << positions_[i + 1] << ')';
            out.push_back(os.str());
        }
        return out;
    }

  private:
    SpectralMeasure(Kind k, std::vector<double> p, std::vector<double> m)
        : kind_(k), positions_(std::move(p)), masses_(std::move(m)) {}

    Kind kind_;
    std::vector<double> positions_;
    std::vector<double> masses_;
};

/// Probability distribution of a state over the atoms or bins of a reference
/// spectral measure; absolutely continuous with respect to it.
class SpectralState {
  public:
    SpectralState(const SpectralMeasure& reference, std::vector<double> masses) : masses_(std::move(masses)) {
        if (masses_.size() != reference.size())
            throw std::invalid_argument("SpectralState: one mass per atom or bin of the reference measure");
        double total = 0.0;
        for (std::size_t i = 0; i < masses_.size(); ++i) {
            if (!(masses_[i] >= 0.0)) throw std::invalid_argument("SpectralState: negative mass");
            if (masses_[i] > 0.0 && !(reference.masses()[i] > 0.0))
                throw std::domain_error("SpectralState: mass where the reference measure vanishes (index " +
                                        std::to_string(i) + ")");
            total += masses_[i];
        }
        if (!(std::abs(total - 1.0) <= 1e-9)) throw std::invalid_argument("SpectralState: masses must sum to 1");
    }

    const std::vector<double>& masses() const noexcept { return masses_; }
    std::size_t size() const noexcept { return masses_.size(); }

  private:
    std::vector<double> masses_;
};

// ---------------------------------------------------------------------------
// closed-form spectral measures
// ---------------------------------------------------------------------------

/// Binomial coefficient; 0 when the upper index is negative or below k.
inline std::uint64_t binomial(std::int64_t a, std::int64_t k) {
    if (k < 0 || a < 0 || k > a) return 0;
    k = std::min(k, a - k);
    std::uint64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(a - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// Dimension of degree-d spherical harmonics on S^{n-1} ⊂ R^n.
inline std::uint64_t sphere_eigenspace_dim(int n, int d) {
    if (n < 2) throw std::invalid_argument("sphere_eigenspace_dim: ambient dimension must be >= 2");
    if (d < 0) throw std::invalid_argument("sphere_eigenspace_dim: degree must be >= 0");
    return binomial(d + n - 1, n - 1) - binomial(d + n - 3, n - 1);
}

/// Atoms (d(d+n-2), dim E_d) for d = 0..d_max; the sphere has unit volume.
inline SpectralMeasure sphere_spectral_measure(int n, int d_max) {
    if (d_max < 0) throw std::invalid_argument("sphere_spectral_measure: d_max must be >= 0");
    std::vector<double> pos, mass;
    for (int d = 0; d <= d_max; ++d) {
        pos.push_back(double(d) * double(d + n - 2));
        mass.push_back(double(sphere_eigenspace_dim(n, d)));
    }
    return SpectralMeasure::discrete(std::move(pos), std::move(mass));
}

/// Landau levels (2k+1)B, each of density B/2π.
inline SpectralMeasure landau_spectral_measure(double b, int n_max) {
    if (!(b > 0.0)) throw std::invalid_argument("landau_spectral_measure: B must be positive");
    if (n_max < 0) throw std::invalid_argument("landau_spectral_measure: n_max must be >= 0");
    std::vector<double> pos, mass;
    for (int k = 0; k <= n_max; ++k) {
        pos.push_back((2.0 * k + 1.0) * b);
        mass.push_back(b / (2.0 * std::numbers::pi));
    }
    return SpectralMeasure::discrete(std::move(pos), std::move(mass));
}

inline double ball_volume(int n, double radius) {
    return std::exp(0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0)) * std::pow(radius, n);
}

/// μ_Δ([0, λ]) on R^n: volume of the ball of radius √λ / 2π.
inline double euclidean_laplacian_cumulative(int n, double lambda) {
    if (n < 1) throw std::invalid_argument("euclidean_laplacian_cumulative: n must be >= 1");
    if (!(lambda >= 0.0)) throw std::invalid_argument("euclidean_laplacian_cumulative: lambda must be >= 0");
    return ball_volume(n, std::sqrt(lambda) / (2.0 * std::numbers::pi));
}

// ---------------------------------------------------------------------------
// Monte-Carlo symbol measures
// ---------------------------------------------------------------------------

struct Monomial {
    double coefficient;
    std::vector<unsigned> exponents;
};

/// Real polynomial in n variables as a sum of monomials.
class Polynomial {
  public:
    Polynomial(int dim, std::vector<Monomial> terms) : dim_(dim), terms_(std::move(terms)) {
        if (dim < 1) throw std::invalid_argument("Polynomial: dimension must be >= 1");
        for (const auto& t : terms_)
            if (t.exponents.size() != static_cast<std::size_t>(dim))
                throw std::invalid_argument("Polynomial: exponent vector length must equal the dimension");
    }

    /// ‖2πξ‖², the symbol of the Laplacian.
    static Polynomial laplacian_symbol(int dim) {
        std::vector<Monomial> t;
        for (int k = 0; k < dim; ++k) {
            std::vector<unsigned> e(static_cast<std::size_t>(dim), 0);
            e[static_cast<std::size_t>(k)] = 2;
            t.push_back({4.0 * std::numbers::pi * std::numbers::pi, e});
        }
        return Polynomial(dim, std::move(t));
    }

    static Polynomial constant(int dim, double c) {
        return Polynomial(dim, {Monomial{c, std::vector<unsigned>(static_cast<std::size_t>(dim), 0)}});
    }

    int dim() const noexcept { return dim_; }

    double operator()(std::span<const double> x) const {
        double s = 0.0;
        for (const auto& t : terms_) {
            double v = t.coefficient;
            for (int k = 0; k < dim_; ++k)
                for (unsigned p = 0; p < t.exponents[static_cast<std::size_t>(k)]; ++p) v *= x[static_cast<std::size_t>(k)];
            s += v;
        }
        return s;
    }

  private:
    int dim_;
    std::vector<Monomial> terms_;
};

struct MonteCarloMeasure {
    SpectralMeasure measure;
    std::vector<double> standard_errors;
    std::size_t samples;
};

/// Histogram of vol({ξ ∈ [-R, R]^n : σ(ξ) ∈ bin}) from N uniform samples.
///
/// Bins are [e_k, e_{k+1}), the last one closed. Each bin's mass is
/// (2R)^n · hits/N with binomial standard error (2R)^n √(p(1-p)/N). The
/// caller picks R large enough that the preimage of the binned range lies
/// inside the box; this cannot be checked here.
template <class Symbol>
    requires std::invocable<const Symbol&, std::span<const double>>
MonteCarloMeasure symbol_measure_montecarlo(const Symbol& sigma, int dim, double half_width, std::size_t samples,
                                            std::vector<double> edges, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("symbol_measure_montecarlo: dimension must be >= 1");
    if (!(half_width > 0.0)) throw std::invalid_argument("symbol_measure_montecarlo: box half-width must be positive");
    if (samples < 1) throw std::invalid_argument("symbol_measure_montecarlo: need at least one sample");
    if (edges.size() < 2) throw std::invalid_argument("symbol_measure_montecarlo: need at least one bin");
    const std::size_t nbins = edges.size() - 1;
    std::vector<std::size_t> hits(nbins, 0);
    std::uniform_real_distribution<double> u(-half_width, half_width);
    std::vector<double> xi(static_cast<std::size_t>(dim));
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& x : xi) x = u(rng);
        const double v = sigma(std::span<const double>(xi));
        if (v < edges.front() || v > edges.back()) continue;
        auto it = std::upper_bound(edges.begin(), edges.end(), v);
        std::size_t k = static_cast<std::size_t>(it - edges.begin());
        k = k == 0 ? 0 : std::min(k - 1, nbins - 1);
        ++hits[k];
    }
    const double box = std::pow(2.0 * half_width, dim);
    std::vector<double> masses(nbins), errors(nbins);
    for (std::size_t k = 0; k < nbins; ++k) {
        const double p = double(hits[k]) / double(samples);
        masses[k] = box * p;
        errors[k] = box * std::sqrt(p * (1.0 - p) / double(samples));
    }
    return {SpectralMeasure::sampled(std::move(edges), std::move(masses)), std::move(errors), samples};
}

inline MonteCarloMeasure symbol_measure_montecarlo(const Polynomial& sigma, double half_width, std::size_t samples,
                                                   std::vector<double> edges, Rng& rng) {
    return symbol_measure_montecarlo(sigma, sigma.dim(), half_width, samples, std::move(edges), rng);
}

// ---------------------------------------------------------------------------
// spectral entropy
// ---------------------------------------------------------------------------

/// S_A = -Σ ν_i ln(ν_i / μ_i) over the atoms (or bins) of μ_A.
inline double spectral_entropy(const SpectralState& nu, const SpectralMeasure& mu) {
    if (nu.size() != mu.size()) throw std::invalid_argument("spectral_entropy: state and measure differ in size");
    double s = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double v = nu.masses()[i];
        if (!(v > 0.0)) continue;
        if (!(mu.masses()[i] > 0.0))
            throw std::domain_error("spectral_entropy: state charges an atom of zero measure (index " +
                                    std::to_string(i) + ")");
        s -= v * std::log(v / mu.masses()[i]);
    }
    return s;
}

}  // namespace entropic
