// logsobolev.hpp — Laplace transforms of spectral measures, the Gibbs
// entropy-energy bound, Legendre transforms of ln L, concave hulls of ln F and
// the comparison between the two resulting log-Sobolev bounds.

#pragma once

#include "entropic/spectral.hpp"

#include <variant>

namespace entropic {

/// Heat decay (4πt)^{-n/2} of the Laplacian on R^n.
struct EuclideanSource {
    int n = 1;
};

/// Landau Hamiltonian with field B: L(t) = B / (4π sinh(Bt)).
struct LandauSource {
    double b = 1.0;
};

/// t ↦ L(t) = ∫ e^{-tλ} dμ(λ), either from a SpectralMeasure or a closed form.
///
/// Sampled measures are integrated with a uniform density inside each bin.
class LaplaceCurve {
  public:
    using Source = std::variant<SpectralMeasure, EuclideanSource, LandauSource>;

    explicit LaplaceCurve(Source source, double t_max = 1e12) : source_(validated(std::move(source))), t_max_(t_max) {
        if (!(t_max > 0.0)) throw std::invalid_argument("LaplaceCurve: t_max must be positive");
    }

    const Source& source() const noexcept { return source_; }
    double t_max() const noexcept { return t_max_; }

    /// Bottom of the support of μ.
    double spectral_infimum() const {
        return std::visit(
            [](const auto& s) -> double {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, SpectralMeasure>)
                    return s.infimum();
                else if constexpr (std::is_same_v<S, EuclideanSource>)
                    return 0.0;
                else
                    return s.b;
            },
            source_);
    }

    /// L(0) = μ(R) < ∞.
    bool finite_at_zero() const { return std::holds_alternative<SpectralMeasure>(source_); }

    /// t·inf supp μ + ln L(t), computed without cancellation at large t.
    double shifted_log_value(double t) const {
        if (!(t >= 0.0)) throw std::domain_error("LaplaceCurve: t must be >= 0");
        return std::visit(
            [t](const auto& s) -> double {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, SpectralMeasure>) {
                    const double inf = s.infimum();
                    RealVector logs(static_cast<Index>(s.size()));
                    for (std::size_t i = 0; i < s.size(); ++i) logs(static_cast<Index>(i)) = log_piece(s, i, t, inf);
                    return log_sum_exp(logs);
                } else if constexpr (std::is_same_v<S, EuclideanSource>) {
                    return -0.5 * s.n * std::log(4.0 * std::numbers::pi * t);
                } else {
                    // tB + ln(B/4π) - ln sinh(Bt), with ln sinh x = x - ln 2 + ln(1 - e^{-2x})
                    const double x = s.b * t;
                    return std::log(s.b / (4.0 * std::numbers::pi)) + std::log(2.0) - std::log(-std::expm1(-2.0 * x));
                }
            },
            source_);
    }

    /// ln L(t)
    double log_value(double t) const {
        const double inf = spectral_infimum();
        return shifted_log_value(t) - (inf == 0.0 ? 0.0 : t * inf);
    }

    double value(double t) const { return std::exp(log_value(t)); }

    /// lim_{t→∞} t·inf + ln L(t): log of the mass sitting at the infimum
    /// (-∞ when there is no atom there).
    double log_mass_at_infimum() const {
        return std::visit(
            [](const auto& s) -> double {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, SpectralMeasure>) {
                    if (!s.is_discrete()) return -std::numeric_limits<double>::infinity();
                    for (double m : s.masses())
                        if (m > 0.0) return std::log(m);
                    return -std::numeric_limits<double>::infinity();
                } else if constexpr (std::is_same_v<S, EuclideanSource>) {
                    return -std::numeric_limits<double>::infinity();
                } else {
                    return std::log(s.b / (2.0 * std::numbers::pi));
                }
            },
            source_);
    }

    /// F(λ) = μ(]-∞, λ[), left-continuous.
    double cumulative(double lambda) const {
        return std::visit(
            [lambda](const auto& s) -> double {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, SpectralMeasure>) {
                    return cumulative_of(s, lambda);
                } else if constexpr (std::is_same_v<S, EuclideanSource>) {
                    return lambda <= 0.0 ? 0.0 : euclidean_laplacian_cumulative(s.n, lambda);
                } else {
                    // levels (2k+1)B strictly below λ
                    const double c = 0.5 * (lambda / s.b - 1.0);
                    return c <= 0.0 ? 0.0 : std::ceil(c) * s.b / (2.0 * std::numbers::pi);
                }
            },
            source_);
    }

    static double cumulative_of(const SpectralMeasure& s, double lambda) {
        const auto& pos = s.positions();
        const auto& m = s.masses();
        double f = 0.0;
        if (s.is_discrete()) {
            for (std::size_t i = 0; i < m.size() && pos[i] < lambda; ++i) f += m[i];
        } else {
            for (std::size_t i = 0; i < m.size(); ++i) {
                const double a = pos[i], b = pos[i + 1];
                if (lambda >= b)
                    f += m[i];
                else if (lambda > a)
                    f += m[i] * (lambda - a) / (b - a);
            }
        }
        return f;
    }

  private:
    static Source validated(Source s) {
        std::visit(
            [](const auto& v) {
                using S = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<S, EuclideanSource>) {
                    if (v.n < 1) throw std::invalid_argument("LaplaceCurve: Euclidean dimension must be >= 1");
                } else if constexpr (std::is_same_v<S, LandauSource>) {
                    if (!(v.b > 0.0)) throw std::invalid_argument("LaplaceCurve: Landau field must be positive");
                }
            },
            s);
        return s;
    }

    /// ln ∫_{piece i} e^{-t(λ - shift)} dμ
    static double log_piece(const SpectralMeasure& s, std::size_t i, double t, double shift) {
        const double m = s.masses()[i];
        if (!(m > 0.0)) return -std::numeric_limits<double>::infinity();
        const double a = s.positions()[i];
        if (s.is_discrete()) return std::log(m) - t * (a - shift);
        const double w = s.positions()[i + 1] - a;
        const double tw = t * w;
        // mean of e^{-tλ} over [a, a+w] is e^{-ta} (1 - e^{-tw}) / (tw)
        const double log_mean = tw < 1e-12 ? -0.5 * tw : std::log(-std::expm1(-tw) / tw);
        return std::log(m) - t * (a - shift) + log_mean;
    }

    Source source_;
    double t_max_;
};

/// ∫ e^{-tλ} dμ(λ)
inline double laplace_transform(const LaplaceCurve& curve, double t) {
    if (!(t > 0.0)) throw std::domain_error("laplace_transform: t must be positive");
    return curve.value(t);
}

inline double laplace_transform(const SpectralMeasure& mu, double t) { return laplace_transform(LaplaceCurve(mu), t); }

/// ln L is convex: checks ln L(t2) ≤ chord on consecutive triples of `ts`.
inline bool is_log_convex(const LaplaceCurve& curve, std::span<const double> ts, double tolerance = 1e-10) {
    for (std::size_t i = 0; i + 2 < ts.size(); ++i) {
        const double t1 = ts[i], t2 = ts[i + 1], t3 = ts[i + 2];
        const double w = (t2 - t1) / (t3 - t1);
        const double chord = (1.0 - w) * curve.log_value(t1) + w * curve.log_value(t3);
        if (curve.log_value(t2) > chord + tolerance) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Gibbs spectral states and the entropy-energy bound
// ---------------------------------------------------------------------------

/// ν(λ) = e^{-tλ} dμ / L(t).
inline SpectralState gibbs_spectral_state(const SpectralMeasure& mu, double t) {
    if (!(t > 0.0)) throw std::domain_error("gibbs_spectral_state: t must be positive");
    const LaplaceCurve curve(mu);
    const double inf = mu.infimum();
    const double log_l = curve.shifted_log_value(t);
    std::vector<double> nu(mu.size(), 0.0);
    const auto& pos = mu.positions();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double m = mu.masses()[i];
        if (!(m > 0.0)) continue;
        double log_piece = std::log(m) - t * (pos[i] - inf);
        if (!mu.is_discrete()) {
            const double tw = t * (pos[i + 1] - pos[i]);
            log_piece += tw < 1e-12 ? -0.5 * tw : std::log(-std::expm1(-tw) / tw);
        }
        nu[i] = std::exp(log_piece - log_l);
    }
    // renormalize away the last ulp of drift
    const double total = std::accumulate(nu.begin(), nu.end(), 0.0);
    for (auto& v : nu) v /= total;
    return SpectralState(mu, std::move(nu));
}

/// E_A = Σ λ ν(λ) over the atoms of a discrete measure.
inline double mean_energy(const SpectralState& nu, const SpectralMeasure& mu) {
    if (!mu.is_discrete()) throw std::invalid_argument("mean_energy: requires a discrete spectral measure");
    double e = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) e += mu.positions()[i] * nu.masses()[i];
    return e;
}

/// t·E_A + ln L(t) - S_A(ν) ≥ 0, with equality at the Gibbs spectral state.
inline double gibbs_spectral_bound_deficit(const SpectralState& nu, const SpectralMeasure& mu, double t) {
    if (!(t > 0.0)) throw std::domain_error("gibbs_spectral_bound_deficit: t must be positive");
    const double e = mean_energy(nu, mu);
    const LaplaceCurve curve(mu);
    // t·E + ln L = t(E - inf) + (t·inf + ln L)
    return t * (e - mu.infimum()) + curve.shifted_log_value(t) - spectral_entropy(nu, mu);
}

// ---------------------------------------------------------------------------
// Legendre transform of ln L
// ---------------------------------------------------------------------------

enum class LegendreStatus {
    interior,           // minimizer found at finite t > 0
    at_zero,            // infimum attained at t = 0 (finite-mass measures)
    limit_at_infinity,  // E equals the spectral infimum: value is the t → ∞ limit
    upper_boundary,     // no bracket found before t_max; value is g(t_max)
    unbounded,          // E below the spectral infimum: value is -∞
};

inline const char* to_string(LegendreStatus s) {
    switch (s) {
        case LegendreStatus::interior: return "interior";
        case LegendreStatus::at_zero: return "at_zero";
        case LegendreStatus::limit_at_infinity: return "limit_at_infinity";
        case LegendreStatus::upper_boundary: return "upper_boundary";
        case LegendreStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct LegendreResult {
    double value;
    double argmin;
    LegendreStatus status;
};

/// inf_{t ≥ 0} (tE + ln L(t)).
///
/// Brackets the minimum on a doubling grid t = 1e-8·2^k (g is convex in t),
/// then runs golden-section search to an absolute width of 1e-9 in t.
inline LegendreResult legendre_of_logL(const LaplaceCurve& curve, double energy) {
    constexpr double kLower = 1e-8;
    constexpr double kArgTolerance = 1e-9;
    const double inf = curve.spectral_infimum();
    const double inf_val = std::numeric_limits<double>::infinity();

    if (energy < inf) return {-inf_val, inf_val, LegendreStatus::unbounded};
    if (energy == inf) {
        const double lim = curve.log_mass_at_infimum();
        return {lim, inf_val, std::isfinite(lim) ? LegendreStatus::limit_at_infinity : LegendreStatus::unbounded};
    }

    const double excess = energy - inf;
    auto g = [&](double t) { return t * excess + curve.shifted_log_value(t); };

    double prev_t = 0.0;
    double t = kLower;
    double gt = g(t);
    double hi = 0.0;
    bool bracketed = false;
    while (t < curve.t_max()) {
        const double nt = std::min(2.0 * t, curve.t_max());
        const double gn = g(nt);
        if (gn >= gt) {
            hi = nt;
            bracketed = true;
            break;
        }
        prev_t = t;
        t = nt;
        gt = gn;
    }
    if (!bracketed) return {gt, t, LegendreStatus::upper_boundary};

    double a = prev_t;
    if (a == 0.0 && !curve.finite_at_zero()) a = kLower * 1e-3;
    double b = hi;
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c), gd = g(d);
    for (int iter = 0; iter < 400; ++iter) {
        const double tol = std::max(kArgTolerance, 4.0 * std::numeric_limits<double>::epsilon() * b);
        if (b - a <= tol) break;
        if (gc < gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    double best_t = gc < gd ? c : d;
    double best = std::min(gc, gd);
    const double mid = 0.5 * (a + b);
    if (const double gm = g(mid); gm < best) {
        best = gm;
        best_t = mid;
    }
    if (curve.finite_at_zero()) {
        const double g0 = g(0.0);
        if (g0 <= best) return {g0, 0.0, LegendreStatus::at_zero};
    }
    return {best, best_t, LegendreStatus::interior};
}

/// Closed form of the Landau Legendre transform at mean level n̄:
/// ln((E + B)/4π) + n̄ ln(1 + 1/n̄) with E = (2n̄ + 1)B; the second term is 0 at n̄ = 0.
inline double landau_legendre_closed_form(double b, double nbar) {
    if (!(b > 0.0)) throw std::invalid_argument("landau_legendre_closed_form: B must be positive");
    if (!(nbar >= 0.0)) throw std::invalid_argument("landau_legendre_closed_form: mean level must be >= 0");
    const double energy = (2.0 * nbar + 1.0) * b;
    const double mixing = nbar == 0.0 ? 0.0 : nbar * std::log1p(1.0 / nbar);
    return std::log((energy + b) / (4.0 * std::numbers::pi)) + mixing;
}

/// (n/2) ln(eE / 2πn)
inline double euclidean_legendre_closed_form(int n, double energy) {
    return 0.5 * n * std::log(std::numbers::e * energy / (2.0 * std::numbers::pi * n));
}

// ---------------------------------------------------------------------------
// cumulative spectral function and its concave hull
// ---------------------------------------------------------------------------

inline double cumulative_F(const LaplaceCurve& curve, double lambda) { return curve.cumulative(lambda); }

inline double cumulative_F(const SpectralMeasure& mu, double lambda) { return LaplaceCurve::cumulative_of(mu, lambda); }

/// Piecewise-linear function on [xs.front(), xs.back()].
class PiecewiseLinear {
  public:
    PiecewiseLinear(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
        if (xs_.empty() || xs_.size() != ys_.size()) throw std::invalid_argument("PiecewiseLinear: bad knots");
    }

    const std::vector<double>& xs() const noexcept { return xs_; }
    const std::vector<double>& ys() const noexcept { return ys_; }

    double operator()(double x) const {
        if (x < xs_.front() || x > xs_.back()) throw std::out_of_range("PiecewiseLinear: argument outside knot range");
        if (xs_.size() == 1) return ys_.front();
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        std::size_t k = static_cast<std::size_t>(it - xs_.begin());
        if (k >= xs_.size()) return ys_.back();
        const std::size_t j = k - 1;
        const double w = (x - xs_[j]) / (xs_[k] - xs_[j]);
        return (1.0 - w) * ys_[j] + w * ys_[k];
    }

  private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

/// Least concave majorant of a finite point set (upper hull, monotone chain).
inline PiecewiseLinear concave_hull(std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw std::invalid_argument("concave_hull: no points");
    std::sort(points.begin(), points.end());
    // for equal x keep the largest y (the last after sorting)
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (i + 1 == points.size() || points[i + 1].first != points[i].first) pts.push_back(points[i]);

    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull.back();
            const double cross = (a.first - o.first) * (p.second - o.second) - (a.second - o.second) * (p.first - o.first);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    std::vector<double> xs, ys;
    for (const auto& [x, y] : hull) {
        xs.push_back(x);
        ys.push_back(y);
    }
    return PiecewiseLinear(std::move(xs), std::move(ys));
}

struct BoundGap {
    double lambda;
    double legendre;  // (ln L)*(λ)
    double hull;      // (ln F)^c(λ)
    double gap() const { return legendre - hull; }
};

/// (ln L)* and the concave hull of ln F at every grid point with F(λ) > 0.
inline std::vector<BoundGap> bound_gaps(const LaplaceCurve& curve, std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("bound_comparison: empty grid");
    std::vector<std::pair<double, double>> pts;
    for (double l : grid)
        if (const double f = curve.cumulative(l); f > 0.0) pts.emplace_back(l, std::log(f));
    if (pts.empty()) throw std::invalid_argument("bound_comparison: F vanishes on the whole grid");
    const PiecewiseLinear hull = concave_hull(pts);
    std::vector<BoundGap> out;
    out.reserve(pts.size());
    for (const auto& pt : pts) out.push_back({pt.first, legendre_of_logL(curve, pt.first).value, hull(pt.first)});
    return out;
}

struct BoundComparison {
    double min_gap;    // min over grid of (ln L)*(λ) - (ln F)^c(λ)
    double at_lambda;  // where the minimum occurs
    std::size_t evaluated;
};

/// Compares the Legendre bound with the concave hull of ln F on a λ grid.
/// Grid points with F(λ) = 0 are skipped.
inline BoundComparison bound_comparison(const LaplaceCurve& curve, std::span<const double> grid) {
    BoundComparison out{std::numeric_limits<double>::infinity(), 0.0, 0};
    for (const BoundGap& g : bound_gaps(curve, grid)) {
        ++out.evaluated;
        if (g.gap() < out.min_gap) {
            out.min_gap = g.gap();
            out.at_lambda = g.lambda;
        }
    }
    return out;
}

/// -∫ϱ ln ϱ + t·E + ln L(t) - S(ρ): the parametric entropy-energy inequality.
inline double entropy_energy_deficit(double spatial_entropy, double t, double energy, const LaplaceCurve& curve,
                                     double entropy) {
    const double inf = curve.spectral_infimum();
    return spatial_entropy + t * (energy - inf) + curve.shifted_log_value(t) - entropy;
}

}  // namespace entropic
