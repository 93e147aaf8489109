// scenarios.hpp — named scenario runners producing Reports. Each scenario
// draws its instances from per-instance seeds derived from one master seed,
// so reports are reproducible regardless of how instances are scheduled.

#pragma once

#include "entropic/function_space.hpp"
#include "entropic/report.hpp"
#include "entropic/uncertainty.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

namespace entropic {

struct RunConfig {
    std::optional<int> dim;
    std::optional<std::size_t> trials;
    std::uint64_t seed = 42;
    double tolerance = 1e-8;
    std::optional<double> b;
    std::optional<double> t;
    std::optional<std::string> nbar_grid;  // "lo:hi" or "lo:hi:count"
    unsigned workers = 0;                  // 0: hardware concurrency
};

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"bases",     "mub",     "tensor-equality", "lemmas",
                                                "refinement", "sphere",  "landau",          "euclidean",
                                                "logsob-compare", "hermite", "circle",      "fuzz-theorem1"};
    return names;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of instance `index` under `master`.
inline std::uint64_t instance_seed(std::uint64_t master, std::size_t index) {
    return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(index)));
}

namespace detail {

using InstanceFn = std::function<std::vector<Record>(std::size_t index, Rng& rng)>;

/// Runs `count` instances, possibly concurrently, and returns their records in
/// instance order with sequential indices.
inline std::vector<Record> run_instances(std::size_t count, std::uint64_t master, unsigned workers,
                                         const InstanceFn& fn) {
    std::vector<std::vector<Record>> per(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                const std::uint64_t seed = instance_seed(master, i);
                Rng rng(seed);
                per[i] = fn(i, rng);
                for (auto& r : per[i]) r.seed = seed;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    std::vector<Record> out;
    for (auto& v : per)
        for (auto& r : v) {
            r.index = out.size();
            out.push_back(std::move(r));
        }
    return out;
}

inline Record make_record(double lhs, double rhs, nlohmann::ordered_json inputs) {
    Record r;
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.deficit = lhs - rhs;
    return r;
}

/// Agreement records: deficit is -|lhs - rhs| so that pass means |lhs - rhs| ≤ tolerance.
inline Record make_agreement(double lhs, double rhs, nlohmann::ordered_json inputs) {
    Record r = make_record(lhs, rhs, std::move(inputs));
    r.deficit = -std::abs(lhs - rhs);
    return r;
}

inline Index uniform_index(Index lo, Index hi, Rng& rng) {
    return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline Partition random_partition(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    Partition groups{{idx.front()}};
    std::bernoulli_distribution cut(0.5);
    for (std::size_t i = 1; i < n; ++i) {
        if (cut(rng)) groups.emplace_back();
        groups.back().push_back(idx[i]);
    }
    return groups;
}

/// POVM on C^d compressed from a Haar basis of C^{d+extra}.
inline FinitePOVM random_compressed_povm(Index d, Index extra, Rng& rng) {
    const FinitePOVM full = povm_from_basis(random_unitary(d + extra, rng));
    RealVector diag = RealVector::Zero(d + extra);
    diag.head(d).setOnes();
    return povm_compress(full, HermitianOperator::diagonal(std::span<const double>(diag.data(), diag.size())));
}

inline std::vector<double> parse_grid(const std::string& spec, std::size_t default_count) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("grid '" + spec + "': expected lo:hi[:count]");
        }
    }
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("grid '" + spec + "': expected lo:hi[:count]");
    const double lo = parts[0], hi = parts[1];
    const std::size_t count = parts.size() == 3 ? static_cast<std::size_t>(parts[2]) : default_count;
    if (!(hi >= lo) || count < 1) throw std::invalid_argument("grid '" + spec + "': need lo <= hi and count >= 1");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = count == 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1);
    return out;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = count == 1 ? lo : lo * std::pow(hi / lo, double(i) / double(count - 1));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// scenario bodies
// ---------------------------------------------------------------------------

namespace scenario {

using detail::make_agreement;
using detail::make_record;
using Json = nlohmann::ordered_json;

inline std::vector<Record> basis_pair_instance(Index d, Rng& rng) {
    const Matrix e = random_unitary(d, rng);
    const Matrix f = random_unitary(d, rng);
    const Index rank = detail::uniform_index(1, d, rng);
    const DensityMatrix rho = random_density(d, rank, rng);
    const FinitePOVM p = povm_from_basis(e), q = povm_from_basis(f);
    const LiouvilleMatrix l = liouville_matrix(p, q);
    const ProductMajorant mj = product_majorant(l, false, p.labels(), q.labels());
    const UncertaintyDeficit u = theorem1_deficit(rho, p, q, mj.mu_p, mj.mu_q);
    const double k = constant_K(measurement_distribution(rho, p), measurement_distribution(rho, q), mj.mu_p, mj.mu_q);
    const double kp = constant_Kprime(e, f);
    const double tpb = trace_product_bound(rho, p, q, mj.mu_p, mj.mu_q);
    return {make_record(u.lhs, u.entropy,
                        Json{{"dim", d}, {"rank", rank}, {"K", k}, {"K_prime", kp}, {"trace_product_bound", tpb}})};
}

inline Report bases(const RunConfig& c) {
    const int d = c.dim.value_or(4);
    if (d < 1) throw std::invalid_argument("bases: --dim must be >= 1");
    Report r;
    r.config = {{"dim", d}};
    r.records = detail::run_instances(c.trials.value_or(100), c.seed, c.workers,
                                      [d](std::size_t, Rng& rng) { return basis_pair_instance(d, rng); });
    return r;
}

inline Report fuzz_theorem1(const RunConfig& c) {
    if (c.dim && *c.dim < 1) throw std::invalid_argument("fuzz-theorem1: --dim must be >= 1");
    Report r;
    r.config = {{"dim", c.dim ? Json(*c.dim) : Json("2..8")}};
    const std::optional<int> fixed = c.dim;
    r.records = detail::run_instances(c.trials.value_or(1000), c.seed, c.workers, [fixed](std::size_t, Rng& rng) {
        const Index d = fixed ? Index(*fixed) : detail::uniform_index(2, 8, rng);
        return basis_pair_instance(d, rng);
    });
    return r;
}

inline Report mub(const RunConfig& c) {
    const int d = c.dim.value_or(4);
    if (d < 1) throw std::invalid_argument("mub: --dim must be >= 1");
    Report r;
    r.config = {{"dim", d}};
    r.records = detail::run_instances(c.trials.value_or(100), c.seed, c.workers, [d](std::size_t, Rng& rng) {
        const auto [e, f] = mub_pair(d);
        const FinitePOVM p = povm_from_basis(e), q = povm_from_basis(f);
        const ProductMajorant mj = product_majorant(liouville_matrix(p, q));
        const Index rank = detail::uniform_index(1, d, rng);
        const DensityMatrix rho = random_density(d, rank, rng);
        const WeightedMeasure np = measurement_distribution(rho, p), nq = measurement_distribution(rho, q);
        const double k = constant_K(np, nq, mj.mu_p, mj.mu_q);
        const double h = shannon_entropy(np.masses) + shannon_entropy(nq.masses);
        const double s = von_neumann_entropy(rho);
        return std::vector<Record>{make_record(h, s + std::log(double(d)), Json{{"dim", d}, {"rank", rank}, {"K", k}})};
    });
    return r;
}

inline Report tensor_equality(const RunConfig& c) {
    const std::size_t per = c.trials.value_or(25);
    Report r;
    r.config = {{"factors", Json::array({Json::array({2, 2}), Json::array({2, 3}), Json::array({3, 2}), Json::array({3, 3})})}};
    r.records = detail::run_instances(4 * per, c.seed, c.workers, [per](std::size_t i, Rng& rng) {
        const Index a = (i / per) < 2 ? 2 : 3;
        const Index b = (i / per) % 2 == 0 ? 2 : 3;
        const Matrix e = random_unitary(a, rng), f = random_unitary(b, rng);
        const auto [p, q] = povm_tensor_pair(e, f);
        auto diag_state = [&rng](const Matrix& basis) {
            std::exponential_distribution<double> ex(1.0);
            RealVector w(basis.cols());
            for (Index k = 0; k < w.size(); ++k) w(k) = ex(rng);
            w /= w.sum();
            return DensityMatrix(HermitianOperator::hermitian_part(basis * w.cast<Complex>().asDiagonal() * basis.adjoint()));
        };
        const DensityMatrix rho = tensor(diag_state(e), diag_state(f));
        const ProductMajorant mj = product_majorant(liouville_matrix(p, q));
        const UncertaintyDeficit u = theorem1_deficit(rho, p, q, mj.mu_p, mj.mu_q);
        return std::vector<Record>{make_agreement(u.lhs, u.entropy, Json{{"a", a}, {"b", b}})};
    });
    return r;
}

inline Report lemmas(const RunConfig& c) {
    const int d = c.dim.value_or(5);
    if (d < 1) throw std::invalid_argument("lemmas: --dim must be >= 1");
    Report r;
    r.config = {{"dim", d}};
    r.records = detail::run_instances(c.trials.value_or(1000), c.seed, c.workers, [d](std::size_t, Rng& rng) {
        std::vector<Record> out;
        const HermitianOperator a = random_hermitian(d, rng);
        const HermitianOperator b = random_hermitian(d, rng);
        const DensityMatrix rho = random_density(d, detail::uniform_index(1, d, rng), rng);
        const double energy = trace_product(a, rho.op());
        out.push_back(make_record(energy - von_neumann_entropy(rho), -log_trace_exp(-1.0 * a), Json{{"lemma", "gibbs"}}));
        const double sandwiched = trace_product(matrix_exp(a), matrix_exp(b));
        out.push_back(make_record(sandwiched, matrix_exp(a + b).trace(), Json{{"lemma", "golden-thompson"}}));
        const FinitePOVM p = detail::random_compressed_povm(d, 2, rng);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> w(p.size());
        for (auto& x : w) x = std::exp(normal(rng));
        out.push_back(make_record(choi_jensen_deficit(p, w), 0.0, Json{{"lemma", "choi-jensen"}, {"elements", p.size()}}));
        return out;
    });
    return r;
}

inline Report refinement(const RunConfig& c) {
    const int d = c.dim.value_or(6);
    if (d < 1) throw std::invalid_argument("refinement: --dim must be >= 1");
    Report r;
    r.config = {{"dim", d}};
    r.records = detail::run_instances(c.trials.value_or(100), c.seed, c.workers, [d](std::size_t, Rng& rng) {
        const FinitePOVM p = detail::random_compressed_povm(d, 2, rng);
        const DensityMatrix rho = random_density(d, detail::uniform_index(1, d, rng), rng);
        std::exponential_distribution<double> ex(1.0);
        WeightedMeasure mu{p.labels(), std::vector<double>(p.size())};
        for (auto& m : mu.masses) m = ex(rng);
        const Partition groups = detail::random_partition(p.size(), rng);
        const WeightedMeasure coarse = pushforward(mu, groups);
        const double gap = refinement_gap(rho, p, groups, mu, coarse);
        const double fine = relative_entropy_term(measurement_distribution(rho, p), mu);
        return std::vector<Record>{make_record(fine + gap, fine, Json{{"dim", d}, {"groups", groups.size()}})};
    });
    return r;
}

inline Report sphere(const RunConfig& c) {
    const int n = c.dim.value_or(3);
    if (n < 2) throw std::invalid_argument("sphere: --dim (ambient dimension) must be >= 2");
    constexpr int d_max = 4;
    Report r;
    r.config = {{"dim", n}, {"d_max", d_max}};
    r.records = detail::run_instances(c.trials.value_or(100), c.seed, c.workers, [n](std::size_t, Rng& rng) {
        const SpectralMeasure mu = sphere_spectral_measure(n, d_max);
        std::exponential_distribution<double> ex(1.0);
        std::vector<double> levels(mu.size());
        for (auto& v : levels) v = ex(rng);
        const double z = std::accumulate(levels.begin(), levels.end(), 0.0);
        for (auto& v : levels) v /= z;
        // ρ = φ(Δ): every eigenvector of level d carries weight levels[d] / dim E_d
        std::vector<double> eig;
        for (std::size_t k = 0; k < mu.size(); ++k)
            for (int m = 0; m < int(mu.masses()[k]); ++m) eig.push_back(levels[k] / mu.masses()[k]);
        const double s = von_neumann_entropy(DensityMatrix::diagonal(eig));
        const double sa = spectral_entropy(SpectralState(mu, levels), mu);
        return std::vector<Record>{make_agreement(sa, s, Json{{"n", n}, {"states", eig.size()}})};
    });
    return r;
}

inline Report landau(const RunConfig& c) {
    const double b = c.b.value_or(1.0);
    if (!(b > 0.0)) throw std::invalid_argument("landau: --B must be positive");
    const std::string spec = c.nbar_grid.value_or("0:10");
    const std::vector<double> grid = detail::parse_grid(spec, 11);
    for (double nb : grid)
        if (!(nb >= 0.0)) throw std::invalid_argument("landau: mean levels must be >= 0");
    Report r;
    r.config = {{"B", b}, {"nbar_grid", spec}};
    const LaplaceCurve curve(LandauSource{b});
    r.records = detail::run_instances(grid.size(), c.seed, c.workers, [&](std::size_t i, Rng&) {
        const double nb = grid[i];
        const double e = (2.0 * nb + 1.0) * b;
        const LegendreResult num = legendre_of_logL(curve, e);
        return std::vector<Record>{make_agreement(landau_legendre_closed_form(b, nb), num.value,
                                                  Json{{"nbar", nb}, {"energy", e}, {"t_star", num.argmin}, {"status", to_string(num.status)}})};
    });
    return r;
}

inline Report euclidean(const RunConfig& c) {
    const int n = c.dim.value_or(2);
    if (n < 1) throw std::invalid_argument("euclidean: --dim must be >= 1");
    const std::vector<double> grid = detail::log_grid(1e-2, 1e3, c.trials.value_or(21));
    Report r;
    r.config = {{"dim", n}, {"energy_grid", "log[1e-2,1e3]"}};
    const LaplaceCurve curve(EuclideanSource{n});
    r.records = detail::run_instances(grid.size(), c.seed, c.workers, [&](std::size_t i, Rng&) {
        const LegendreResult num = legendre_of_logL(curve, grid[i]);
        return std::vector<Record>{make_agreement(euclidean_legendre_closed_form(n, grid[i]), num.value,
                                                  Json{{"energy", grid[i]}, {"t_star", num.argmin}})};
    });
    return r;
}

inline Report logsob_compare(const RunConfig& c) {
    const double b = c.b.value_or(1.0);
    if (!(b > 0.0)) throw std::invalid_argument("logsob-compare: --B must be positive");
    Report r;
    r.config = {{"euclidean_dim", 2}, {"euclidean_grid", "log[0.1,100]"}, {"B", b}, {"landau_levels", 50}};
    const std::vector<double> eg = detail::log_grid(0.1, 100.0, 200);
    std::vector<double> lg;
    for (int k = 0; k < 400; ++k) lg.push_back(b * (1.0 + 100.0 * (k + 0.5) / 400.0));
    const LaplaceCurve ec(EuclideanSource{2}), lc(LandauSource{b});
    const std::vector<BoundGap> egaps = bound_gaps(ec, eg), lgaps = bound_gaps(lc, lg);
    std::vector<Record> recs;
    for (const auto& g : egaps) recs.push_back(make_record(g.legendre, g.hull, Json{{"curve", "euclidean"}, {"lambda", g.lambda}}));
    for (const auto& g : lgaps) recs.push_back(make_record(g.legendre, g.hull, Json{{"curve", "landau"}, {"lambda", g.lambda}}));
    for (std::size_t i = 0; i < recs.size(); ++i) {
        recs[i].index = i;
        recs[i].seed = c.seed;
    }
    r.records = std::move(recs);
    return r;
}

inline Report hermite(const RunConfig& c) {
    std::vector<double> ts = c.t ? std::vector<double>{*c.t} : std::vector<double>{1.0, 0.5, 0.25, 0.125};
    for (double t : ts)
        if (!(t > 0.0)) throw std::invalid_argument("hermite: --t must be positive");
    Report r;
    r.config = {{"t", ts}};
    r.records = detail::run_instances(ts.size(), c.seed, c.workers, [&](std::size_t i, Rng&) {
        const HermiteScenario h = hermite_scenario(ts[i]);
        const Json in{{"t", h.t}, {"k_max", h.k_max}, {"mass", h.mass}, {"energy", h.energy}};
        Json a = in, b = in;
        a["inequality"] = "fourier";
        b["inequality"] = "log-sobolev";
        return std::vector<Record>{
            make_record(h.spatial_entropy + h.spectral_entropy, h.entropy, a),
            make_record(h.spatial_entropy + euclidean_legendre_closed_form(1, h.energy), h.entropy, b)};
    });
    return r;
}

inline Report circle(const RunConfig& c) {
    const int k = c.dim.value_or(3);
    if (k < 0) throw std::invalid_argument("circle: --dim (mode cutoff) must be >= 0");
    Report r;
    r.config = {{"max_mode", k}, {"grid_points", 4096}};
    r.records = detail::run_instances(c.trials.value_or(100), c.seed, c.workers, [k](std::size_t, Rng& rng) {
        const CircleScenario s = circle_scenario(random_circle_state(k, rng));
        return std::vector<Record>{make_record(s.spatial_entropy + s.spectral_entropy, s.entropy,
                                               Json{{"spatial_entropy", s.spatial_entropy},
                                                    {"spectral_entropy", s.spectral_entropy},
                                                    {"refined_entropy", s.refined_entropy}})};
    });
    return r;
}

}  // namespace scenario

/// Runs one named scenario and returns its finalized report.
inline Report run_scenario(const std::string& name, const RunConfig& config) {
    if (!(config.tolerance >= 0.0)) throw std::invalid_argument("--tolerance must be >= 0");
    if (config.trials && *config.trials == 0) throw std::invalid_argument("--trials must be >= 1");
    if (config.t && !(*config.t > 0.0)) throw std::invalid_argument("--t must be positive");
    if (config.b && !(*config.b > 0.0)) throw std::invalid_argument("--B must be positive");

    static const std::map<std::string, std::function<Report(const RunConfig&)>> table{
        {"bases", scenario::bases},
        {"mub", scenario::mub},
        {"tensor-equality", scenario::tensor_equality},
        {"lemmas", scenario::lemmas},
        {"refinement", scenario::refinement},
        {"sphere", scenario::sphere},
        {"landau", scenario::landau},
        {"euclidean", scenario::euclidean},
        {"logsob-compare", scenario::logsob_compare},
        {"hermite", scenario::hermite},
        {"circle", scenario::circle},
        {"fuzz-theorem1", scenario::fuzz_theorem1},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown scenario '" + name + "'");

    const auto start = std::chrono::steady_clock::now();
    Report report = it->second(config);
    report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    report.scenario = name;
    nlohmann::ordered_json cfg;
    cfg["seed"] = config.seed;
    cfg["tolerance"] = config.tolerance;
    if (config.trials) cfg["trials"] = *config.trials;
    for (auto& [key, value] : report.config.items()) cfg[key] = value;
    report.config = std::move(cfg);
    report.finalize(config.tolerance);
    return report;
}

}  // namespace entropic
