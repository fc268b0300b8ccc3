// Global maximization of total measurement entropy over pure states, search
// for mutually coherent states (probability 1/d on every outcome of every
// basis), and the extendibility verdict built on both.
//
// The engine is multistart Nelder-Mead over a smooth real chart of the pure
// state manifold. Restarts are independent: restart i draws its starting
// point either from a Halton sequence (even i) or from the PRNG stream
// (seed, i) (odd i), so runs are reproducible bit-for-bit whether or not the
// restarts execute in parallel. Reduction takes the best value with ties
// broken by lowest restart index.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mubcert/bounds.hpp"
#include "mubcert/measure.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/rng.hpp"
#include "mubcert/state.hpp"

namespace mubcert {

// Charts of the pure-state manifold. Hyperspherical covers any d with d-1
// amplitude angles and d-1 phases; the weight-phase charts are the explicit
// (r, phi) and (r, q, phi1, phi2) parameterizations for d=2 and d=3, with the
// weight coordinates squashed through sin^2 so every real input is feasible.
enum class Chart { Hyperspherical, WeightPhaseD2, WeightPhaseD3 };

class StateChart {
  public:
    StateChart(Chart kind, int dim) : kind_(kind), dim_(dim) {
        if (dim < 2) throw ValidationError("StateChart: dimension must be >= 2");
        if (kind == Chart::WeightPhaseD2 && dim != 2)
            throw ValidationError("StateChart: WeightPhaseD2 requires d=2");
        if (kind == Chart::WeightPhaseD3 && dim != 3)
            throw ValidationError("StateChart: WeightPhaseD3 requires d=3");
    }

    int n_params() const { return 2 * (dim_ - 1); }

    // Sampling range of parameter i; every chart is periodic or squashed, so
    // Nelder-Mead may wander outside without producing infeasible states.
    double range(int i) const {
        const int n_angles = dim_ - 1;
        return i < n_angles ? 0.5 * std::numbers::pi : 2.0 * std::numbers::pi;
    }

    ComplexVector to_state(std::span<const double> x) const {
        switch (kind_) {
            case Chart::WeightPhaseD2: {
                const double sr = std::sin(x[0]);
                const double r = sr * sr;
                return ComplexVector({cxd{std::sqrt(r), 0.0},
                                      std::polar(std::sqrt(1.0 - r), x[1])});
            }
            case Chart::WeightPhaseD3: {
                const double s1 = std::sin(x[0]);
                const double s2 = std::sin(x[1]);
                const double r = s1 * s1;
                const double q = (1.0 - r) * s2 * s2;
                const double rest = std::max(0.0, 1.0 - r - q);
                return ComplexVector({cxd{std::sqrt(r), 0.0},
                                      std::polar(std::sqrt(q), x[2]),
                                      std::polar(std::sqrt(rest), x[3])});
            }
            case Chart::Hyperspherical:
            default: {
                // Amplitudes may come out negative when the optimizer wanders
                // outside the principal range; that only flips a phase, so
                // they are multiplied out explicitly instead of using polar.
                std::vector<cxd> v(static_cast<size_t>(dim_));
                double shell = 1.0;  // product of sines consumed so far
                for (int k = 0; k < dim_ - 1; ++k) {
                    const double amp = shell * std::cos(x[static_cast<size_t>(k)]);
                    if (k == 0) {
                        v[0] = cxd{amp, 0.0};
                    } else {
                        const double phase = x[static_cast<size_t>(dim_ - 2 + k)];
                        v[static_cast<size_t>(k)] = cxd{amp * std::cos(phase), amp * std::sin(phase)};
                    }
                    shell *= std::sin(x[static_cast<size_t>(k)]);
                }
                const double last_phase = x[static_cast<size_t>(2 * dim_ - 3)];
                v[static_cast<size_t>(dim_ - 1)] =
                    cxd{shell * std::cos(last_phase), shell * std::sin(last_phase)};
                return ComplexVector(std::move(v));
            }
        }
    }

  private:
    Chart kind_;
    int dim_;
};

struct SearchConfig {
    int restarts = 128;
    int max_iterations = 2000;     // per restart
    double convergence_tol = 1e-12;  // simplex function spread
    std::uint64_t seed = 42;
    bool parallel = false;
    Chart chart = Chart::Hyperspherical;
    // Extendibility verdict thresholds.
    double coherent_defect_threshold = 1e-6;
    double bound_separation_threshold = 1e-3;

    void validate() const {
        if (restarts < 1) throw ValidationError("SearchConfig: restarts must be >= 1");
        if (max_iterations < 1) throw ValidationError("SearchConfig: max_iterations must be >= 1");
        if (!(convergence_tol > 0.0)) throw ValidationError("SearchConfig: convergence_tol must be > 0");
    }
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Deterministic Nelder-Mead with the standard coefficients (reflect 1,
// expand 2, contract 1/2, shrink 1/2). Stops when the simplex function
// spread drops below tol or the iteration budget runs out.
inline NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                                    std::span<const double> x0, std::span<const double> steps,
                                    int max_iterations, double tol) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.reserve(static_cast<size_t>(n) + 1);
    pts.emplace_back(x0.begin(), x0.end());
    for (int i = 0; i < n; ++i) {
        std::vector<double> p(x0.begin(), x0.end());
        p[static_cast<size_t>(i)] += steps[static_cast<size_t>(i)];
        pts.push_back(std::move(p));
    }
    vals.reserve(pts.size());
    for (const std::vector<double>& p : pts) vals.push_back(f(p));

    std::vector<size_t> order(pts.size());
    NelderMeadResult result;
    for (int iter = 0; iter < max_iterations; ++iter) {
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&vals](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t best = order.front(), worst = order.back(), second_worst = order[order.size() - 2];
        result.iterations = iter;
        if (vals[worst] - vals[best] < tol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(static_cast<size_t>(n), 0.0);
        for (size_t oi = 0; oi + 1 < order.size(); ++oi)
            for (int j = 0; j < n; ++j) centroid[static_cast<size_t>(j)] += pts[order[oi]][static_cast<size_t>(j)];
        for (double& c : centroid) c /= n;

        auto blend = [&](double coeff) {
            std::vector<double> p(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j)
                p[static_cast<size_t>(j)] = centroid[static_cast<size_t>(j)] +
                                            coeff * (centroid[static_cast<size_t>(j)] - pts[worst][static_cast<size_t>(j)]);
            return p;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = f(xr);
        if (fr < vals[best]) {
            std::vector<double> xe = blend(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                pts[worst] = std::move(xe);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second_worst]) {
            pts[worst] = std::move(xr);
            vals[worst] = fr;
            continue;
        }
        if (fr < vals[worst]) {
            std::vector<double> xc = blend(0.5);  // outside contraction
            const double fc = f(xc);
            if (fc <= fr) {
                pts[worst] = std::move(xc);
                vals[worst] = fc;
                continue;
            }
        } else {
            std::vector<double> xc = blend(-0.5);  // inside contraction
            const double fc = f(xc);
            if (fc < vals[worst]) {
                pts[worst] = std::move(xc);
                vals[worst] = fc;
                continue;
            }
        }
        // Shrink toward the best vertex.
        for (size_t oi = 1; oi < order.size(); ++oi) {
            const size_t i = order[oi];
            for (int j = 0; j < n; ++j)
                pts[i][static_cast<size_t>(j)] =
                    pts[best][static_cast<size_t>(j)] +
                    0.5 * (pts[i][static_cast<size_t>(j)] - pts[best][static_cast<size_t>(j)]);
            vals[i] = f(pts[i]);
        }
    }

    size_t best = 0;
    for (size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[best]) best = i;
    result.x = pts[best];
    result.value = vals[best];
    return result;
}

namespace detail {

inline double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
    }
    return r;
}

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

// Restart starting point: even restarts walk a low-discrepancy Halton grid,
// odd restarts draw uniformly from the stream (seed, restart); the entropy
// landscape has many symmetric maxima and the mix covers both regimes.
inline std::vector<double> restart_start(const StateChart& chart, std::uint64_t seed, int restart) {
    const int m = chart.n_params();
    std::vector<double> x(static_cast<size_t>(m));
    if (restart % 2 == 0) {
        const std::uint64_t idx = static_cast<std::uint64_t>(restart / 2) + 1;
        for (int j = 0; j < m; ++j)
            x[static_cast<size_t>(j)] = halton(idx, kHaltonBases[j % 30]) * chart.range(j);
    } else {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(restart));
        for (int j = 0; j < m; ++j) x[static_cast<size_t>(j)] = rng.uniform01() * chart.range(j);
    }
    return x;
}

// Run `body(i)` for i in [0, count), optionally across a thread pool. Work
// items must be independent; the caller owns any result slots.
inline void for_each_index(int count, bool parallel, const std::function<void(int)>& body) {
    if (!parallel || count < 2) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    const int n_threads = std::min(count, static_cast<int>(hw > 0 ? hw : 4));
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                if (failed.load()) return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline Chart effective_chart(const SearchConfig& cfg, int dim) {
    if (cfg.chart == Chart::WeightPhaseD2 && dim != 2)
        throw ValidationError("SearchConfig: WeightPhaseD2 chart requires d=2");
    if (cfg.chart == Chart::WeightPhaseD3 && dim != 3)
        throw ValidationError("SearchConfig: WeightPhaseD3 chart requires d=3");
    return cfg.chart;
}

}  // namespace detail

struct SearchResult {
    double best_value = 0.0;  // total entropy of best_table, nats
    DensityMatrix best_state;
    ProbabilityTable best_table;
    int restarts_run = 0;
    double converged_fraction = 0.0;
};

// Multistart maximization of sum_n H(A_n) over pure states. Deterministic for
// fixed (seed, restarts) regardless of parallelism.
inline SearchResult maximize_total_entropy(const MubSet& m, const SearchConfig& cfg) {
    cfg.validate();
    const StateChart chart(detail::effective_chart(cfg, m.dim()), m.dim());
    const int n_params = chart.n_params();
    std::vector<double> steps(static_cast<size_t>(n_params));
    for (int j = 0; j < n_params; ++j) steps[static_cast<size_t>(j)] = 0.25 * chart.range(j);

    struct Outcome {
        double value;
        std::vector<double> x;
        bool converged;
    };
    std::vector<Outcome> outcomes(static_cast<size_t>(cfg.restarts));

    detail::for_each_index(cfg.restarts, cfg.parallel, [&](int restart) {
        const std::vector<double> x0 = detail::restart_start(chart, cfg.seed, restart);
        auto objective = [&](std::span<const double> x) {
            return -total_entropy(pure_state_probabilities(chart.to_state(x), m));
        };
        NelderMeadResult nm = nelder_mead(objective, x0, steps, cfg.max_iterations, cfg.convergence_tol);
        outcomes[static_cast<size_t>(restart)] = Outcome{-nm.value, std::move(nm.x), nm.converged};
    });

    int best = 0;
    int converged = 0;
    for (int i = 0; i < cfg.restarts; ++i) {
        if (outcomes[static_cast<size_t>(i)].converged) ++converged;
        if (outcomes[static_cast<size_t>(i)].value > outcomes[static_cast<size_t>(best)].value) best = i;
    }

    const ComplexVector psi = chart.to_state(outcomes[static_cast<size_t>(best)].x).normalized();
    DensityMatrix state = pure_density(psi);
    ProbabilityTable table = probabilities(state, m);
    const double value = total_entropy(table);
    return SearchResult{value, std::move(state), std::move(table), cfg.restarts,
                        static_cast<double>(converged) / cfg.restarts};
}

// max_{n,k} |p_nk - 1/d| for the pure state psi; zero iff psi is mutually
// coherent with respect to every basis in the set.
inline double coherence_defect(const ComplexVector& psi, const MubSet& m) {
    const ProbabilityTable t = pure_state_probabilities(psi, m);
    const double inv_d = 1.0 / m.dim();
    double worst = 0.0;
    for (double p : t.flat()) worst = std::max(worst, std::abs(p - inv_d));
    return worst;
}

struct CoherentSearchResult {
    ComplexVector state;
    double defect = 0.0;             // coherence_defect of state
    double sum_sq_deviation = 0.0;   // sum_nk (p_nk - 1/d)^2 at state
    int restarts_run = 0;
    double converged_fraction = 0.0;
};

// Two-stage search for the most coherent pure state. Stage one minimizes the
// smooth objective sum_nk (p_nk - 1/d)^2; for a complete set (N = d+1) that
// sum is pinned at (Pi + 1) - N/d by the purity identity and carries no
// information, so stage two always refines the max-deviation objective
// directly from the stage-one endpoint. The reported metric is the defect.
inline CoherentSearchResult find_coherent_state(const MubSet& m, const SearchConfig& cfg) {
    cfg.validate();
    const StateChart chart(detail::effective_chart(cfg, m.dim()), m.dim());
    const int n_params = chart.n_params();
    std::vector<double> steps(static_cast<size_t>(n_params));
    for (int j = 0; j < n_params; ++j) steps[static_cast<size_t>(j)] = 0.25 * chart.range(j);
    const double inv_d = 1.0 / m.dim();

    auto sum_sq = [&](std::span<const double> x) {
        const ProbabilityTable t = pure_state_probabilities(chart.to_state(x), m);
        double s = 0.0;
        for (double p : t.flat()) s += (p - inv_d) * (p - inv_d);
        return s;
    };
    auto max_dev = [&](std::span<const double> x) {
        return coherence_defect(chart.to_state(x), m);
    };

    struct Outcome {
        double defect;
        std::vector<double> x;
        bool converged;
    };
    std::vector<Outcome> outcomes(static_cast<size_t>(cfg.restarts));

    detail::for_each_index(cfg.restarts, cfg.parallel, [&](int restart) {
        const std::vector<double> x0 = detail::restart_start(chart, cfg.seed, restart);
        NelderMeadResult smooth = nelder_mead(sum_sq, x0, steps, cfg.max_iterations, cfg.convergence_tol);
        NelderMeadResult refine =
            nelder_mead(max_dev, smooth.x, steps, cfg.max_iterations, cfg.convergence_tol);
        outcomes[static_cast<size_t>(restart)] = Outcome{refine.value, std::move(refine.x), refine.converged};
    });

    int best = 0;
    int converged = 0;
    for (int i = 0; i < cfg.restarts; ++i) {
        if (outcomes[static_cast<size_t>(i)].converged) ++converged;
        if (outcomes[static_cast<size_t>(i)].defect < outcomes[static_cast<size_t>(best)].defect) best = i;
    }

    ComplexVector psi = chart.to_state(outcomes[static_cast<size_t>(best)].x).normalized();
    CoherentSearchResult result;
    result.defect = coherence_defect(psi, m);
    result.sum_sq_deviation = sum_sq(outcomes[static_cast<size_t>(best)].x);
    result.state = std::move(psi);
    result.restarts_run = cfg.restarts;
    result.converged_fraction = static_cast<double>(converged) / cfg.restarts;
    return result;
}

enum class ExtendibilityVerdict { CoherentStateFound, BoundNotExceeded, Inconclusive };

inline std::string to_string(ExtendibilityVerdict v) {
    switch (v) {
        case ExtendibilityVerdict::CoherentStateFound: return "coherent-state-found";
        case ExtendibilityVerdict::BoundNotExceeded: return "bound-not-exceeded";
        default: return "inconclusive";
    }
}

struct ExtendibilityReport {
    double n_ln_d = 0.0;                // entropy ceiling N ln d
    double h_t_plus_pure = 0.0;         // certainty bound at purity 1
    double achieved_max = 0.0;          // best entropy the search reached
    double min_coherence_defect = 0.0;  // best (lowest) defect the search reached
    ExtendibilityVerdict verdict = ExtendibilityVerdict::Inconclusive;
};

// Numerical extendibility criterion: a coherent state certifies that the set
// extends to N+1 bases; an achieved maximum that stays at the certainty bound
// while the defect stays far from zero certifies that it cannot.
inline ExtendibilityReport extendibility_report(const MubSet& m, const SearchConfig& cfg) {
    const SearchResult sr = maximize_total_entropy(m, cfg);
    const CoherentSearchResult cs = find_coherent_state(m, cfg);
    ExtendibilityReport report;
    report.n_ln_d = m.count() * std::log(static_cast<double>(m.dim()));
    report.h_t_plus_pure = h_t_plus(m.count(), m.dim(), 1.0);
    report.achieved_max = sr.best_value;
    report.min_coherence_defect = cs.defect;
    if (cs.defect < cfg.coherent_defect_threshold) {
        report.verdict = ExtendibilityVerdict::CoherentStateFound;
    } else if (sr.best_value <= report.h_t_plus_pure + cfg.coherent_defect_threshold &&
               cs.defect >= cfg.bound_separation_threshold) {
        report.verdict = ExtendibilityVerdict::BoundNotExceeded;
    } else {
        report.verdict = ExtendibilityVerdict::Inconclusive;
    }
    return report;
}

}  // namespace mubcert
