// Command-line front end: closed-form certainty bounds, MUB file validation,
// entropy maximization, extendibility reports, and batch verification of the
// purity-sum identity. Exit codes: 0 success, 2 invalid input or file,
// 3 property violation, 4 inadmissible bound parameters.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mubcert/mubcert.hpp"

namespace {

using namespace mubcert;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitPropertyViolation = 3;
constexpr int kExitInadmissible = 4;

struct CommonOpts {
    std::string format = "text";
    std::string output;
    int dim = 0;
    int n_bases = 0;
    std::string bases_file;
};

void emit(const CommonOpts& opts, const std::string& content) {
    if (opts.output.empty()) {
        std::cout << content;
    } else {
        write_file(opts.output, content);
    }
}

// A bases file supersedes --dim/--n-bases.
MubSet resolve_mub_set(const CommonOpts& opts) {
    if (!opts.bases_file.empty()) return load_bases_file(opts.bases_file);
    if (opts.dim == 0 || opts.n_bases == 0)
        throw ValidationError("need either --bases-file or both --dim and --n-bases");
    return standard_mubs(opts.dim, opts.n_bases);
}

void add_common_flags(CLI::App* sub, CommonOpts& opts, bool with_set_selection) {
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("-o,--output", opts.output, "write the report to a file instead of stdout");
    if (with_set_selection) {
        sub->add_option("--dim", opts.dim, "Hilbert-space dimension (prime for built-in bases)");
        sub->add_option("--n-bases", opts.n_bases, "number of MUBs (1..d+1)");
        sub->add_option("--bases-file", opts.bases_file, "JSON bases file (supersedes --dim/--n-bases)");
    }
}

struct SearchOpts {
    SearchConfig cfg;
    std::string chart = "generic";

    void apply_chart() {
        if (chart == "d2") cfg.chart = Chart::WeightPhaseD2;
        else if (chart == "d3") cfg.chart = Chart::WeightPhaseD3;
        else cfg.chart = Chart::Hyperspherical;
    }
};

void add_search_flags(CLI::App* sub, SearchOpts& opts) {
    sub->add_option("--restarts", opts.cfg.restarts, "independent local searches")->capture_default_str();
    sub->add_option("--max-iterations", opts.cfg.max_iterations, "iteration budget per restart")
        ->capture_default_str();
    sub->add_option("--tol", opts.cfg.convergence_tol, "simplex function-spread stopping tolerance")
        ->capture_default_str();
    sub->add_option("--seed", opts.cfg.seed, "PRNG seed")->envname("MUBC_SEED")->capture_default_str();
    sub->add_flag("--parallel", opts.cfg.parallel, "run restarts on a thread pool");
    sub->add_option("--chart", opts.chart, "pure-state parameterization")
        ->check(CLI::IsMember({"generic", "d2", "d3"}))
        ->capture_default_str();
}

int cmd_bound(const CommonOpts& common, double purity, double coherent_weight) {
    const BoundReport report = make_bound_report(common.n_bases, common.dim, purity, coherent_weight);
    if (common.format == "json") emit(common, bound_report_to_json(report));
    else if (common.format == "csv") emit(common, bound_report_to_csv(report));
    else emit(common, bound_report_to_text(report));
    return kExitOk;
}

int cmd_validate(const CommonOpts& common) {
    const std::string text = read_file(common.bases_file);
    MubSet set = parse_bases_json(text);  // throws on any failure
    std::string out;
    if (common.format == "json") {
        out = "{\n  \"dim\": " + std::to_string(set.dim()) +
              ",\n  \"n_bases\": " + std::to_string(set.count()) +
              ",\n  \"max_unbiasedness_deviation\": " + g17(set.max_unbiasedness_deviation()) +
              ",\n  \"pass\": true\n}\n";
    } else if (common.format == "csv") {
        out = "dim,n_bases,max_unbiasedness_deviation,pass\n" + std::to_string(set.dim()) + "," +
              std::to_string(set.count()) + "," + g17(set.max_unbiasedness_deviation()) + ",1\n";
    } else {
        out = "valid MUB set: " + std::to_string(set.count()) + " bases in dimension " +
              std::to_string(set.dim()) + "\n  max unbiasedness deviation = " +
              g6(set.max_unbiasedness_deviation()) + "\n";
    }
    emit(common, out);
    return kExitOk;
}

int cmd_maximize(const CommonOpts& common, SearchOpts& search) {
    const MubSet set = resolve_mub_set(common);
    search.apply_chart();
    const SearchResult result = maximize_total_entropy(set, search.cfg);
    if (common.format == "json") emit(common, search_result_to_json(result));
    else if (common.format == "csv") emit(common, table_to_csv(result.best_table));
    else emit(common, search_result_to_text(result, set));
    return kExitOk;
}

int cmd_extendibility(const CommonOpts& common, SearchOpts& search) {
    const MubSet set = resolve_mub_set(common);
    search.apply_chart();
    const ExtendibilityReport report = extendibility_report(set, search.cfg);
    if (common.format == "json") {
        emit(common, extendibility_to_json(report));
    } else if (common.format == "csv") {
        emit(common, "n_ln_d,h_t_plus_pure,achieved_max,min_coherence_defect,verdict\n" +
                         g17(report.n_ln_d) + "," + g17(report.h_t_plus_pure) + "," +
                         g17(report.achieved_max) + "," + g17(report.min_coherence_defect) + "," +
                         to_string(report.verdict) + "\n");
    } else {
        emit(common, extendibility_to_text(report));
    }
    return kExitOk;
}

int cmd_prop1_check(const CommonOpts& common, int samples, std::uint64_t seed, bool allow_signed) {
    const MubSet set = resolve_mub_set(common);
    const int n = set.count();
    const int d = set.dim();
    double max_equality_deviation = 0.0;
    double max_inequality_violation = 0.0;
    int used = 0;
    for (int s = 0; s < samples; ++s) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(s));
        MixtureWeights weights = MixtureWeights::random_simplex(n, d, rng);
        if (allow_signed) {
            // Tilt the simplex draw off the positive orthant while keeping the
            // sum at 1; the identity is sign-agnostic but the state must stay
            // positive semidefinite, so non-physical draws are skipped.
            std::vector<double> lam(weights.flat().begin(), weights.flat().end());
            const double tilt = 0.1;
            for (double& w : lam) w = (1.0 + tilt) * w - tilt / static_cast<double>(n * d);
            weights = MixtureWeights(n, d, std::move(lam), /*allow_signed=*/true);
        }
        try {
            const DensityMatrix rho = mub_diagonal_mixture(set, weights);
            const PuritySumReport report = purity_sum_check(rho, set);
            max_equality_deviation =
                std::max(max_equality_deviation, std::abs(report.purity_sum - report.equality_rhs));
            max_inequality_violation =
                std::max(max_inequality_violation, report.purity_sum - report.inequality_rhs);
            ++used;
        } catch (const ValidationError&) {
            if (!allow_signed) throw;  // simplex weights always give a valid state
        }
    }
    const bool pass = used > 0 && max_equality_deviation < 1e-9 && max_inequality_violation < 1e-9;

    std::string out;
    if (common.format == "json") {
        out = "{\n  \"n_bases\": " + std::to_string(n) + ",\n  \"dim\": " + std::to_string(d) +
              ",\n  \"samples\": " + std::to_string(samples) +
              ",\n  \"samples_used\": " + std::to_string(used) +
              ",\n  \"max_equality_deviation\": " + g17(max_equality_deviation) +
              ",\n  \"max_inequality_violation\": " + g17(std::max(0.0, max_inequality_violation)) +
              ",\n  \"pass\": " + (pass ? "true" : "false") + "\n}\n";
    } else if (common.format == "csv") {
        out = "N,d,samples,samples_used,max_equality_deviation,max_inequality_violation,pass\n" +
              std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(samples) + "," +
              std::to_string(used) + "," + g17(max_equality_deviation) + "," +
              g17(std::max(0.0, max_inequality_violation)) + "," + (pass ? "1" : "0") + "\n";
    } else {
        out = "purity-sum identity over " + std::to_string(used) + " of " + std::to_string(samples) +
              " random diagonal mixtures (N=" + std::to_string(n) + ", d=" + std::to_string(d) + ")\n" +
              "  max |sum C_n - purity - (N-1)/d| = " + g6(max_equality_deviation) + "\n" +
              "  max (sum C_n - purity - 1)       = " + g6(std::max(0.0, max_inequality_violation)) +
              "\n  equality branch holds for every sample: " + (pass ? "yes" : "NO") + "\n";
    }
    emit(common, out);
    return pass ? kExitOk : kExitPropertyViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropic certainty relations for mutually unbiased bases"};
    app.require_subcommand(1);

    CommonOpts bound_opts;
    double purity = 1.0;
    double coherent_weight = 0.0;
    CLI::App* bound = app.add_subcommand("bound", "closed-form certainty bound for (N, d, purity)");
    add_common_flags(bound, bound_opts, false);
    bound->add_option("--dim", bound_opts.dim, "Hilbert-space dimension")->required();
    bound->add_option("--n-bases", bound_opts.n_bases, "number of MUBs (1..d+1)")->required();
    bound->add_option("--purity", purity, "state purity tr(rho^2) in [1/d, 1]")->required();
    bound->add_option("--coherent-weight", coherent_weight, "coherent component weight r in [0,1]")
        ->capture_default_str();

    CommonOpts validate_opts;
    CLI::App* validate = app.add_subcommand("validate", "validate a JSON bases file");
    add_common_flags(validate, validate_opts, false);
    validate->add_option("--bases-file", validate_opts.bases_file, "JSON bases file")->required();

    CommonOpts maximize_opts;
    SearchOpts maximize_search;
    CLI::App* maximize = app.add_subcommand("maximize", "maximize total entropy over pure states");
    add_common_flags(maximize, maximize_opts, true);
    add_search_flags(maximize, maximize_search);

    CommonOpts extend_opts;
    SearchOpts extend_search;
    CLI::App* extend = app.add_subcommand("extendibility", "extendibility report for a MUB set");
    add_common_flags(extend, extend_opts, true);
    add_search_flags(extend, extend_search);
    extend->add_option("--defect-threshold", extend_search.cfg.coherent_defect_threshold,
                       "coherence defect below which a coherent state is declared found")
        ->capture_default_str();
    extend->add_option("--separation-threshold", extend_search.cfg.bound_separation_threshold,
                       "defect above which the bound-not-exceeded verdict may fire")
        ->capture_default_str();

    CommonOpts prop1_opts;
    int samples = 100;
    std::uint64_t prop1_seed = 42;
    bool allow_signed = false;
    CLI::App* prop1 = app.add_subcommand("prop1-check", "verify the purity-sum identity on random mixtures");
    add_common_flags(prop1, prop1_opts, true);
    prop1->add_option("--samples", samples, "number of random mixtures")->capture_default_str();
    prop1->add_option("--seed", prop1_seed, "PRNG seed")->envname("MUBC_SEED")->capture_default_str();
    prop1->add_flag("--allow-signed-weights", allow_signed,
                    "accept signed mixture weights when constructing states");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (bound->parsed()) return cmd_bound(bound_opts, purity, coherent_weight);
        if (validate->parsed()) return cmd_validate(validate_opts);
        if (maximize->parsed()) return cmd_maximize(maximize_opts, maximize_search);
        if (extend->parsed()) return cmd_extendibility(extend_opts, extend_search);
        if (prop1->parsed()) return cmd_prop1_check(prop1_opts, samples, prop1_seed, allow_signed);
    } catch (const InadmissibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInadmissible;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
