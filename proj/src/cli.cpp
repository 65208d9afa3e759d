#include "unseen/cli.hpp"

#include "unseen/bounded_k.hpp"
#include "unseen/distributions.hpp"
#include "unseen/rnorm_ci.hpp"
#include "unseen/sci.hpp"
#include "unseen/simulate.hpp"
#include "unseen/worstcase.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace unseen::cli {
namespace {

using Json = nlohmann::ordered_json;

// Usage-class failure detected after parsing; maps to exit status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CommonArgs {
    std::uint64_t n = 1000;
    double alpha = 0.05;
    std::uint64_t reps = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

void add_alpha(CLI::App* cmd, double& alpha) {
    cmd->add_option("--alpha", alpha, "Non-coverage budget in (0,1)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

void add_seeding(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--reps", a.reps, "Monte Carlo replicates")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed", a.seed, "Base seed")->capture_default_str();
    cmd->add_option("--threads", a.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_dist_params(CLI::App* cmd, DistSpec& d) {
    cmd->add_option("--zipf-s", d.zipf_s, "Zipf exponent")->capture_default_str();
    cmd->add_option("--geometric-a", d.geometric_a, "Geometric parameter")->capture_default_str();
    cmd->add_option("--negbin-l", d.negbin_l, "Negative-binomial l")->capture_default_str();
    cmd->add_option("--negbin-r", d.negbin_r, "Negative-binomial r")->capture_default_str();
    cmd->add_option("--betabin-a", d.betabin_a, "Beta-binomial a")->capture_default_str();
    cmd->add_option("--betabin-b", d.betabin_b, "Beta-binomial b")->capture_default_str();
    cmd->add_option("--file", d.file, "Counts CSV for --dist file");
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json ci_json(const UpperCi& ci, const CiConfig& cfg) {
    Json j;
    j["n"] = cfg.n;
    j["alpha"] = cfg.alpha;
    if (cfg.k) j["k"] = *cfg.k;
    j["upper"] = ci.upper;
    j["r_star"] = ci.r_star;
    j["e_value"] = ci.e_value;
    j["method"] = std::string(to_string(ci.method));
    return j;
}

// Counts file to a sample over symbols 0..rows-1 in file order.
SampleCounts sample_from_file(const std::vector<CountRow>& rows) {
    std::vector<std::uint64_t> dense;
    dense.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.count < 0) throw UsageError("counts: negative count for '" + r.label + "'");
        dense.push_back(static_cast<std::uint64_t>(r.count));
    }
    return SampleCounts::from_dense(dense);
}

void emit_table(const Table& t, const std::string& dir, const std::string& name, std::ostream& out) {
    if (dir.empty()) {
        t.write_csv(out);
        return;
    }
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / (name + ".csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    t.write_csv(f);
    if (!f) throw std::runtime_error("write failed: " + path.string());
    out << path.string() << '\n';
}

void append(Table& into, const Table& from) {
    if (into.header.empty()) into.header = from.header;
    into.rows.insert(into.rows.end(), from.rows.begin(), from.rows.end());
}

const std::vector<std::string> kBenchmarks = {"zipf", "geometric", "negbin", "betabin", "uniform", "worstcase"};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Confidence intervals for the largest unobserved probability", "unseen"};
    app.require_subcommand(1);

    // ci
    CiConfig ci_cfg;
    std::optional<std::uint64_t> ci_k;
    auto* ci = app.add_subcommand("ci", "Upper confidence bound on the largest missing probability");
    ci->add_option("--n", ci_cfg.n, "Sample size")->required()->check(CLI::PositiveNumber);
    add_alpha(ci, ci_cfg.alpha);
    ci->add_option("--k", ci_k, "Alphabet size (bounded CI when given)")->check(CLI::PositiveNumber);

    // rot
    std::uint64_t rot_n = 0, rot_k = 0;
    double rot_alpha = 0.05;
    auto* rot = app.add_subcommand("rot", "Bonferroni-corrected rule of three");
    rot->add_option("--n", rot_n, "Sample size")->required()->check(CLI::PositiveNumber);
    rot->add_option("--k", rot_k, "Alphabet size")->required()->check(CLI::PositiveNumber);
    add_alpha(rot, rot_alpha);

    // worst-case
    std::uint64_t wc_n = 0;
    double wc_alpha = 0.05;
    auto* wc = app.add_subcommand("worst-case", "Least favorable uniform alphabet size m_alpha");
    wc->add_option("--n", wc_n, "Sample size")->required()->check(CLI::PositiveNumber);
    add_alpha(wc, wc_alpha);

    // simulate
    CommonArgs sim;
    DistSpec sim_dist;
    std::uint64_t sim_k = 1000;
    std::string sim_method = "ours";
    bool sim_bounded = false;
    auto* simc = app.add_subcommand("simulate", "Monte Carlo non-coverage of one CI on one distribution");
    simc->add_option("--dist", sim_dist.kind, "Benchmark distribution")
        ->check(CLI::IsMember({"zipf", "geometric", "negbin", "betabin", "uniform", "worstcase", "file"}))
        ->capture_default_str();
    simc->add_option("--k", sim_k, "Alphabet size")->check(CLI::PositiveNumber)->capture_default_str();
    add_dist_params(simc, sim_dist);
    simc->add_option("--n", sim.n, "Sample size")->check(CLI::PositiveNumber)->capture_default_str();
    add_alpha(simc, sim.alpha);
    add_seeding(simc, sim);
    simc->add_option("--method", sim_method, "CI under test")->check(CLI::IsMember({"ours", "rot"}))->capture_default_str();
    simc->add_flag("--bounded", sim_bounded, "Use the bounded-k CI with the distribution's alphabet size");

    // sci
    std::string sci_counts, sci_c = "auto", sci_method = "ours", sci_binomial = "wald", sci_out;
    std::string sci_unobserved = "unbounded", sci_condition = "log";
    std::optional<std::uint64_t> sci_n;
    std::uint64_t sci_k = 0;
    double sci_alpha = 0.05;
    auto* scic = app.add_subcommand("sci", "Simultaneous confidence region from observed counts");
    scic->add_option("--counts", sci_counts, "Counts CSV (label,count)")->required();
    scic->add_option("--k", sci_k, "Alphabet size")->required()->check(CLI::PositiveNumber);
    scic->add_option("--n", sci_n, "Sample size (must equal the total count)")->check(CLI::PositiveNumber);
    add_alpha(scic, sci_alpha);
    scic->add_option("--c", sci_c, "Budget split in [0,1) or 'auto'")->capture_default_str();
    scic->add_option("--method", sci_method, "Region")->check(CLI::IsMember({"ours", "bonferroni"}))->capture_default_str();
    scic->add_option("--binomial", sci_binomial, "Observed-symbol interval")
        ->check(CLI::IsMember({"wald", "exact"}))
        ->capture_default_str();
    scic->add_option("--unobserved", sci_unobserved, "Unobserved-symbol bound")
        ->check(CLI::IsMember({"unbounded", "bounded"}))
        ->capture_default_str();
    scic->add_option("--condition", sci_condition, "Form of the c-selection conditions")
        ->check(CLI::IsMember({"log", "raw"}))
        ->capture_default_str();
    scic->add_option("--out", sci_out, "Write the region CSV to this file");

    // experiment
    std::string ex_name, ex_out, ex_dist = "all", ex_counts, ex_binomial = "wald";
    CommonArgs ex;
    std::optional<std::uint64_t> ex_reps;
    std::vector<std::uint64_t> ex_ks, ex_ns;
    std::vector<double> ex_cs;
    std::optional<std::uint64_t> ex_k;
    DistSpec ex_params;
    auto* exc = app.add_subcommand("experiment", "Reproduce a sweep as CSV");
    exc->add_option("name", ex_name, "fig1|fig2|fig3|fig4|coverage")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "coverage"}));
    exc->add_option("--out", ex_out, "Output directory (stdout if absent)");
    exc->add_option("--reps", ex_reps, "Replicates (10000; 1000 for fig3/fig4)")->check(CLI::PositiveNumber);
    exc->add_option("--seed", ex.seed, "Base seed")->capture_default_str();
    exc->add_option("--threads", ex.threads, "Worker threads (0 = all cores)")->capture_default_str();
    exc->add_option("--n", ex.n, "Sample size")->check(CLI::PositiveNumber)->capture_default_str();
    add_alpha(exc, ex.alpha);
    exc->add_option("--dist", ex_dist, "Benchmark or 'all'")->capture_default_str();
    add_dist_params(exc, ex_params);
    exc->add_option("--ks", ex_ks, "Alphabet-size grid")->delimiter(',');
    exc->add_option("--ns", ex_ns, "Sample-size grid (fig2)")->delimiter(',');
    exc->add_option("--cs", ex_cs, "Budget-split grid (fig4)")->delimiter(',');
    exc->add_option("--k", ex_k, "Alphabet size (fig4, coverage)")->check(CLI::PositiveNumber);
    exc->add_option("--counts", ex_counts, "Counts CSV (fig2)");
    exc->add_option("--binomial", ex_binomial, "Observed-symbol interval (fig3, fig4)")
        ->check(CLI::IsMember({"wald", "exact"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*ci) {
            if (ci_k) ci_cfg.k = ci_k;
            ci_cfg.validate();
            const UpperCi r = ci_cfg.k ? ci_bounded(ci_cfg) : ci_unbounded(ci_cfg);
            print_json(out, ci_json(r, ci_cfg));
        } else if (*rot) {
            CiConfig{rot_n, rot_alpha, rot_k}.validate();
            Json j;
            j["n"] = rot_n;
            j["k"] = rot_k;
            j["alpha"] = rot_alpha;
            j["upper"] = rot_bonferroni(rot_n, rot_k, rot_alpha);
            j["method"] = std::string(to_string(CiMethod::rot_bonferroni));
            print_json(out, j);
        } else if (*wc) {
            CiConfig{wc_n, wc_alpha, std::nullopt}.validate();
            const auto w = find_m_alpha(wc_n, wc_alpha);
            Json j;
            j["n"] = wc_n;
            j["alpha"] = wc_alpha;
            j["m_alpha"] = w.m_alpha;
            j["threshold"] = 1.0 / static_cast<double>(w.m_alpha);
            j["exceedance_at_m"] = w.exceedance_at_m;
            j["exceedance_at_m_plus_1"] = w.exceedance_at_m_plus_1;
            j["ci_unbounded"] = ci_unbounded(wc_n, wc_alpha).upper;
            print_json(out, j);
        } else if (*simc) {
            CiConfig cfg{sim.n, sim.alpha, std::nullopt};
            cfg.validate();
            if (sim_dist.kind == "file" && sim_dist.file.empty()) throw UsageError("--dist file requires --file");
            if (sim_method == "rot" && sim_bounded) throw UsageError("--bounded applies to --method ours only");
            const Pmf p = make_benchmark(sim_dist, sim_k, sim.n, sim.alpha);
            const std::uint64_t alphabet = p.size();
            UpperCi ci_used;
            if (sim_method == "rot") {
                ci_used.upper = rot_bonferroni(sim.n, alphabet, sim.alpha);
                ci_used.method = CiMethod::rot_bonferroni;
                ci_used.r_star = 1.0;
            } else if (sim_bounded) {
                ci_used = ci_bounded(CiConfig{sim.n, sim.alpha, alphabet});
            } else {
                ci_used = ci_unbounded(cfg);
            }
            const auto rep = coverage(p, cfg, ci_used.upper, sim.reps, sim.seed, sim.threads);
            Json j;
            j["dist"] = sim_dist.kind;
            j["alphabet"] = alphabet;
            j["n"] = sim.n;
            j["alpha"] = sim.alpha;
            j["method"] = std::string(to_string(ci_used.method));
            j["threshold"] = rep.threshold;
            j["r_star"] = ci_used.r_star;
            j["reps"] = rep.reps;
            j["seed"] = rep.seed;
            j["non_coverage"] = rep.non_coverage;
            j["non_coverage_rate"] = 1.0 - rep.coverage_rate;
            j["coverage_rate"] = rep.coverage_rate;
            j["mean_m_max"] = rep.mean_m_max;
            j["quantile_1_minus_alpha"] = rep.quantile_1_minus_alpha;
            print_json(out, j);
        } else if (*scic) {
            SciOptions opts;
            opts.binomial = sci_binomial == "exact" ? BinomialFamily::exact : BinomialFamily::wald;
            opts.unobserved = sci_unobserved == "bounded" ? UnobservedBound::bounded : UnobservedBound::unbounded;
            opts.form = sci_condition == "raw" ? ConditionForm::raw_difference : ConditionForm::log_difference;
            std::optional<double> c_fixed;
            if (sci_c != "auto") {
                try {
                    std::size_t used = 0;
                    c_fixed = std::stod(sci_c, &used);
                    if (used != sci_c.size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw UsageError("--c must be a number in [0,1) or 'auto'");
                }
                if (!(*c_fixed >= 0.0 && *c_fixed < 1.0)) throw UsageError("--c must lie in [0,1)");
                if (sci_method == "bonferroni") throw UsageError("--c does not apply to --method bonferroni");
            }
            if (!(sci_alpha > 0.0 && sci_alpha < 1.0)) throw UsageError("--alpha must lie in (0,1)");
            const auto rows = read_counts_csv(sci_counts);
            const SampleCounts counts = sample_from_file(rows);
            if (rows.size() > sci_k) throw UsageError("counts file has more symbols than --k");
            if (sci_n && *sci_n != counts.n)
                throw UsageError("--n (" + std::to_string(*sci_n) + ") differs from the total count (" +
                                 std::to_string(counts.n) + ")");

            std::optional<double> c;
            bool fallback = false;
            if (sci_method == "ours") {
                c = c_fixed ? c_fixed : choose_c(counts.n, sci_k, sci_alpha, opts);
                fallback = !c;
            }
            const ConfidenceRegion region = c ? build_region(counts, sci_k, sci_alpha, *c, opts)
                                              : build_region_bonferroni(counts, sci_k, sci_alpha, opts);
            if (!sci_out.empty()) {
                std::ofstream f(sci_out, std::ios::binary);
                if (!f) throw std::runtime_error("cannot write " + sci_out);
                region_table(region, counts).write_csv(f);
            }
            Json j;
            j["n"] = counts.n;
            j["k"] = sci_k;
            j["alpha"] = sci_alpha;
            if (c)
                j["c"] = *c;
            else
                j["c"] = nullptr;
            j["method"] = std::string(to_string(region.method));
            j["log_volume"] = log_volume(region);
            j["fallback"] = fallback;
            j["binomial"] = sci_binomial;
            print_json(out, j);
        } else if (*exc) {
            if (!(ex.alpha > 0.0 && ex.alpha < 1.0)) throw UsageError("--alpha must lie in (0,1)");
            const bool region_fig = ex_name == "fig3" || ex_name == "fig4";
            ex.reps = ex_reps ? *ex_reps : (region_fig ? 1000 : 10000);
            SweepConfig sc{ex.n, ex.alpha, ex.reps, ex.seed, ex.threads};
            Table t;
            if (ex_name == "fig1") {
                if (ex_ks.empty()) ex_ks = {100, 200, 500, 1000, 2000, 5000, 10000};
                std::vector<std::string> dists = ex_dist == "all" ? kBenchmarks : std::vector<std::string>{ex_dist};
                for (const auto& d : dists) {
                    DistSpec spec = ex_params;
                    spec.kind = d;
                    if (d == "file" && spec.file.empty()) throw UsageError("--dist file requires --file");
                    append(t, run_figure1(spec, sc, ex_ks));
                }
            } else if (ex_name == "fig2") {
                if (ex_counts.empty()) throw UsageError("fig2 requires --counts FILE");
                if (ex_ns.empty()) ex_ns = {10, 20, 50, 100, 200};
                t = run_figure2(ex_counts, sc, ex_ns);
            } else if (ex_name == "coverage") {
                t = run_coverage_suite(sc, ex_k.value_or(10000));
            } else {
                RegionSweepConfig rc;
                rc.n = ex.n;
                rc.alpha = ex.alpha;
                rc.reps = ex.reps;
                rc.seed = ex.seed;
                rc.threads = ex.threads;
                rc.zipf_s = ex_params.zipf_s;
                rc.options.binomial = ex_binomial == "exact" ? BinomialFamily::exact : BinomialFamily::wald;
                std::vector<std::string> dists = ex_dist == "all" ? std::vector<std::string>{"zipf", "uniform"}
                                                                  : std::vector<std::string>{ex_dist};
                for (const auto& d : dists) {
                    if (d != "zipf" && d != "uniform") throw UsageError("fig3/fig4 support --dist zipf|uniform|all");
                    rc.dist = d;
                    if (ex_name == "fig3") {
                        if (ex_ks.empty()) ex_ks = {1000, 2000, 5000, 10000, 20000};
                        append(t, run_region_k_sweep(rc, ex_ks));
                    } else {
                        if (ex_cs.empty())
                            for (int i = 1; i <= 19; ++i) ex_cs.push_back(0.05 * i);
                        append(t, run_region_c_sweep(rc, ex_k.value_or(20000), ex_cs));
                    }
                }
            }
            emit_table(t, ex_out, ex_name, out);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace unseen::cli
