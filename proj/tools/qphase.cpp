// qphase: phase-representation metrics, interferometer phase fitting, and
// AWGN robustness sweeps from the command line.
//
//   qphase pdf noon --jmax 4 --samples 8
//   qphase metrics noonvac --jmax 8 --n 8
//   qphase estimate noon --jmax 2 --phi 0.1 --sigma2 1e-4 --seed 7
//   qphase noise-sweep --sigma2 1e-8,1e-6,1e-4,1e-2 --threads 8 --out sweep.csv
//   qphase validate --json
//
// Data goes to --out (default stdout). A run manifest (command, effective
// parameters, seed, version, checksum of the data) goes to --manifest, or to
// <out>.manifest.json, or to stderr when writing to stdout. Any manifest or
// flat JSON object of flag values can be passed back with --config; explicit
// flags win.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qphase/io.hpp"
#include "qphase/noise.hpp"
#include "qphase/pffa.hpp"
#include "qphase/phase_rep.hpp"
#include "qphase/states.hpp"
#include "qphase/validation.hpp"

namespace {

using nlohmann::json;
using namespace qphase;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string kind = "noon";
    int j_max = 2;
    double r1 = 1.0;
    double r2 = 1.0 / std::numbers::sqrt2;
    double n = 3.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string manifest;
    std::string format;
    int threads = 1;
    std::string config;
};

struct EstimationOptions {
    double lo = 0.0;
    double hi = std::numbers::pi / 4.0;
    int coarse_grid = 4097;
    double refine_tol = 1e-13;
};

// Every option registered here is also a --config key (long name without
// the dashes, '-' replaced by '_').
class Command {
public:
    Command(CLI::App& parent, std::string name, std::string description)
        : app_(parent.add_subcommand(std::move(name), std::move(description)))
    {
    }

    CLI::App* app() const { return app_; }

    void add_common(CommonOptions& common, bool with_spec = true)
    {
        if (with_spec) {
            positional_kind_ =
                app_->add_option("kind", common.kind, "State family (positional form of --spec-kind)");
            track(app_->add_option("--spec-kind", common.kind,
                                   "State family: noon, substate, noonvac, general"),
                  common.kind);
            track(app_->add_option("--jmax", common.j_max, "Largest j (2 j_max photons)"),
                  common.j_max);
            track(app_->add_option("--r1", common.r1, "Sub-harmonic weight (substate, general)"),
                  common.r1);
            track(app_->add_option("--r2", common.r2, "N00N-component weight (general)"),
                  common.r2);
            track(app_->add_option("--n", common.n, "N00N-vac parameter, r2 = 1/sqrt(2n)"),
                  common.n);
        }
        track(app_->add_option("--seed", common.seed, "Master seed"), common.seed);
        app_->add_option("--out", common.out, "Output file (default stdout)");
        app_->add_option("--manifest", common.manifest, "Run manifest path");
        track(app_->add_option("--format", common.format, "Output format")
                  ->check(CLI::IsMember({"csv", "json"})),
              common.format);
        track(app_->add_option("--threads", common.threads, "Worker threads")
                  ->check(CLI::PositiveNumber),
              common.threads);
        app_->add_option("--config", common.config, "JSON file of option values");
    }

    void add_estimation(EstimationOptions& est)
    {
        track(app_->add_option("--domain-lo", est.lo, "Lower end of the search domain"), est.lo);
        track(app_->add_option("--domain-hi", est.hi, "Upper end of the search domain"), est.hi);
        track(app_->add_option("--coarse-grid", est.coarse_grid, "Coarse scan points (>= 64)"),
              est.coarse_grid);
        track(app_->add_option("--refine-tol", est.refine_tol, "Golden-section bracket width"),
              est.refine_tol);
    }

    template <typename T>
    void track(CLI::Option* opt, T& target)
    {
        bindings_.push_back({opt, [opt, &target](const json& value) {
                                 if (opt->count() == 0) target = value.get<T>();
                             },
                             [&target]() { return json(target); }});
    }

    /// Fills untouched options from the --config file.
    void apply_config(const std::string& path)
    {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open config file " + path);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw UsageError("config file " + path + " is not valid JSON: " + e.what());
        }
        const json& params = doc.contains("params") ? doc.at("params") : doc;
        for (auto& b : bindings_) {
            const std::string key = key_of(b.option);
            if (key == "spec_kind" && positional_kind_ && positional_kind_->count() > 0) continue;
            if (params.contains(key)) {
                try {
                    b.load(params.at(key));
                } catch (const json::exception& e) {
                    throw UsageError("config key '" + key + "': " + e.what());
                }
            }
        }
    }

    /// Effective values of every tracked option.
    json params() const
    {
        json out = json::object();
        for (const auto& b : bindings_) out[key_of(b.option)] = b.dump();
        return out;
    }

private:
    struct Binding {
        CLI::Option* option;
        std::function<void(const json&)> load;
        std::function<json()> dump;
    };

    static std::string key_of(const CLI::Option* opt)
    {
        std::string name = opt->get_lnames().front();
        for (char& c : name) {
            if (c == '-') c = '_';
        }
        return name;
    }

    CLI::App* app_;
    CLI::Option* positional_kind_ = nullptr;
    std::vector<Binding> bindings_;
};

StateSpec spec_from(const CommonOptions& o)
{
    try {
        switch (parse_state_kind(o.kind)) {
        case StateKind::Noon: return StateSpec::noon(o.j_max);
        case StateKind::SubState: return StateSpec::substate(o.j_max, o.r1);
        case StateKind::NoonVac: return StateSpec::noon_vac(o.j_max, o.n);
        case StateKind::GeneralEq1: return StateSpec::general(o.j_max, o.r1, o.r2);
        }
    } catch (const InvalidSpecError& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown state kind");
}

StateSpec checked_spec(const CommonOptions& o)
{
    const StateSpec spec = spec_from(o);
    try {
        spec.validate();
    } catch (const InvalidSpecError& e) {
        throw UsageError(e.what());
    }
    return spec;
}

EstimationConfig estimation_from(const EstimationOptions& o)
{
    EstimationConfig config{o.lo, o.hi, o.coarse_grid, o.refine_tol};
    try {
        config.validate();
    } catch (const InvalidSpecError& e) {
        throw UsageError(e.what());
    }
    return config;
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

void emit(const Command& cmd, const CommonOptions& common, const std::string& data)
{
    if (common.out.empty()) {
        std::cout << data << std::flush;
    } else {
        write_file(common.out, data);
    }

    io::RunManifest manifest;
    manifest.command = cmd.app()->get_name();
    manifest.params = cmd.params();
    manifest.seed = common.seed;
    manifest.tool_version = std::string(io::tool_version);
    manifest.output_checksum = io::fnv1a64_hex(data);
    const std::string text = json(manifest).dump(2) + "\n";

    if (!common.manifest.empty()) {
        write_file(common.manifest, text);
    } else if (!common.out.empty()) {
        write_file(common.out + ".manifest.json", text);
    } else {
        std::cerr << text;
    }
}

std::string to_text(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum phase representation metrics and phase-function fitting"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::tool_version));

    // pdf
    CommonOptions pdf_common;
    pdf_common.format = "csv";
    int samples = 1024;
    Command pdf(app, "pdf", "Sample the phase PDF on [-pi, pi)");
    pdf.add_common(pdf_common);
    pdf.track(pdf.app()->add_option("--samples", samples, "Grid points (>= 2)")
                  ->check(CLI::Range(2, 1 << 24)),
              samples);

    // metrics
    CommonOptions metrics_common;
    metrics_common.format = "json";
    Command metrics(app, "metrics", "HWHM, bin-variance, visibility, P(drop): numerical and closed form");
    metrics.add_common(metrics_common);

    // estimate
    CommonOptions est_common;
    est_common.format = "json";
    EstimationOptions est_options;
    double est_phi = 0.1;
    double est_sigma2 = 0.0;
    bool est_clamp = false;
    std::string ambiguity_out;
    int ambiguity_samples = 1024;
    Command estimate(app, "estimate", "Simulate, perturb, and fit one measurement");
    estimate.add_common(est_common);
    estimate.add_estimation(est_options);
    estimate.track(estimate.app()->add_option("--phi", est_phi, "True phase"), est_phi);
    estimate.track(estimate.app()->add_option("--sigma2", est_sigma2, "AWGN power")
                       ->check(CLI::NonNegativeNumber),
                   est_sigma2);
    estimate.track(estimate.app()->add_flag("--clamp", est_clamp, "Clip noisy probabilities to [0,1]"),
                   est_clamp);
    estimate.app()->add_option("--ambiguity-out", ambiguity_out,
                               "Also write the objective over [0, 2 pi) as CSV x,objective");
    estimate.track(estimate.app()->add_option("--ambiguity-samples", ambiguity_samples,
                                              "Points in the ambiguity scan")
                       ->check(CLI::PositiveNumber),
                   ambiguity_samples);

    // noise-sweep
    CommonOptions sweep_common;
    sweep_common.format = "csv";
    EstimationOptions sweep_est;
    sweep_est.coarse_grid = 257;
    sweep_est.refine_tol = 1e-12;
    std::vector<double> sigma2_list{1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
    int trials_mean = 40000;
    int trials_abs = 2000;
    bool trials_reduced = false;
    double sweep_phi = NoiseConfig{}.phi_true;
    int repeats = 1;
    bool sweep_clamp = false;
    Command noise_sweep(app, "noise-sweep", "Mean and mean-absolute PFFA error versus AWGN power");
    noise_sweep.add_common(sweep_common);
    noise_sweep.add_estimation(sweep_est);
    noise_sweep.track(noise_sweep.app()->add_option("--sigma2", sigma2_list, "Noise powers")
                          ->delimiter(','),
                      sigma2_list);
    noise_sweep.track(noise_sweep.app()->add_option("--trials-mean", trials_mean,
                                                    "Trials for the signed mean error")
                          ->check(CLI::PositiveNumber),
                      trials_mean);
    noise_sweep.track(noise_sweep.app()->add_option("--trials-abs", trials_abs,
                                                    "Trials for the mean absolute error")
                          ->check(CLI::PositiveNumber),
                      trials_abs);
    noise_sweep.track(noise_sweep.app()->add_flag("--trials-reduced", trials_reduced,
                                                  "Use 4000 signed-error trials"),
                      trials_reduced);
    noise_sweep.track(noise_sweep.app()->add_option("--phi", sweep_phi, "True phase"), sweep_phi);
    noise_sweep.track(noise_sweep.app()->add_option("--repeats", repeats,
                                                    "Independent runs per noise power (seeds seed, seed+1, ...)")
                          ->check(CLI::PositiveNumber),
                      repeats);
    noise_sweep.track(noise_sweep.app()->add_flag("--clamp", sweep_clamp,
                                                  "Clip noisy probabilities to [0,1]"),
                      sweep_clamp);

    // validate
    CommonOptions validate_common;
    validate_common.format = "csv";
    bool validate_json = false;
    double tolerance_scale = 1.0;
    Command validate(app, "validate", "Run the invariant suite; exit 0 iff every check passes");
    validate.add_common(validate_common, false);
    validate.track(validate.app()->add_flag("--json", validate_json, "Machine-readable report"),
                   validate_json);
    validate.track(validate.app()
                       ->add_option("--tolerance-scale", tolerance_scale,
                                    "Multiply every tolerance (testing hook)")
                       ->group(""),
                   tolerance_scale);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (pdf.app()->parsed()) {
            pdf.apply_config(pdf_common.config);
            const PhaseDistribution dist(build_state(checked_spec(pdf_common)));
            std::string data;
            if (pdf_common.format == "json") {
                json rows = json::array();
                for (int k = 0; k < samples; ++k) {
                    const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / samples;
                    rows.push_back({{"phi", phi}, {"pdf", dist(phi)}});
                }
                data = to_text(rows);
            } else {
                data = io::pdf_csv(dist, samples);
            }
            emit(pdf, pdf_common, data);
            return exit_ok;
        }

        if (metrics.app()->parsed()) {
            metrics.apply_config(metrics_common.config);
            const MetricReport report = compute_metrics(checked_spec(metrics_common));
            std::string data;
            if (metrics_common.format == "csv") {
                const json doc = report;
                data = "metric,numerical,closed_form,agree\n";
                for (const char* key : {"hwhm", "bin_variance", "visibility", "p_drop"}) {
                    if (!doc.contains(key)) continue;
                    const json& t = doc.at(key);
                    auto cell = [](const json& v) {
                        if (v.is_number()) return io::format_double(v.get<double>());
                        if (v.is_null()) return std::string();
                        return v.get<std::string>();
                    };
                    data += std::string(key) + ',' + cell(t.at("numerical")) + ',' +
                            cell(t.at("closed_form")) + ',' +
                            (t.contains("agree") ? (t.at("agree").get<bool>() ? "true" : "false")
                                                 : "") +
                            '\n';
                }
            } else {
                data = to_text(report);
            }
            emit(metrics, metrics_common, data);
            return exit_ok;
        }

        if (estimate.app()->parsed()) {
            estimate.apply_config(est_common.config);
            const StateSpec spec = checked_spec(est_common);
            const EstimationConfig config = estimation_from(est_options);
            if (est_phi < config.lo || est_phi > config.hi) {
                throw UsageError("--phi must lie inside the estimation domain");
            }
            if (!(est_sigma2 >= 0.0)) throw UsageError("--sigma2 must be >= 0");
            const PhaseEstimator estimator(spec);
            NoiseStream stream(est_common.seed, NoiseExperiment::Single, 0);
            const auto measured =
                perturb(estimator.templates(est_phi), est_sigma2, stream, est_clamp);
            const EstimationResult result = estimator.estimate(measured, config);
            std::string data;
            if (est_common.format == "csv") {
                data = "estimate,residual,evaluations\n" + io::format_double(result.estimate) +
                       ',' + io::format_double(result.residual) + ',' +
                       std::to_string(result.evaluations) + '\n';
            } else {
                data = to_text(result);
            }
            if (!ambiguity_out.empty()) {
                write_file(ambiguity_out,
                           io::objective_csv(estimator.ambiguity_scan(measured, ambiguity_samples)));
            }
            emit(estimate, est_common, data);
            return exit_ok;
        }

        if (noise_sweep.app()->parsed()) {
            noise_sweep.apply_config(sweep_common.config);
            const StateSpec spec = checked_spec(sweep_common);
            const EstimationConfig config = estimation_from(sweep_est);
            if (sigma2_list.empty()) throw UsageError("--sigma2 needs at least one value");
            NoiseConfig base;
            base.trials_mean = trials_reduced ? 4000 : trials_mean;
            base.trials_abs = trials_abs;
            base.phi_true = sweep_phi;
            base.clamp = sweep_clamp;
            base.threads = sweep_common.threads;
            std::vector<SweepRow> rows;
            for (int r = 0; r < repeats; ++r) {
                base.seed = sweep_common.seed + static_cast<std::uint64_t>(r);
                try {
                    base.validate();
                } catch (const InvalidSpecError& e) {
                    throw UsageError(e.what());
                }
                const auto part = sweep(spec, sigma2_list, base, config);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            if (repeats > 1) {
                // Group by noise power, repeats in seed order.
                std::stable_sort(rows.begin(), rows.end(), [&](const SweepRow& a, const SweepRow& b) {
                    auto pos = [&](double s) {
                        return std::find(sigma2_list.begin(), sigma2_list.end(), s) -
                               sigma2_list.begin();
                    };
                    return pos(a.sigma2) < pos(b.sigma2);
                });
            }
            const std::string data = sweep_common.format == "json" ? to_text(json(rows))
                                                                   : io::sweep_csv(rows);
            emit(noise_sweep, sweep_common, data);
            return exit_ok;
        }

        if (validate.app()->parsed()) {
            validate.apply_config(validate_common.config);
            const auto checks = run_validation(tolerance_scale);
            const bool as_json = validate_json || validate_common.format == "json";
            std::string data;
            if (as_json) {
                json doc = json::array();
                for (const auto& c : checks) {
                    doc.push_back({{"check", c.name},
                                   {"observed", c.observed},
                                   {"tolerance", c.tolerance},
                                   {"passed", c.passed}});
                }
                data = to_text(doc);
            } else {
                std::ostringstream table;
                for (const auto& c : checks) {
                    table << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  observed "
                          << io::format_double(c.observed) << "  tolerance "
                          << io::format_double(c.tolerance) << '\n';
                }
                data = table.str();
            }
            emit(validate, validate_common, data);
            for (const auto& c : checks) {
                if (!c.passed) {
                    std::cerr << "validation failed: " << c.name << '\n';
                    return exit_failure;
                }
            }
            return exit_ok;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}
