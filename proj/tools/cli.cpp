#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <ppmwt/bounds.hpp>
#include <ppmwt/errors.hpp>
#include <ppmwt/pipeline.hpp>

namespace ppmwt::cli {
namespace {

/// Missing or mutually inconsistent options discovered after CLI11 parsing.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int log_level() {
    const char* raw = std::getenv("PPMWT_LOG");
    if (raw == nullptr) return 0;
    const std::string value(raw);
    if (value == "debug") return 2;
    if (value == "info") return 1;
    return 0;
}

// ---- CSV helpers -----------------------------------------------------------
// Locale-independent, shortest round-trip formatting via to_chars.

std::string fmt(double v) {
    char buffer[40];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, end);
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

std::string fmt(bool v) { return v ? "true" : "false"; }

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) os << ',';
        os << cells[i];
    }
    os << '\n';
}

/// Runs `body` against --out PATH when given, the default stream otherwise.
template <typename Body>
int with_output(const std::string& path, std::ostream& fallback, Body&& body) {
    if (path.empty()) return body(fallback);
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return body(file);
}

// ---- config files ----------------------------------------------------------

/// Flat key=value lines, '#' comments, blank lines ignored.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw usage_error("cannot read config file: " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    auto trim = [](std::string text) {
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos) return std::string();
        const auto last = text.find_last_not_of(" \t\r");
        return text.substr(first, last - first + 1);
    };
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw usage_error("config line " + std::to_string(line_no) +
                              " is not key=value: " + stripped);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw usage_error("config line " + std::to_string(line_no) +
                              " is not key=value: " + stripped);
        entries.emplace_back(key, value);
    }
    return entries;
}

/// Splices config-file entries (as --key value pairs) right after the
/// subcommand token. Options are parsed take-last, so explicit command-line
/// flags, which come later, override the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::size_t sub_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty() && args[i][0] != '-') {
            sub_pos = i;
            break;
        }
    }
    if (sub_pos == args.size()) return args;

    std::vector<std::string> expanded(args.begin(), args.begin() + sub_pos + 1);
    for (const auto& [key, value] : read_config(path)) {
        expanded.push_back("--" + key);
        expanded.push_back(value);
    }
    expanded.insert(expanded.end(), args.begin() + sub_pos + 1, args.end());
    return expanded;
}

// ---- sweep parsing ---------------------------------------------------------

/// "lo:hi:count" -> count log-spaced values from lo to hi inclusive.
std::vector<double> parse_sweep(const std::string& text) {
    std::istringstream in(text);
    std::string lo_s, hi_s, count_s;
    if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
        !std::getline(in, count_s))
        throw CLI::ValidationError("--E-sweep", "expected lo:hi:count");
    double lo = 0, hi = 0;
    long count = 0;
    try {
        lo = std::stod(lo_s);
        hi = std::stod(hi_s);
        count = std::stol(count_s);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--E-sweep", "expected numeric lo:hi:count");
    }
    if (!(lo > 0.0) || !(hi > 0.0) || count < 1)
        throw CLI::ValidationError("--E-sweep", "bounds must be positive, count >= 1");
    std::vector<double> values;
    if (count == 1) {
        values.push_back(lo);
        return values;
    }
    for (long i = 0; i < count; ++i)
        values.push_back(lo * std::pow(hi / lo, double(i) / double(count - 1)));
    return values;
}

// ---- option bags -----------------------------------------------------------

struct EnergyOpts {
    double energy = -1.0;
    std::string sweep;

    std::vector<double> values() const {
        if (!sweep.empty()) return parse_sweep(sweep);
        if (energy >= 0.0) return {energy};
        throw usage_error("one of --E / --E-sweep is required");
    }
};

struct CapacityOpts {
    double eta = 0.0;
    EnergyOpts energy;
    std::string out_path;
    std::string config_path;
};

struct ParamsOpts {
    double eta = 0.0;
    EnergyOpts energy;
    double theta = 0.1;
    std::string out_path;
    std::string config_path;
};

struct BoundsOpts {
    double eta = 0.0;
    EnergyOpts energy;
    double theta = 0.1;
    double delta = 0.5;
    double eps = 0.01;
    std::uint64_t lambda = 0;
    std::string out_path;
    std::string config_path;
};

struct OptimizeOpts {
    double eta = 0.0;
    EnergyOpts energy;
    double pr_error_target = 1e-6;
    double delta_target = 0.05;
    unsigned workers = 1;
    std::string out_path;
    std::string config_path;
};

struct SimulateOpts {
    double eta = 0.0;
    std::uint64_t b = 0;
    std::uint64_t k = 0;
    double alpha_sq = -1.0;
    double energy = -1.0;
    std::uint64_t lambda = 0;
    std::uint64_t trials = 100000;
    std::uint64_t rng_seed = 1;
    unsigned workers = 1;
    std::string out_path;
    std::string config_path;
};

struct SelftestOpts {
    bool inject_fault = false;
};

unsigned symbol_bits_for(std::uint64_t b) {
    if (b < 2 || (b & (b - 1)) != 0)
        throw infeasible_error("frame size b must be a power of two");
    unsigned w = 0;
    while ((std::uint64_t(1) << w) < b) ++w;
    return w;
}

// ---- commands --------------------------------------------------------------

int cmd_capacity(const CapacityOpts& opts, std::ostream& out) {
    const auto energies = opts.energy.values();
    return with_output(opts.out_path, out, [&](std::ostream& os) {
        write_row(os, {"E", "eta", "capacity_nats", "approx_nats"});
        for (double e : energies) {
            write_row(os, {fmt(e), fmt(opts.eta), fmt(bounds::secrecy_capacity(opts.eta, e)),
                           fmt(bounds::secrecy_capacity_approx(opts.eta, e))});
        }
        return 0;
    });
}

int cmd_params(const ParamsOpts& opts, std::ostream& out) {
    const auto energies = opts.energy.values();
    return with_output(opts.out_path, out, [&](std::ostream& os) {
        write_row(os, {"E", "eta", "theta", "b", "n", "k", "alpha_sq", "feasible"});
        for (double e : energies) {
            try {
                const auto p = bounds::choose_params(opts.eta, e, opts.theta);
                write_row(os, {fmt(e), fmt(opts.eta), fmt(opts.theta), fmt(p.b), fmt(p.n),
                               fmt(p.k), fmt(p.pulse_energy), fmt(true)});
            } catch (const infeasible_error&) {
                write_row(os, {fmt(e), fmt(opts.eta), fmt(opts.theta), "0", "0", "0", "0",
                               fmt(false)});
            }
        }
        return 0;
    });
}

int cmd_bounds(const BoundsOpts& opts, std::ostream& out) {
    const auto energies = opts.energy.values();
    return with_output(opts.out_path, out, [&](std::ostream& os) {
        write_row(os, {"E", "eta", "theta", "delta", "eps", "eps_prime", "b", "n", "k",
                       "lambda_bits", "photon_cutoff", "pr_error_bound", "delta_bound",
                       "hmin_nats", "hmax_nats", "rate_nats", "feasible"});
        for (double e : energies) {
            try {
                auto params = bounds::choose_params(opts.eta, e, opts.theta);
                params.lambda = opts.lambda;
                const auto budget =
                    bounds::derive_budget(params, opts.theta, opts.delta, opts.eps);
                const auto report = bounds::delta_bound(params, budget);
                write_row(os, {fmt(e), fmt(opts.eta), fmt(opts.theta), fmt(opts.delta),
                               fmt(opts.eps), fmt(budget.eps_prime), fmt(params.b),
                               fmt(params.n), fmt(params.k), fmt(params.lambda),
                               fmt(budget.photon_cutoff), fmt(report.pr_error),
                               fmt(report.delta_bound), fmt(report.hmin_nats),
                               fmt(report.hmax_nats), fmt(report.rate_nats_per_use),
                               fmt(report.feasible)});
            } catch (const infeasible_error&) {
                // scheme or budget cannot exist at this point of the sweep
                write_row(os, {fmt(e), fmt(opts.eta), fmt(opts.theta), fmt(opts.delta),
                               fmt(opts.eps), "0", "0", "0", "0", fmt(opts.lambda), "0",
                               "0", "0", "0", "0", "0", fmt(false)});
            }
        }
        return 0;
    });
}

int cmd_optimize(const OptimizeOpts& opts, std::ostream& out, std::ostream& err) {
    const auto energies = opts.energy.values();
    return with_output(opts.out_path, out, [&](std::ostream& os) {
        write_row(os, {"E", "b", "n", "k", "lambda_bits", "alpha_sq", "theta", "delta",
                       "eps", "rate_nats", "capacity_nats", "feasible"});
        for (double e : energies) {
            const double capacity = bounds::secrecy_capacity(opts.eta, e);
            const auto result =
                bounds::optimize(opts.eta, e, opts.pr_error_target, opts.delta_target);
            if (result.feasible) {
                const auto& p = *result.params;
                write_row(os, {fmt(e), fmt(p.b), fmt(p.n), fmt(p.k), fmt(p.lambda),
                               fmt(p.pulse_energy), fmt(result.budget.theta),
                               fmt(result.budget.delta), fmt(result.budget.eps),
                               fmt(result.report.rate_nats_per_use), fmt(capacity),
                               fmt(true)});
            } else {
                write_row(os, {fmt(e), "0", "0", "0", "0", "0", "0", "0", "0", "0",
                               fmt(capacity), fmt(false)});
            }
            if (log_level() >= 1) {
                err << "optimize E=" << fmt(e) << " grid steps: theta " << fmt(result.theta_step)
                    << ", delta " << fmt(result.delta_step) << ", eps " << fmt(result.eps_step)
                    << '\n';
            }
        }
        return 0;
    });
}

int cmd_simulate(const SimulateOpts& opts, std::ostream& out, std::ostream& err) {
    if (opts.energy < 0.0 && opts.alpha_sq < 0.0)
        throw usage_error("one of --alpha-sq / --E is required");
    const unsigned w = symbol_bits_for(opts.b);
    const pipeline::SchemeParams params =
        opts.alpha_sq >= 0.0
            ? pipeline::SchemeParams::from_pulse_energy(opts.eta, opts.alpha_sq, w, opts.k,
                                                        opts.lambda)
            : pipeline::SchemeParams::make(opts.eta, opts.energy, w, opts.k, opts.lambda);

    const pipeline::Scheme scheme(params);
    if (log_level() >= 2)
        err << "simulate: " << opts.trials << " trials over " << opts.workers
            << " workers\n";
    const auto stats = scheme.run_trials(opts.trials, opts.rng_seed, opts.workers);

    const double q = channel::erasure_probability(scheme.channel_params());
    const double bound = bounds::pr_error_bound(params.n, params.k, q);
    const double sigma = std::sqrt(bound * (1.0 - bound) / double(opts.trials));
    const bool dominance_ok = stats.error_rate <= bound + 3.0 * sigma;

    return with_output(opts.out_path, out, [&](std::ostream& os) {
        write_row(os, {"eta", "alpha_sq", "b", "n", "k", "lambda_bits", "trials",
                       "rng_seed", "empirical_error", "radius_3sigma", "pr_error_bound",
                       "dominance_ok"});
        write_row(os, {fmt(params.eta), fmt(params.pulse_energy), fmt(params.b),
                       fmt(params.n), fmt(params.k), fmt(params.lambda), fmt(opts.trials),
                       fmt(opts.rng_seed), fmt(stats.error_rate), fmt(stats.radius_3sigma),
                       fmt(bound), fmt(dominance_ok)});
        return 0;
    });
}

// ---- selftest ---------------------------------------------------------------

struct CheckList {
    std::ostream& out;
    int failures = 0;

    void record(const std::string& name, bool pass, const std::string& detail = "") {
        out << (pass ? "[pass] " : "[FAIL] ") << name;
        if (!pass && !detail.empty()) out << " (" << detail << ")";
        out << '\n';
        failures += pass ? 0 : 1;
    }
};

int cmd_selftest(const SelftestOpts& opts, std::ostream& out) {
    CheckList checks{out};

    {  // field axioms on GF(2^4): exhaustive inverse round trip
        const gf::FieldSpec f = gf::FieldSpec::standard(4);
        bool ok = true;
        for (gf::Word a = 1; a <= f.order_mask(); ++a)
            ok = ok && f.mul(a, f.inv(a)) == 1 && f.inv(f.inv(a)) == a;
        RandomStream rng(1);
        for (int t = 0; t < 5000 && ok; ++t) {
            const gf::Word a = rng.bits(4), b = rng.bits(4), c = rng.bits(4);
            ok = f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)) &&
                 f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c));
        }
        checks.record("field axioms GF(2^4)", ok);
    }

    {  // extractor round trip, exhaustive on GF(2^6), lambda = 2
        const extractor::ExtractorSpec spec(gf::FieldSpec::standard(6), 2);
        bool ok = true;
        for (gf::Word s = 1; s <= 63 && ok; ++s) {
            const extractor::Seed seed(gf::FieldElement(s, spec.field));
            for (gf::Word msg = 0; msg < 4 && ok; ++msg)
                for (gf::Word r = 0; r < 16 && ok; ++r) {
                    const auto l = extractor::invert(extractor::Message{msg, 2}, seed,
                                                     extractor::LocalRandomness{r, 4}, spec);
                    ok = extractor::extract(l, seed, spec).bits == msg;
                }
        }
        checks.record("extractor round trip GF(2^6)", ok);
    }

    {  // Reed-Solomon erasure exhaustion on (8,7,3), with the fault hook
        const auto spec = rs::RSCodeSpec::make(3, 3);
        bool ok = true;
        std::string detail;
        RandomStream rng(2);
        for (int t = 0; t < 200 && ok; ++t) {
            std::vector<rs::Symbol> msg{rng.bits(3), rng.bits(3), rng.bits(3)};
            rs::Codeword cw = rs_encode(msg, spec);
            if (opts.inject_fault) cw[0] ^= 1;  // testing hook: corrupt one symbol
            for (std::uint64_t pattern = 0; pattern < 128 && ok; ++pattern) {
                int weight = 0;
                rs::ErasureWord received(spec.n);
                for (unsigned i = 0; i < spec.n; ++i) {
                    if ((pattern >> i) & 1)
                        ++weight;
                    else
                        received[i] = cw[i];
                }
                const auto decoded = rs_decode_erasures(received, spec);
                if (weight <= 4) {
                    ok = decoded.ok() && *decoded.message == msg;
                    if (!ok) detail = "recoverable pattern failed";
                } else {
                    ok = !decoded.ok() &&
                         decoded.failure == rs::DecodeFailure::TooManyErasures;
                    if (!ok) detail = "overweight pattern decoded";
                }
            }
        }
        checks.record("Reed-Solomon erasure exhaustion (8,7,3)", ok, detail);
    }

    {  // PPM mapping is a bijection
        bool ok = true;
        for (rs::Symbol s = 0; s < 64 && ok; ++s)
            ok = channel::demodulate(channel::modulate(s, 64), 64) == s;
        checks.record("PPM modulation bijection b=64", ok);
    }

    {  // exhaustive classical adversary stays below the analytic bound
        const auto params = pipeline::SchemeParams::from_pulse_energy(0.8, 0.5, 3, 2, 1);
        const pipeline::Scheme scheme(params);
        const double distance = scheme.classical_secrecy_oracle();
        const auto budget = bounds::tune_budget(params);
        const auto report = bounds::delta_bound(params, budget);
        checks.record("secrecy oracle below analytic bound",
                      distance <= report.delta_bound,
                      "distance " + fmt(distance) + " vs " + fmt(report.delta_bound));
    }

    {  // optimizer determinism and capacity approximation sanity
        const auto a = bounds::optimize(0.8, 1e-5, 1e-6, 0.05);
        const auto b = bounds::optimize(0.8, 1e-5, 1e-6, 0.05);
        const bool ok = a.feasible && b.feasible && a.params == b.params &&
                        a.report.delta_bound == b.report.delta_bound;
        checks.record("optimizer determinism at E=1e-5", ok);

        const double ratio = bounds::secrecy_capacity_approx(0.8, 1e-8) /
                             bounds::secrecy_capacity(0.8, 1e-8);
        checks.record("capacity approximation within 20% at E=1e-8",
                      std::abs(ratio - 1.0) < 0.2);
    }

    out << (checks.failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return checks.failures == 0 ? 0 : 3;
}

}  // namespace

namespace {

int run_parsed(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"secret communication over a lossy optical channel: "
                 "bound calculator and Monte-Carlo simulator"};
    app.require_subcommand(1);

    CapacityOpts capacity;
    auto* cap = app.add_subcommand("capacity", "secrecy capacity and its low-energy approximation");
    cap->add_option("--eta", capacity.eta, "transmissivity in (0, 1)")->required();
    cap->add_option("--E", capacity.energy.energy, "mean photon number per channel use");
    cap->add_option("--E-sweep", capacity.energy.sweep, "log-spaced sweep lo:hi:count");
    cap->add_option("--out", capacity.out_path, "write CSV here instead of stdout");
    cap->add_option("--config", capacity.config_path, "flat key=value config file; flags override");

    ParamsOpts params_opts;
    auto* par = app.add_subcommand("params", "frame, code and pulse parameters for an energy budget");
    par->add_option("--eta", params_opts.eta, "transmissivity in (0.5, 1)")->required();
    par->add_option("--E", params_opts.energy.energy, "mean photon number per channel use");
    par->add_option("--E-sweep", params_opts.energy.sweep, "log-spaced sweep lo:hi:count");
    par->add_option("--theta", params_opts.theta, "code-dimension back-off in (0, 1]");
    par->add_option("--out", params_opts.out_path, "write CSV here instead of stdout");
    par->add_option("--config", params_opts.config_path, "flat key=value config file; flags override");

    BoundsOpts bounds_opts;
    auto* bnd = app.add_subcommand("bounds", "error and secrecy bounds for an explicit budget");
    bnd->add_option("--eta", bounds_opts.eta, "transmissivity in (0.5, 1)")->required();
    bnd->add_option("--E", bounds_opts.energy.energy, "mean photon number per channel use");
    bnd->add_option("--E-sweep", bounds_opts.energy.sweep, "log-spaced sweep lo:hi:count");
    bnd->add_option("--theta", bounds_opts.theta, "code-dimension back-off");
    bnd->add_option("--delta", bounds_opts.delta, "photon-cutoff slack");
    bnd->add_option("--eps", bounds_opts.eps, "min-entropy smoothing");
    bnd->add_option("--lambda", bounds_opts.lambda, "message length in bits");
    bnd->add_option("--out", bounds_opts.out_path, "write CSV here instead of stdout");
    bnd->add_option("--config", bounds_opts.config_path, "flat key=value config file; flags override");

    OptimizeOpts optimize_opts;
    auto* opt = app.add_subcommand("optimize", "maximize the message rate under error and secrecy targets");
    opt->add_option("--eta", optimize_opts.eta, "transmissivity in (0.5, 1)")->required();
    opt->add_option("--E", optimize_opts.energy.energy, "mean photon number per channel use");
    opt->add_option("--E-sweep", optimize_opts.energy.sweep, "log-spaced sweep lo:hi:count");
    opt->add_option("--pr-error-target", optimize_opts.pr_error_target,
                    "decoding error target (default 1e-6)");
    opt->add_option("--delta-target", optimize_opts.delta_target,
                    "secrecy distance target (default 0.05)");
    opt->add_option("--workers", optimize_opts.workers,
                    "accepted for interface symmetry; the search is single-threaded "
                    "and results never depend on it");
    opt->add_option("--out", optimize_opts.out_path, "write CSV here instead of stdout");
    opt->add_option("--config", optimize_opts.config_path, "flat key=value config file; flags override");

    SimulateOpts simulate_opts;
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo transmissions against the analytic error bound");
    sim->add_option("--eta", simulate_opts.eta, "transmissivity in (0.5, 1)")->required();
    sim->add_option("--b", simulate_opts.b, "frame size (power of two)")->required();
    sim->add_option("--k", simulate_opts.k, "code dimension")->required();
    sim->add_option("--alpha-sq", simulate_opts.alpha_sq, "pulse energy alpha^2");
    sim->add_option("--E", simulate_opts.energy, "mean photon number per use (alternative to --alpha-sq)");
    sim->add_option("--lambda", simulate_opts.lambda, "message length in bits (0 = source-word trials)");
    sim->add_option("--trials", simulate_opts.trials, "number of transmissions");
    sim->add_option("--rng-seed", simulate_opts.rng_seed, "random seed");
    sim->add_option("--workers", simulate_opts.workers, "worker threads (does not change results)");
    sim->add_option("--out", simulate_opts.out_path, "write CSV here instead of stdout");
    sim->add_option("--config", simulate_opts.config_path, "flat key=value config file; flags override");

    SelftestOpts selftest_opts;
    auto* self = app.add_subcommand("selftest", "run the built-in exhaustive oracle suite");
    self->add_flag("--inject-fault", selftest_opts.inject_fault,
                   "testing hook: corrupt one code symbol and expect detection");

    for (auto* sub : app.get_subcommands({}))
        for (auto* option : sub->get_options())
            option->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (app.got_subcommand(cap)) return cmd_capacity(capacity, out);
        if (app.got_subcommand(par)) return cmd_params(params_opts, out);
        if (app.got_subcommand(bnd)) return cmd_bounds(bounds_opts, out);
        if (app.got_subcommand(opt)) return cmd_optimize(optimize_opts, out, err);
        if (app.got_subcommand(sim)) return cmd_simulate(simulate_opts, out, err);
        if (app.got_subcommand(self)) return cmd_selftest(selftest_opts, out);
        err << "usage error: no subcommand selected\n";
        return 1;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const infeasible_error& e) {
        err << "infeasible parameters: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "infeasible parameters: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "infeasible parameters: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> expanded;
    try {
        expanded = expand_config(args);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    }
    std::vector<const char*> argv;
    argv.push_back("ppmwt");
    for (const auto& arg : expanded) argv.push_back(arg.c_str());
    return run_parsed(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ppmwt::cli
