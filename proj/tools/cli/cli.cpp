#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "kmbqkd/errors.hpp"
#include "kmbqkd/rates_kmb09.hpp"
#include "kmbqkd/rates_variant.hpp"
#include "kmbqkd/sweep_analysis.hpp"

namespace kmbqkd::cli {
namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void line(std::ostream& out, std::string_view key, std::string_view value) {
    fmt::print(out, "{:<24}{}\n", key, value);
}

std::string format_degrees(double degrees) { return fmt::format("{:.9g}", degrees); }

ProtocolSpec make_spec(const RunConfig& c) {
    if (!c.theta1) throw UsageError("--theta1 is required");
    if (c.protocol == "kmb09") return ProtocolSpec::kmb09(deg_to_rad(*c.theta1));
    if (!c.theta2 || !c.phi2) throw UsageError("--protocol variant requires --theta2 and --phi2");
    return ProtocolSpec::variant(deg_to_rad(*c.theta1), deg_to_rad(*c.theta2), deg_to_rad(*c.phi2));
}

void print_spec(std::ostream& out, const RunConfig& c) {
    line(out, "protocol", c.protocol);
    line(out, "theta1_deg", format_degrees(*c.theta1));
    if (c.protocol == "variant") {
        line(out, "theta2_deg", format_degrees(*c.theta2));
        line(out, "phi2_deg", format_degrees(*c.phi2));
    }
}

// -- analytic ---------------------------------------------------------------

int cmd_analytic(const RunConfig& c, std::ostream& out) {
    const ProtocolSpec spec = make_spec(c);
    if (c.phi3 && !c.theta3) throw UsageError("--phi3 requires --theta3");
    const bool with_evan = c.theta3.has_value();
    const double theta3 = deg_to_rad(c.theta3.value_or(0.0));
    const double phi3 = deg_to_rad(c.phi3.value_or(0.0));

    // Evaluate everything before printing so an undefined rate leaves no partial report.
    std::optional<double> iter, qber, eta_evan, qb;
    double eta = 0.0;
    if (spec.kind == ProtocolKind::Kmb09) {
        eta = kmb09_eta(spec.theta1);
        if (with_evan) {
            const Kmb09Params p{spec.theta1, theta3, phi3};
            iter = kmb09_iter(p);
            qber = kmb09_qber(p);
            eta_evan = kmb09_eta_evan(p);
        }
    } else {
        eta = variant_eta(spec.theta1, spec.theta2, spec.phi2);
        if (with_evan) {
            const VariantParams p{spec.theta1, spec.theta2, spec.phi2, theta3, phi3};
            iter = variant_iter(p);
            qb = variant_qb(p);
            qber = variant_qber(p);
            eta_evan = variant_eta_evan(p);
        }
    }

    const auto opt = [](const std::optional<double>& v) { return v ? format_rate(*v) : std::string("n/a"); };
    print_spec(out, c);
    if (with_evan) {
        line(out, "theta3_deg", format_degrees(*c.theta3));
        line(out, "phi3_deg", format_degrees(c.phi3.value_or(0.0)));
    }
    line(out, "iter", opt(iter));
    line(out, "qber", opt(qber));
    line(out, "eta", format_rate(eta));
    line(out, "eta_evan", opt(eta_evan));
    if (spec.kind == ProtocolKind::Variant) line(out, "p_qb", opt(qb));
    return kOk;
}

// -- sweep ------------------------------------------------------------------

void print_fit(std::ostream& out, const SignatureFit& fit) {
    line(out, "qber_min", format_rate(fit.qber_min));
    line(out, "argmin_theta3_deg", format_degrees(rad_to_deg(fit.argmin_theta3)));
    line(out, "argmin_phi3_deg", format_degrees(rad_to_deg(fit.argmin_phi3)));
    line(out, "iter_at_min", format_rate(fit.iter_at_min));
    line(out, "eta_evan_at_min", format_rate(fit.eta_evan_at_min));
    line(out, "fit_slope", format_rate(fit.slope));
    line(out, "fit_intercept", format_rate(fit.intercept));
    line(out, "fit_r_squared", format_rate(fit.r_squared));
    line(out, "fit_residual_rms", format_rate(fit.residual_rms));
    line(out, "fit_points", std::to_string(fit.n_points));
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    if (c.grid < 2) throw UsageError("--grid must be at least 2");
    const ProtocolSpec spec = make_spec(c);
    const std::string path = c.out_path.value_or("sweep.csv");

    const auto records = sweep_eve(spec, c.grid, c.workers);
    {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
        write_sweep_csv(file, records);
        file.flush();
        if (!file) throw std::ios_base::failure("failed writing '" + path + "'");
    }

    const auto undefined = std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.qber_defined; });
    print_spec(out, c);
    line(out, "grid", std::to_string(c.grid));
    line(out, "records", std::to_string(records.size()));
    line(out, "undefined_points", std::to_string(undefined));
    line(out, "out", path);
    line(out, "eta", format_rate(spec.eta()));
    print_fit(out, fit_signature(records));
    return kOk;
}

// -- simulate ---------------------------------------------------------------

SessionStats simulate(RunConfig& c, std::ostream& out) {
    const ProtocolSpec spec = make_spec(c);
    if (!c.eve && (c.theta3 || c.phi3)) throw UsageError("--theta3/--phi3 need --eve");
    if (!c.seed) {
        std::random_device rd;
        c.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    const EveStrategy eve = c.eve ? EveStrategy::intercept_resend(deg_to_rad(c.theta3.value_or(0.0)),
                                                                  deg_to_rad(c.phi3.value_or(0.0)))
                                  : EveStrategy::none();
    SessionOptions opts;
    opts.n_photons = c.photons;
    opts.test_fraction = c.test_fraction;
    opts.seed = *c.seed;
    opts.workers = c.workers;
    opts.keep_trace = c.trace;
    const auto result = run_session(spec, eve, NoiseSpec{c.noise}, opts);

    if (c.trace) {
        const std::string path = c.out_path.value_or("trace.csv");
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
        write_trace(file, result.trace);
        file.flush();
        if (!file) throw std::ios_base::failure("failed writing '" + path + "'");
    }
    write_session_report(out, c, result.stats);
    return result.stats;
}

int cmd_simulate(RunConfig& c, std::ostream& out) {
    simulate(c, out);
    return kOk;
}

// -- signature --------------------------------------------------------------

int cmd_signature(RunConfig& c, std::ostream& out) {
    if (!c.sweep_path) throw UsageError("--sweep <file> is required");
    std::ifstream sweep_file(*c.sweep_path);
    if (!sweep_file) throw std::ios_base::failure("cannot open '" + *c.sweep_path + "'");
    const auto records = read_sweep_csv(sweep_file);
    const SignatureFit fit = fit_signature(records);

    SessionStats observed;
    if (c.report_path) {
        std::ifstream report(*c.report_path);
        if (!report) throw std::ios_base::failure("cannot open '" + *c.report_path + "'");
        observed = parse_session_report(report);
    } else {
        if (c.protocol.empty()) throw UsageError("give --report <file> or inline simulate flags");
        observed = simulate(c, out);
    }
    const double score = signature_deviation(observed, fit);

    line(out, "sweep_file", *c.sweep_path);
    line(out, "sweep_records", std::to_string(records.size()));
    line(out, "fit_slope", format_rate(fit.slope));
    line(out, "fit_intercept", format_rate(fit.intercept));
    line(out, "fit_r_squared", format_rate(fit.r_squared));
    line(out, "fit_residual_rms", format_rate(fit.residual_rms));
    line(out, "observed_iter", format_rate(observed.est_iter.value));
    line(out, "observed_qber", format_rate(observed.est_qber.value));
    line(out, "deviation_score", format_rate(score));
    line(out, "threshold", format_rate(kSignatureThreshold));
    line(out, "verdict", to_string(classify(score)));
    return kOk;
}

// -- argument parsing -------------------------------------------------------

const auto kDegrees = CLI::Validator(
    [](std::string& s) -> std::string {
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(s, &used);
            if (used != s.size()) return "not a number: " + s;
        } catch (const std::exception&) {
            return "not a number: " + s;
        }
        return (v >= 0.0 && v < 360.0) ? std::string() : "degrees must lie in [0, 360)";
    },
    "DEGREES in [0,360)");

void add_protocol_flags(CLI::App* sub, RunConfig& c, bool with_evan) {
    sub->add_option("--protocol", c.protocol, "kmb09 or variant")
        ->required()
        ->check(CLI::IsMember({"kmb09", "variant"}));
    sub->add_option("--theta1", c.theta1, "f-basis polar angle (degrees)")->check(kDegrees);
    sub->add_option("--theta2", c.theta2, "h-basis polar angle (variant, degrees)")->check(kDegrees);
    sub->add_option("--phi2", c.phi2, "h-basis azimuthal angle (variant, degrees)")->check(kDegrees);
    if (with_evan) {
        sub->add_option("--theta3", c.theta3, "eavesdropper polar angle (degrees)")->check(kDegrees);
        sub->add_option("--phi3", c.phi3, "eavesdropper azimuthal angle (degrees)")->check(kDegrees);
    }
}

void add_session_flags(CLI::App* sub, RunConfig& c) {
    sub->add_option("--photons", c.photons, "photons per session")->check(CLI::PositiveNumber);
    sub->add_flag("--eve", c.eve, "intercept-resend eavesdropper in basis (theta3, phi3)");
    sub->add_option("--noise", c.noise, "depolarizing probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--seed", c.seed, "session seed (random and echoed when omitted)");
    sub->add_option("--test-fraction", c.test_fraction, "fraction of photons revealed for testing")
        ->check(CLI::Range(0.0, 1.0) & CLI::Validator(
                                           [](std::string& s) {
                                               return std::stod(s) > 0.0 ? std::string() : "must be > 0";
                                           },
                                           "> 0"));
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

std::string format_rate(double value) { return fmt::format("{:#.9g}", value); }

void write_session_report(std::ostream& out, const RunConfig& c, const SessionStats& s) {
    print_spec(out, c);
    line(out, "eve", c.eve ? "yes" : "no");
    if (c.eve) {
        line(out, "theta3_deg", format_degrees(c.theta3.value_or(0.0)));
        line(out, "phi3_deg", format_degrees(c.phi3.value_or(0.0)));
    }
    line(out, "noise", format_rate(c.noise));
    line(out, "test_fraction", format_rate(c.test_fraction));
    line(out, "seed", std::to_string(s.seed));
    line(out, "photons_sent", std::to_string(s.photons_sent));
    line(out, "key_bits", std::to_string(s.key_bits));
    line(out, "retained_key_bits", std::to_string(s.retained_key_bits));
    line(out, "tested_bits", std::to_string(s.tested_bits));
    line(out, "wrong_test_bits", std::to_string(s.wrong_test_bits));
    line(out, "same_basis_tested", std::to_string(s.same_basis_tested));
    line(out, "index_errors_same_basis", std::to_string(s.index_errors_same_basis));
    const auto estimate = [&](std::string_view key, const RateEstimate& e) {
        line(out, key,
             e.has_data() ? fmt::format("{} +- {}", format_rate(e.value), format_rate(e.std_error))
                          : std::string("n/a (no data)"));
    };
    estimate("est_qber", s.est_qber);
    estimate("est_iter", s.est_iter);
    estimate("est_efficiency", s.est_efficiency);
}

SessionStats parse_session_report(std::istream& in) {
    std::map<std::string, std::string> fields;
    std::string text;
    while (std::getline(in, text)) {
        std::istringstream ls(text);
        std::string key, value;
        if (!(ls >> key)) continue;
        std::getline(ls >> std::ws, value);
        fields[key] = value;
    }
    const auto count = [&](const std::string& key) -> std::uint64_t {
        const auto it = fields.find(key);
        if (it == fields.end()) throw ParseError("session report is missing '" + key + "'");
        try {
            std::size_t used = 0;
            const auto v = std::stoull(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument(key);
            return v;
        } catch (const std::exception&) {
            throw ParseError("session report field '" + key + "' is not a count: '" + it->second + "'");
        }
    };
    return SessionStats::from_counts(count("photons_sent"), count("key_bits"), count("tested_bits"),
                                     count("wrong_test_bits"), count("same_basis_tested"),
                                     count("index_errors_same_basis"), count("seed"));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"KMB09 and three-basis variant QKD: analytic rates, sweeps, Monte Carlo sessions"};
    app.name("kmbqkd");
    app.require_subcommand(1);

    RunConfig config;
    config.workers = std::max(1u, std::thread::hardware_concurrency());

    auto* analytic = app.add_subcommand("analytic", "closed-form ITER, QBER and efficiencies");
    add_protocol_flags(analytic, config, true);

    auto* sweep = app.add_subcommand("sweep", "rates over every eavesdropper basis + signature fit");
    add_protocol_flags(sweep, config, false);
    sweep->add_option("--grid", config.grid, "grid points per angle");
    sweep->add_option("--out", config.out_path, "sweep CSV path (default sweep.csv)");
    sweep->add_option("--workers", config.workers, "worker threads")->check(CLI::PositiveNumber);

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo protocol session");
    add_protocol_flags(simulate_cmd, config, true);
    add_session_flags(simulate_cmd, config);
    simulate_cmd->add_flag("--trace", config.trace, "write the per-photon trace");
    simulate_cmd->add_option("--out", config.out_path, "trace path (default trace.csv)");

    auto* signature = app.add_subcommand("signature", "compare a session with the eavesdropping line");
    signature->add_option("--sweep", config.sweep_path, "sweep CSV from the sweep command")->required();
    signature->add_option("--report", config.report_path, "saved simulate report");
    signature->add_option("--protocol", config.protocol, "kmb09 or variant")
        ->check(CLI::IsMember({"kmb09", "variant"}));
    signature->add_option("--theta1", config.theta1)->check(kDegrees);
    signature->add_option("--theta2", config.theta2)->check(kDegrees);
    signature->add_option("--phi2", config.phi2)->check(kDegrees);
    signature->add_option("--theta3", config.theta3)->check(kDegrees);
    signature->add_option("--phi3", config.phi3)->check(kDegrees);
    add_session_flags(signature, config);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (analytic->parsed()) return cmd_analytic(config, out);
        if (sweep->parsed()) return cmd_sweep(config, out);
        if (simulate_cmd->parsed()) return cmd_simulate(config, out);
        return cmd_signature(config, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const UndefinedRateError& e) {
        err << "undefined rate: " << e.what() << '\n';
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const NoDataError& e) {
        err << "no data: " << e.what() << '\n';
    } catch (const DegenerateFitError& e) {
        err << "degenerate fit: " << e.what() << '\n';
    } catch (const std::ios_base::failure& e) {
        err << "I/O error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kFailure;
}

}  // namespace kmbqkd::cli
