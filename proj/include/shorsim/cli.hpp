#pragma once

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shorsim/pipeline.hpp"
#include "shorsim/report_json.hpp"

namespace shorsim::cli {

inline std::uint32_t max_qubits_from_env() {
    const char* value = std::getenv("SHORSIM_MAX_QUBITS");
    if (!value) return kDefaultMaxQubits;
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(value, &end, 10);
    if (end == value || *end != '\0' || parsed < 2 || parsed > 40) {
        throw std::invalid_argument("SHORSIM_MAX_QUBITS must be an integer in [2, 40]");
    }
    return static_cast<std::uint32_t>(parsed);
}

namespace detail {

inline void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline void print_report(std::ostream& out, const ShorReport& report) {
    out << "n = " << report.n;
    if (report.x) out << ", x = " << *report.x;
    out << ", method = " << report.method;
    if (report.method == "quantum") out << ", s = " << report.s << ", q = " << report.q;
    out << "\n";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        const SampleRecord& rec = report.samples[i];
        out << "  sample " << (i + 1) << ": c = " << rec.c;
        if (rec.has_candidate) out << ", candidate " << rec.d << "/" << rec.r;
        out << " [" << rec.status << "]\n";
    }
    if (report.verified_r) {
        out << "verified order r = " << *report.verified_r << " (via " << report.verified_via
            << ")\n";
    }
    if (report.factors) {
        out << "factors: " << report.factors->first << " x " << report.factors->second << "\n";
    }
    out << "outcome: " << to_string(report.outcome) << "\n";
}

inline int cmd_factor(const ShorConfig& config, bool json, std::ostream& out) {
    Rng rng(config.seed);
    const ShorReport report = run_shor(config, rng);
    if (json) {
        print_json(out, to_json(report));
    } else {
        print_report(out, report);
    }
    return report.outcome == RunOutcome::Success ? 0 : 2;
}

inline int cmd_order(const ShorConfig& config, bool json, std::ostream& out) {
    const std::uint64_t x = *config.x;
    if (std::gcd(x, config.n) != 1) {
        throw std::domain_error("order: gcd(x, n) != 1, order undefined");
    }
    const std::uint32_t s = config.s_override ? *config.s_override : choose_q(config.n).s;
    Rng rng(config.seed);
    auto found = shorsim::detail::order_find_impl(config.n, x, s, config.max_samples, rng,
                                                  config.fast, config.max_qubits);
    ShorReport report;
    report.n = config.n;
    report.x = x;
    report.s = s;
    report.q = std::uint64_t{1} << s;
    report.method = "quantum";
    report.samples = std::move(found.samples);
    report.stats = found.stats;
    report.verified_r = found.r;
    report.verified_via = found.via;
    report.outcome = found.r ? RunOutcome::Success : RunOutcome::Exhausted;
    if (json) {
        print_json(out, to_json(report));
    } else {
        print_report(out, report);
    }
    return found.r ? 0 : 2;
}

inline int cmd_spectrum(std::uint64_t n, std::uint64_t x, std::optional<std::uint32_t> s_opt,
                        bool simulated, bool json, std::uint32_t max_qubits, std::ostream& out) {
    const std::uint32_t s = s_opt ? *s_opt : choose_q(n).s;
    const std::uint64_t q = std::uint64_t{1} << s;
    OutcomeDistribution dist;
    if (simulated) {
        dist = simulated_distribution(n, x, s, bit_length(n), max_qubits);
    } else {
        dist = analytic_distribution(n, x, q);
    }
    if (json) {
        print_json(out, marginal_to_json(dist));
        return 0;
    }
    out << "n = " << n << ", x = " << x << ", q = " << q << ", r = " << dist.r << " ("
        << (simulated ? "simulated" : "analytic") << ")\n";
    double shown = 0.0;
    for (std::uint64_t c = 0; c < q; ++c) {
        const std::uint64_t res = (dist.r * c) % q;
        if (2 * std::min(res, q - res) > dist.r) continue;  // print the peaks only
        out << "  c = " << std::setw(6) << c << "  P = " << dist.marginal[c] << "\n";
        shown += dist.marginal[c];
    }
    out << "peak mass: " << shown << " of 1\n";
    return 0;
}

inline int cmd_audit_demos(bool json, std::ostream& out) {
    const auto rows = demo_audit(builtin_demo_cases());
    if (json) {
        print_json(out, to_json(rows));
        return 0;
    }
    for (const DemoAuditRow& row : rows) {
        out << row.label << " [" << row.citation << "]: n = " << row.n << ", s1 = " << row.s1
            << ", s2 = " << row.s2 << ", q_ok = " << (row.q_ok ? "true" : "false")
            << ", width_ok = " << (row.width_ok ? "true" : "false")
            << ", required_s1 = " << row.required_s1 << ", verdict = " << row.verdict << "\n";
    }
    return 0;
}

inline int cmd_claim_audit(std::uint64_t n, std::uint64_t x, std::uint32_t s, bool json,
                           std::uint32_t max_qubits, std::ostream& out) {
    const RegisterLayout layout(s, bit_length(n), max_qubits);
    const AuditReport report = claim_audit(layout, x, n);
    if (json) {
        print_json(out, to_json(report));
        return 0;
    }
    out << "stages t = " << report.t << ", claimed invocations = " << report.claimed_invocations
        << ", max amplitude deviation = " << report.max_amplitude_deviation
        << ", equal = " << (report.equal ? "true" : "false") << "\n";
    return 0;
}

inline int cmd_sweep(std::uint64_t n, std::uint64_t x, std::uint32_t s_min, std::uint32_t s_max,
                     std::uint32_t trials, std::uint64_t seed, std::uint32_t max_samples,
                     bool full_sim, bool json, std::uint32_t max_qubits, std::ostream& out) {
    if (s_min < 1 || s_max < s_min) {
        throw std::invalid_argument("sweep: need 1 <= s-min <= s-max");
    }
    std::vector<std::uint32_t> s_values;
    for (std::uint32_t s = s_min; s <= s_max; ++s) s_values.push_back(s);
    const auto table = success_sweep(n, x, s_values, trials, seed, max_samples, !full_sim,
                                     max_qubits);
    if (json) {
        print_json(out, to_json(table));
        return 0;
    }
    for (const SweepRow& row : table) {
        out << "s = " << std::setw(2) << row.s << "  q = " << std::setw(8) << row.q
            << "  successes = " << row.successes << "/" << row.trials << "  rate = " << row.rate
            << "\n";
    }
    return 0;
}

}  // namespace detail

/// Parses and runs one invocation. Everything the command prints goes to
/// `out`; diagnostics go to `err`. Returns the process exit code: 0 on
/// success, 2 for clean runs that found no factors/order, 1 for usage or
/// domain errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-register state-vector simulator for order finding and factoring"};
    app.require_subcommand(1);

    std::uint64_t n = 0, x = 0, seed = 0;
    std::uint32_t s = 0, s_min = 0, s_max = 0, trials = 0, max_samples = 16;
    bool json = false, fast = false, simulated = false, analytic = false, full_sim = false;

    int exit_code = 0;

    auto* factor = app.add_subcommand("factor", "Run the end-to-end factoring pipeline");
    factor->add_option("--n", n, "odd composite to factor")->required();
    auto* factor_x = factor->add_option("--x", x, "base (random when omitted)");
    auto* factor_s = factor->add_option("--s", s, "register-1 width override");
    factor->add_option("--seed", seed, "RNG seed")->required();
    factor->add_option("--max-samples", max_samples, "sample budget per run");
    factor->add_flag("--fast", fast, "sample from the closed-form distribution");
    factor->add_flag("--json", json, "machine-readable output");
    factor->callback([&] {
        ShorConfig config;
        config.n = n;
        if (factor_x->count()) config.x = x;
        if (factor_s->count()) config.s_override = s;
        config.seed = seed;
        config.max_samples = max_samples;
        config.fast = fast;
        config.max_qubits = max_qubits_from_env();
        exit_code = detail::cmd_factor(config, json, out);
    });

    auto* order = app.add_subcommand("order", "Find the order of x modulo n");
    order->add_option("--n", n, "modulus")->required();
    order->add_option("--x", x, "base")->required();
    auto* order_s = order->add_option("--s", s, "register-1 width override");
    order->add_option("--seed", seed, "RNG seed")->required();
    order->add_option("--max-samples", max_samples, "sample budget");
    order->add_flag("--fast", fast, "sample from the closed-form distribution");
    order->add_flag("--json", json, "machine-readable output");
    order->callback([&] {
        ShorConfig config;
        config.n = n;
        config.x = x;
        if (order_s->count()) config.s_override = s;
        config.seed = seed;
        config.max_samples = max_samples;
        config.fast = fast;
        config.max_qubits = max_qubits_from_env();
        exit_code = detail::cmd_order(config, json, out);
    });

    auto* spectrum = app.add_subcommand("spectrum", "Register-1 measurement distribution");
    spectrum->add_option("--n", n, "modulus")->required();
    spectrum->add_option("--x", x, "base")->required();
    auto* spectrum_s = spectrum->add_option("--s", s, "register-1 width (default: chosen from n)");
    auto* flag_analytic = spectrum->add_flag("--analytic", analytic, "closed-form evaluation (default)");
    auto* flag_simulated = spectrum->add_flag("--simulated", simulated, "full state-vector pipeline");
    flag_analytic->excludes(flag_simulated);
    spectrum->add_flag("--json", json, "emit the marginal as a JSON array");
    spectrum->callback([&] {
        exit_code = detail::cmd_spectrum(
            n, x, spectrum_s->count() ? std::optional<std::uint32_t>(s) : std::nullopt, simulated,
            json, max_qubits_from_env(), out);
    });

    auto* audit = app.add_subcommand("audit-demos", "Exact checks of published demonstrations");
    audit->add_flag("--json", json, "machine-readable output");
    audit->callback([&] { exit_code = detail::cmd_audit_demos(json, out); });

    auto* claim = app.add_subcommand("claim-audit",
                                     "Staged circuit vs enumeration oracle, with counts");
    claim->add_option("--n", n, "modulus")->required();
    claim->add_option("--x", x, "base")->required();
    claim->add_option("--s", s, "register-1 width")->required();
    claim->add_flag("--json", json, "machine-readable output");
    claim->callback(
        [&] { exit_code = detail::cmd_claim_audit(n, x, s, json, max_qubits_from_env(), out); });

    auto* sweep = app.add_subcommand("sweep", "Order-recovery success rate vs register-1 width");
    sweep->add_option("--n", n, "modulus")->required();
    sweep->add_option("--x", x, "base")->required();
    sweep->add_option("--s-min", s_min, "smallest register-1 width")->required();
    sweep->add_option("--s-max", s_max, "largest register-1 width")->required();
    sweep->add_option("--trials", trials, "trials per width")->required();
    sweep->add_option("--seed", seed, "RNG seed")->required();
    sweep->add_option("--max-samples", max_samples, "sample budget per trial");
    sweep->add_flag("--full-sim", full_sim, "simulate instead of closed-form sampling");
    sweep->add_flag("--json", json, "machine-readable output");
    sweep->callback([&] {
        exit_code = detail::cmd_sweep(n, x, s_min, s_max, trials, seed, max_samples, full_sim,
                                      json, max_qubits_from_env(), out);
    });

    std::vector<const char*> argv;
    argv.push_back("shorsim");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace shorsim::cli
