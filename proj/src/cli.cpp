#include "covadj/cli.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include <CLI11.hpp>

#include "covadj/output_document.hpp"
#include "covadj/power_engine.hpp"
#include "covadj/trial_simulator.hpp"

namespace covadj {

namespace {

struct PowerArgs {
    double alpha = 0.05;
    double tau = 0.0;
    double sigma = 1.0;
    double n = 0.0;
    double r = 0.0;
    bool exact = false;
};

struct SampleSizeArgs {
    double alpha = 0.05;
    double power = 0.80;
    double tau = 0.0;
    double sigma = 1.0;
    bool round_even = false;
};

struct RatioArgs {
    double alpha = 0.05;
    double power = 0.80;
    double r = 0.0;
};

struct CurveArgs {
    double alpha = 0.05;
    double power = 0.80;
    double r_max = 0.5;
    double step = 0.05;
};

struct ExpandArgs {
    double alpha = 0.05;
    double power = 0.80;
};

struct SimulateArgs {
    long long n = 0;
    double tau = 0.0;
    double sigma = 1.0;
    double rho = 0.0;
    double alpha = 0.05;
    long long reps = 10000;
    std::uint64_t seed = 1;
    std::string test = "t";
    bool adjust = true;
    unsigned threads = 0;
};

OutputDocument power_command(const PowerArgs& a) {
    TrialDesign design;
    design.alpha = Probability{a.alpha};
    design.tau = a.tau;
    design.sigma = a.sigma;
    design.n_total = a.n;
    design.r = a.r;
    design.validate();

    OutputDocument doc;
    doc.add("command", std::string("power"))
        .add("alpha", a.alpha)
        .add("tau", a.tau)
        .add("sigma", a.sigma)
        .add("n", a.n)
        .add("r", a.r)
        .add("nu", std::sqrt(asymptotic_variance(design)));
    if (a.exact) {
        doc.add("power", exact_power_two_term(design).value())
            .add("one_term_power", approx_power_one_term(design).value())
            .add("gap", power_gap_term(design));
    } else {
        doc.add("power", approx_power_one_term(design).value());
    }
    return doc;
}

OutputDocument sample_size_command(const SampleSizeArgs& a) {
    const double n = required_sample_size(Probability{a.alpha}, Probability{a.power}, a.tau, a.sigma);
    OutputDocument doc;
    doc.add("command", std::string("sample-size"))
        .add("alpha", a.alpha)
        .add("power", a.power)
        .add("tau", a.tau)
        .add("sigma", a.sigma)
        .add("n", n);
    if (a.round_even) {
        auto even = static_cast<long long>(std::ceil(n));
        if (even % 2 != 0) ++even;
        doc.add("n_even", even);
    }
    return doc;
}

OutputDocument ratio_command(const RatioArgs& a) {
    const Probability alpha{a.alpha};
    const Probability power{a.power};
    OutputDocument doc;
    doc.add("command", std::string("ratio"))
        .add("alpha", a.alpha)
        .add("power", a.power)
        .add("r", a.r)
        .add("adjusted_power", adjusted_power_at_fixed_n(alpha, power, a.r).value())
        .add("exact", power_ratio_exact(alpha, power, a.r))
        .add("series", power_ratio_series(alpha, power, a.r))
        .add("thumb", rule_of_thumb(a.r));
    return doc;
}

std::vector<double> uniform_grid(double r_max, double step) {
    if (!(std::isfinite(step) && step > 0.0)) {
        throw std::invalid_argument("--step must be > 0");
    }
    if (!(std::isfinite(r_max) && r_max >= 0.0)) {
        throw std::invalid_argument("--r-max must be >= 0");
    }
    if (r_max >= 1.0) {
        throw std::domain_error("degenerate correlation: --r-max must be < 1");
    }
    const auto count = static_cast<long long>(std::floor(r_max / step + 1e-9));
    if (count > 1000000) throw std::invalid_argument("--step too small for --r-max");
    std::vector<double> grid;
    for (long long k = 0; k <= count; ++k) {
        grid.push_back(std::min(r_max, static_cast<double>(k) * step));
    }
    return grid;
}

OutputDocument curve_command(const CurveArgs& a) {
    const PowerRatioReport report =
        ratio_report(Probability{a.alpha}, Probability{a.power}, uniform_grid(a.r_max, a.step));
    Table table;
    table.name = "rows";
    table.columns = {"r", "exact", "series", "thumb", "abs_err_series", "abs_err_thumb"};
    for (std::size_t i = 0; i < report.r_grid.size(); ++i) {
        table.rows.push_back({report.r_grid[i], report.exact_ratio[i], report.series_ratio[i],
                              report.thumb_ratio[i],
                              std::fabs(report.exact_ratio[i] - report.series_ratio[i]),
                              std::fabs(report.exact_ratio[i] - report.thumb_ratio[i])});
    }
    OutputDocument doc;
    doc.add("command", std::string("curve"))
        .add("alpha", a.alpha)
        .add("power", a.power)
        .add("r_max", a.r_max)
        .add("step", a.step)
        .add("max_abs_err_series", report.max_abs_err_series)
        .add("max_abs_err_thumb", report.max_abs_err_thumb)
        .set_table(std::move(table));
    return doc;
}

OutputDocument expand_command(const ExpandArgs& a) {
    const Probability alpha{a.alpha};
    const Probability power{a.power};
    const ExpansionParams params = expansion_params(alpha, power);
    const SeriesCoefficients coeffs = series_coefficients(alpha, power);
    const double slope = series_slope_finite_difference(alpha, power);
    OutputDocument doc;
    doc.add("command", std::string("expand"))
        .add("alpha", a.alpha)
        .add("power", a.power)
        .add("a", params.a)
        .add("b", params.b)
        .add("c0", coeffs.c0)
        .add("c2", coeffs.c2)
        .add("c2_finite_difference", slope)
        .add("c2_abs_diff", std::fabs(slope - coeffs.c2));
    return doc;
}

OutputDocument simulate_command(const SimulateArgs& a) {
    if (a.n % 2 != 0) {
        throw std::invalid_argument("--n must be even (exact 1:1 allocation); got " +
                                    std::to_string(a.n));
    }
    if (a.n < 4 || a.n > 100000000) {
        throw std::invalid_argument("--n must be an even integer >= 4");
    }
    SimConfig config;
    config.n_subjects = static_cast<int>(a.n);
    config.tau = a.tau;
    config.sigma = a.sigma;
    config.rho = a.rho;
    config.alpha = Probability{a.alpha};
    config.n_reps = a.reps;
    config.seed = a.seed;
    config.test_kind = a.test == "z" ? TestKind::wald_z : TestKind::student_t;
    config.adjust = a.adjust;
    config.threads = a.threads;

    const SimResult res = run_campaign(config);
    OutputDocument doc;
    doc.add("command", std::string("simulate"))
        .add("n", a.n)
        .add("tau", a.tau)
        .add("sigma", a.sigma)
        .add("rho", a.rho)
        .add("alpha", a.alpha)
        .add("reps", a.reps)
        .add("seed", static_cast<unsigned long long>(a.seed))
        .add("test", a.test)
        .add("adjust", a.adjust)
        .add("rejection_rate", res.rejection_rate)
        .add("mc_stderr", res.mc_stderr)
        .add("mean_tau_hat", res.mean_tau_hat)
        .add("empirical_se_tau_hat", res.empirical_se_tau_hat)
        .add("analytic_se", res.analytic_se)
        .add("analytic_power", res.analytic_power)
        .add("n_reps_completed", res.n_reps_completed)
        .add("n_reps_skipped", res.n_reps_skipped);
    return doc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Power of covariate-adjusted vs. unadjusted analyses of 1:1 randomized trials"};
    app.require_subcommand(1);

    std::string format = "json";
    std::function<OutputDocument()> action;

    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };

    PowerArgs power_args;
    auto* power = app.add_subcommand("power", "Power of the test for a trial design");
    power->add_option("--alpha", power_args.alpha, "Two-sided significance level")->capture_default_str();
    power->add_option("--tau", power_args.tau, "Treatment effect")->required();
    power->add_option("--sigma", power_args.sigma, "Outcome standard deviation")->capture_default_str();
    power->add_option("--n", power_args.n, "Total sample size, both arms")->required();
    power->add_option("--r", power_args.r, "Covariate-outcome correlation")->capture_default_str();
    power->add_flag("--exact", power_args.exact, "Two-term power plus the neglected term");
    add_format(power);
    power->callback([&] { action = [&] { return power_command(power_args); }; });

    SampleSizeArgs ss_args;
    auto* ss = app.add_subcommand("sample-size", "Total N giving the target unadjusted power");
    ss->add_option("--alpha", ss_args.alpha)->capture_default_str();
    ss->add_option("--power", ss_args.power, "Target power")->capture_default_str();
    ss->add_option("--tau", ss_args.tau)->required();
    ss->add_option("--sigma", ss_args.sigma)->capture_default_str();
    ss->add_flag("--round-even", ss_args.round_even, "Also report the smallest even N");
    add_format(ss);
    ss->callback([&] { action = [&] { return sample_size_command(ss_args); }; });

    RatioArgs ratio_args;
    auto* ratio = app.add_subcommand("ratio", "Adjusted/unadjusted power ratio at one R");
    ratio->add_option("--alpha", ratio_args.alpha)->capture_default_str();
    ratio->add_option("--power", ratio_args.power, "Unadjusted power")->capture_default_str();
    ratio->add_option("--r", ratio_args.r)->required();
    add_format(ratio);
    ratio->callback([&] { action = [&] { return ratio_command(ratio_args); }; });

    CurveArgs curve_args;
    auto* curve = app.add_subcommand("curve", "Power ratio table over a grid of R");
    curve->add_option("--alpha", curve_args.alpha)->capture_default_str();
    curve->add_option("--power", curve_args.power)->capture_default_str();
    curve->add_option("--r-max", curve_args.r_max)->capture_default_str();
    curve->add_option("--step", curve_args.step)->capture_default_str();
    add_format(curve);
    curve->callback([&] { action = [&] { return curve_command(curve_args); }; });

    ExpandArgs expand_args;
    auto* expand = app.add_subcommand("expand", "Second-order expansion coefficients");
    expand->add_option("--alpha", expand_args.alpha)->capture_default_str();
    expand->add_option("--power", expand_args.power)->capture_default_str();
    add_format(expand);
    expand->callback([&] { action = [&] { return expand_command(expand_args); }; });

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo trial simulation");
    sim->add_option("--n", sim_args.n, "Total subjects (even)")->required();
    sim->add_option("--tau", sim_args.tau)->required();
    sim->add_option("--sigma", sim_args.sigma)->capture_default_str();
    sim->add_option("--rho", sim_args.rho)->capture_default_str();
    sim->add_option("--alpha", sim_args.alpha)->capture_default_str();
    sim->add_option("--reps", sim_args.reps)->capture_default_str();
    sim->add_option("--seed", sim_args.seed)->capture_default_str();
    sim->add_option("--test", sim_args.test, "t (Student) or z (Wald)")
        ->check(CLI::IsMember({"t", "z"}))
        ->capture_default_str();
    sim->add_option("--adjust", sim_args.adjust, "ANCOVA (true) or two-sample (false)")
        ->capture_default_str();
    sim->add_option("--threads", sim_args.threads, "Worker threads, 0 = all cores")
        ->capture_default_str();
    add_format(sim);
    sim->callback([&] { action = [&] { return simulate_command(sim_args); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsageError;
    }

    try {
        const OutputDocument doc = action();
        doc.write(out, format == "csv" ? OutputFormat::csv : OutputFormat::json);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitOk;
}

}  // namespace covadj
