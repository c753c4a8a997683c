#include "covadj/power_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace covadj {

namespace {

void require_r_squared(double r) {
    if (!std::isfinite(r) || r * r >= 1.0) {
        throw std::domain_error(
            "degenerate correlation: r^2 must be < 1 (outcome fully determined by covariate)");
    }
}

void require_open_unit(Probability p, const char* what) {
    if (p.value() <= 0.0 || p.value() >= 1.0) {
        throw std::domain_error(std::string(what) + " must lie in (0, 1)");
    }
}

double half_alpha_quantile(Probability alpha) {
    return std_normal_quantile(Probability{alpha.value() / 2.0});
}

// Effect size in units of its standard error, |tau| / nu.
double standardized_effect(const TrialDesign& design) {
    return std::fabs(design.tau) / std::sqrt(asymptotic_variance(design));
}

void require_powered_design(Probability alpha, Probability target_power) {
    require_open_unit(alpha, "alpha");
    require_open_unit(target_power, "target power");
    if (target_power.value() <= alpha.value() / 2.0) {
        throw std::domain_error("target power must exceed alpha/2 (b <= 0)");
    }
}

}  // namespace

void TrialDesign::validate() const {
    require_open_unit(alpha, "alpha");
    if (!std::isfinite(tau)) throw std::domain_error("tau must be finite");
    if (!(std::isfinite(sigma) && sigma > 0.0)) throw std::domain_error("sigma must be > 0");
    if (!(std::isfinite(n_total) && n_total > 0.0)) {
        throw std::domain_error("n must be > 0");
    }
    require_r_squared(r);
}

double asymptotic_variance(const TrialDesign& design) {
    design.validate();
    return 4.0 * design.sigma * design.sigma / design.n_total * (1.0 - design.r * design.r);
}

Probability exact_power_two_term(const TrialDesign& design) {
    const double z = standardized_effect(design);
    const double a = half_alpha_quantile(design.alpha);
    return Probability{std::min(1.0, std_normal_cdf(a - z) + std_normal_cdf(a + z))};
}

Probability approx_power_one_term(const TrialDesign& design) {
    const double z = standardized_effect(design);
    return std_normal_cdf(half_alpha_quantile(design.alpha) + z);
}

double power_gap_term(const TrialDesign& design) {
    const double z = standardized_effect(design);
    return std_normal_cdf(half_alpha_quantile(design.alpha) - z);
}

double required_sample_size(Probability alpha, Probability target_power,
                            double tau, double sigma) {
    if (!std::isfinite(tau) || tau == 0.0) {
        throw std::domain_error("tau must be nonzero: no finite sample size detects a zero effect");
    }
    if (!(std::isfinite(sigma) && sigma > 0.0)) throw std::domain_error("sigma must be > 0");
    const ExpansionParams params = expansion_params(alpha, target_power);
    if (params.target_power.value() <= alpha.value() / 2.0) {
        throw std::domain_error("target power must exceed alpha/2 (b <= 0)");
    }
    const double root_n = 2.0 * sigma / std::fabs(tau) * params.b;
    return root_n * root_n;
}

ExpansionParams expansion_params(Probability alpha, Probability target_power) {
    require_open_unit(alpha, "alpha");
    require_open_unit(target_power, "target power");
    ExpansionParams params;
    params.a = half_alpha_quantile(alpha);
    params.b = std_normal_quantile(target_power) - params.a;
    params.target_power = target_power;
    return params;
}

double power_ratio_exact_r2(Probability alpha, Probability target_power, double r2) {
    require_powered_design(alpha, target_power);
    if (!std::isfinite(r2) || r2 >= 1.0) {
        throw std::domain_error("degenerate correlation: r^2 must be < 1");
    }
    const ExpansionParams p = expansion_params(alpha, target_power);
    return std_normal_cdf(p.a + p.b / std::sqrt(1.0 - r2)) / target_power.value();
}

Probability adjusted_power_at_fixed_n(Probability alpha, Probability target_power,
                                      double r) {
    require_powered_design(alpha, target_power);
    require_r_squared(r);
    const ExpansionParams p = expansion_params(alpha, target_power);
    return std_normal_cdf(p.a + p.b / std::sqrt(1.0 - r * r));
}

double power_ratio_exact(Probability alpha, Probability target_power, double r) {
    return adjusted_power_at_fixed_n(alpha, target_power, r) / target_power.value();
}

SeriesCoefficients series_coefficients(Probability alpha, Probability target_power) {
    require_powered_design(alpha, target_power);
    const ExpansionParams p = expansion_params(alpha, target_power);
    const double s = p.a + p.b;
    const double upper = erfc(-s / kSqrt2);  // 2 Phi(a + b)
    SeriesCoefficients c;
    c.c0 = (2.0 - erfc(s / kSqrt2)) / upper;
    c.c2 = p.b * std::exp(-0.5 * s * s) / (kSqrt2Pi * upper);
    return c;
}

double power_ratio_series(Probability alpha, Probability target_power, double r) {
    require_r_squared(r);
    const SeriesCoefficients c = series_coefficients(alpha, target_power);
    return c.c0 + c.c2 * r * r;
}

double rule_of_thumb(double r) {
    require_r_squared(r);
    return 1.0 + 0.5 * r * r;
}

double series_slope_finite_difference(Probability alpha, Probability target_power,
                                      double step) {
    const double up = power_ratio_exact_r2(alpha, target_power, step);
    const double down = power_ratio_exact_r2(alpha, target_power, -step);
    return (up - down) / (2.0 * step);
}

PowerRatioReport ratio_report(Probability alpha, Probability target_power,
                              const std::vector<double>& r_grid) {
    if (r_grid.empty()) {
        throw std::invalid_argument("ratio_report: R grid is empty");
    }
    if (!std::is_sorted(r_grid.begin(), r_grid.end())) {
        throw std::invalid_argument("ratio_report: R grid must be sorted ascending");
    }
    const SeriesCoefficients c = series_coefficients(alpha, target_power);

    PowerRatioReport report;
    report.r_grid = r_grid;
    for (double r : r_grid) {
        const double exact = power_ratio_exact(alpha, target_power, r);
        const double series = c.c0 + c.c2 * r * r;
        const double thumb = rule_of_thumb(r);
        report.exact_ratio.push_back(exact);
        report.series_ratio.push_back(series);
        report.thumb_ratio.push_back(thumb);
        report.max_abs_err_series = std::max(report.max_abs_err_series, std::fabs(exact - series));
        report.max_abs_err_thumb = std::max(report.max_abs_err_thumb, std::fabs(exact - thumb));
    }
    return report;
}

}  // namespace covadj
