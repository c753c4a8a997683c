#pragma once

#include <vector>

#include "covadj/normal_math.hpp"

namespace covadj {

// Design of a 1:1 randomized trial with a continuous outcome.
//
// n_total is the TOTAL sample size over both arms, so the unadjusted
// difference-of-means variance is sigma^2 (1/(N/2) + 1/(N/2)) = 4 sigma^2 / N.
// It is continuous; rounding to an even integer happens only at the CLI and
// simulator boundary. Only r^2 enters any formula.
struct TrialDesign {
    Probability alpha{0.05};  // two-sided
    double tau = 0.0;         // constant treatment effect
    double sigma = 1.0;       // outcome SD
    double n_total = 0.0;
    double r = 0.0;           // covariate-outcome correlation

    // Throws std::domain_error unless 0 < alpha < 1, sigma > 0, n_total > 0,
    // r^2 < 1 and every field is finite.
    void validate() const;
};

// a = Phi^-1(alpha/2), b = Phi^-1(target) - a.
struct ExpansionParams {
    double a = 0.0;
    double b = 0.0;
    Probability target_power{0.8};
};

// Coefficients of the second-order power-ratio expansion c0 + c2 R^2,
// evaluated from the erfc form as written (c0 is 1 algebraically).
struct SeriesCoefficients {
    double c0 = 0.0;
    double c2 = 0.0;
};

struct PowerRatioReport {
    std::vector<double> r_grid;
    std::vector<double> exact_ratio;
    std::vector<double> series_ratio;
    std::vector<double> thumb_ratio;
    double max_abs_err_series = 0.0;
    double max_abs_err_thumb = 0.0;
};

// nu^2 = (4 sigma^2 / N)(1 - R^2).
double asymptotic_variance(const TrialDesign& design);

// Phi(a - tau/nu) + Phi(a + tau/nu) with a = Phi^-1(alpha/2).
Probability exact_power_two_term(const TrialDesign& design);

// Phi(a + |tau|/nu): the dominant term only.
Probability approx_power_one_term(const TrialDesign& design);

// Phi(a - |tau|/nu); exact minus approximate power.
double power_gap_term(const TrialDesign& design);

// Continuous total N at which the unadjusted one-term power equals
// target_power. Throws std::domain_error for tau == 0 or
// target_power <= alpha/2.
double required_sample_size(Probability alpha, Probability target_power,
                            double tau, double sigma);

ExpansionParams expansion_params(Probability alpha, Probability target_power);

// Power at the N that gives the unadjusted analysis target_power:
// Phi(a + b / sqrt(1 - R^2)).
Probability adjusted_power_at_fixed_n(Probability alpha, Probability target_power,
                                      double r);

double power_ratio_exact(Probability alpha, Probability target_power, double r);

// Same ratio parametrized directly by s = R^2. Accepts s < 1, including
// small negative s, so it can be differentiated at s = 0.
double power_ratio_exact_r2(Probability alpha, Probability target_power, double r2);

SeriesCoefficients series_coefficients(Probability alpha, Probability target_power);

double power_ratio_series(Probability alpha, Probability target_power, double r);

// 1 + R^2 / 2.
double rule_of_thumb(double r);

// Central difference of power_ratio_exact_r2 at R^2 = 0.
double series_slope_finite_difference(Probability alpha, Probability target_power,
                                      double step = 1e-5);

// Throws std::invalid_argument for an empty or unsorted grid and
// std::domain_error for any |r| >= 1.
PowerRatioReport ratio_report(Probability alpha, Probability target_power,
                              const std::vector<double>& r_grid);

}  // namespace covadj
