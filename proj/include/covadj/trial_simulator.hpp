#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "covadj/normal_math.hpp"

namespace covadj {

enum class TestKind { wald_z, student_t };

// Monte Carlo campaign description. n_subjects is the total over both arms
// and must be even; each arm gets exactly n_subjects / 2.
struct SimConfig {
    int n_subjects = 126;
    double tau = 0.0;
    double sigma = 1.0;
    double rho = 0.0;
    Probability alpha{0.05};
    long long n_reps = 1000;
    std::uint64_t seed = 0;
    TestKind test_kind = TestKind::student_t;
    bool adjust = true;
    // Worker threads; 0 picks the hardware concurrency. Never changes results.
    unsigned threads = 0;

    // std::invalid_argument for odd or too-small n_subjects, n_reps < 1;
    // std::domain_error for sigma <= 0, rho^2 >= 1, non-finite tau.
    void validate() const;
};

struct TrialRow {
    int treatment = 0;  // 0 control, 1 treated
    double covariate = 0.0;
    double outcome = 0.0;
};

using TrialDataset = std::vector<TrialRow>;

struct EffectEstimate {
    double tau_hat = 0.0;
    double se_tau_hat = 0.0;
    long long df = 0;
};

struct SimResult {
    double rejection_rate = 0.0;
    double mc_stderr = 0.0;
    double mean_tau_hat = 0.0;
    double empirical_se_tau_hat = 0.0;
    double analytic_se = 0.0;
    double analytic_power = 0.0;
    long long n_reps_completed = 0;
    long long n_reps_skipped = 0;
};

// Thrown by fit_ancova when the design is collinear.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Replication rep_index of the campaign: balanced permutation of arms,
// covariate x ~ N(0, 1), outcome y = tau*t + sigma*rho*x + e with
// e ~ N(0, sigma^2 (1 - rho^2)). A pure function of (seed, rep_index).
TrialDataset generate_trial(const SimConfig& config, std::uint64_t rep_index);

// OLS of outcome on (1, treatment, covariate) through the 3x3 normal
// equations; df = n - 3. Throws NumericalError if the covariate's sample
// variance is below 1e-12 or the normal matrix is not positive definite,
// std::invalid_argument for fewer than 4 rows or a missing arm.
EffectEstimate fit_ancova(const TrialDataset& data);

// Difference of arm means with pooled-variance SE; df = n - 2.
// Throws std::invalid_argument unless both arms have at least one row and
// n >= 3.
EffectEstimate fit_unadjusted(const TrialDataset& data);

SimResult run_campaign(const SimConfig& config);

}  // namespace covadj
