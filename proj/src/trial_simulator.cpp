#include "covadj/trial_simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <thread>

#include "covadj/philox.hpp"
#include "covadj/power_engine.hpp"
#include "covadj/student_t.hpp"

namespace covadj {

namespace {

constexpr double kCollinearVariance = 1e-12;

double standard_normal(PhiloxStream& stream) {
    return std_normal_quantile(Probability{stream.next_open_unit()});
}

struct ArmCounts {
    long long treated = 0;
    long long control = 0;
};

ArmCounts count_arms(const TrialDataset& data) {
    ArmCounts counts;
    for (const TrialRow& row : data) {
        if (row.treatment == 1) {
            ++counts.treated;
        } else if (row.treatment == 0) {
            ++counts.control;
        } else {
            throw std::invalid_argument("treatment indicator must be 0 or 1");
        }
    }
    return counts;
}

// Per-replication outcome, stored by index so aggregation order is fixed.
struct RepOutcome {
    double tau_hat = 0.0;
    bool rejected = false;
    bool completed = false;
};

RepOutcome run_replication(const SimConfig& config, std::uint64_t rep_index,
                           double critical_value) {
    const TrialDataset data = generate_trial(config, rep_index);
    RepOutcome out;
    EffectEstimate est;
    try {
        est = config.adjust ? fit_ancova(data) : fit_unadjusted(data);
    } catch (const NumericalError&) {
        return out;
    }
    out.completed = true;
    out.tau_hat = est.tau_hat;
    if (est.se_tau_hat > 0.0) {
        out.rejected = std::fabs(est.tau_hat / est.se_tau_hat) > critical_value;
    } else {
        out.rejected = est.tau_hat != 0.0;
    }
    return out;
}

}  // namespace

void SimConfig::validate() const {
    if (n_subjects < 4 || n_subjects % 2 != 0) {
        throw std::invalid_argument("n must be an even integer >= 4 (exact 1:1 split)");
    }
    if (n_reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (!std::isfinite(tau)) throw std::domain_error("tau must be finite");
    if (!(std::isfinite(sigma) && sigma > 0.0)) throw std::domain_error("sigma must be > 0");
    if (!std::isfinite(rho) || rho * rho >= 1.0) {
        throw std::domain_error("degenerate correlation: rho^2 must be < 1");
    }
    if (alpha.value() <= 0.0 || alpha.value() >= 1.0) {
        throw std::domain_error("alpha must lie in (0, 1)");
    }
}

TrialDataset generate_trial(const SimConfig& config, std::uint64_t rep_index) {
    config.validate();
    PhiloxStream stream(config.seed, rep_index);
    const auto n = static_cast<std::size_t>(config.n_subjects);

    // Fisher-Yates shuffle of n/2 zeros and n/2 ones.
    std::vector<int> arm(n, 0);
    std::fill(arm.begin() + static_cast<std::ptrdiff_t>(n / 2), arm.end(), 1);
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(stream.next_below(i + 1));
        std::swap(arm[i], arm[j]);
    }

    const double slope = config.sigma * config.rho;
    const double noise_sd = config.sigma * std::sqrt(1.0 - config.rho * config.rho);
    TrialDataset data(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = standard_normal(stream);
        const double e = noise_sd * standard_normal(stream);
        data[i] = {arm[i], x, config.tau * arm[i] + slope * x + e};
    }
    return data;
}

EffectEstimate fit_ancova(const TrialDataset& data) {
    const ArmCounts arms = count_arms(data);
    if (data.size() < 4 || arms.treated == 0 || arms.control == 0) {
        throw std::invalid_argument("ANCOVA needs >= 4 rows and both arms");
    }
    const auto n = static_cast<double>(data.size());

    double mean_x = 0.0;
    for (const TrialRow& row : data) mean_x += row.covariate;
    mean_x /= n;
    double sxx = 0.0;
    for (const TrialRow& row : data) {
        sxx += (row.covariate - mean_x) * (row.covariate - mean_x);
    }
    if (sxx / (n - 1.0) < kCollinearVariance) {
        throw NumericalError("collinear design: covariate has (near) zero variance");
    }

    // Normal equations X'X beta = X'y for columns (1, t, x).
    std::array<std::array<double, 3>, 3> xtx{};
    std::array<double, 3> xty{};
    for (const TrialRow& row : data) {
        const std::array<double, 3> z = {1.0, static_cast<double>(row.treatment), row.covariate};
        for (int i = 0; i < 3; ++i) {
            xty[i] += z[i] * row.outcome;
            for (int j = 0; j <= i; ++j) xtx[i][j] += z[i] * z[j];
        }
    }

    // Cholesky factor L (lower) with X'X = L L'.
    std::array<std::array<double, 3>, 3> chol{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = xtx[i][j];
            for (int k = 0; k < j; ++k) s -= chol[i][k] * chol[j][k];
            if (i == j) {
                if (!(s > 0.0)) throw NumericalError("normal equations not positive definite");
                chol[i][i] = std::sqrt(s);
            } else {
                chol[i][j] = s / chol[j][j];
            }
        }
    }
    auto solve = [&chol](std::array<double, 3> rhs) {
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < i; ++k) rhs[i] -= chol[i][k] * rhs[k];
            rhs[i] /= chol[i][i];
        }
        for (int i = 2; i >= 0; --i) {
            for (int k = i + 1; k < 3; ++k) rhs[i] -= chol[k][i] * rhs[k];
            rhs[i] /= chol[i][i];
        }
        return rhs;
    };

    const std::array<double, 3> beta = solve(xty);
    // Diagonal entry of (X'X)^-1 for the treatment coefficient.
    const double inv_tt = solve({0.0, 1.0, 0.0})[1];

    double rss = 0.0;
    for (const TrialRow& row : data) {
        const double fitted = beta[0] + beta[1] * row.treatment + beta[2] * row.covariate;
        rss += (row.outcome - fitted) * (row.outcome - fitted);
    }
    EffectEstimate est;
    est.df = static_cast<long long>(data.size()) - 3;
    est.tau_hat = beta[1];
    est.se_tau_hat = std::sqrt(rss / static_cast<double>(est.df) * inv_tt);
    return est;
}

EffectEstimate fit_unadjusted(const TrialDataset& data) {
    const ArmCounts arms = count_arms(data);
    if (arms.treated == 0 || arms.control == 0) {
        throw std::invalid_argument("two-sample comparison needs both arms");
    }
    if (data.size() < 3) {
        throw std::invalid_argument("two-sample comparison needs >= 3 rows");
    }
    std::array<double, 2> sum{};
    for (const TrialRow& row : data) sum[row.treatment] += row.outcome;
    const std::array<double, 2> size = {static_cast<double>(arms.control),
                                        static_cast<double>(arms.treated)};
    const std::array<double, 2> mean = {sum[0] / size[0], sum[1] / size[1]};
    double ss = 0.0;
    for (const TrialRow& row : data) {
        const double d = row.outcome - mean[row.treatment];
        ss += d * d;
    }
    EffectEstimate est;
    est.df = static_cast<long long>(data.size()) - 2;
    est.tau_hat = mean[1] - mean[0];
    const double pooled = ss / static_cast<double>(est.df);
    est.se_tau_hat = std::sqrt(pooled * (1.0 / size[0] + 1.0 / size[1]));
    return est;
}

SimResult run_campaign(const SimConfig& config) {
    config.validate();

    const long long df = config.n_subjects - (config.adjust ? 3 : 2);
    const double critical = config.test_kind == TestKind::student_t
                                ? student_t_critical(config.alpha.value(), df)
                                : -std_normal_quantile(Probability{config.alpha.value() / 2.0});

    const auto reps = static_cast<std::size_t>(config.n_reps);
    std::vector<RepOutcome> outcomes(reps);

    unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, 64u);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            outcomes[r] = run_replication(config, r, critical);
        }
    };
    if (workers <= 1) {
        work(0, reps);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (reps + workers - 1) / workers;
        for (std::size_t begin = 0; begin < reps; begin += chunk) {
            pool.emplace_back(work, begin, std::min(reps, begin + chunk));
        }
    }

    // Fixed-order reduction keeps the result independent of the thread count.
    SimResult result;
    long long rejections = 0;
    double sum_tau = 0.0;
    for (const RepOutcome& o : outcomes) {
        if (!o.completed) continue;
        ++result.n_reps_completed;
        rejections += o.rejected ? 1 : 0;
        sum_tau += o.tau_hat;
    }
    result.n_reps_skipped = config.n_reps - result.n_reps_completed;

    const double analytic_r = config.adjust ? config.rho : 0.0;
    TrialDesign design;
    design.alpha = config.alpha;
    design.tau = config.tau;
    design.sigma = config.sigma;
    design.n_total = config.n_subjects;
    design.r = analytic_r;
    result.analytic_se = std::sqrt(asymptotic_variance(design));
    result.analytic_power = exact_power_two_term(design);

    if (result.n_reps_completed == 0) return result;

    const auto completed = static_cast<double>(result.n_reps_completed);
    result.rejection_rate = static_cast<double>(rejections) / completed;
    result.mc_stderr =
        std::sqrt(result.rejection_rate * (1.0 - result.rejection_rate) / completed);
    result.mean_tau_hat = sum_tau / completed;
    if (result.n_reps_completed > 1) {
        double ss = 0.0;
        for (const RepOutcome& o : outcomes) {
            if (!o.completed) continue;
            const double d = o.tau_hat - result.mean_tau_hat;
            ss += d * d;
        }
        result.empirical_se_tau_hat = std::sqrt(ss / (completed - 1.0));
    }
    return result;
}

}  // namespace covadj
