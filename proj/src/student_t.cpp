#include "covadj/student_t.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace covadj {

namespace {

// Continued fraction for I_x(a, b) (modified Lentz), valid for
// x < (a + 1) / (a + b + 2). y = 1 - x is passed separately.
double beta_continued_fraction(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-16;
    constexpr int kMaxIter = 200000;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double incomplete_beta(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log(y);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("regularized_incomplete_beta: invalid arguments");
    }
    return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_upper_tail(double t, double df) {
    if (!(df > 0.0) || std::isnan(t)) {
        throw std::domain_error("student_t_upper_tail: invalid arguments");
    }
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double t2 = t * t;
    const double x = df / (df + t2);
    const double y = t2 / (df + t2);
    const double two_sided = incomplete_beta(0.5 * df, 0.5, x, y);
    return t >= 0.0 ? 0.5 * two_sided : 1.0 - 0.5 * two_sided;
}

double student_t_critical(double alpha, long long df) {
    if (df < 1) {
        throw std::domain_error("student_t_critical: df must be >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("student_t_critical: alpha must lie in (0, 1)");
    }
    const double target = 0.5 * alpha;
    const auto nu = static_cast<double>(df);

    double lo = 0.0;
    double hi = 1.0;
    while (student_t_upper_tail(hi, nu) > target) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_upper_tail(mid, nu) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace covadj
