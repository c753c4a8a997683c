#pragma once

#include <cmath>
#include <stdexcept>

namespace covadj {

// A probability in [0, 1]. Construction rejects NaN and out-of-range values
// with std::domain_error; reads back as a plain double.
class Probability {
public:
    explicit Probability(double value);

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kSqrt2 = 1.41421356237309504880;

// Standard normal density. Throws std::domain_error for non-finite x.
double std_normal_pdf(double x);

// Standard normal CDF, computed as erfc(-x/sqrt(2))/2 so that the lower tail
// keeps full relative accuracy. |x| > 38 saturates to exactly 0 or 1.
// Throws std::domain_error for NaN.
Probability std_normal_cdf(double x);

// Upper tail 1 - Phi(x) without cancellation.
double std_normal_survival(double x);

// Inverse of std_normal_cdf on the open interval (0, 1).
// Throws std::domain_error for p <= 0 or p >= 1.
double std_normal_quantile(Probability p);

// Complementary error function (Cody's rational Chebyshev approximations).
// Throws std::domain_error for NaN.
double erfc(double x);

}  // namespace covadj
