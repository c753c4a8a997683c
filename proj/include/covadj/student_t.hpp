#pragma once

namespace covadj {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// P(T > t) for Student's t with df degrees of freedom (df may be non-integer).
double student_t_upper_tail(double t, double df);

// Two-sided critical value: the t with P(|T| > t) = alpha. Obtained by
// bisection on student_t_upper_tail to well under 1e-8.
// Throws std::domain_error for df < 1 or alpha outside (0, 1).
double student_t_critical(double alpha, long long df);

}  // namespace covadj
