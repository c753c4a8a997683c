#include "covadj/normal_math.hpp"

#include <array>
#include <limits>

namespace covadj {

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::domain_error("probability must lie in [0, 1]");
    }
}

namespace {

// W. J. Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969), as distributed in netlib specfun CALERF.
constexpr std::array<double, 5> kErfA = {
    3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
    3.20937758913846947e03, 1.85777706184603153e-1};
constexpr std::array<double, 4> kErfB = {
    2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
    2.84423683343917062e03};
constexpr std::array<double, 9> kErfcC = {
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr std::array<double, 8> kErfcD = {
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
    1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
    3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kErfcP = {
    3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
    1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kErfcQ = {
    2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
    6.05183413124413191e-2, 2.33520497626869185e-3};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kErfcThreshold = 0.46875;
constexpr double kErfcBig = 26.543;  // erfc underflows beyond this
constexpr double kCdfSaturation = 38.0;

// exp(-y*y) with the split used by CALERF to avoid losing bits in y*y.
double exp_minus_square(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

// erfc for y >= 0.
double erfc_nonnegative(double y) {
    if (y <= kErfcThreshold) {
        const double ysq = y > 1.11e-16 ? y * y : 0.0;
        double num = kErfA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kErfA[i]) * ysq;
            den = (den + kErfB[i]) * ysq;
        }
        return 1.0 - y * (num + kErfA[3]) / (den + kErfB[3]);
    }
    if (y <= 4.0) {
        double num = kErfcC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kErfcC[i]) * y;
            den = (den + kErfcD[i]) * y;
        }
        return exp_minus_square(y) * (num + kErfcC[7]) / (den + kErfcD[7]);
    }
    if (y >= kErfcBig) {
        return 0.0;
    }
    const double ysq = 1.0 / (y * y);
    double num = kErfcP[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
        num = (num + kErfcP[i]) * ysq;
        den = (den + kErfcQ[i]) * ysq;
    }
    const double r = (kInvSqrtPi - ysq * (num + kErfcP[4]) / (den + kErfcQ[4])) / y;
    return exp_minus_square(y) * r;
}

// Lower-tail Phi(x), no saturation or validation.
double lower_tail(double x) { return 0.5 * erfc(-x / kSqrt2); }

template <std::size_t N>
double polynomial(const std::array<double, N>& c, double x) {
    double acc = c[N - 1];
    for (std::size_t i = N - 1; i > 0; --i) {
        acc = acc * x + c[i - 1];
    }
    return acc;
}

// Wichura, Algorithm AS 241 (PPND16), Appl. Statist. 37 (1988).
constexpr std::array<double, 8> kCentralNum = {
    3.387132872796366608, 133.14166789178437745, 1971.5909503065514427,
    13731.693765509461125, 45921.953931549871457, 67265.770927008700853,
    33430.575583588128105, 2509.0809287301226727};
constexpr std::array<double, 8> kCentralDen = {
    1.0, 42.313330701600911252, 687.1870074920579083, 5394.1960214247511077,
    21213.794301586595867, 39307.89580009271061, 28729.085735721942674,
    5226.495278852854561};
constexpr std::array<double, 8> kMidNum = {
    1.42343711074968357734, 4.6303378461565452959, 5.7694972214606914055,
    3.64784832476320460504, 1.27045825245236838258, 0.24178072517745061177,
    0.0227238449892691845833, 7.7454501427834140764e-4};
constexpr std::array<double, 8> kMidDen = {
    1.0, 2.05319162663775882187, 1.6763848301838038494, 0.68976733498510000455,
    0.14810397642748007459, 0.0151986665636164571966, 5.475938084995344946e-4,
    1.05075007164441684324e-9};
constexpr std::array<double, 8> kTailNum = {
    6.6579046435011037772, 5.4637849111641143699, 1.7848265399172913358,
    0.29656057182850489123, 0.026532189526576123093, 0.0012426609473880784386,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr std::array<double, 8> kTailDen = {
    1.0, 0.59983220655588793769, 0.13692988092273580531,
    0.0148753612908506148525, 7.868691311456132591e-4, 1.8463183175100546818e-5,
    1.4215117583164458887e-7, 2.04426310338993978564e-15};

// Quantile for p in (0, 0.5], refined against lower_tail.
double lower_quantile(double p) {
    const double q = p - 0.5;
    double x;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        x = q * polynomial(kCentralNum, r) / polynomial(kCentralDen, r);
    } else {
        double r = std::sqrt(-std::log(p));
        if (r <= 5.0) {
            r -= 1.6;
            x = -polynomial(kMidNum, r) / polynomial(kMidDen, r);
        } else {
            r -= 5.0;
            x = -polynomial(kTailNum, r) / polynomial(kTailDen, r);
        }
    }
    // One Halley step on Phi(x) - p.
    const double e = lower_tail(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double erfc(double x) {
    if (std::isnan(x)) {
        throw std::domain_error("erfc: NaN argument");
    }
    if (x < 0.0) {
        return 2.0 - erfc_nonnegative(-x);
    }
    return erfc_nonnegative(x);
}

double std_normal_pdf(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("std_normal_pdf: non-finite argument");
    }
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

Probability std_normal_cdf(double x) {
    if (std::isnan(x)) {
        throw std::domain_error("std_normal_cdf: NaN argument");
    }
    if (x < -kCdfSaturation) return Probability{0.0};
    if (x > kCdfSaturation) return Probability{1.0};
    return Probability{lower_tail(x)};
}

double std_normal_survival(double x) {
    return std_normal_cdf(-x);
}

double std_normal_quantile(Probability p) {
    const double v = p.value();
    if (v <= 0.0 || v >= 1.0) {
        throw std::domain_error("std_normal_quantile: p must lie in (0, 1)");
    }
    if (v == 0.5) return 0.0;
    if (v < 0.5) return lower_quantile(v);
    // 1 - v is exact for v >= 0.5.
    return -lower_quantile(1.0 - v);
}

}  // namespace covadj
