#pragma once

// Internal 128-bit float helpers. The alternating series in this library
// (Wright M, three-parameter Mittag-Leffler) cancel far beyond double
// precision, so all series kernels accumulate in __float128 and round once
// at the end.

#include <quadmath.h>

#include <cmath>

namespace fmq::detail {

using quad = __float128;

inline constexpr double kQuadEps = 1.9259299443872358531e-34;  // 2^-112

inline quad q_pi() { return M_PIq; }

inline double to_double(quad x) { return static_cast<double>(x); }

inline quad q_abs(quad x) { return fabsq(x); }
inline quad q_exp(quad x) { return expq(x); }
inline quad q_log(quad x) { return logq(x); }
inline quad q_pow(quad b, quad e) { return powq(b, e); }
inline quad q_sqrt(quad x) { return sqrtq(x); }
inline quad q_sin(quad x) { return sinq(x); }
inline quad q_cos(quad x) { return cosq(x); }
inline quad q_atan2(quad y, quad x) { return atan2q(y, x); }
inline quad q_lgamma(quad x) { return lgammaq(x); }  // requires x > 0 here

// sin(pi x) with the argument reduced exactly; exact zero at integer x.
inline quad q_sinpi(quad x) {
    quad n = nearbyintq(x);
    quad d = x - n;
    quad s = sinq(q_pi() * d);
    long long par = static_cast<long long>(fmodq(q_abs(n), 2.0q));
    return (par == 0) ? s : -s;
}

inline quad q_cospi(quad x) {
    quad n = nearbyintq(x);
    quad d = x - n;
    quad c = cosq(q_pi() * d);
    long long par = static_cast<long long>(fmodq(q_abs(n), 2.0q));
    return (par == 0) ? c : -c;
}

// log|1/Gamma(x)| and its sign, valid for all real x; sign = 0 marks a pole.
struct LogRecipGamma {
    quad log_mag;
    int sign;
};

inline LogRecipGamma q_log_recip_gamma(quad x) {
    if (x > 0.5q) return {-q_lgamma(x), 1};
    if (x == nearbyintq(x)) return {0.0q, 0};  // nonpositive integer: Gamma pole
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    quad s = q_sinpi(x);
    quad lm = q_lgamma(1.0q - x) + q_log(q_abs(s)) - q_log(q_pi());
    return {lm, s > 0.0q ? 1 : -1};
}

inline quad q_recip_gamma(quad x) {
    auto [lm, sg] = q_log_recip_gamma(x);
    if (sg == 0) return 0.0q;
    return sg * q_exp(lm);
}

// Neumaier compensated accumulator.
struct QuadSum {
    quad sum = 0.0q;
    quad comp = 0.0q;
    void add(quad v) {
        quad t = sum + v;
        if (q_abs(sum) >= q_abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    quad value() const { return sum + comp; }
};

}  // namespace fmq::detail
