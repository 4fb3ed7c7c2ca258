#pragma once

// Special-function kernels: reciprocal gamma, modified Bessel I_n, the Wright
// function M_alpha, the three-parameter Mittag-Leffler (Prabhakar) function,
// and the density of the inverse alpha-stable subordinator.
//
// The Wright and Mittag-Leffler series alternate with large intermediate
// terms; both are summed in 128-bit arithmetic with compensated
// accumulation. For strongly negative Mittag-Leffler arguments, where no
// fixed-precision series can survive the cancellation, evaluation switches
// to a Bromwich branch-cut integral (see detail::prabhakar_branch_cut).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fmq/detail/quadfloat.hpp"
#include "fmq/errors.hpp"

namespace fmq {

// Truncation control shared by every infinite series in the library.
struct SeriesControl {
    double rel_tol = 1e-12;
    int max_terms = 10000;

    void validate() const {
        if (!(rel_tol > 0)) throw DomainError("SeriesControl.rel_tol must be > 0");
        if (max_terms < 1) throw DomainError("SeriesControl.max_terms must be >= 1");
    }
};

// Parameters of E^delta_{beta,gamma}(w).
struct MLParams {
    double beta;   // series parameter multiplying r inside Gamma
    double gamma;  // series offset inside Gamma
    int delta;     // Pochhammer order; this library needs 1, 2, 3

    void validate() const {
        if (!(beta > 0)) throw DomainError("MLParams.beta must be > 0");
        if (!(gamma > 0)) throw DomainError("MLParams.gamma must be > 0");
        if (delta < 1) throw DomainError("MLParams.delta must be >= 1");
    }
};

/// 1/Gamma(x) as a total function: exactly 0 at the poles of Gamma.
inline double gamma_recip(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    if (x > 0.5) {
        if (x < 170.0) return 1.0 / std::tgamma(x);
        double lg = std::lgamma(x);
        return lg > 709.0 ? 0.0 : std::exp(-lg);
    }
    return detail::to_double(detail::q_recip_gamma(detail::quad(x)));
}

/// Modified Bessel function of the first kind, integer order, z >= 0.
inline double bessel_i(int n, double z, const SeriesControl& ctl = {}) {
    ctl.validate();
    if (n < 0) throw DomainError("bessel_i: order must be >= 0");
    if (z < 0) throw DomainError("bessel_i: argument must be >= 0");
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;
    if (z > 5000.0) throw NonConvergence("bessel_i: argument too large for series evaluation");
    long double half = 0.5L * z;
    long double term = std::exp(n * std::log(half) - std::lgamma(static_cast<long double>(n) + 1.0L));
    long double q = half * half;
    long double sum = term;
    for (int m = 1; m <= ctl.max_terms; ++m) {
        term *= q / (static_cast<long double>(m) * (m + n));
        sum += term;
        if (term <= ctl.rel_tol * sum && m > 3) return static_cast<double>(sum);
    }
    throw NonConvergence("bessel_i: series did not converge within max_terms");
}

namespace detail {

// log of the asymptotic decay exponent of M_alpha(x):
// M_alpha(x) ~ exp(-(1-alpha) alpha^{alpha/(1-alpha)} x^{1/(1-alpha)}).
inline double wright_decay_exponent(double alpha, double x) {
    if (x <= 1.0) return 0.0;
    double p = 1.0 / (1.0 - alpha);
    double lb = std::log1p(-alpha) + alpha * p * std::log(alpha) + p * std::log(x);
    return lb > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(lb);
}

// Sum of the Wright series with an optional extra factor per term:
//   mode 0: M_alpha(x)            = sum (-x)^r / (r! Gamma(1-alpha(1+r)))
//   mode 1: int_0^x M_alpha(u) du = sum (-1)^r x^{r+1} / ((r+1)! Gamma(1-alpha(1+r)))
inline quad wright_series(double alpha, double x, const SeriesControl& ctl, int mode) {
    const quad qa = alpha;
    const quad qx = x;
    const quad lx = x > 0.0 ? q_log(qx) : 0.0q;
    QuadSum acc;
    quad sum_abs = 0.0q;
    int consecutive_small = 0;
    for (int r = 0; r < ctl.max_terms; ++r) {
        quad qr = r;
        auto [lrg, sg] = q_log_recip_gamma(1.0q - qa * (1.0q + qr));
        quad term = 0.0q;
        if (sg != 0) {
            quad lt = (x == 0.0 && r == 0) ? lrg
                                           : qr * lx - q_lgamma(qr + 1.0q) + lrg;
            if (mode == 1) lt += lx - q_log(qr + 1.0q);
            if (x == 0.0 && r > 0) {
                term = 0.0q;
            } else {
                term = sg * q_exp(lt);
                if (r % 2 == 1) term = -term;
            }
        }
        acc.add(term);
        sum_abs += q_abs(term);
        quad scale = q_abs(acc.value());
        if (scale < 1e-300q) scale = 1e-300q;
        if (q_abs(term) <= quad(ctl.rel_tol) * scale) {
            if (++consecutive_small >= 4 && r > 4) break;
        } else {
            consecutive_small = 0;
            if (r + 1 == ctl.max_terms)
                throw NonConvergence("wright series: max_terms exhausted");
        }
    }
    quad v = acc.value();
    // all significant digits cancelled: the true value underflows to zero
    if (q_abs(v) < sum_abs * quad(kQuadEps) * 64.0q) return 0.0q;
    return v;
}

}  // namespace detail

/// Wright function M_alpha(x) for 0 < alpha < 1, x >= 0 (Mainardi's M).
inline double wright_m(double alpha, double x, const SeriesControl& ctl = {}) {
    ctl.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange(alpha);
    if (x < 0) throw DomainError("wright_m: argument must be >= 0");
    if (detail::wright_decay_exponent(alpha, x) > 780.0) return 0.0;  // below DBL_MIN
    double v = detail::to_double(detail::wright_series(alpha, x, ctl, 0));
    return v;
}

namespace detail {

// int_0^x M_alpha(u) du; increases from 0 to 1.
inline double wright_cdf(double alpha, double x, const SeriesControl& ctl) {
    if (x <= 0.0) return 0.0;
    if (wright_decay_exponent(alpha, x) > 780.0) return 1.0;
    double v = to_double(wright_series(alpha, x, ctl, 1));
    return std::min(v, 1.0);
}

// Smallest x with int_x^inf M_alpha <= tail (bracketing + bisection on the
// monotone tail).
inline double wright_quantile_tail(double alpha, double tail, const SeriesControl& ctl) {
    double hi = 1.0;
    SeriesControl wide = ctl;
    wide.max_terms = std::max(ctl.max_terms, 40000);
    while (1.0 - wright_cdf(alpha, hi, wide) > tail) {
        hi *= 1.5;
        if (hi > 1e6) throw NonConvergence("wright_quantile: bracket failed");
    }
    double lo = hi / 1.5;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (1.0 - wright_cdf(alpha, mid, wide) > tail)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace detail

namespace detail {

// ---- three-parameter Mittag-Leffler machinery ----------------------------

// Pochhammer-style coefficient Gamma(delta+r) / (r! Gamma(delta)) for small
// integer delta.
inline quad prabhakar_coeff(int delta, int r) {
    quad qr = r;
    switch (delta) {
        case 1: return 1.0q;
        case 2: return qr + 1.0q;
        case 3: return (qr + 1.0q) * (qr + 2.0q) * 0.5q;
        default: {
            return q_exp(q_lgamma(quad(delta) + qr) - q_lgamma(qr + 1.0q) -
                         q_lgamma(quad(delta)));
        }
    }
}

// Plain series sum of E^delta_{beta,gamma}(w) in 128-bit arithmetic.
// Caller guarantees the series is condition-safe for this argument.
inline quad prabhakar_series(double beta, double gamma, int delta, quad w,
                             const SeriesControl& ctl) {
    const quad qb = beta, qg = gamma;
    const quad law = (w == 0.0q) ? 0.0q : q_log(q_abs(w));
    QuadSum acc;
    quad sum_abs = 0.0q;
    int consecutive_small = 0;
    for (int r = 0; r < ctl.max_terms; ++r) {
        quad qr = r;
        quad term;
        if (w == 0.0q && r > 0) {
            term = 0.0q;
        } else {
            quad lt = qr * law - q_lgamma(qb * qr + qg);
            term = prabhakar_coeff(delta, r) * q_exp(lt);
            if (w < 0.0q && r % 2 == 1) term = -term;
        }
        acc.add(term);
        sum_abs += q_abs(term);
        quad scale = q_abs(acc.value());
        if (scale < 1e-300q) scale = 1e-300q;
        if (q_abs(term) <= quad(ctl.rel_tol) * scale) {
            if (++consecutive_small >= 4 && r > 4) break;
        } else {
            consecutive_small = 0;
            if (r + 1 == ctl.max_terms)
                throw NonConvergence("mittag_leffler series: max_terms exhausted");
        }
    }
    quad v = acc.value();
    if (w < 0.0q && q_abs(v) < sum_abs * quad(kQuadEps) * 64.0q)
        throw NonConvergence("mittag_leffler series: all significant digits lost");
    return v;
}

// Kummer-transformed series for beta == 1 and w < 0:
// E^delta_{1,gamma}(w) = e^w M(gamma-delta, gamma, -w) / Gamma(gamma),
// which has at most one sign change and no catastrophic cancellation.
inline quad prabhakar_alpha1_neg(double gamma, int delta, quad w, const SeriesControl& ctl) {
    quad a = quad(gamma) - quad(delta);
    quad b = gamma;
    quad x = -w;  // > 0
    quad term = 1.0q, sum = 1.0q;
    for (int r = 0; r < ctl.max_terms; ++r) {
        quad qr = r;
        term *= (a + qr) * x / ((b + qr) * (qr + 1.0q));
        sum += term;
        if (q_abs(term) <= quad(ctl.rel_tol) * q_abs(sum) && r > 3)
            return q_exp(w - q_lgamma(quad(gamma))) * sum;
    }
    throw NonConvergence("mittag_leffler (beta=1): Kummer series did not converge");
}

// Adaptive Gauss-Kronrod (G7, K15) in 128-bit arithmetic.
template <typename F>
quad gk_quad(F&& f, quad a, quad b, double rel_tol, double abs_floor, int max_depth = 48,
             int max_intervals = 4000) {
    // Kronrod-15 abscissae/weights and embedded Gauss-7 weights (QUADPACK).
    static const quad xk[8] = {
        0.991455371120812639206854697526329q, 0.949107912342758524526189684047851q,
        0.864864423359769072789712788640926q, 0.741531185599394439863864773280788q,
        0.586087235467691130294144838258730q, 0.405845151377397166906606412076961q,
        0.207784955007898467600689403773245q, 0.0q};
    static const quad wk[8] = {
        0.022935322010529224963732008058970q, 0.063092092629978553290700663189204q,
        0.104790010322250183839876322541518q, 0.140653259715525918745189590510238q,
        0.169004726639267902826583426598550q, 0.190350578064785409913256402421014q,
        0.204432940075298892414161999234649q, 0.209482141084727828012999174891714q};
    static const quad wg[4] = {
        0.129484966168869693270611432679082q, 0.279705391489276667901467771423780q,
        0.381830050505118944950369775488975q, 0.417959183673469387755102040816327q};

    struct Seg {
        quad a, b;
        int depth;
    };
    std::vector<Seg> stack{{a, b, 0}};
    QuadSum total;
    int used = 0;
    while (!stack.empty()) {
        if (++used > max_intervals)
            throw NonConvergence("gk_quad: interval budget exhausted");
        Seg s = stack.back();
        stack.pop_back();
        quad c = 0.5q * (s.a + s.b), h = 0.5q * (s.b - s.a);
        quad fc = f(c);
        quad resk = wk[7] * fc;
        quad resg = wg[3] * fc;
        for (int j = 0; j < 7; ++j) {
            quad f1 = f(c - h * xk[j]);
            quad f2 = f(c + h * xk[j]);
            resk += wk[j] * (f1 + f2);
            if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
        }
        resk *= h;
        resg *= h;
        quad err = q_abs(resk - resg);
        quad tol = quad(rel_tol) * q_abs(resk) + quad(abs_floor);
        if (err <= tol || s.depth >= max_depth) {
            total.add(resk);
        } else {
            stack.push_back({s.a, c, s.depth + 1});
            stack.push_back({c, s.b, s.depth + 1});
        }
    }
    return total.value();
}

// Bromwich branch-cut integral for w < 0, 0 < beta < 1, gamma <= 1+beta*delta:
//   E^delta_{beta,gamma}(w) = -(1/pi) int_0^inf e^{-r}
//       Im[ e^{i pi e} r^e (r^beta e^{i pi beta} - w)^{-delta} ] dr
//       (+ (-w)^{-delta} when gamma == 1 + beta*delta)
// with e = beta*delta - gamma. The Laplace image s^{beta delta - gamma} /
// (s^beta - w)^delta has no poles on the principal sheet for w < 0, so the
// cut integral is the whole inversion.
inline quad prabhakar_branch_cut(double beta, double gamma, int delta, quad w,
                                 const SeriesControl& ctl) {
    const quad qb = beta;
    const quad e = qb * quad(delta) - quad(gamma);
    const quad cb = q_cospi(qb), sb = q_sinpi(qb);
    const quad pie = q_pi() * e;
    const bool boundary = q_abs(quad(gamma) - (1.0q + qb * quad(delta))) < 1e-9q;

    auto integrand = [&](quad r) -> quad {
        if (r <= 0.0q) return 0.0q;
        quad rb = q_pow(r, qb);
        quad A = rb * cb - w;  // w < 0, so -w > 0
        quad B = rb * sb;
        quad mod2 = A * A + B * B;
        quad phi = q_atan2(B, A);
        quad lr = q_log(r);
        quad mag = q_exp(e * lr - 0.5q * quad(delta) * q_log(mod2) - r);
        return -mag * q_sin(pie - quad(delta) * phi) / q_pi();
    };

    // flatten the endpoint power r^{e_eff} via r = v^q
    quad e_eff = e;
    if (boundary || q_abs(q_sinpi(quad(gamma) - qb * quad(delta))) < 1e-30q) e_eff = e + qb;
    double qexp = 1.0;
    if (e_eff < 0.0q) qexp = 1.0 / (1.0 + to_double(e_eff));
    const quad qq = qexp;
    auto sub = [&](quad v) -> quad {
        if (v <= 0.0q) return 0.0q;
        if (qexp == 1.0) return integrand(v);
        quad r = q_pow(v, qq);
        return integrand(r) * qq * q_pow(v, qq - 1.0q);
    };
    const double R = 90.0;
    quad upper = q_pow(quad(R), 1.0q / qq);
    quad val = gk_quad(sub, 0.0q, upper, std::max(ctl.rel_tol * 1e-2, 1e-18), 1e-60);
    if (boundary) val += q_pow(-w, -quad(delta));
    return val;
}

// Dispatching evaluator returning 128-bit values; this is what the transient
// module uses internally.
inline quad prabhakar_q(double beta, double gamma, int delta, double w,
                        const SeriesControl& ctl) {
    if (w == 0.0) return q_recip_gamma(quad(gamma));
    if (w > 0.0) return prabhakar_series(beta, gamma, delta, quad(w), ctl);
    if (beta == 1.0) return prabhakar_alpha1_neg(gamma, delta, quad(w), ctl);

    // negative argument, 0 < beta < 1: series while conditioning allows,
    // branch-cut integral beyond
    double cancellation = std::pow(-w, 1.0 / beta);  // log of the largest term
    double wmax_by_region = (beta >= 0.5) ? 50.0 : 20.0;
    if (cancellation <= 45.0 && -w <= wmax_by_region)
        return prabhakar_series(beta, gamma, delta, quad(w), ctl);

    if (gamma <= 1.0 + beta * delta + 1e-12)
        return prabhakar_branch_cut(beta, gamma, delta, quad(w), ctl);
    if (delta == 1) {
        // reduce gamma by beta: E^1_{b,g}(w) = (E^1_{b,g-b}(w) - 1/Gamma(g-b)) / w
        quad inner = prabhakar_q(beta, gamma - beta, 1, w, ctl);
        return (inner - q_recip_gamma(quad(gamma) - quad(beta))) / quad(w);
    }
    throw NonConvergence("mittag_leffler: argument outside series-safe region and no integral "
                         "representation for gamma > 1 + beta*delta with delta > 1");
}

}  // namespace detail

/// Three-parameter Mittag-Leffler function E^delta_{beta,gamma}(w).
inline double mittag_leffler(const MLParams& p, double w, const SeriesControl& ctl = {}) {
    p.validate();
    ctl.validate();
    return detail::to_double(detail::prabhakar_q(p.beta, p.gamma, p.delta, w, ctl));
}

/// Density f_alpha(y, t) = t^{-alpha} M_alpha(y t^{-alpha}) of the inverse
/// alpha-stable subordinator at level t > 0.
inline double subordinator_density(double alpha, double y, double t,
                                   const SeriesControl& ctl = {}) {
    if (!(t > 0)) throw DomainError("subordinator_density: t must be > 0");
    if (y < 0) throw DomainError("subordinator_density: y must be >= 0");
    double ta = std::pow(t, -alpha);
    return ta * wright_m(alpha, y * ta, ctl);
}

}  // namespace fmq
