#include "ovlc/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "ovlc/errors.hpp"

namespace ovlc::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxOrder = 40.0;
constexpr double kNearIntegerOrder = 1e-6;

// Taylor coefficients c_k of 1/Gamma(z) = sum_{k>=1} c_k z^k, k = 1..26.
constexpr std::array<double, 26> kRecipGammaTaylor = {
    1.0,
    0.5772156649015328606065,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.1665386113822914895017,
    -0.04219773455554433674821,
    -0.009621971527876973562115,
    0.007218943246663099542395,
    -0.001165167591859065112114,
    -0.0002152416741149509728157,
    0.0001280502823881161861532,
    -0.00002013485478078823865569,
    -0.000001250493482142670657345,
    0.000001133027231981695882374,
    -2.05633841697760710345e-7,
    6.116095104481415817862e-9,
    5.002007644469222930056e-9,
    -1.181274570487020144588e-9,
    1.043426711691100510492e-10,
    7.78226343990507125405e-12,
    -3.696805618642205708188e-12,
    5.100370287454475979015e-13,
    -2.058326053566506783222e-14,
    -5.34812253942301798237e-15,
    1.226778628238260790159e-15,
    -1.181259301697458769514e-16,
};

// Temme's auxiliary functions for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu),  gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
// evaluated from the even/odd parts of the 1/Gamma Taylor series, so there is no cancellation.
struct TemmeGammas {
    double gam1;
    double gam2;
    double gampl;  // 1/Gamma(1+mu)
    double gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
    const double mu2 = mu * mu;
    double even = 0.0;  // sum over odd k of c_k mu^(k-1)
    double odd = 0.0;   // sum over even k of c_k mu^(k-2)
    for (int k = static_cast<int>(kRecipGammaTaylor.size()); k >= 1; --k) {
        const double c = kRecipGammaTaylor[static_cast<std::size_t>(k - 1)];
        if (k % 2 == 1) {
            even = even * mu2 + c;
        } else {
            odd = odd * mu2 + c;
        }
    }
    // 1/Gamma(1+mu) = even + mu * odd, 1/Gamma(1-mu) = even - mu * odd
    return {-odd, even, even + mu * odd, even - mu * odd};
}

// exp(x) * K_mu(x), exp(x) * K_{mu+1}(x) for |mu| <= 1/2, 0 < x <= 2.
std::pair<double, double> temme_series(double mu, double x) {
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const bool near_integer = std::abs(mu) < kNearIntegerOrder;
    const double fact = near_integer ? 1.0 + pimu * pimu / 6.0 : pimu / std::sin(pimu);
    const double d = -std::log(x2);
    double e = mu * d;
    const double fact2 =
        (near_integer || std::abs(e) < 1e-6) ? 1.0 + e * e / 6.0 * (1.0 + e * e / 20.0)
                                             : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    const double dd = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 10000; ++i) {
        const double di = static_cast<double>(i);
        ff = (di * ff + p + q) / (di * di - mu * mu);
        c *= dd / di;
        p /= (di - mu);
        q /= (di + mu);
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - di * ff);
        if (std::abs(del) < std::abs(sum) * kEps) {
            break;
        }
    }
    const double scale = std::exp(x);
    return {sum * scale, sum1 * (2.0 / x) * scale};
}

// Steed's continued fraction (CF2) for exp(x) K_mu(x), exp(x) K_{mu+1}(x), x > 2.
std::pair<double, double> steed_cf2(double mu, double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        const double di = static_cast<double>(i);
        a -= 2.0 * di;
        c = -a * c / (di + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) {
            break;
        }
    }
    h *= a1;
    const double kmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double kmu1 = kmu * (mu + x + 0.5 - h) / x;
    return {kmu, kmu1};
}

// exp(x) K_nu(x) = mantissa * exp(log_scale), nu >= 0.
struct ScaledK {
    double mantissa;
    double log_scale;
};

ScaledK scaled_k(double nu, double x) {
    const double n = std::floor(nu + 0.5);
    const double mu = nu - n;
    auto [kcur, knext] = x <= 2.0 ? temme_series(mu, x) : steed_cf2(mu, x);
    double log_scale = 0.0;
    constexpr double kRescale = 1e250;
    const double log_rescale = std::log(kRescale);
    const int steps = static_cast<int>(n);
    for (int k = 1; k <= steps; ++k) {
        const double kn = (mu + static_cast<double>(k)) * (2.0 / x) * knext + kcur;
        kcur = knext;
        knext = kn;
        if (knext > kRescale) {
            knext /= kRescale;
            kcur /= kRescale;
            log_scale += log_rescale;
        }
    }
    return {kcur, log_scale};
}

void check_bessel_args(double nu, double x) {
    if (!(x > 0.0) || std::isinf(x)) {
        throw DomainError("bessel_k: argument must be finite and > 0");
    }
    if (!(std::abs(nu) <= kMaxOrder)) {
        throw DomainError("bessel_k: |order| must not exceed 40");
    }
}

// 21-point Gauss-Kronrod rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600017502600, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651483};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod21(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            resg += kWg[j / 2] * sum;
        }
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double ah = std::abs(half);
    resk *= half;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    return {a, b, resk, err};
}

QuadratureResult integrate_finite(const Integrand& f, double lower, double upper,
                                  const QuadratureSpec& spec) {
    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod21(f, lower, upper);
    if (!std::isfinite(first.value)) {
        throw QuadratureError("integrate: integrand produced a non-finite value", first.value,
                              first.error);
    }
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int subdivisions = 1;
    while (total_err > std::max(spec.abs_tolerance, spec.rel_tolerance * std::abs(total))) {
        if (subdivisions >= spec.max_subdivisions) {
            throw QuadratureError("integrate: tolerance not reached within max_subdivisions",
                                  total, total_err);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gauss_kronrod21(f, worst.a, mid);
        Segment right = gauss_kronrod21(f, mid, worst.b);
        if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
            throw QuadratureError("integrate: integrand produced a non-finite value", total,
                                  total_err);
        }
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        if (total_err < 0.0) {
            total_err = 0.0;
        }
    }
    // Re-sum from the segments to shed accumulated update rounding.
    double value = 0.0;
    double err = 0.0;
    std::vector<Segment> segments;
    segments.reserve(heap.size());
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& l, const Segment& r) { return l.a < r.a; });
    for (const Segment& s : segments) {
        value += s.value;
        err += s.error;
    }
    return {value, err, subdivisions};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tolerance > 0.0) || !(rel_tolerance > 0.0)) {
        throw DomainError("QuadratureSpec: tolerances must be strictly positive");
    }
    if (max_subdivisions < 1) {
        throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    }
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma_fn: argument must be > 0");
    }
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) {
        throw OverflowError("gamma_fn: result exceeds the double range");
    }
    return g;
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be > 0");
    }
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double log_bessel_k(double nu, double x) {
    check_bessel_args(nu, x);
    const ScaledK s = scaled_k(std::abs(nu), x);
    return std::log(s.mantissa) + s.log_scale - x;
}

double bessel_k_scaled(double nu, double x) {
    check_bessel_args(nu, x);
    const ScaledK s = scaled_k(std::abs(nu), x);
    const double v = s.mantissa * std::exp(s.log_scale);
    if (!std::isfinite(v)) {
        throw OverflowError("bessel_k_scaled: result exceeds the double range");
    }
    return v;
}

BesselResult bessel_k_checked(double nu, double x) {
    check_bessel_args(nu, x);
    const ScaledK s = scaled_k(std::abs(nu), x);
    const double log_value = std::log(s.mantissa) + s.log_scale - x;
    if (log_value > std::log(std::numeric_limits<double>::max())) {
        return {std::numeric_limits<double>::infinity(), NumStatus::overflow};
    }
    if (log_value < std::log(std::numeric_limits<double>::min())) {
        return {0.0, NumStatus::underflow};
    }
    if (s.log_scale == 0.0 && x <= 2.0) {
        // Avoid the exp/log round trip where the mantissa is already the scaled value.
        return {s.mantissa * std::exp(-x), NumStatus::ok};
    }
    return {std::exp(log_value), NumStatus::ok};
}

double bessel_k(double nu, double x) {
    const BesselResult r = bessel_k_checked(nu, x);
    if (r.status == NumStatus::overflow) {
        throw OverflowError("bessel_k: result exceeds the double range");
    }
    return r.value;
}

double csc_guarded(double x, double pole_epsilon) {
    if (!(pole_epsilon > 0.0)) {
        throw DomainError("csc_guarded: pole_epsilon must be > 0");
    }
    const double k = std::round(x / std::numbers::pi);
    const double distance = std::abs(x - k * std::numbers::pi);
    if (distance <= pole_epsilon) {
        throw PoleError("csc_guarded: argument within pole_epsilon of a multiple of pi", x);
    }
    return 1.0 / std::sin(x);
}

QuadratureResult integrate(const Integrand& f, double lower, double upper,
                           const QuadratureSpec& spec) {
    spec.validate();
    if (std::isnan(lower) || std::isnan(upper) || std::isinf(lower)) {
        throw DomainError("integrate: lower limit must be finite");
    }
    if (upper == lower) {
        return {0.0, 0.0, 0};
    }
    if (std::isinf(upper)) {
        if (upper < 0.0) {
            throw DomainError("integrate: upper limit -inf is not supported");
        }
        if (!spec.infinite_tail_transform) {
            throw DomainError("integrate: infinite upper limit requires infinite_tail_transform");
        }
        const Integrand mapped = [&f, lower](double t) {
            const double one_minus = 1.0 - t;
            const double x = lower + t / one_minus;
            if (std::isinf(x)) {
                return 0.0;
            }
            const double fx = f(x);
            return fx == 0.0 ? 0.0 : fx / (one_minus * one_minus);
        };
        return integrate_finite(mapped, 0.0, 1.0, spec);
    }
    return integrate_finite(f, lower, upper, spec);
}

QuadratureResult integrate_endpoint_singular(const Integrand& f, double lower, double upper,
                                             double p, const QuadratureSpec& spec) {
    if (!(p > 0.0)) {
        throw DomainError("integrate_endpoint_singular: exponent p must be > 0");
    }
    if (p >= 1.0) {
        return integrate(f, lower, upper, spec);
    }
    const double q = 1.0 / p;
    const Integrand mapped = [&f, lower, q](double u) {
        const double uq1 = std::pow(u, q - 1.0);
        return q * uq1 * f(lower + uq1 * u);
    };
    const double u_upper = std::isinf(upper) ? upper : std::pow(upper - lower, p);
    return integrate(mapped, 0.0, u_upper, spec);
}

}  // namespace ovlc::specfun
