#pragma once

#include <functional>

namespace ovlc::specfun {

/// Numerical status attached to results that can leave the double range.
enum class NumStatus { ok, underflow, overflow };

/// Controls for the adaptive Gauss-Kronrod integrator.
struct QuadratureSpec {
    double abs_tolerance = 1e-12;
    double rel_tolerance = 1e-10;
    int max_subdivisions = 2000;
    /// Map [a, inf) onto [0, 1) with x = a + t / (1 - t) when the upper limit is infinite.
    /// When false an infinite upper limit is rejected.
    bool infinite_tail_transform = true;

    /// Throws DomainError when a tolerance is not strictly positive or max_subdivisions < 1.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Gamma function for x > 0. Throws DomainError for x <= 0 and OverflowError past ~171.6.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

struct BesselResult {
    double value = 0.0;
    NumStatus status = NumStatus::ok;
};

/// Modified Bessel function of the second kind K_nu(x), real order |nu| <= 40, x > 0.
///
/// The order is symmetrized on entry (K_nu == K_-nu). Small arguments (x <= 2) use Temme's
/// series for K_mu, K_mu+1 with |mu| <= 1/2; larger arguments use Steed's continued fraction.
/// Both are lifted to the requested order by forward recurrence. The Temme coefficients come
/// from the Taylor series of 1/Gamma, so orders close to an integer lose no precision; below
/// |nu - round(nu)| < 1e-6 the remaining mu/sin(mu) style factors switch to their limits.
///
/// Underflow returns 0 with NumStatus::underflow. Overflow returns +inf with
/// NumStatus::overflow; callers decide whether that is fatal.
BesselResult bessel_k_checked(double nu, double x);

/// K_nu(x). Underflow gives 0; overflow throws OverflowError.
double bessel_k(double nu, double x);

/// exp(x) * K_nu(x); finite wherever K_nu(x) is nonzero and log_bessel_k is finite.
double bessel_k_scaled(double nu, double x);

/// log K_nu(x), valid far beyond the range where K_nu itself is representable.
double log_bessel_k(double nu, double x);

/// 1/sin(x), throwing PoleError when |x - k*pi| <= pole_epsilon for some integer k.
double csc_guarded(double x, double pole_epsilon = 1e-9);

/// Globally adaptive 21-point Gauss-Kronrod quadrature of f over [lower, upper].
///
/// upper may be +infinity (see QuadratureSpec::infinite_tail_transform). The rule never
/// evaluates f at the interval endpoints, so integrable endpoint singularities are allowed.
/// Throws QuadratureError, carrying the best estimate, if the tolerance
/// max(abs_tolerance, rel_tolerance * |value|) is not met within max_subdivisions.
QuadratureResult integrate(const Integrand& f, double lower, double upper,
                           const QuadratureSpec& spec = {});

/// Same as integrate, for integrands that behave like (x - lower)^(p - 1), p > 0, near the
/// lower limit. For p < 1 the substitution x = lower + u^(1/p) removes the singularity.
QuadratureResult integrate_endpoint_singular(const Integrand& f, double lower, double upper,
                                             double p, const QuadratureSpec& spec = {});

}  // namespace ovlc::specfun
