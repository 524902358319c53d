#include "ovlc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ovlc/errors.hpp"
#include "ovlc/specfun.hpp"

namespace ovlc::channel {

namespace {

constexpr double kShapeCap = 1e300;

specfun::QuadratureSpec reference_quadrature() {
    specfun::QuadratureSpec spec;
    spec.abs_tolerance = 1e-15;
    spec.rel_tolerance = 1e-11;
    spec.max_subdivisions = 4000;
    return spec;
}

// Small-argument limit of K_order(z) as a multiplicative constant times z^-order (order > 0).
double log_k_small_argument_constant(double order) {
    return specfun::log_gamma(order) - std::log(2.0) + order * std::log(2.0);
}

double shape_from_exponent(double exponent) {
    if (!std::isfinite(exponent) || exponent > std::log(std::numeric_limits<double>::max())) {
        throw OverflowError("alpha_beta_from_physics: exponential argument overflows");
    }
    const double denom = std::expm1(exponent);
    if (!(denom > 0.0)) {
        return kShapeCap;
    }
    return std::min(1.0 / denom, kShapeCap);
}

double integrate_pdf_h(const TurbulenceParams& params, double lower, double upper) {
    const specfun::Integrand f = [&params](double h) { return gg_pdf_h(h, params); };
    if (lower == 0.0) {
        return specfun::integrate_endpoint_singular(f, 0.0, upper,
                                                    std::min(params.alpha(), params.beta()),
                                                    reference_quadrature())
            .value;
    }
    return specfun::integrate(f, lower, upper, reference_quadrature()).value;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

void LinkGeometry::validate() const {
    if (!(lambertian_order > 0.0)) {
        throw DomainError("LinkGeometry: lambertian_order must be > 0");
    }
    if (!(pd_area > 0.0)) {
        throw DomainError("LinkGeometry: pd_area must be > 0");
    }
    if (!(distance > 0.0)) {
        throw DomainError("LinkGeometry: distance must be > 0");
    }
    if (!(fov >= 0.0 && fov <= std::numbers::pi / 2.0)) {
        throw DomainError("LinkGeometry: fov must lie in [0, pi/2]");
    }
    if (!(filter_gain >= 0.0) || !(concentrator_gain >= 0.0)) {
        throw DomainError("LinkGeometry: filter and concentrator gains must be >= 0");
    }
    if (!(distance_exponent > 0.0)) {
        throw DomainError("LinkGeometry: distance_exponent must be > 0");
    }
    if (!std::isfinite(irradiance_angle) || !std::isfinite(incidence_angle)) {
        throw DomainError("LinkGeometry: angles must be finite");
    }
}

double lambertian_gain(const LinkGeometry& geom) {
    geom.validate();
    if (geom.incidence_angle > geom.fov) {
        return 0.0;
    }
    const double m = geom.lambertian_order;
    return (m + 1.0) * geom.pd_area /
           (2.0 * std::numbers::pi * std::pow(geom.distance, geom.distance_exponent)) *
           std::pow(std::cos(geom.irradiance_angle), m) * std::cos(geom.incidence_angle) *
           geom.filter_gain * geom.concentrator_gain;
}

RytovParameters alpha_beta_from_physics(double cn2, double wavelength, double aperture,
                                        double path_length, double beta_xi) {
    if (!(cn2 > 0.0) || !(wavelength > 0.0) || !(aperture > 0.0) || !(path_length > 0.0)) {
        throw DomainError("alpha_beta_from_physics: inputs must be strictly positive");
    }
    const double wavenumber = 2.0 * std::numbers::pi / wavelength;
    RytovParameters out;
    out.kappa = 0.5 * std::pow(path_length, 11.0 / 6.0) * cn2 * wavenumber;
    out.rho = std::sqrt(2.0 * std::numbers::pi * wavenumber * aperture * aperture /
                        (4.0 * wavelength) * path_length);
    const double k2 = out.kappa * out.kappa;
    const double k125 = std::pow(out.kappa, 12.0 / 5.0);
    const double rho2 = out.rho * out.rho;
    const double alpha_exp = 0.49 * k2 / std::pow(1.0 + 0.18 * rho2 + 0.56 * k125, 7.0 / 6.0);
    const double beta_exp = 0.51 * k2 * std::pow(1.0 + 0.69 * k125, -5.0 / 6.0) /
                            std::pow(1.0 + 0.9 * rho2 + 0.62 * beta_xi * beta_xi * k125,
                                     5.0 / 6.0);
    out.alpha = shape_from_exponent(alpha_exp);
    out.beta = shape_from_exponent(beta_exp);
    out.weak_limit = out.alpha > kWeakTurbulenceShape || out.beta > kWeakTurbulenceShape;
    return out;
}

TurbulenceParams::TurbulenceParams(double alpha, double beta,
                                   std::optional<PhysicalTurbulence> physical, bool weak_limit)
    : alpha_(alpha), beta_(beta), physical_(std::move(physical)), weak_limit_(weak_limit) {
    if (!(alpha_ > 0.0) || !(beta_ > 0.0) || !std::isfinite(alpha_) || !std::isfinite(beta_)) {
        throw DomainError("TurbulenceParams: alpha and beta must be finite and > 0");
    }
}

TurbulenceParams TurbulenceParams::direct(double alpha, double beta) {
    return {alpha, beta, std::nullopt,
            alpha > kWeakTurbulenceShape || beta > kWeakTurbulenceShape};
}

TurbulenceParams TurbulenceParams::from_physics(const PhysicalTurbulence& physical) {
    const RytovParameters r = alpha_beta_from_physics(
        physical.cn2, physical.wavelength, physical.aperture, physical.path_length,
        physical.beta_xi);
    return {r.alpha, r.beta, physical, r.weak_limit};
}

AvgSnr::AvgSnr(double value) : value_(value) {
    if (!(value_ > 0.0) || !std::isfinite(value_)) {
        throw DomainError("AvgSnr: average SNR must be finite and > 0");
    }
}

AvgSnr AvgSnr::from_db(double db) { return AvgSnr(std::pow(10.0, db / 10.0)); }

double AvgSnr::db() const { return 10.0 * std::log10(value_); }

namespace detail {

double power_bessel_product(double x, double sign, double log_coef, double power, double order,
                            double root,
                            std::initializer_list<std::pair<double, double>> scale_exponent) {
    if (x < 0.0 || std::isnan(x)) {
        throw DomainError("power_bessel_product: argument must be >= 0");
    }
    const double nu = std::abs(order);
    if (x == 0.0) {
        double k_power = 0.0;
        for (const auto& se : scale_exponent) {
            k_power += se.second;
        }
        if (nu == 0.0) {
            // K_0 diverges logarithmically.
            if (power > 0.0) {
                return 0.0;
            }
            return k_power == 0.0 && power == 0.0 ? sign * std::exp(log_coef)
                                                  : sign * std::numeric_limits<double>::infinity();
        }
        const double net = power - root * nu * k_power;
        if (net > 1e-12) {
            return 0.0;
        }
        if (net < -1e-12) {
            return sign * std::numeric_limits<double>::infinity();
        }
        double log_value = log_coef;
        const double log_c = log_k_small_argument_constant(nu);
        for (const auto& [scale, exponent] : scale_exponent) {
            log_value += exponent * (log_c - nu * std::log(scale));
        }
        return sign * std::exp(log_value);
    }
    const double log_x = std::log(x);
    double log_value = log_coef + power * log_x;
    const double x_root = std::exp(root * log_x);
    for (const auto& [scale, exponent] : scale_exponent) {
        log_value += exponent * specfun::log_bessel_k(nu, scale * x_root);
    }
    return sign * std::exp(log_value);
}

}  // namespace detail

double gg_pdf_h(double h, const TurbulenceParams& params) {
    if (h < 0.0 || std::isnan(h)) {
        throw DomainError("gg_pdf_h: h must be >= 0");
    }
    if (std::isinf(h)) {
        return 0.0;
    }
    const double a = params.alpha();
    const double b = params.beta();
    const double log_coef = std::log(2.0) + 0.5 * (a + b) * std::log(a * b) -
                            specfun::log_gamma(a) - specfun::log_gamma(b);
    return detail::power_bessel_product(h, 1.0, log_coef, 0.5 * (a + b) - 1.0, a - b, 0.5,
                                        {{2.0 * std::sqrt(a * b), 1.0}});
}

double gg_cdf_h(double t, const TurbulenceParams& params) {
    if (std::isnan(t)) {
        throw DomainError("gg_cdf_h: argument is NaN");
    }
    if (t <= 0.0) {
        return 0.0;
    }
    if (std::isinf(t)) {
        return 1.0;
    }
    if (t <= 1.0) {
        return clamp_probability(integrate_pdf_h(params, 0.0, t));
    }
    return clamp_probability(1.0 - integrate_pdf_h(params, t, std::numeric_limits<double>::infinity()));
}

double gg_sf_h(double t, const TurbulenceParams& params) {
    if (std::isnan(t)) {
        throw DomainError("gg_sf_h: argument is NaN");
    }
    if (t <= 0.0) {
        return 1.0;
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    if (t <= 1.0) {
        return clamp_probability(1.0 - integrate_pdf_h(params, 0.0, t));
    }
    return clamp_probability(integrate_pdf_h(params, t, std::numeric_limits<double>::infinity()));
}

std::vector<double> gg_cdf_h_sorted(std::span<const double> ascending,
                                    const TurbulenceParams& params) {
    std::vector<double> out;
    out.reserve(ascending.size());
    if (ascending.empty()) {
        return out;
    }
    double previous = std::max(ascending.front(), 0.0);
    double cdf = gg_cdf_h(previous, params);
    out.push_back(cdf);
    for (std::size_t i = 1; i < ascending.size(); ++i) {
        const double x = std::max(ascending[i], 0.0);
        if (x < previous) {
            throw DomainError("gg_cdf_h_sorted: points must be ascending");
        }
        if (x > previous) {
            cdf += integrate_pdf_h(params, previous, x);
            previous = x;
        }
        out.push_back(clamp_probability(cdf));
    }
    return out;
}

double gg_pdf_snr(double gamma, const TurbulenceParams& params, AvgSnr avg) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("gg_pdf_snr: gamma must be >= 0");
    }
    if (std::isinf(gamma)) {
        return 0.0;
    }
    const double a = params.alpha();
    const double b = params.beta();
    const double ratio = a * b / std::sqrt(avg.value());
    const double log_coef =
        0.5 * (a + b) * std::log(ratio) - specfun::log_gamma(a) - specfun::log_gamma(b);
    return detail::power_bessel_product(gamma, 1.0, log_coef, 0.25 * (a + b) - 1.0, a - b, 0.25,
                                        {{2.0 * std::sqrt(ratio), 1.0}});
}

double gg_cdf_snr_paper(double gamma, const TurbulenceParams& params, AvgSnr avg) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("gg_cdf_snr_paper: gamma must be >= 0");
    }
    const double a = params.alpha();
    const double b = params.beta();
    const double ratio = a * b / std::sqrt(avg.value());
    const double log_coef = std::log(4.0) + 0.5 * (a + b) * std::log(ratio) - std::log(a + b) -
                            specfun::log_gamma(a) - specfun::log_gamma(b);
    // Bessel argument 2 sqrt(sqrt(a b gamma) / sqrt(avg)) = 2 (a b / avg)^(1/4) gamma^(1/4)
    const double scale = 2.0 * std::sqrt(std::sqrt(a * b) / std::sqrt(avg.value()));
    return detail::power_bessel_product(gamma, 1.0, log_coef, 0.25 * (a + b) - 1.0, a - b, 0.25,
                                        {{scale, 1.0}});
}

double gg_cdf_snr_reference(double gamma, const TurbulenceParams& params, AvgSnr avg) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("gg_cdf_snr_reference: gamma must be >= 0");
    }
    return gg_cdf_h(std::sqrt(gamma / avg.value()), params);
}

double gg_sf_snr_reference(double gamma, const TurbulenceParams& params, AvgSnr avg) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("gg_sf_snr_reference: gamma must be >= 0");
    }
    return gg_sf_h(std::sqrt(gamma / avg.value()), params);
}

}  // namespace ovlc::channel
