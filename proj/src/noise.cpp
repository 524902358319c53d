#include "ovlc/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ovlc/errors.hpp"
#include "ovlc/specfun.hpp"

namespace ovlc::noise {

namespace {

constexpr double kMicron = 1e-6;
constexpr double kGlobalLower = 0.2;  // um
constexpr double kGlobalUpper = 2.0;  // um

// Root of x = 5 (1 - exp(-x)): the stationary point of x^5 / (exp(x) - 1).
double wien_root() {
    double x = 5.0;
    for (int i = 0; i < 50; ++i) {
        const double g = x - 5.0 * (1.0 - std::exp(-x));
        const double dg = 1.0 - 5.0 * std::exp(-x);
        const double step = g / dg;
        x -= step;
        if (std::abs(step) < 1e-15 * x) {
            break;
        }
    }
    return x;
}

}  // namespace

void NoiseEnvironment::validate() const {
    const double positive[] = {electron_charge,         noise_bandwidth,
                               rect_bandwidth_factor,   peak_filter_transmission,
                               concentrator_refractive_index,
                               spectral_lower,          spectral_upper,
                               peak_spectral_irradiance, sun_temperature,
                               planck,                  boltzmann,
                               light_speed,             absolute_temperature,
                               open_loop_gain,          capacitance_per_area,
                               fet_noise_factor,        fet_transconductance,
                               raised_cosine_factor,    conversion_factor};
    for (double v : positive) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("NoiseEnvironment: physical constants must be finite and > 0");
        }
    }
    if (!(spectral_lower < spectral_upper)) {
        throw DomainError("NoiseEnvironment: spectral_lower must be < spectral_upper");
    }
    if (!std::isfinite(fov_halfangle)) {
        throw DomainError("NoiseEnvironment: fov_halfangle must be finite");
    }
}

double blackbody_irradiance(double wavelength_m, double temperature_k,
                            const NoiseEnvironment& constants) {
    if (!(wavelength_m > 0.0) || !(temperature_k > 0.0)) {
        throw DomainError("blackbody_irradiance: wavelength and temperature must be > 0");
    }
    const double h = constants.planck;
    const double c = constants.light_speed;
    const double exponent = h * c / (wavelength_m * constants.boltzmann * temperature_k);
    if (exponent > std::log(std::numeric_limits<double>::max())) {
        throw OverflowError("blackbody_irradiance: exponential overflows");
    }
    return 2.0 * std::numbers::pi * h * c * c /
           (std::pow(wavelength_m, 5) * std::expm1(exponent));
}

double blackbody_peak_wavelength(double temperature_k, const NoiseEnvironment& constants) {
    if (!(temperature_k > 0.0)) {
        throw DomainError("blackbody_peak_wavelength: temperature must be > 0");
    }
    return constants.planck * constants.light_speed /
           (wien_root() * constants.boltzmann * temperature_k);
}

double spectral_fraction(const NoiseEnvironment& env) {
    env.validate();
    const double lo = env.spectral_max_domain == SpectralMaxDomain::window ? env.spectral_lower
                                                                          : kGlobalLower;
    const double hi = env.spectral_max_domain == SpectralMaxDomain::window ? env.spectral_upper
                                                                          : kGlobalUpper;
    // The spectrum is unimodal, so its maximum over [lo, hi] sits at the clamped peak.
    const double peak_um =
        std::clamp(blackbody_peak_wavelength(env.sun_temperature, env) / kMicron, lo, hi);
    const double chi_max = blackbody_irradiance(peak_um * kMicron, env.sun_temperature, env);
    const specfun::Integrand f = [&env, chi_max](double l_um) {
        return env.peak_spectral_irradiance *
               blackbody_irradiance(l_um * kMicron, env.sun_temperature, env) / chi_max;
    };
    specfun::QuadratureSpec spec;
    spec.abs_tolerance = 1e-12;
    spec.rel_tolerance = 1e-12;
    return specfun::integrate(f, env.spectral_lower, env.spectral_upper, spec).value;
}

double shot_variance(const NoiseEnvironment& env, double optical_power, double path_gain,
                     double pd_area, double concentrator_gain) {
    if (optical_power < 0.0 || path_gain < 0.0 || pd_area < 0.0 || concentrator_gain < 0.0) {
        throw DomainError("shot_variance: inputs must be >= 0");
    }
    const double s = std::sin(env.fov_halfangle);
    const double ambient = env.rect_bandwidth_factor * spectral_fraction(env) *
                           env.peak_filter_transmission * pd_area * concentrator_gain * s * s;
    return 2.0 * env.conversion_factor * env.electron_charge * env.noise_bandwidth *
           (optical_power * path_gain + ambient);
}

double thermal_variance(const NoiseEnvironment& env, double pd_area) {
    env.validate();
    if (pd_area < 0.0) {
        throw DomainError("thermal_variance: pd_area must be >= 0");
    }
    const double kt = env.boltzmann * env.absolute_temperature;
    const double wr = env.rect_bandwidth_factor;
    const double eta = env.capacitance_per_area;
    const double feedback = 8.0 * std::numbers::pi * kt / env.open_loop_gain * eta * pd_area * wr * wr;
    const double fet = 16.0 * std::numbers::pi * std::numbers::pi * kt * env.fet_noise_factor /
                       env.fet_transconductance * eta * eta * pd_area * pd_area *
                       env.raised_cosine_factor * wr * wr * wr;
    return feedback + fet;
}

double total_noise_variance(const NoiseEnvironment& env, double optical_power, double path_gain,
                            double pd_area, double concentrator_gain) {
    return shot_variance(env, optical_power, path_gain, pd_area, concentrator_gain) +
           thermal_variance(env, pd_area);
}

channel::AvgSnr average_snr(double conversion_factor, double path_gain, double optical_power,
                            double noise_variance) {
    if (!(noise_variance > 0.0)) {
        throw DomainError("average_snr: noise variance must be > 0");
    }
    const double signal = conversion_factor * path_gain * optical_power;
    return channel::AvgSnr(signal * signal / noise_variance);
}

channel::AvgSnr hop_average_snr(const channel::LinkGeometry& geom, const NoiseEnvironment& env,
                                double optical_power) {
    const double gain = channel::lambertian_gain(geom);
    const double variance =
        total_noise_variance(env, optical_power, gain, geom.pd_area, geom.concentrator_gain);
    return average_snr(env.conversion_factor, gain, optical_power, variance);
}

}  // namespace ovlc::noise
