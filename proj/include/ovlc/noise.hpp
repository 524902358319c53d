#pragma once

#include <numbers>

#include "ovlc/channel.hpp"

namespace ovlc::noise {

/// Window over which the blackbody spectrum is normalized in spectral_fraction.
enum class SpectralMaxDomain {
    window,  // [spectral_lower, spectral_upper]
    global,  // [0.2, 2] um
};

/// Receiver noise constants. Defaults are standard physical constants and common
/// photodetector-receiver values; every field can be overridden from a scenario file.
struct NoiseEnvironment {
    double electron_charge = 1.602e-19;              // Q [C]
    double noise_bandwidth = 50e6;                   // W_n [Hz]
    double rect_bandwidth_factor = 0.562;            // W_R
    double peak_filter_transmission = 1.0;           // T_0
    double concentrator_refractive_index = 1.5;      // n_i (carried, not used by the formulas)
    double fov_halfangle = std::numbers::pi / 3.0;   // argument of the sin^2 factor [rad]
    double spectral_lower = 0.38;                    // l_1 [um]
    double spectral_upper = 0.78;                    // l_2 [um]
    double peak_spectral_irradiance = 1000.0;        // S_peak [W/m^2]
    double sun_temperature = 5778.0;                 // T_B [K]
    double planck = 6.626e-34;                       // [J s]
    double boltzmann = 1.381e-23;                    // [J/K]
    double light_speed = 2.998e8;                    // [m/s]
    double absolute_temperature = 298.0;             // T_a [K]
    double open_loop_gain = 10.0;                    // G
    double capacitance_per_area = 112e-8;            // eta [F/m^2]
    double fet_noise_factor = 1.5;                   // Omega
    double fet_transconductance = 30e-3;             // g_m [S]
    double raised_cosine_factor = 0.0868;            // W_RC
    double conversion_factor = 0.54;                 // g, optoelectronic conversion [A/W]
    SpectralMaxDomain spectral_max_domain = SpectralMaxDomain::window;

    /// Throws DomainError unless every physical constant is > 0 and l_1 < l_2.
    void validate() const;
};

/// Blackbody spectral irradiance 2 pi nu c^2 / (lambda^5 (exp(nu c / (lambda k T)) - 1)),
/// with nu = Planck's constant. lambda in metres. Throws OverflowError when the exponential
/// overflows.
double blackbody_irradiance(double wavelength_m, double temperature_k,
                            const NoiseEnvironment& constants = {});

/// Wavelength [m] maximizing blackbody_irradiance at the given temperature.
double blackbody_peak_wavelength(double temperature_k, const NoiseEnvironment& constants = {});

/// Spectral fraction xi = integral over [l_1, l_2] (um) of S_peak * chi / max chi.
double spectral_fraction(const NoiseEnvironment& env);

/// Ambient shot-noise variance 2 g Q W_n [P h + W_R xi T_0 A T_c sin^2(fov_halfangle)].
double shot_variance(const NoiseEnvironment& env, double optical_power, double path_gain,
                     double pd_area, double concentrator_gain = 1.0);

/// Thermal-noise variance: feedback-resistor term plus FET channel term.
double thermal_variance(const NoiseEnvironment& env, double pd_area);

double total_noise_variance(const NoiseEnvironment& env, double optical_power, double path_gain,
                            double pd_area, double concentrator_gain = 1.0);

/// (g h P)^2 / sigma^2. Throws DomainError unless sigma^2 > 0.
channel::AvgSnr average_snr(double conversion_factor, double path_gain, double optical_power,
                            double noise_variance);

/// Full chain geometry -> Lambertian gain -> noise budget -> average SNR for one hop.
channel::AvgSnr hop_average_snr(const channel::LinkGeometry& geom, const NoiseEnvironment& env,
                                double optical_power);

}  // namespace ovlc::noise
