#pragma once

#include <initializer_list>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ovlc::channel {

/// Line-of-sight geometry of one LED -> photodetector hop.
struct LinkGeometry {
    double lambertian_order = 1.0;   // m
    double pd_area = 1e-4;           // A [m^2]
    double distance = 10.0;          // d_i [m]
    double irradiance_angle = 0.0;   // phi_i [rad]
    double incidence_angle = 0.0;    // psi_i [rad]
    double filter_gain = 1.0;        // T_f
    double concentrator_gain = 1.0;  // T_c
    double fov = std::numbers::pi / 3.0;  // Psi [rad]
    /// Exponent of d_i in the gain denominator. 1 reproduces the published gain expression;
    /// 2 gives the conventional inverse-square law.
    double distance_exponent = 1.0;

    /// Throws DomainError on a violated invariant.
    void validate() const;
};

/// Lambertian DC gain (m+1) A / (2 pi d^e) cos^m(phi) cos(psi) T_f T_c, or 0 outside the FoV.
double lambertian_gain(const LinkGeometry& geom);

/// Physical turbulence description for a spherical wave.
struct PhysicalTurbulence {
    double cn2 = 1e-14;          // refractive-index structure constant [m^-2/3]
    double wavelength = 520e-9;  // [m]
    double aperture = 0.01;      // receiver aperture diameter D [m]
    double path_length = 50.0;   // [m]
    double beta_xi = 1.0;        // constant multiplying kappa^(12/5) in the beta denominator
};

struct RytovParameters {
    double alpha = 0.0;
    double beta = 0.0;
    double kappa = 0.0;  // Rytov variance
    double rho = 0.0;
    /// Set when alpha or beta exceeds kWeakTurbulenceShape (fading is effectively absent).
    bool weak_limit = false;
};

inline constexpr double kWeakTurbulenceShape = 1e6;

/// Shape parameters of the Gamma-Gamma model from C_n^2, wavelength, aperture and path length.
///
///   kappa = 0.5 d^(11/6) C_n^2 (2 pi / lambda)
///   rho   = sqrt(2 pi k D^2 / (4 lambda) * d),  k = 2 pi / lambda
///   alpha = 1 / (exp(0.49 kappa^2 / (1 + 0.18 rho^2 + 0.56 kappa^(12/5))^(7/6)) - 1)
///   beta  = 1 / (exp(0.51 kappa^2 (1 + 0.69 kappa^(12/5))^(-5/6)
///                    / (1 + 0.9 rho^2 + 0.62 xi^2 kappa^(12/5))^(5/6)) - 1)
///
/// The exp(.) - 1 terms use expm1, so vanishing turbulence yields large finite shapes with
/// weak_limit set rather than infinities; shapes are capped at 1e300. Throws DomainError for
/// non-positive inputs and OverflowError if an exponential argument overflows.
RytovParameters alpha_beta_from_physics(double cn2, double wavelength, double aperture,
                                        double path_length, double beta_xi = 1.0);

/// Gamma-Gamma shape parameters, optionally tied to a physical description.
class TurbulenceParams {
public:
    static TurbulenceParams direct(double alpha, double beta);
    static TurbulenceParams from_physics(const PhysicalTurbulence& physical);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    const std::optional<PhysicalTurbulence>& physical() const noexcept { return physical_; }
    bool weak_limit() const noexcept { return weak_limit_; }

    bool same_shape(const TurbulenceParams& other) const noexcept {
        return alpha_ == other.alpha_ && beta_ == other.beta_;
    }

private:
    TurbulenceParams(double alpha, double beta, std::optional<PhysicalTurbulence> physical,
                     bool weak_limit);

    double alpha_;
    double beta_;
    std::optional<PhysicalTurbulence> physical_;
    bool weak_limit_ = false;
};

/// Average electrical SNR of a hop (linear, > 0).
class AvgSnr {
public:
    explicit AvgSnr(double value);
    static AvgSnr from_db(double db);

    double value() const noexcept { return value_; }
    double db() const;

private:
    double value_;
};

/// Gamma-Gamma density of the unit-mean fading coefficient h.
double gg_pdf_h(double h, const TurbulenceParams& params);

/// P(h <= t) by adaptive quadrature of gg_pdf_h.
double gg_cdf_h(double t, const TurbulenceParams& params);

/// P(h > t), computed without cancellation in the upper tail.
double gg_sf_h(double t, const TurbulenceParams& params);

/// gg_cdf_h at every point of an ascending sequence, accumulated interval by interval.
std::vector<double> gg_cdf_h_sorted(std::span<const double> ascending,
                                    const TurbulenceParams& params);

/// Density of gamma = avg * h^2 in the published closed form.
double gg_pdf_snr(double gamma, const TurbulenceParams& params, AvgSnr avg);

/// The published closed-form per-link SNR CDF, evaluated exactly as printed without clamping.
/// Not a true CDF; see gg_cdf_snr_reference.
double gg_cdf_snr_paper(double gamma, const TurbulenceParams& params, AvgSnr avg);

/// Exact per-link SNR CDF, the quadrature of gg_pdf_snr from 0 to gamma.
double gg_cdf_snr_reference(double gamma, const TurbulenceParams& params, AvgSnr avg);

/// 1 - gg_cdf_snr_reference, accurate in the upper tail.
double gg_sf_snr_reference(double gamma, const TurbulenceParams& params, AvgSnr avg);

namespace detail {

/// sign * exp(log_coef) * x^power * prod_i K_order(scale_i * x^root)^exponent_i.
///
/// At x == 0 the small-argument limit of K is used, so the result is 0, +-inf or the finite
/// limit depending on the net power of x.
double power_bessel_product(double x, double sign, double log_coef, double power, double order,
                            double root,
                            std::initializer_list<std::pair<double, double>> scale_exponent);

}  // namespace detail

}  // namespace ovlc::channel
