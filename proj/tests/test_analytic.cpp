#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "golden.hpp"
#include "ovlc/analytic.hpp"
#include "ovlc/errors.hpp"
#include "ovlc/specfun.hpp"
#include "testutil.hpp"

using namespace ovlc;
using namespace ovlc::analytic;
using channel::gg_cdf_snr_paper;
using channel::gg_cdf_snr_reference;

namespace {

const TurbulenceParams kWeak = TurbulenceParams::direct(8.1, 4.0);
const TurbulenceParams kModerate = TurbulenceParams::direct(4.2, 3.0);
const TurbulenceParams kStrong = TurbulenceParams::direct(2.2, 2.0);

RelayScenario make(const TurbulenceParams& t, double gsr, double grd, double r_se = 1.0) {
    return RelayScenario{t, t, AvgSnr(gsr), AvgSnr(grd), r_se, std::nullopt, std::nullopt};
}

RelayScenario make(double a, double b, double gsr, double grd) {
    return make(TurbulenceParams::direct(a, b), gsr, grd);
}

}  // namespace

TEST_CASE("end-to-end snr formulas") {
    CHECK(e2e_snr_exact(0.0, 5.0) == 0.0);
    CHECK(e2e_snr_exact(5.0, 0.0) == 0.0);
    CHECK(e2e_snr_exact(1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(e2e_snr_bound(7.0, 7.0) == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(e2e_snr_bound(7.0, 7.0, BoundMode::min) == 7.0);
    CHECK(e2e_snr_bound(1.0, 1e12) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(e2e_snr_bound(1.0, 1e12, BoundMode::min) == 1.0);
    CHECK(e2e_snr(2.0, 3.0, BoundMode::exact) == e2e_snr_exact(2.0, 3.0));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-6.0, 8.0);
    for (int i = 0; i < 100000; ++i) {
        const double a = std::pow(10.0, u(rng));
        const double b = std::pow(10.0, u(rng));
        const double ex = e2e_snr_exact(a, b);
        const double ha = e2e_snr_bound(a, b, BoundMode::harmonic);
        const double mi = e2e_snr_bound(a, b, BoundMode::min);
        REQUIRE(ex <= ha);
        REQUIRE(ha <= mi);
        REQUIRE(mi <= a);
        REQUIRE(mi <= b);
    }
}

TEST_CASE("bound mode parsing") {
    CHECK(parse_bound_mode("exact") == BoundMode::exact);
    CHECK(parse_bound_mode("harmonic") == BoundMode::harmonic);
    CHECK(parse_bound_mode("min") == BoundMode::min);
    CHECK(std::string(to_string(BoundMode::harmonic)) == "harmonic");
    CHECK_THROWS_AS(parse_bound_mode("max"), DomainError);
}

TEST_CASE("outage threshold") {
    CHECK(outage_threshold(0.5) == 1.0);
    CHECK(outage_threshold(1.0) == 3.0);
    CHECK(make(kWeak, 10, 10, 2.0).outage_threshold() == 15.0);
    CHECK_THROWS_AS(make(kWeak, 10, 10, 0.0).validate(), DomainError);
}

TEST_CASE("selection combining cdf") {
    const Cdf f = [](double x) { return 1.0 - std::exp(-x); };
    const Cdf one = [](double) { return 1.0; };
    const Cdf sq = sc_combine_cdf(f, f);
    const Cdf same = sc_combine_cdf(f, one);
    for (double x : {0.0, 0.1, 1.0, 4.0}) {
        CHECK(sq(x) == doctest::Approx(f(x) * f(x)));
        CHECK(same(x) == f(x));
    }
}

TEST_CASE("paper-form applicability") {
    RelayScenario mixed = make(kWeak, 100, 100);
    mixed.rd_turbulence = kStrong;
    CHECK_FALSE(mixed.paper_form_applicable());
    CHECK_THROWS_AS(e2e_cdf_paper(3.0, mixed), DomainError);
    CHECK_THROWS_AS(e2e_pdf_paper(3.0, mixed), DomainError);
    CHECK_THROWS_AS(ergodic_capacity_paper(mixed), DomainError);
    RelayScenario split = make(kWeak, 100, 100);
    split.snr_rd2 = AvgSnr(50.0);
    CHECK_FALSE(split.paper_form_applicable());
    CHECK(make(kWeak, 100, 30).paper_form_applicable());
}

TEST_CASE("published end-to-end cdf: golden values") {
    for (const auto& r : golden::kCdfE2ePaper) {
        CHECK_MESSAGE(rel_err(e2e_cdf_paper(r.a, make(r.b, r.c, r.d, r.e)), r.f) < 1e-10,
                      "gamma=" << r.a << " alpha=" << r.b);
    }
    CHECK(e2e_cdf_paper(0.0, make(kWeak, 100, 100)) == 0.0);
}

TEST_CASE("published end-to-end cdf: relation to the published per-link cdf") {
    // The printed terms are F_sr, gamma^(s/2+2) F_rd^2 and -gamma^3 F_sr F_rd^2 in terms of the
    // published per-link form, not the plain F_sr + F_rd^2 - F_sr F_rd^2 combination.
    for (const auto& t : {kWeak, kModerate, kStrong}) {
        const double s = t.alpha() + t.beta();
        for (double g : {0.5, 1.0, 3.0, 10.0}) {
            const RelayScenario sc = make(t, 100.0, 30.0);
            const double fs = gg_cdf_snr_paper(g, t, sc.snr_sr);
            const double fr = gg_cdf_snr_paper(g, t, sc.snr_rd);
            const double rebuilt =
                fs + std::pow(g, s / 2.0 + 2.0) * fr * fr - g * g * g * fs * fr * fr;
            CHECK(rel_err(e2e_cdf_paper(g, sc), rebuilt) < 1e-9);
        }
    }
}

TEST_CASE("published end-to-end pdf: golden values") {
    for (const auto& r : golden::kPdfE2ePaper) {
        CHECK(rel_err(e2e_pdf_paper(r.a, make(r.b, r.c, r.d, r.e)), r.f) < 1e-10);
    }
    CHECK_THROWS_AS(e2e_pdf_paper(0.0, make(kWeak, 100, 100)), DomainError);
}

TEST_CASE("published forms stay finite across the discrepancy grid") {
    for (const auto& t : {kWeak, kModerate, kStrong}) {
        for (double gbar : {10.0, 100.0, 1000.0}) {
            for (double g = 0.01; g <= 100.0; g *= 1.2589) {
                CHECK(std::isfinite(e2e_cdf_paper(g, make(t, gbar, gbar))));
                CHECK(std::isfinite(e2e_pdf_paper(g, make(t, gbar, gbar))));
            }
        }
    }
}

TEST_CASE("reference cdf: golden values, min mode") {
    for (const auto& r : golden::kCdfE2eRefMin) {
        CHECK_MESSAGE(rel_err(e2e_cdf_reference(r.a, make(r.b, r.c, r.d, r.e)), r.f) < 1e-9,
                      "gamma=" << r.a << " alpha=" << r.b);
    }
}

TEST_CASE("reference cdf: golden values, harmonic and exact modes") {
    const RelayScenario sc = make(kWeak, 100, 100);
    CHECK(rel_err(e2e_cdf_reference(3.0, sc, BoundMode::harmonic),
                  golden::kCdfE2eHarmonic_3_81_4_100) < 1e-7);
    CHECK(rel_err(e2e_cdf_reference(3.0, sc, BoundMode::exact), golden::kCdfE2eExact_3_81_4_100) <
          1e-7);
}

TEST_CASE("reference cdf: mode ordering") {
    for (const auto& t : {kWeak, kStrong}) {
        for (double g : {0.5, 3.0, 20.0}) {
            const RelayScenario sc = make(t, 50.0, 200.0);
            const double mi = e2e_cdf_reference(g, sc, BoundMode::min);
            const double ha = e2e_cdf_reference(g, sc, BoundMode::harmonic);
            const double ex = e2e_cdf_reference(g, sc, BoundMode::exact);
            CHECK(mi <= ha);
            CHECK(ha <= ex);
        }
    }
}

TEST_CASE("reference cdf: limits") {
    const RelayScenario sc = make(kModerate, 100, 100);
    CHECK(e2e_cdf_reference(0.0, sc) == 0.0);
    CHECK(std::abs(e2e_cdf_reference(1e8, sc) - 1.0) < 1e-9);
    for (double g : {0.3, 3.0, 30.0}) {
        RelayScenario inf_sr = make(kModerate, 1e12, 100);
        const double frd = gg_cdf_snr_reference(g, kModerate, AvgSnr(100.0));
        CHECK(std::abs(e2e_cdf_reference(g, inf_sr) - frd * frd) < 1e-6);
    }
}

TEST_CASE("reference cdf: valid distribution, density consistent") {
    for (const auto& t : {kWeak, kModerate, kStrong}) {
        const RelayScenario sc = make(t, 100.0, 40.0);
        double prev = 0.0;
        for (double g = 1e-3; g < 1e5; g *= 1.4) {
            const double f = e2e_cdf_reference(g, sc);
            CHECK(f >= prev);
            CHECK(f <= 1.0);
            CHECK(std::abs(f + e2e_sf_reference(g, sc) - 1.0) < 1e-12);
            prev = f;
        }
        for (double g : {0.2, 2.0, 15.0, 90.0}) {
            const double h = 1e-4 * g;
            const double fd = (e2e_cdf_reference(g + h, sc) - e2e_cdf_reference(g - h, sc)) / (2 * h);
            CHECK(fd >= 0.0);
            CHECK(rel_err(fd, e2e_pdf_reference(g, sc)) < 1e-4);
        }
        specfun::QuadratureSpec spec;
        spec.rel_tolerance = 1e-10;
        const auto mass = specfun::integrate_endpoint_singular(
            [&](double g) { return e2e_pdf_reference(g, sc); }, 0.0,
            std::numeric_limits<double>::infinity(), (t.alpha() + t.beta()) / 4.0 > 1.0 ? 1.0 : 0.5,
            spec);
        CHECK(std::abs(mass.value - 1.0) < 1e-7);
    }
}

TEST_CASE("outage probability") {
    const RelayScenario sc = make(kWeak, 100, 100);
    CHECK(rel_err(outage_probability(sc, Form::reference), golden::kCdfE2eRefMin[0].f) < 1e-9);
    CHECK(outage_probability(sc, Form::paper) == e2e_cdf_paper(3.0, sc));

    // Strictly decreasing in average SNR, both hops scaled together.
    for (const auto& t : {kWeak, kModerate, kStrong}) {
        double prev = 2.0;
        for (double db = 0.0; db <= 40.0; db += 2.0) {
            const double gb = std::pow(10.0, db / 10.0);
            const double p = outage_probability(make(t, gb, gb), Form::reference);
            CHECK(p < prev);
            prev = p;
        }
    }
    // Regime ordering once the average SNR clears the threshold (gamma_out = 3, 4.8 dB).
    for (double db = 6.0; db <= 40.0; db += 2.0) {
        const double gb = std::pow(10.0, db / 10.0);
        const double w = outage_probability(make(kWeak, gb, gb), Form::reference);
        const double m = outage_probability(make(kModerate, gb, gb), Form::reference);
        const double s = outage_probability(make(kStrong, gb, gb), Form::reference);
        CHECK(w <= m);
        CHECK(m <= s);
    }
}

TEST_CASE("outage: regime ordering reverses below the threshold") {
    // With the average SNR under gamma_out, heavier fading puts more mass above the threshold.
    const double gb = 1.0;
    const double w = outage_probability(make(kWeak, gb, gb), Form::reference);
    const double s = outage_probability(make(kStrong, gb, gb), Form::reference);
    CHECK(w > s);
}

TEST_CASE("capacity by quadrature") {
    const auto w = ergodic_capacity_quadrature(make(kWeak, 100, 100));
    CHECK(rel_err(w.value, golden::kCapacityMin_81_4_100) < 1e-8);
    CHECK(w.error_estimate < 1e-8);
    CHECK(w.tail >= 0.0);
    CHECK(w.truncation_point > 100.0);
    const auto s = ergodic_capacity_quadrature(make(kStrong, 100, 100));
    CHECK(rel_err(s.value, golden::kCapacityMin_22_2_100) < 1e-8);

    // Vanishing SNR -> 0.
    const auto tiny = ergodic_capacity_quadrature(make(kWeak, 1e-10, 1e-10));
    CHECK(tiny.value >= 0.0);
    CHECK(tiny.value < 1e-9);

    // Jensen: C <= log2(1 + E[gamma_D]), E from the survival function.
    for (const auto& t : {kWeak, kStrong}) {
        const RelayScenario sc = make(t, 100, 100);
        const auto mean = specfun::integrate([&](double g) { return e2e_sf_reference(g, sc); }, 0.0,
                                             std::numeric_limits<double>::infinity());
        CHECK(ergodic_capacity_quadrature(sc).value <= std::log2(1.0 + mean.value));
    }
}

TEST_CASE("capacity by quadrature: ordering") {
    for (double db = 0.0; db <= 40.0; db += 4.0) {
        const double gb = std::pow(10.0, db / 10.0);
        const double w = ergodic_capacity_quadrature(make(kWeak, gb, gb)).value;
        const double m = ergodic_capacity_quadrature(make(kModerate, gb, gb)).value;
        const double s = ergodic_capacity_quadrature(make(kStrong, gb, gb)).value;
        CHECK(w >= m);
        CHECK(m >= s);
    }
}

TEST_CASE("capacity constants") {
    const auto c = capacity_constants(make(kStrong, 50, 50));
    const auto& g = golden::kCapacityConstants_22_2_50[0];
    CHECK(rel_err(c.p, g.a) < 1e-12);
    CHECK(rel_err(c.q, g.b) < 1e-12);
    CHECK(rel_err(c.r, g.c) < 1e-12);
    CHECK(rel_err(c.a, g.d) < 1e-12);
    CHECK(rel_err(c.b, g.e) < 1e-12);
    CHECK(c.a == c.b);

    const auto d = capacity_constants(make(kWeak, 100, 1000));
    const auto& h = golden::kCapacityConstants_81_4_100_1000[0];
    CHECK(rel_err(d.p, h.a) < 1e-12);
    CHECK(rel_err(d.q, h.b) < 1e-12);
    CHECK(rel_err(d.r, h.c) < 1e-12);
    CHECK(rel_err(d.a, h.d) < 1e-12);
    CHECK(rel_err(d.b, h.e) < 1e-12);

    // Q/R = (alpha beta / sqrt(gbar_sr))^(-(alpha+beta)/2) Gamma(alpha) Gamma(beta) / 4
    const double ab = 8.1 * 4.0;
    const double ratio = std::pow(ab / std::sqrt(100.0), -(8.1 + 4.0) / 2.0) *
                         std::tgamma(8.1) * std::tgamma(4.0) / 4.0;
    CHECK(rel_err(d.q / d.r, ratio) < 1e-12);
}

TEST_CASE("published capacity") {
    CHECK(rel_err(ergodic_capacity_paper(make(kWeak, 100, 100)), golden::kCapacityPaper_81_4_100) <
          1e-10);
    CHECK(rel_err(ergodic_capacity_paper(make(kStrong, 50, 50)), golden::kCapacityPaper_22_2_50) <
          1e-10);
    CHECK(rel_err(ergodic_capacity_paper(make(kModerate, 20, 200), 3.0),
                  golden::kCapacityPaper_42_3_20_200_x3) < 1e-10);
    // alpha + beta = 4 puts csc(3 (alpha+beta) pi / 4) on a pole.
    CHECK_THROWS_AS(ergodic_capacity_paper(make(2.5, 1.5, 100, 100)), PoleError);
    CHECK_THROWS_AS(ergodic_capacity_paper(make(3.0, 3.0, 100, 100)), PoleError);
    CHECK_NOTHROW(ergodic_capacity_paper(make(2.5, 1.5 + 1e-6, 100, 100)));
}
