#pragma once

// Generated by tests/oracle/generate.py (mpmath, 30 digits). Do not edit.

namespace golden {

struct Row2 { double a, b; };
struct Row3 { double a, b, c; };
struct Row4 { double a, b, c, d; };
struct Row5 { double a, b, c, d, e; };
struct Row6 { double a, b, c, d, e, f; };

inline constexpr Row3 kBesselK[] = {
    {0.0, 9.9999999999999995475e-7, 13.931442073626419459},
    {0.0, 0.10000000000000000555, 2.4270690247020165578},
    {0.0, 1.0, 0.42102443824070833334},
    {0.2000000000000000111, 0.5, 0.94726227677302645468},
    {0.2000000000000000111, 30.0, 2.1338767205475028047e-14},
    {0.5, 2.0, 0.11993777196806144737},
    {1.0, 1.0, 0.60190723019723457474},
    {1.1999999999999999556, 3.7000000000000001776, 0.018580829276912106294},
    {2.0, 0.010000000000000000208, 19999.500068389409791},
    {2.0000000099999999392, 0.69999999999999995559, 3.6613300177772488358},
    {2.9999999000000001637, 4.0, 0.029884922504021690568},
    {4.0999999999999996447, 0.2999999999999999889, 8075.3890330684545706},
    {4.0999999999999996447, 2.0, 2.5154089534644112851},
    {4.0999999999999996447, 5.0, 0.016358537088054653699},
    {6.0999999999999996447, 1.0, 4653.2576394317466765},
    {10.5, 0.010000000000000000208, 8.2057904638795009045e+29},
    {15.300000000000000711, 50.0, 3.4054055011600588063e-22},
    {25.0, 0.0010000000000000000208, 1.040939674430211041e+106},
    {39.0, 3.0, 3.3437753866867735187e+37},
    {40.0, 45.0, 9.2808925055890754189e-14},
};
inline constexpr double kBesselK_4_1_at_2_integral = 2.5154089534644125094;
inline constexpr double kLogBesselK_30_at_0_01 = 229.51341192098021178;
inline constexpr Row2 kGamma[] = {
    {0.001, 999.42377248459546611},
    {0.5, 1.7724538509055160273},
    {2.2, 1.1018024908797127328},
    {4.2, 7.7566895357931776387},
    {8.1, 6169.5936974845468846},
    {17.5, 85634974475162.063871},
    {49.9, 4.1180110342530580419e+62},
};
inline constexpr double kGamma_4_2_integral = 7.7566895357931776387;
inline constexpr Row4 kGgPdfH[] = {
    {2.2000000000000001776, 2.0, 1.0, 0.36734867124799524459},
    {8.0999999999999996447, 4.0, 0.5, 0.82364867010837265904},
    {4.2000000000000001776, 3.0, 2.0, 0.13055595408301433492},
    {2.2000000000000001776, 2.0, 0.050000000000000002776, 0.70598465311025926862},
    {8.0999999999999996447, 4.0, 3.0, 0.022156157697412760539},
};
inline constexpr Row4 kGgCdfH[] = {
    {8.0999999999999996447, 4.0, 0.5, 0.20971844288485802574},
    {8.0999999999999996447, 4.0, 1.0, 0.59831646518109988288},
    {8.0999999999999996447, 4.0, 2.0, 0.92644214526878098871},
    {2.2000000000000001776, 2.0, 0.10000000000000000555, 0.063514208295729657294},
    {2.2000000000000001776, 2.0, 1.0, 0.6575262634895647708},
    {2.2000000000000001776, 2.0, 3.0, 0.94694488136200392488},
    {4.2000000000000001776, 3.0, 1.0, 0.6228451784414893477},
    {4.2000000000000001776, 3.0, 0.010000000000000000208, 0.000032603046102648377345},
    {2.2000000000000001776, 2.0, 20.0, 0.99999444494196291515},
};
inline constexpr Row5 kGgPdfSnr[] = {
    {5.0, 8.0999999999999996447, 4.0, 10.0, 0.058149951496966822499},
    {1.0, 2.2000000000000001776, 2.0, 50.0, 0.065480873963703065843},
    {30.0, 4.2000000000000001776, 3.0, 100.0, 0.0071354268369168713004},
};
inline constexpr Row5 kCdfLinkPaper[] = {
    {5.0, 8.0999999999999996447, 4.0, 10.0, 20.051621728688623925},
    {1.0, 2.2000000000000001776, 2.0, 50.0, 0.12007779422372446969},
    {3.0, 4.2000000000000001776, 3.0, 100.0, 0.055594941118479965629},
};
inline constexpr Row5 kCdfLinkRef[] = {
    {5.0, 8.0999999999999996447, 4.0, 10.0, 0.38365284022404457432},
    {1.0, 2.2000000000000001776, 2.0, 50.0, 0.10109327445370884263},
    {3.0, 4.2000000000000001776, 3.0, 100.0, 0.04710616892931513521},
    {0.010000000000000000208, 2.2000000000000001776, 2.0, 1000.0, 0.00020871098500102077928},
};
inline constexpr double kPhysAlpha = 6.126968884451466119e+20;
inline constexpr double kPhysBeta = 7.0280481218991811092e+17;
inline constexpr double kPhysKappa = 7.8690964850708510052e-5;
inline constexpr double kPhysRho = 4.2720028251522752375e+5;
inline constexpr double kPhysStrongAlpha = 1.9375176827036130119e+14;
inline constexpr double kPhysStrongBeta = 1.1628186505326061011e+11;
inline constexpr double kChiRatio520over700 = 1.2644021026603978697;
inline constexpr double kChiPeakWavelength = 5.0139800228183912813e-7;
inline constexpr double kSpectralFractionWindow = 354.82486864039350532;
inline constexpr double kSpectralFractionGlobal = 354.82486864039350532;
inline constexpr double kSpectralFractionIr = 373.37280934299696224;
inline constexpr double kLambertianOnAxis = 3.1830988618379067154e-6;
inline constexpr double kShotDefault = 1.2940776023508642513e-13;
inline constexpr double kThermalDefault = 3.6588151071209372826e-31;
inline constexpr double kAvgSnrChain10m = 22.831132307037227229;
inline constexpr Row6 kCdfE2ePaper[] = {
    {3.0, 8.0999999999999996447, 4.0, 100.0, 100.0, 481.18275379598871999},
    {1.0, 2.2000000000000001776, 2.0, 50.0, 20.0, 0.1604721497384413826},
    {0.5, 4.2000000000000001776, 3.0, 10.0, 1000.0, 0.61570370686608662975},
};
inline constexpr Row6 kPdfE2ePaper[] = {
    {3.0, 8.0999999999999996447, 4.0, 100.0, 100.0, 322.9190498880357259},
    {1.0, 2.2000000000000001776, 2.0, 50.0, 20.0, 0.20512183206398959073},
    {0.5, 4.2000000000000001776, 3.0, 10.0, 1000.0, 1.1082659078816664036},
};
inline constexpr Row6 kCdfE2eRefMin[] = {
    {3.0, 8.0999999999999996447, 4.0, 100.0, 100.0, 0.014492305429261495459},
    {1.0, 2.2000000000000001776, 2.0, 50.0, 20.0, 0.12941225376481577072},
    {0.5, 4.2000000000000001776, 3.0, 10.0, 1000.0, 0.078194536569145007243},
    {3.0, 2.2000000000000001776, 2.0, 1000.0, 1000.0, 0.027195135850334983466},
};
inline constexpr double kCdfE2eHarmonic_3_81_4_100 = 0.01544115344801538954;
inline constexpr double kCdfE2eExact_3_81_4_100 = 0.015758842868559632538;
inline constexpr double kCapacityMin_81_4_100 = 5.6516772545726032817;
inline constexpr double kCapacityMin_22_2_100 = 4.6222958943113834351;
inline constexpr Row5 kCapacityConstants_22_2_50[] = {
    {0.31918249640984688569, 0.024256539527243314304, 0.032517503930392522615, 1.0893079261326000614, 1.0893079261326000614},
};
inline constexpr Row5 kCapacityConstants_81_4_100_1000[] = {
    {0.010956305115197836565, 8.8418443614203231102e-12, 1.1721747297182328819e-12, 1.50892011561952249, 0.84852813742385702928},
};
inline constexpr double kCapacityPaper_81_4_100 = -3.4347046729933455244;
inline constexpr double kCapacityPaper_22_2_50 = -0.76094207731796021799;
inline constexpr double kCapacityPaper_42_3_20_200_x3 = -0.76349529060484650405;

}  // namespace golden
