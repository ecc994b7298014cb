#pragma once

// Expected values frozen from independent high-precision evaluations
// (40-digit arbitrary-precision arithmetic; series/reflection routes
// independent of the library implementations under test).

#include <array>
#include <complex>

namespace frozen {

struct LogGammaCase {
  std::complex<double> z;
  std::complex<double> expected;
};

inline constexpr std::array<LogGammaCase, 9> log_gamma_table{{
    {{1.0, 1.0}, {-0.65092319930185633889, -0.30164032046753319789}},
    {{0.5, 0.0}, {0.57236494292470008707, 0.0}},
    {{-2.5, 3.0}, {-7.4782360420503149704, -5.7261042719103868422}},
    {{5.0, -7.0}, {-1.0451080801207847702, -12.333806991474975438}},
    {{0.0, 1.0}, {-0.65092319930185633889, -1.8724366472624298171}},
    {{-0.5, 0.5}, {0.45896083308959576723, -3.1069236923143956735}},
    {{30.0, 40.0}, {49.232808494070298819, 143.83479582266482462}},
    {{0.5, 2.0}, {-2.2226558640532582191, -0.59253698197703458893}},
    {{-4.2, -9.1}, {-23.946406996388624713, -2.4513440319011098452}},
}};

// || e^{-x^2} ||_{L^2(R)} = (pi/2)^{1/4}
inline constexpr double gaussian_l2 = 1.1195151349202476285;

// |T|^2 at lambda = 2.5, k = 1 (equals sin^2 atan(sinh pi / sin 2.5 pi))
inline constexpr double t2_lambda25_k1 = 0.99255804985720379;

// standing-wave phases mod pi at lambda = 2.5, k = 1 (ODE route, 20-digit)
inline constexpr double phi_even_lambda25_k1 = 1.2712235242009406601;
inline constexpr double phi_odd_lambda25_k1 = 2.9283939480454015316;

}  // namespace frozen
