#pragma once

#include <array>
#include <utility>

#include "resonance/zeta.hpp"

namespace resonance::zeta::detail {

// Euler-Maclaurin with N main terms and K Bernoulli corrections.
ZetaValue euler_maclaurin(Complex s, int N, int K, bool with_derivative);
std::pair<int, int> choose_em_parameters(Complex s, double prec, bool with_derivative);

long double theta_extended(double t);
std::array<double, 5> rs_corrections(double p);

}  // namespace resonance::zeta::detail
