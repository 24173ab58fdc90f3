#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "cqed/constants.hpp"
#include "cqed/errors.hpp"
#include "cqed/peaks.hpp"
#include "cqed/spectral_model.hpp"

namespace testutil {

// Runs fn and reports the cqed error code it raised, or nullopt if it
// returned normally. Lets tests assert on the typed code in one expression.
template <class Fn>
std::optional<cqed::ErrorCode> errorCodeOf(Fn&& fn) {
  try {
    fn();
    return std::nullopt;
  } catch (const cqed::Error& e) {
    return e.code();
  }
}

// start + i*step, n points.
inline std::vector<double> steppedGrid(double start, double step,
                                       std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = start + static_cast<double>(i) * step;
  return g;
}

// Uniform n-point grid including both endpoints.
inline std::vector<double> linearGrid(double start, double stop,
                                      std::size_t n) {
  std::vector<double> g(n);
  const double span = stop - start;
  for (std::size_t i = 0; i < n; ++i)
    g[i] = start + span * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

// Resonator whose cavity decay rate kappa/2pi equals kappaHz at f0.
inline cqed::ResonatorParams resonatorWithKappaHz(double f0, double kappaHz,
                                                  double il = 16.5) {
  return {f0, f0 / kappaHz, il};
}

// Coupled system pinned exactly on resonance (b == bRes, so the Zeeman
// detuning is exactly zero). gHz and gammaHz are cyclic frequencies.
inline cqed::CoupledSystem onResonanceSystem(const cqed::ResonatorParams& res,
                                             double gHz, double gammaHz) {
  return {res, cqed::hzToRad(gHz), cqed::hzToRad(gammaHz), {0.2765, 0.2765},
          cqed::kDpph};
}

// Transmission as a function of t = x/(2pi), where x is the resonator
// reactance variable: f(t) = t + hypot(t, f0) inverts the map exactly. On
// resonance the lineshape is even in t, and a symmetric maximum pair at
// +-t* corresponds to a frequency-space peak separation of exactly 2*t*.
inline double coupledAtT(const cqed::CoupledSystem& sys, double t) {
  return cqed::coupledS21(sys, t + std::hypot(t, sys.res.f0));
}

// Peak separation 2*t* from the single maximum inside [tLo, tHi] (all Hz).
// Callers choose windows that bracket the peak away from the window edges.
inline double coupledSeparationHz(const cqed::CoupledSystem& sys, double tLo,
                                  double tHi, double stepHz) {
  const auto n =
      static_cast<std::size_t>(std::floor((tHi - tLo) / stepHz)) + 1;
  std::vector<double> ts(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    ts[i] = tLo + static_cast<double>(i) * stepHz;
    ys[i] = coupledAtT(sys, ts[i]);
  }
  std::size_t ipk = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (ys[i] > ys[ipk]) ipk = i;
  if (ipk == 0 || ipk + 1 == n) return 2.0 * ts[ipk];
  return 2.0 * cqed::parabolicVertex(ts, ys, ipk);
}

}  // namespace testutil
