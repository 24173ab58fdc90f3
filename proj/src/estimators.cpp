#include "cqed/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqed/peaks.hpp"

namespace cqed {

PhotonEstimate photonNumber(const ResonatorParams& res, double pIncDbm,
                            const PhysicalConstants& consts) {
  validate(res);
  validate(consts);
  if (!std::isfinite(pIncDbm))
    fail(ErrorCode::InvalidArgument, "incident power must be finite (dBm)");
  const double pIncW = std::pow(10.0, (pIncDbm - 30.0) / 10.0);
  const double pCirc =
      pIncW * res.qL * std::pow(10.0, -res.il / 20.0) / kPi;
  const double nPh = pCirc / (consts.h * res.f0 * res.f0);
  return {pCirc, nPh};
}

double coaxCorrectedPowerDbm(double pOutDbm, double ilCoaxDb) {
  if (!std::isfinite(pOutDbm))
    fail(ErrorCode::InvalidArgument, "source power must be finite (dBm)");
  if (!std::isfinite(ilCoaxDb) || ilCoaxDb < 0)
    fail(ErrorCode::InvalidArgument, "coax loss must be non-negative (dB)");
  return pOutDbm - ilCoaxDb / 2.0;
}

VacuumFieldEstimate vacuumField(const ResonatorParams& res,
                                const SpinSpecies& species,
                                const PhysicalConstants& consts) {
  validate(res);
  validate(species);
  validate(consts);
  const double iVac = kPi * std::sqrt(consts.h / res.z0) * res.f0;
  const double bVac = consts.mu0 * iVac / (2.0 * res.wEff);
  const double gSingle =
      kTwoPi * species.gFactor * consts.muB * bVac / (4.0 * consts.h);
  return {iVac, bVac, gSingle};
}

double qFrom3Db(const Spectrum& spec) {
  validate(spec);
  const auto& f = spec.freqs;
  const auto& s = spec.s21Db;
  const std::size_t n = s.size();
  const std::size_t ipk =
      static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
  if (ipk == 0 || ipk + 1 == n)
    fail(ErrorCode::NoPeak, "transmission maximum sits on a grid edge");
  const double fPeak = parabolicVertex(f, s, ipk);
  const double level = s[ipk] - 10.0 * std::log10(2.0);

  std::size_t i = ipk;
  while (s[i] > level) {
    if (i == 0)
      fail(ErrorCode::BandwidthUnresolved,
           "lower half-power crossing lies outside the frequency grid");
    --i;
  }
  const double fLo =
      f[i] + (level - s[i]) / (s[i + 1] - s[i]) * (f[i + 1] - f[i]);

  std::size_t j = ipk;
  while (s[j] > level) {
    if (j + 1 == n)
      fail(ErrorCode::BandwidthUnresolved,
           "upper half-power crossing lies outside the frequency grid");
    ++j;
  }
  const double fHi =
      f[j - 1] + (level - s[j - 1]) / (s[j] - s[j - 1]) * (f[j] - f[j - 1]);

  return fPeak / (fHi - fLo);
}

PolarizationAdvisory photonsVsPolarizedAdvisory(double nPh, double nPolarized) {
  if (!std::isfinite(nPh) || nPh < 0)
    fail(ErrorCode::InvalidArgument, "photon count must be non-negative");
  if (!std::isfinite(nPolarized) || nPolarized < 0)
    fail(ErrorCode::InvalidArgument, "polarized spin count must be non-negative");
  if (nPolarized == 0.0)
    return {std::numeric_limits<double>::infinity(), false};
  const double ratio = nPh / nPolarized;
  return {ratio, ratio < 0.01};
}

}  // namespace cqed
