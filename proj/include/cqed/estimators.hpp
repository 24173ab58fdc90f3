#pragma once

#include "cqed/constants.hpp"
#include "cqed/spectral_model.hpp"

namespace cqed {

struct PhotonEstimate {
  double pCirc;  // circulating power, W
  double nPh;    // photon count, dimensionless
};

struct VacuumFieldEstimate {
  double iVac;     // zero-point current, A
  double bVac;     // vacuum magnetic field, T
  double gSingle;  // single-spin coupling, rad/s
};

struct PolarizationAdvisory {
  double ratio;       // nPh / nPolarized
  bool linearRegime;  // true when ratio < 0.01
};

// Circulating power and intra-cavity photon number:
//   P_inc[W] = 10^((pIncDbm - 30)/10)
//   pCirc    = (1/pi) * P_inc * qL * 10^(-il/20)
//   nPh      = pCirc / (h * f0^2)
PhotonEstimate photonNumber(const ResonatorParams& res, double pIncDbm,
                            const PhysicalConstants& consts = kConstants);

// Optional pre-correction for the feed line: the power reaching the input
// capacitor is pOutDbm - ilCoaxDb/2 (half the measured line loss).
double coaxCorrectedPowerDbm(double pOutDbm, double ilCoaxDb);

// Vacuum-fluctuation chain:
//   iVac    = pi * sqrt(h/z0) * f0
//   bVac    = mu0 * iVac / (2 * wEff)
//   gSingle = 2*pi * gFactor * muB * bVac / (4*h)   [rad/s]
VacuumFieldEstimate vacuumField(const ResonatorParams& res,
                                const SpinSpecies& species,
                                const PhysicalConstants& consts = kConstants);

// Loaded quality factor by the half-power-bandwidth method: f_peak divided by
// the width between the two (peak - 10*log10(2)) dB crossings, with linear
// interpolation between samples. Throws NoPeak if the maximum sits on a grid
// edge, BandwidthUnresolved if a crossing lies outside the grid.
double qFrom3Db(const Spectrum& spec);

// Linear-regime advisory: ratio nPh/nPolarized and a flag that is true when
// the ratio is below 0.01. nPolarized = 0 reports an infinite ratio, flag
// false.
PolarizationAdvisory photonsVsPolarizedAdvisory(double nPh,
                                                double nPolarized);

}  // namespace cqed
