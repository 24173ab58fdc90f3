#pragma once

#include "cqed/constants.hpp"

namespace cqed {

struct DriveParams {
  double pIncDbm;  // incident power at the input capacitor, dBm
  double b1;       // microwave magnetic field amplitude at the sample, T
};

void validate(const DriveParams& drive);

// Thermal polarized fraction tanh(h*f/(2*kB*t)), strictly decreasing in t,
// -> 1 as t -> 0+. Rejects non-positive t or f.
double polarizedFraction(double f, double t,
                         const PhysicalConstants& consts = kConstants);

// Collective coupling gSingle*sqrt(nPolarized), rad/s.
double collectiveCoupling(double gSingle, double nPolarized);

// Temperature dependence prefactor*sqrt(polarizedFraction(f, t)), rad/s.
double gcOfTemperature(double prefactor, double f, double t,
                       const PhysicalConstants& consts = kConstants);

// Homogeneous-broadening linewidth (half width, angular rate s^-1):
//   gamma_s = 1/(2*T1) + (1/T2)*sqrt(1 + gamma^2*B1^2*T1*T2),
// gamma = gFactor*muB/hbar. Monotonically increasing in B1.
double linewidth(const SpinSpecies& species, const DriveParams& drive,
                 const PhysicalConstants& consts = kConstants);

// Radical count rho_V*V with rho_V = densityMass*nA/massMolar (converted to
// m^-3); volume in m^3. Rejects non-positive volume.
double radicalCount(double volume, const SpinSpecies& species,
                    const PhysicalConstants& consts = kConstants);

// Empirical spin-linewidth lookup vs temperature, rad/s: 2*pi*14 MHz at
// t <= 2 K, 2*pi*3.9 MHz at t >= 10 K, log-log linear in between. This is a
// lookup between two published anchors, not a model.
double effectiveLinewidthAt(double t);

// Assemble an EnsembleState with the derived polarized count
// nTotal*polarizedFraction(f, t).
EnsembleState makeEnsembleState(double nTotal, double temperature,
                                double volume, double f,
                                const PhysicalConstants& consts = kConstants);

}  // namespace cqed
