#include "cqed/spin_ensemble.hpp"

#include <cmath>
#include <string>

namespace cqed {

namespace {

void requirePositive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0)
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " must be positive, got " + std::to_string(v));
}

void requireNonNegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0)
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " must be non-negative, got " + std::to_string(v));
}

}  // namespace

void validate(const DriveParams& drive) {
  if (!std::isfinite(drive.pIncDbm))
    fail(ErrorCode::InvalidArgument, "incident power must be finite (dBm)");
  requireNonNegative(drive.b1, "drive field b1");
}

double polarizedFraction(double f, double t, const PhysicalConstants& consts) {
  validate(consts);
  requirePositive(f, "frequency");
  requirePositive(t, "temperature");
  return std::tanh(consts.h * f / (2.0 * consts.kB * t));
}

double collectiveCoupling(double gSingle, double nPolarized) {
  requireNonNegative(gSingle, "single-spin coupling");
  requireNonNegative(nPolarized, "polarized spin count");
  return gSingle * std::sqrt(nPolarized);
}

double gcOfTemperature(double prefactor, double f, double t,
                       const PhysicalConstants& consts) {
  requireNonNegative(prefactor, "coupling prefactor");
  return prefactor * std::sqrt(polarizedFraction(f, t, consts));
}

double linewidth(const SpinSpecies& species, const DriveParams& drive,
                 const PhysicalConstants& consts) {
  validate(species);
  validate(drive);
  validate(consts);
  const double gamma = species.gFactor * consts.muB / consts.hbar;
  const double saturation =
      gamma * gamma * drive.b1 * drive.b1 * species.t1 * species.t2;
  return 1.0 / (2.0 * species.t1) +
         std::sqrt(1.0 + saturation) / species.t2;
}

double radicalCount(double volume, const SpinSpecies& species,
                    const PhysicalConstants& consts) {
  validate(species);
  validate(consts);
  requirePositive(volume, "sample volume");
  // densityMass in g/cm^3 -> g/m^3, massMolar in g/mol.
  const double rhoV = species.densityMass * 1e6 / species.massMolar * consts.nA;
  return rhoV * volume;
}

double effectiveLinewidthAt(double t) {
  requirePositive(t, "temperature");
  constexpr double tLow = 2.0, tHigh = 10.0;
  constexpr double gLowHz = 14e6, gHighHz = 3.9e6;
  double hz;
  if (t <= tLow) {
    hz = gLowHz;
  } else if (t >= tHigh) {
    hz = gHighHz;
  } else {
    const double s = (std::log(t) - std::log(tLow)) /
                     (std::log(tHigh) - std::log(tLow));
    hz = std::exp(std::log(gLowHz) + s * (std::log(gHighHz) - std::log(gLowHz)));
  }
  return kTwoPi * hz;
}

EnsembleState makeEnsembleState(double nTotal, double temperature,
                                double volume, double f,
                                const PhysicalConstants& consts) {
  requirePositive(nTotal, "total spin count");
  EnsembleState state;
  state.nTotal = nTotal;
  state.temperature = temperature;
  state.volume = volume;
  state.nPolarized = nTotal * polarizedFraction(f, temperature, consts);
  validate(state);
  return state;
}

}  // namespace cqed
