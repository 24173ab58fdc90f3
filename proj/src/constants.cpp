#include "cqed/constants.hpp"

#include <cmath>
#include <string>

namespace cqed {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const PhysicalConstants& c) {
  require(finite(c.h) && c.h > 0, "Planck constant must be positive");
  require(finite(c.hbar) && c.hbar > 0, "reduced Planck constant must be positive");
  require(finite(c.kB) && c.kB > 0, "Boltzmann constant must be positive");
  require(finite(c.muB) && c.muB > 0, "Bohr magneton must be positive");
  require(finite(c.mu0) && c.mu0 > 0, "vacuum permeability must be positive");
  require(finite(c.nA) && c.nA > 0, "Avogadro constant must be positive");
  require(std::abs(c.hbar - c.h / kTwoPi) <= 1e-12 * c.hbar,
          "hbar must equal h/(2*pi)");
}

void validate(const ResonatorParams& res) {
  require(finite(res.f0) && res.f0 > 0,
          "resonance frequency f0 must be positive (Hz)");
  require(finite(res.qL) && res.qL > 1, "loaded quality factor qL must exceed 1");
  require(finite(res.il) && res.il >= 0,
          "insertion loss il must be non-negative (positive-dB convention)");
  require(finite(res.z0) && res.z0 > 0, "line impedance z0 must be positive (Ohm)");
  require(finite(res.wEff) && res.wEff > 0,
          "effective magnetic width wEff must be positive (m)");
}

void validate(const SpinSpecies& species) {
  require(finite(species.gFactor) && species.gFactor > 1.5 &&
              species.gFactor < 2.5,
          "g-factor must lie in (1.5, 2.5) for electron-like spins");
  require(finite(species.t1) && species.t1 > 0, "T1 must be positive (s)");
  require(finite(species.t2) && species.t2 > 0, "T2 must be positive (s)");
  require(finite(species.gammaS0) && species.gammaS0 >= 0,
          "intrinsic linewidth must be non-negative (Hz)");
  require(finite(species.massMolar) && species.massMolar > 0,
          "molar mass must be positive (g/mol)");
  require(finite(species.densityMass) && species.densityMass > 0,
          "mass density must be positive (g/cm^3)");
}

void validate(const EnsembleState& state) {
  require(finite(state.nTotal) && state.nTotal >= 0,
          "total spin count must be non-negative");
  require(finite(state.temperature) && state.temperature > 0,
          "temperature must be positive (K)");
  require(finite(state.volume) && state.volume > 0,
          "sample volume must be positive (m^3)");
  require(finite(state.nPolarized) && state.nPolarized >= 0 &&
              state.nPolarized <= state.nTotal,
          "polarized count must lie in [0, nTotal]");
}

void validate(const FieldPoint& fp) {
  require(finite(fp.b) && fp.b >= 0, "applied field must be non-negative (T)");
  require(finite(fp.bRes) && fp.bRes >= 0,
          "resonance field must be non-negative (T)");
}

double kappa(const ResonatorParams& res) {
  validate(res);
  return kTwoPi * res.f0 / res.qL;
}

double detuning(const FieldPoint& fp, const SpinSpecies& species,
                const PhysicalConstants& consts) {
  validate(fp);
  validate(species);
  return species.gFactor * consts.muB * (fp.b - fp.bRes) / consts.hbar;
}

}  // namespace cqed
