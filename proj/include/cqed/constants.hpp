#pragma once

#include <numbers>

#include "cqed/errors.hpp"

namespace cqed {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Planck constant, J s (exact by definition since the 2019 SI revision).
inline constexpr double kPlanckExact = 6.62607015e-34;

// CODATA 2018 values, fixed in source and never mutated at runtime. hbar is
// computed (not stored) so that hbar == h/(2*pi) holds to full precision.
struct PhysicalConstants {
  double h = kPlanckExact;                               // Planck, J s
  double hbar = kPlanckExact / (2.0 * std::numbers::pi); // reduced Planck, J s
  double kB = 1.380649e-23;                              // Boltzmann, J/K
  double muB = 9.2740100783e-24;                         // Bohr magneton, J/T
  double mu0 = 1.25663706212e-6;                         // vacuum permeability, N/A^2
  double nA = 6.02214076e23;                             // Avogadro, 1/mol
};

inline constexpr PhysicalConstants kConstants{};

// Convert angular rates (rad/s) to reported frequencies (Hz) and back. All
// internal angular quantities (kappa, detuning, couplings, linewidths) are
// rad/s; every reporting surface emits value/2pi in Hz.
inline constexpr double radToHz(double omega) { return omega / kTwoPi; }
inline constexpr double hzToRad(double f) { return f * kTwoPi; }

// Effective magnetic width defaults: the value assumed for vacuum-field
// estimates, and the geometric strip width exposed as an alternative.
inline constexpr double kWEffAssumed = 400e-6;    // m
inline constexpr double kWStripGeometric = 200e-6; // m

struct ResonatorParams {
  double f0;                   // resonance frequency, Hz
  double qL;                   // loaded quality factor, dimensionless
  double il;                   // insertion loss, dB, positive: il = -S21(f0)
  double z0 = 50.0;            // line impedance, Ohm
  double wEff = kWEffAssumed;  // effective magnetic width, m
};

struct SpinSpecies {
  double gFactor;      // Lande g-factor, dimensionless
  double t1;           // spin-lattice relaxation time, s
  double t2;           // dephasing time, s
  double gammaS0;      // intrinsic linewidth (half width), Hz
  double massMolar;    // molar mass, g/mol
  double densityMass;  // mass density, g/cm^3
};

// DPPH radical: g = 2.0037, T1 = T2 = 62 ns, 3.9 MHz intrinsic half width,
// 394.32 g/mol, 1.4 g/cm^3.
inline constexpr SpinSpecies kDpph{2.0037, 62e-9, 62e-9, 3.9e6, 394.32, 1.4};

struct EnsembleState {
  double nTotal;       // total spin count
  double temperature;  // K
  double volume;       // m^3
  double nPolarized;   // thermally polarized count (derived)
};

struct FieldPoint {
  double b;     // applied magnetic field, T
  double bRes;  // spin resonance field, T
};

// Validation: each throws Error(ErrorCode::InvalidArgument) on violation.
void validate(const PhysicalConstants& c);
void validate(const ResonatorParams& res);
void validate(const SpinSpecies& species);
void validate(const EnsembleState& state);
void validate(const FieldPoint& fp);

// Cavity angular decay rate kappa = 2*pi*f0/qL, rad/s.
double kappa(const ResonatorParams& res);

// Zeeman detuning Delta = gFactor*muB*(b - bRes)/hbar, rad/s. Sign is
// preserved: negative below the resonance field.
double detuning(const FieldPoint& fp, const SpinSpecies& species,
                const PhysicalConstants& consts = kConstants);

}  // namespace cqed
