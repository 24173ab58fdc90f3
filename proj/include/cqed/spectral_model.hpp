#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cqed/constants.hpp"

namespace cqed {

struct SpectrumMeta {
  std::optional<double> powerDbm;      // acquisition power, dBm
  std::optional<double> temperatureK;  // K
  std::optional<double> fieldT;        // applied field, T
  std::optional<double> impedanceOhm;  // line impedance from file headers, Ohm

  friend bool operator==(const SpectrumMeta&, const SpectrumMeta&) = default;
};

// 1D transmission sweep: strictly increasing frequency grid (Hz) and S21 in
// dB, equal lengths >= 3, all values finite.
struct Spectrum {
  std::vector<double> freqs;   // Hz
  std::vector<double> s21Db;   // dB
  SpectrumMeta meta;
};

void validate(const Spectrum& spec);

// Coupled resonator + spin-ensemble system. gCollective and gammaSpin are
// angular rates (rad/s); gammaSpin is the half width of the spin line.
struct CoupledSystem {
  ResonatorParams res;
  double gCollective;  // collective coupling, rad/s
  double gammaSpin;    // spin linewidth (HWHM), rad/s
  FieldPoint fp;
  SpinSpecies species;
};

void validate(const CoupledSystem& sys);

// Bare-resonator transmission, dB:
//   s21(f) = -il - 10*log10(1 + qL^2*(f/f0 - f0/f)^2)
// Maximum value -il is attained exactly at f = f0. Rejects f <= 0.
double lorentzianS21(const ResonatorParams& res, double f);

struct RabiBranches {
  double lower;  // omega_-, rad/s
  double upper;  // omega_+, rad/s
};

// Two-level branch frequencies at explicit detuning (all rad/s):
//   omega_+- = omega0 + delta/2 +- sqrt(delta^2 + 4 g^2)/2.
RabiBranches rabiBranchesAt(double omega0, double delta, double gCollective);

// Same, with the detuning derived from the system's field point.
RabiBranches rabiBranches(const CoupledSystem& sys,
                          const PhysicalConstants& consts = kConstants);

// Coupled transmission lineshape, dB. |t|^2 with
//   t ~ (kappa/2) / [i*x + kappa/2 + g^2/(i*(x - delta) + gamma_s)],
// where x = (omega0/2)*(f/f0 - f0/f) is the exact resonator reactance
// variable (x ~= omega - omega0 near resonance). Normalized so the uncoupled
// (g = 0) peak equals -il dB; at g = 0 the arithmetic reduces exactly to
// lorentzianS21. Rejects f <= 0.
double coupledS21(const CoupledSystem& sys, double f,
                  const PhysicalConstants& consts = kConstants);

// Synthetic spectra: model values on the given grid plus optional additive
// Gaussian noise in dB, deterministic for a given seed. noiseSigmaDb = 0
// reproduces the model exactly. Rejects an empty grid.
Spectrum spectrumFromModel(const ResonatorParams& res,
                           const std::vector<double>& grid,
                           double noiseSigmaDb = 0.0, std::uint64_t seed = 0);
Spectrum spectrumFromModel(const CoupledSystem& sys,
                           const std::vector<double>& grid,
                           double noiseSigmaDb = 0.0, std::uint64_t seed = 0,
                           const PhysicalConstants& consts = kConstants);

}  // namespace cqed
