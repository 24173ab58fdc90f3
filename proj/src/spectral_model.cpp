#include "cqed/spectral_model.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "cqed/random.hpp"

namespace cqed {

void validate(const Spectrum& spec) {
  if (spec.freqs.size() != spec.s21Db.size())
    fail(ErrorCode::InvalidArgument,
         "spectrum axes differ in length (" + std::to_string(spec.freqs.size()) +
             " frequencies vs " + std::to_string(spec.s21Db.size()) + " values)");
  if (spec.freqs.size() < 3)
    fail(ErrorCode::InvalidArgument,
         "spectrum needs at least 3 points, got " +
             std::to_string(spec.freqs.size()));
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    if (!std::isfinite(spec.freqs[i]) || !std::isfinite(spec.s21Db[i]))
      fail(ErrorCode::InvalidArgument,
           "spectrum contains a non-finite value at index " + std::to_string(i));
    if (i > 0 && !(spec.freqs[i] > spec.freqs[i - 1]))
      fail(ErrorCode::InvalidArgument,
           "frequency grid must be strictly increasing (violated at index " +
               std::to_string(i) + ")");
  }
}

void validate(const CoupledSystem& sys) {
  validate(sys.res);
  validate(sys.fp);
  validate(sys.species);
  if (!std::isfinite(sys.gCollective) || sys.gCollective < 0)
    fail(ErrorCode::InvalidArgument,
         "collective coupling must be non-negative (rad/s)");
  if (!std::isfinite(sys.gammaSpin) || sys.gammaSpin < 0)
    fail(ErrorCode::InvalidArgument, "spin linewidth must be non-negative (rad/s)");
}

namespace {

void requirePositiveFrequency(double f) {
  if (!std::isfinite(f) || f <= 0)
    fail(ErrorCode::InvalidArgument,
         "frequency must be positive, got " + std::to_string(f) + " Hz");
}

// Shared reduced detuning y = f/f0 - f0/f, antisymmetric under f -> f0^2/f.
inline double reducedDetuning(double f, double f0) {
  return f / f0 - f0 / f;
}

}  // namespace

double lorentzianS21(const ResonatorParams& res, double f) {
  validate(res);
  requirePositiveFrequency(f);
  const double u = res.qL * reducedDetuning(f, res.f0);
  return -res.il - 10.0 * std::log10(1.0 + u * u);
}

RabiBranches rabiBranchesAt(double omega0, double delta, double gCollective) {
  const double halfSplit =
      0.5 * std::sqrt(delta * delta + 4.0 * gCollective * gCollective);
  const double center = omega0 + 0.5 * delta;
  return {center - halfSplit, center + halfSplit};
}

RabiBranches rabiBranches(const CoupledSystem& sys,
                          const PhysicalConstants& consts) {
  validate(sys);
  const double delta = detuning(sys.fp, sys.species, consts);
  return rabiBranchesAt(kTwoPi * sys.res.f0, delta, sys.gCollective);
}

double coupledS21(const CoupledSystem& sys, double f,
                  const PhysicalConstants& consts) {
  validate(sys);
  requirePositiveFrequency(f);
  const double y = reducedDetuning(f, sys.res.f0);
  const double u = sys.res.qL * y;             // = 2*x/kappa, dimensionless
  const double x = kPi * sys.res.f0 * y;       // reactance variable, rad/s
  const double delta = detuning(sys.fp, sys.species, consts);
  const double halfKappa = kPi * sys.res.f0 / sys.res.qL;

  // Denominator normalized by kappa/2: Dn = 1 + i*u + spin, where the spin
  // term vanishes exactly for g = 0 and the remaining arithmetic matches
  // lorentzianS21 bit for bit.
  const std::complex<double> spinDen(sys.gammaSpin, x - delta);
  const std::complex<double> spin =
      (sys.gCollective * sys.gCollective) / (halfKappa * spinDen);
  const double re = 1.0 + spin.real();
  const double im = u + spin.imag();
  return -sys.res.il - 10.0 * std::log10(re * re + im * im);
}

namespace {

template <typename Model>
Spectrum buildSpectrum(const std::vector<double>& grid, double noiseSigmaDb,
                       std::uint64_t seed, const Model& model) {
  if (grid.empty())
    fail(ErrorCode::InvalidArgument, "frequency grid must not be empty");
  if (!std::isfinite(noiseSigmaDb) || noiseSigmaDb < 0)
    fail(ErrorCode::InvalidArgument, "noise sigma must be non-negative (dB)");
  Spectrum out;
  out.freqs = grid;
  out.s21Db.resize(grid.size());
  if (noiseSigmaDb == 0.0) {
    for (std::size_t i = 0; i < grid.size(); ++i) out.s21Db[i] = model(grid[i]);
  } else {
    GaussianStream noise(seed);
    for (std::size_t i = 0; i < grid.size(); ++i)
      out.s21Db[i] = model(grid[i]) + noiseSigmaDb * noise.next();
  }
  validate(out);
  return out;
}

}  // namespace

Spectrum spectrumFromModel(const ResonatorParams& res,
                           const std::vector<double>& grid, double noiseSigmaDb,
                           std::uint64_t seed) {
  validate(res);
  return buildSpectrum(grid, noiseSigmaDb, seed,
                       [&](double f) { return lorentzianS21(res, f); });
}

Spectrum spectrumFromModel(const CoupledSystem& sys,
                           const std::vector<double>& grid, double noiseSigmaDb,
                           std::uint64_t seed, const PhysicalConstants& consts) {
  validate(sys);
  Spectrum out = buildSpectrum(grid, noiseSigmaDb, seed, [&](double f) {
    return coupledS21(sys, f, consts);
  });
  out.meta.fieldT = sys.fp.b;
  return out;
}

}  // namespace cqed
