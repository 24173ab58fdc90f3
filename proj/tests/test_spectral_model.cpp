#include <doctest.h>

#include <cmath>
#include <vector>

#include "cqed/constants.hpp"
#include "cqed/errors.hpp"
#include "cqed/peaks.hpp"
#include "cqed/spectral_model.hpp"
#include "helpers.hpp"

using cqed::ErrorCode;
using doctest::Approx;
using testutil::errorCodeOf;

namespace {

const cqed::ResonatorParams kRes{7.7553e9, 20000.0, 16.5};

}  // namespace

TEST_CASE("lorentzian transmission peaks at exactly -il") {
  CHECK(cqed::lorentzianS21(kRes, kRes.f0) == -16.5);
}

TEST_CASE("lorentzian transmission at pinned detunings") {
  // Exact upper half-power frequency: qL*(f/f0 - f0/f) = 1.
  const double fHalf = kRes.f0 + 193884.9235305786;
  CHECK(cqed::lorentzianS21(kRes, fHalf) ==
        Approx(-19.51029995662969).epsilon(1e-12));
  CHECK(cqed::lorentzianS21(kRes, fHalf) ==
        Approx(-16.5 - 10.0 * std::log10(2.0)).epsilon(1e-12));

  // The naive half-bandwidth point f0*(1 + 1/(2*qL)) sits slightly inside.
  const double fNaive = kRes.f0 * (1.0 + 1.0 / (2.0 * kRes.qL));
  CHECK(cqed::lorentzianS21(kRes, fNaive) ==
        Approx(-19.510245671184308).epsilon(1e-12));

  // Far tail, one octave below resonance.
  CHECK(cqed::lorentzianS21(kRes, kRes.f0 / 2.0) ==
        Approx(-106.04242509921875).epsilon(1e-12));
}

TEST_CASE("lorentzian is symmetric under f -> f0^2/f") {
  for (double off : {1e5, 1e6, 5e7, 2e9}) {
    const double f = kRes.f0 + off;
    const double mirror = kRes.f0 * (kRes.f0 / f);
    CHECK(cqed::lorentzianS21(kRes, f) ==
          Approx(cqed::lorentzianS21(kRes, mirror)).epsilon(1e-12));
  }
}

TEST_CASE("lorentzian falls off monotonically away from resonance") {
  double prev = cqed::lorentzianS21(kRes, kRes.f0);
  for (int i = 1; i <= 50; ++i) {
    const double cur = cqed::lorentzianS21(kRes, kRes.f0 + i * 5e4);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("lorentzian rejects non-positive frequencies") {
  CHECK(errorCodeOf([] { cqed::lorentzianS21(kRes, 0.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([] { cqed::lorentzianS21(kRes, -1e9); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("two-level branch frequencies at pinned detuning") {
  const double delta = cqed::hzToRad(30e6);
  const double g = cqed::hzToRad(39e6);

  SUBCASE("pure offsets (omega0 = 0)") {
    const auto br = cqed::rabiBranchesAt(0.0, delta, g);
    CHECK(cqed::radToHz(br.lower) ==
          Approx(-26785164.831552356).epsilon(1e-12));
    CHECK(cqed::radToHz(br.upper) ==
          Approx(56785164.83155236).epsilon(1e-12));
    CHECK(cqed::radToHz(br.upper - br.lower) ==
          Approx(83570329.66310471).epsilon(1e-12));
  }

  SUBCASE("offsets survive a realistic carrier within cancellation noise") {
    const double w0 = cqed::hzToRad(7.7522e9);
    const auto br = cqed::rabiBranchesAt(w0, delta, g);
    CHECK(cqed::radToHz(br.upper - w0) ==
          Approx(56785164.83155236).epsilon(1e-7));
    CHECK(cqed::radToHz(br.lower - w0) ==
          Approx(-26785164.831552356).epsilon(1e-7));
  }
}

TEST_CASE("branch sum and separation follow the two-level algebra") {
  const double w0 = cqed::hzToRad(7.7522e9);
  for (double dHz : {-80e6, -10e6, 0.0, 25e6, 120e6}) {
    const double delta = cqed::hzToRad(dHz);
    const double g = cqed::hzToRad(40.8e6);
    const auto br = cqed::rabiBranchesAt(w0, delta, g);
    CHECK(br.lower + br.upper ==
          Approx(2.0 * w0 + delta).epsilon(1e-12));
    CHECK(br.upper - br.lower ==
          Approx(std::sqrt(delta * delta + 4.0 * g * g)).epsilon(1e-12));
    CHECK(br.lower < br.upper);
  }
}

TEST_CASE("on resonance the branch separation equals 2g") {
  const double g = cqed::hzToRad(39e6);
  const auto br = cqed::rabiBranchesAt(cqed::hzToRad(7.7522e9), 0.0, g);
  CHECK(br.upper - br.lower == Approx(2.0 * g).epsilon(1e-14));
}

TEST_CASE("system-level branches use the Zeeman detuning of the field point") {
  cqed::CoupledSystem sys = testutil::onResonanceSystem(kRes, 39e6, 14e6);
  sys.fp = {0.2775, 0.2765};
  const auto br = cqed::rabiBranches(sys);
  const auto expect = cqed::rabiBranchesAt(
      cqed::kTwoPi * sys.res.f0, cqed::detuning(sys.fp, sys.species),
      sys.gCollective);
  CHECK(br.lower == expect.lower);
  CHECK(br.upper == expect.upper);
}

TEST_CASE("coupled lineshape reduces to the lorentzian bit for bit at g = 0") {
  const cqed::CoupledSystem sys = testutil::onResonanceSystem(kRes, 0.0, 14e6);
  for (double off = -150e6; off <= 150e6; off += 7.5e6) {
    const double f = kRes.f0 + off;
    CHECK(cqed::coupledS21(sys, f) == cqed::lorentzianS21(kRes, f));
  }
}

TEST_CASE("coupled lineshape rejects invalid systems and frequencies") {
  cqed::CoupledSystem sys = testutil::onResonanceSystem(kRes, 39e6, 14e6);
  CHECK(errorCodeOf([&] { cqed::coupledS21(sys, -1.0); }) ==
        ErrorCode::InvalidArgument);
  sys.gCollective = -1.0;
  CHECK(errorCodeOf([&] { cqed::coupledS21(sys, kRes.f0); }) ==
        ErrorCode::InvalidArgument);
  sys.gCollective = 1.0;
  sys.gammaSpin = -1.0;
  CHECK(errorCodeOf([&] { cqed::coupledS21(sys, kRes.f0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("damped on-resonance peak separation sits below 2g") {
  // 2 K parameters: g/2pi = 39 MHz, gamma/2pi = 14 MHz, kappa/2pi = f0/qL.
  const auto res = testutil::resonatorWithKappaHz(7.7522e9, 484512.5, 33.5);
  const auto sys = testutil::onResonanceSystem(res, 39e6, 14e6);
  const double sep = testutil::coupledSeparationHz(sys, 30e6, 48e6, 2e3);
  CHECK(sep == Approx(77.7894050430598e6).epsilon(1e-7));
  CHECK(sep < 78e6);
}

TEST_CASE("peak separation approaches 2g as the damping is scaled away") {
  const double f0 = 7.7522e9;
  // gamma/2pi = 14 MHz, kappa/2pi = 0.5 MHz, both scaled down tenfold twice.
  const double seps[3] = {
      testutil::coupledSeparationHz(
          testutil::onResonanceSystem(
              testutil::resonatorWithKappaHz(f0, 0.5e6, 33.5), 39e6, 14e6),
          30e6, 48e6, 2e3),
      testutil::coupledSeparationHz(
          testutil::onResonanceSystem(
              testutil::resonatorWithKappaHz(f0, 0.05e6, 33.5), 39e6, 1.4e6),
          37e6, 41e6, 1e3),
      testutil::coupledSeparationHz(
          testutil::onResonanceSystem(
              testutil::resonatorWithKappaHz(f0, 0.005e6, 33.5), 39e6, 0.14e6),
          38.6e6, 39.4e6, 2e2),
  };
  CHECK(seps[0] == Approx(77.79188593738822e6).epsilon(1e-7));
  CHECK(seps[1] - 78e6 == Approx(864.0).epsilon(0.06));
  CHECK(std::abs(seps[2] - 78e6) < std::abs(seps[1] - 78e6) / 50.0);
  CHECK(std::abs(seps[1] - 78e6) < std::abs(seps[0] - 78e6) / 50.0);
}

TEST_CASE("weak coupling leaves a single transmission maximum") {
  const auto res = testutil::resonatorWithKappaHz(7.7522e9, 484512.5, 33.5);
  const auto sys = testutil::onResonanceSystem(res, 1e3, 14e6);
  const auto ts = testutil::steppedGrid(-60e6, 1e4, 12001);
  std::vector<double> ys(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    ys[i] = testutil::coupledAtT(sys, ts[i]);
  const auto peaks = cqed::findPeaks(ts, ys, 0.0);
  REQUIRE(peaks.size() == 1);
  CHECK(std::abs(peaks[0].x) < 1e4);
}

TEST_CASE("50 K parameters keep two shallow but distinct maxima") {
  const auto res = testutil::resonatorWithKappaHz(7.7522e9, 484512.5, 33.5);
  const auto sys =
      testutil::onResonanceSystem(res, 8173398.1303733075, 3.9e6);
  const auto ts = testutil::steppedGrid(-40e6, 1e4, 8001);
  std::vector<double> ys(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    ys[i] = testutil::coupledAtT(sys, ts[i]);
  const auto peaks = cqed::findPeaks(ts, ys, 0.0);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[1].x - peaks[0].x ==
        Approx(16.267895851341112e6).epsilon(5e-4));
}

TEST_CASE("synthetic spectra reproduce the model exactly without noise") {
  const auto grid = testutil::linearGrid(kRes.f0 - 5e6, kRes.f0 + 5e6, 201);
  const auto spec = cqed::spectrumFromModel(kRes, grid);
  REQUIRE(spec.freqs.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(spec.freqs[i] == grid[i]);
    CHECK(spec.s21Db[i] == cqed::lorentzianS21(kRes, grid[i]));
  }
}

TEST_CASE("noisy spectra are seed-deterministic") {
  const auto grid = testutil::linearGrid(kRes.f0 - 5e6, kRes.f0 + 5e6, 501);
  const auto a = cqed::spectrumFromModel(kRes, grid, 0.1, 42);
  const auto b = cqed::spectrumFromModel(kRes, grid, 0.1, 42);
  const auto c = cqed::spectrumFromModel(kRes, grid, 0.1, 43);
  CHECK(a.s21Db == b.s21Db);
  CHECK(a.s21Db != c.s21Db);
}

TEST_CASE("noise has approximately the requested moments") {
  const auto grid =
      testutil::linearGrid(kRes.f0 - 5e6, kRes.f0 + 5e6, 20000);
  const auto clean = cqed::spectrumFromModel(kRes, grid);
  const auto noisy = cqed::spectrumFromModel(kRes, grid, 0.1, 7);
  double sum = 0.0, sumSq = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = noisy.s21Db[i] - clean.s21Db[i];
    sum += d;
    sumSq += d * d;
  }
  const double n = static_cast<double>(grid.size());
  const double mean = sum / n;
  const double sd = std::sqrt(sumSq / n - mean * mean);
  CHECK(std::abs(mean) < 3e-3);
  CHECK(sd == Approx(0.1).epsilon(0.05));
}

TEST_CASE("coupled synthetic spectra record the applied field") {
  const auto res = testutil::resonatorWithKappaHz(7.7522e9, 484512.5, 33.5);
  cqed::CoupledSystem sys = testutil::onResonanceSystem(res, 39e6, 14e6);
  sys.fp = {0.28, 0.2765};
  const auto grid = testutil::linearGrid(res.f0 - 5e6, res.f0 + 5e6, 11);
  const auto spec = cqed::spectrumFromModel(sys, grid);
  REQUIRE(spec.meta.fieldT.has_value());
  CHECK(*spec.meta.fieldT == 0.28);
}

TEST_CASE("synthetic spectra reject bad grids and noise levels") {
  CHECK(errorCodeOf([] {
          cqed::spectrumFromModel(kRes, std::vector<double>{});
        }) == ErrorCode::InvalidArgument);
  const auto grid = testutil::linearGrid(kRes.f0 - 5e6, kRes.f0 + 5e6, 11);
  CHECK(errorCodeOf([&] { cqed::spectrumFromModel(kRes, grid, -0.1); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("spectrum validation enforces shape, order, and finiteness") {
  cqed::Spectrum spec;
  spec.freqs = {1e9, 2e9, 3e9};
  spec.s21Db = {-20.0, -16.5};
  CHECK(errorCodeOf([&] { cqed::validate(spec); }) ==
        ErrorCode::InvalidArgument);

  spec.s21Db = {-20.0, -16.5, -20.0};
  CHECK_NOTHROW(cqed::validate(spec));

  spec.freqs = {1e9, 3e9, 2e9};
  CHECK(errorCodeOf([&] { cqed::validate(spec); }) ==
        ErrorCode::InvalidArgument);

  spec.freqs = {1e9, 2e9, 3e9};
  spec.s21Db[1] = std::nan("");
  CHECK(errorCodeOf([&] { cqed::validate(spec); }) ==
        ErrorCode::InvalidArgument);
}
