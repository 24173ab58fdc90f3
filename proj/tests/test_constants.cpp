#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cqed/constants.hpp"
#include "cqed/errors.hpp"
#include "helpers.hpp"

using cqed::ErrorCode;
using testutil::errorCodeOf;

TEST_CASE("physical constants are pinned to their exact defining values") {
  CHECK(cqed::kConstants.h == 6.62607015e-34);
  CHECK(cqed::kConstants.kB == 1.380649e-23);
  CHECK(cqed::kConstants.muB == 9.2740100783e-24);
  CHECK(cqed::kConstants.mu0 == 1.25663706212e-6);
  CHECK(cqed::kConstants.nA == 6.02214076e23);
  CHECK(cqed::kConstants.hbar == 1.0545718176461565e-34);
  CHECK(cqed::kConstants.hbar ==
        cqed::kConstants.h / (2.0 * std::numbers::pi));
  CHECK_NOTHROW(cqed::validate(cqed::kConstants));
}

TEST_CASE("constants validation rejects an inconsistent hbar") {
  cqed::PhysicalConstants c = cqed::kConstants;
  c.hbar *= 1.0 + 1e-9;
  CHECK(errorCodeOf([&] { cqed::validate(c); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("angular/cyclic conversions are exact inverses") {
  CHECK(cqed::hzToRad(1.0) == cqed::kTwoPi);
  for (double f : {1.0, 7.7522e9, 3.9e6, 0.547}) {
    CHECK(cqed::radToHz(cqed::hzToRad(f)) ==
          doctest::Approx(f).epsilon(1e-15));
  }
}

TEST_CASE("dpph species constants are pinned") {
  CHECK(cqed::kDpph.gFactor == 2.0037);
  CHECK(cqed::kDpph.t1 == 62e-9);
  CHECK(cqed::kDpph.t2 == 62e-9);
  CHECK(cqed::kDpph.gammaS0 == 3.9e6);
  CHECK(cqed::kDpph.massMolar == 394.32);
  CHECK(cqed::kDpph.densityMass == 1.4);
  CHECK_NOTHROW(cqed::validate(cqed::kDpph));
}

TEST_CASE("resonator defaults fill in impedance and magnetic width") {
  const cqed::ResonatorParams res{7.755e9, 20000.0, 16.5};
  CHECK(res.z0 == 50.0);
  CHECK(res.wEff == cqed::kWEffAssumed);
  CHECK(cqed::kWEffAssumed == 400e-6);
  CHECK(cqed::kWStripGeometric == 200e-6);
}

TEST_CASE("cavity decay rate kappa = 2*pi*f0/qL") {
  const double k1 = cqed::kappa({7.7522e9, 16000.0, 33.5});
  CHECK(cqed::radToHz(k1) == doctest::Approx(484512.5).epsilon(1e-12));

  const double k2 = cqed::kappa({7.7522e9, 1e12, 33.5});
  CHECK(cqed::radToHz(k2) == doctest::Approx(0.0077522).epsilon(1e-12));

  const double k3 = cqed::kappa({7.7553e9, 20000.0, 16.5});
  CHECK(cqed::radToHz(k3) == doctest::Approx(387765.0).epsilon(1e-12));

  SUBCASE("doubling f0 doubles kappa exactly") {
    CHECK(cqed::kappa({2 * 7.7522e9, 16000.0, 33.5}) == 2.0 * k1);
  }
  SUBCASE("doubling qL halves kappa") {
    CHECK(cqed::kappa({7.7522e9, 32000.0, 33.5}) ==
          doctest::Approx(k1 / 2.0).epsilon(1e-15));
  }
}

TEST_CASE("kappa rejects unphysical resonators") {
  CHECK(errorCodeOf([] { cqed::kappa({0.0, 16000.0, 33.5}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([] { cqed::kappa({7.7522e9, 0.5, 33.5}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([] { cqed::kappa({7.7522e9, 16000.0, -1.0}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([] { cqed::kappa({7.7522e9, 16000.0, 33.5, -50.0}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("Zeeman detuning slope is 28.044 MHz per mT for dpph") {
  const double d = cqed::detuning({0.001, 0.0}, cqed::kDpph);
  CHECK(cqed::radToHz(d) ==
        doctest::Approx(28044275.978408877).epsilon(1e-12));

  SUBCASE("sign follows the field offset") {
    CHECK(cqed::detuning({0.0, 0.001}, cqed::kDpph) == -d);
    CHECK(cqed::detuning({0.2765, 0.2765}, cqed::kDpph) == 0.0);
  }
  SUBCASE("linear in the field offset") {
    CHECK(cqed::detuning({0.002, 0.0}, cqed::kDpph) == 2.0 * d);
  }
}

TEST_CASE("field points reject negative or non-finite fields") {
  CHECK(errorCodeOf([] { cqed::detuning({-0.001, 0.0}, cqed::kDpph); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([] {
          cqed::detuning({std::nan(""), 0.0}, cqed::kDpph);
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("species validation bounds the g-factor to electron-like spins") {
  cqed::SpinSpecies s = cqed::kDpph;
  s.gFactor = 1.0;
  CHECK(errorCodeOf([&] { cqed::validate(s); }) == ErrorCode::InvalidArgument);
  s = cqed::kDpph;
  s.t2 = 0.0;
  CHECK(errorCodeOf([&] { cqed::validate(s); }) == ErrorCode::InvalidArgument);
  s = cqed::kDpph;
  s.massMolar = -394.32;
  CHECK(errorCodeOf([&] { cqed::validate(s); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("ensemble state validation keeps the polarized count in range") {
  cqed::EnsembleState ok{6e16, 2.0, 3e-11, 5.5e15};
  CHECK_NOTHROW(cqed::validate(ok));
  ok.nPolarized = 7e16;
  CHECK(errorCodeOf([&] { cqed::validate(ok); }) ==
        ErrorCode::InvalidArgument);
  ok.nPolarized = 5.5e15;
  ok.temperature = 0.0;
  CHECK(errorCodeOf([&] { cqed::validate(ok); }) ==
        ErrorCode::InvalidArgument);
  ok.temperature = 2.0;
  ok.volume = -3e-11;
  CHECK(errorCodeOf([&] { cqed::validate(ok); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("error codes map to stable snake_case names") {
  CHECK(cqed::errorCodeName(ErrorCode::InvalidArgument) == "invalid_argument");
  CHECK(cqed::errorCodeName(ErrorCode::MalformedOptionLine) ==
        "malformed_option_line");
  CHECK(cqed::errorCodeName(ErrorCode::NonMonotonicFrequency) ==
        "non_monotonic_frequency");
  CHECK(cqed::errorCodeName(ErrorCode::BandwidthUnresolved) ==
        "bandwidth_unresolved");
  const cqed::Error err(ErrorCode::NoPeak, "nothing prominent");
  CHECK(err.code() == ErrorCode::NoPeak);
  CHECK(std::string(err.what()) == "nothing prominent");
}
