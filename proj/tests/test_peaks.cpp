#include <doctest.h>

#include <cmath>
#include <vector>

#include "cqed/errors.hpp"
#include "cqed/peaks.hpp"
#include "helpers.hpp"

using cqed::ErrorCode;
using doctest::Approx;
using testutil::errorCodeOf;

TEST_CASE("a single interior maximum is found with full prominence") {
  const std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<double> y{0, 1, 2, 3, 10, 3, 2, 1, 0};
  const auto peaks = cqed::findPeaks(x, y, 0.0);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].index == 4);
  CHECK(peaks[0].value == 10.0);
  CHECK(peaks[0].prominence == 10.0);
}

TEST_CASE("plateau maxima report their midpoint sample") {
  const std::vector<double> x{0, 1, 2, 3, 4, 5, 6};
  const std::vector<double> y{0, 2, 5, 5, 5, 2, 0};
  const auto peaks = cqed::findPeaks(x, y, 0.0);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].index == 3);
  // The flat triple is not strictly concave, so no parabolic shift applies.
  CHECK(peaks[0].x == 3.0);
}

TEST_CASE("prominence threshold separates major and minor bumps") {
  const std::vector<double> x{0, 1, 2, 3, 4};
  const std::vector<double> y{0, 8, 4, 6, 0};

  const auto loose = cqed::findPeaks(x, y, 1.0);
  REQUIRE(loose.size() == 2);
  CHECK(loose[0].index == 1);
  CHECK(loose[0].prominence == 8.0);
  CHECK(loose[1].index == 3);
  CHECK(loose[1].prominence == 2.0);  // saddle at 4 against the higher left bump

  const auto strict = cqed::findPeaks(x, y, 3.0);
  REQUIRE(strict.size() == 1);
  CHECK(strict[0].index == 1);
}

TEST_CASE("edge samples are never peaks") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> rising{0, 1, 2, 3};
  CHECK(cqed::findPeaks(x, rising, 0.0).empty());
  const std::vector<double> falling{3, 2, 1, 0};
  CHECK(cqed::findPeaks(x, falling, 0.0).empty());
}

TEST_CASE("parabolic refinement recovers an off-grid vertex") {
  // Samples of y = 5 - 2*(x - c)^2 on a non-uniform grid.
  const double c = 2.37;
  const std::vector<double> x{0.0, 1.1, 2.0, 3.1, 4.5};
  std::vector<double> y;
  for (double xi : x) y.push_back(5.0 - 2.0 * (xi - c) * (xi - c));
  const auto peaks = cqed::findPeaks(x, y, 0.0);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].x == Approx(c).epsilon(1e-12));

  CHECK(cqed::parabolicVertex(x, y, 2) == Approx(c).epsilon(1e-12));
  CHECK(cqed::parabolicVertex(x, y, 3) == Approx(c).epsilon(1e-12));
}

TEST_CASE("refinement falls back to the sample for non-concave triples") {
  const std::vector<double> x{0, 1, 2};
  const std::vector<double> flat{1, 1, 1};
  CHECK(cqed::parabolicVertex(x, flat, 1) == 1.0);
}

TEST_CASE("peak search validates its inputs") {
  const std::vector<double> x{0, 1, 2};
  const std::vector<double> y{0, 1, 0};
  CHECK(errorCodeOf([&] {
          cqed::findPeaks({0, 1}, {0, 1}, 0.0);
        }) == ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([&] { cqed::findPeaks({0, 1, 2}, {0, 1}, 0.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([&] { cqed::findPeaks(x, y, -1.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([&] { cqed::findPeaks({0, 2, 1}, y, 0.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(errorCodeOf([&] {
          cqed::findPeaks(x, {0, std::nan(""), 0}, 0.0);
        }) == ErrorCode::InvalidArgument);
}
