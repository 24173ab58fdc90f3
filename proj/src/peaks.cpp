#include "cqed/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {

namespace {

// Lowest point separating the peak from higher ground (or the signal edge)
// on each side; prominence is the drop to the higher of the two bases.
double prominenceOf(const std::vector<double>& y, std::size_t p) {
  const std::size_t n = y.size();
  double leftMin = y[p];
  for (std::size_t i = p; i-- > 0;) {
    if (y[i] > y[p]) break;
    leftMin = std::min(leftMin, y[i]);
  }
  double rightMin = y[p];
  for (std::size_t i = p + 1; i < n; ++i) {
    if (y[i] > y[p]) break;
    rightMin = std::min(rightMin, y[i]);
  }
  return y[p] - std::max(leftMin, rightMin);
}

}  // namespace

double parabolicVertex(const std::vector<double>& x,
                       const std::vector<double>& y, std::size_t p) {
  const double d1 = x[p] - x[p - 1];
  const double d2 = x[p + 1] - x[p];
  const double slopeL = (y[p - 1] - y[p]) / d1;
  const double slopeR = (y[p + 1] - y[p]) / d2;
  const double a = (slopeL + slopeR) / (d1 + d2);
  if (!(a < 0)) return x[p];
  const double b = slopeR - a * d2;
  const double vertex = x[p] - b / (2.0 * a);
  return std::clamp(vertex, x[p - 1], x[p + 1]);
}

std::vector<Peak> findPeaks(const std::vector<double>& x,
                            const std::vector<double>& y,
                            double minProminence) {
  if (x.size() != y.size())
    fail(ErrorCode::InvalidArgument,
         "peak search axes differ in length (" + std::to_string(x.size()) +
             " vs " + std::to_string(y.size()) + ")");
  if (x.size() < 3)
    fail(ErrorCode::InvalidArgument,
         "peak search needs at least 3 samples, got " +
             std::to_string(x.size()));
  if (!std::isfinite(minProminence) || minProminence < 0)
    fail(ErrorCode::InvalidArgument, "minimum prominence must be non-negative");
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      fail(ErrorCode::InvalidArgument,
           "peak search input contains a non-finite value at index " +
               std::to_string(i));
    if (i > 0 && !(x[i] > x[i - 1]))
      fail(ErrorCode::InvalidArgument,
           "peak search abscissa must be strictly increasing (violated at "
           "index " +
               std::to_string(i) + ")");
  }

  std::vector<Peak> peaks;
  std::size_t i = 1;
  while (i + 1 < n) {
    if (y[i] > y[i - 1]) {
      // Walk across a possible plateau; its midpoint represents the maximum.
      std::size_t j = i;
      while (j + 1 < n && y[j + 1] == y[i]) ++j;
      if (j + 1 < n && y[j + 1] < y[i]) {
        const std::size_t p = (i + j) / 2;
        const double prom = prominenceOf(y, p);
        if (prom >= minProminence)
          peaks.push_back({p, parabolicVertex(x, y, p), y[p], prom});
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  return peaks;
}

}  // namespace cqed
