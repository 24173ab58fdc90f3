#pragma once

#include <cstddef>
#include <vector>

namespace cqed {

struct Peak {
  std::size_t index;    // grid index of the local maximum sample
  double x;             // refined position (3-point parabolic vertex)
  double value;         // sample value at the maximum, dB
  double prominence;    // topographic prominence, dB
};

// Local maxima of y(x) with topographic prominence >= minProminence, refined
// by a 3-point parabola through the neighbours (general, non-uniform grids).
// Edge samples are never peaks. Returned in ascending x order.
std::vector<Peak> findPeaks(const std::vector<double>& x,
                            const std::vector<double>& y,
                            double minProminence);

// Abscissa of the parabola vertex through samples p-1, p, p+1 (non-uniform
// spacing is handled); falls back to x[p] when the triple is not strictly
// concave. p must be an interior index.
double parabolicVertex(const std::vector<double>& x,
                       const std::vector<double>& y, std::size_t p);

}  // namespace cqed
