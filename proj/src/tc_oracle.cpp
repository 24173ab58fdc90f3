#include "cqed/tc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "cqed/spectral_model.hpp"

namespace cqed {

void validate(const TCInstance& inst) {
  if (!std::isfinite(inst.omegaCavity) || inst.omegaCavity <= 0)
    fail(ErrorCode::InvalidArgument, "cavity frequency must be positive (rad/s)");
  if (inst.spinFreqs.empty())
    fail(ErrorCode::InvalidArgument, "instance needs at least one spin");
  if (inst.spinFreqs.size() != inst.couplings.size())
    fail(ErrorCode::InvalidArgument,
         "spin frequencies and couplings differ in length (" +
             std::to_string(inst.spinFreqs.size()) + " vs " +
             std::to_string(inst.couplings.size()) + ")");
  for (std::size_t i = 0; i < inst.spinFreqs.size(); ++i) {
    if (!std::isfinite(inst.spinFreqs[i]) || inst.spinFreqs[i] <= 0)
      fail(ErrorCode::InvalidArgument,
           "spin frequency must be positive (rad/s) at index " +
               std::to_string(i));
    if (!std::isfinite(inst.couplings[i]) || inst.couplings[i] < 0)
      fail(ErrorCode::InvalidArgument,
           "coupling must be non-negative (rad/s) at index " +
               std::to_string(i));
  }
}

namespace {

struct ArrowProblem {
  double omegaCavity = 0;
  std::vector<double> poles;    // distinct coupled spin frequencies, ascending
  std::vector<double> weights;  // sum of g^2 per pole
  std::vector<double> fixed;    // exact eigenvalues known in advance
};

// Collapse the instance to distinct poles with summed weights; decoupled
// spins and within-group dark states are exact eigenvalues and bypass the
// secular equation entirely. Sorting first makes the whole pipeline
// independent of the caller's spin order.
ArrowProblem reduce(const TCInstance& inst) {
  std::vector<std::pair<double, double>> spins(inst.spinFreqs.size());
  for (std::size_t i = 0; i < spins.size(); ++i)
    spins[i] = {inst.spinFreqs[i], inst.couplings[i]};
  std::sort(spins.begin(), spins.end());

  ArrowProblem prob;
  prob.omegaCavity = inst.omegaCavity;
  std::size_t i = 0;
  while (i < spins.size()) {
    std::size_t j = i;
    double weight = 0;
    std::size_t coupled = 0;
    while (j < spins.size() && spins[j].first == spins[i].first) {
      if (spins[j].second > 0) {
        weight += spins[j].second * spins[j].second;
        ++coupled;
      } else {
        prob.fixed.push_back(spins[j].first);  // decoupled spin
      }
      ++j;
    }
    if (coupled > 0) {
      prob.poles.push_back(spins[i].first);
      prob.weights.push_back(weight);
      for (std::size_t d = 1; d < coupled; ++d)
        prob.fixed.push_back(spins[i].first);  // dark states of the group
    }
    i = j;
  }
  return prob;
}

// Secular function f(lambda) = (omega_c - lambda) - sum W_k/(p_k - lambda);
// strictly decreasing between consecutive poles, so each interval holds
// exactly one root.
double secular(const ArrowProblem& prob, double lambda) {
  double acc = prob.omegaCavity - lambda;
  for (std::size_t k = 0; k < prob.poles.size(); ++k)
    acc -= prob.weights[k] / (prob.poles[k] - lambda);
  return acc;
}

// Bisection on [a, b] assuming f(a) > 0 > f(b); returns an endpoint when
// rounding has already pinned the root there.
double bisectRoot(const ArrowProblem& prob, double a, double b) {
  if (a >= b) return a;
  if (!(secular(prob, a) > 0)) return a;
  if (!(secular(prob, b) < 0)) return b;
  for (int it = 0; it < 200; ++it) {
    const double mid = a + (b - a) / 2.0;
    if (mid <= a || mid >= b) break;
    if (secular(prob, mid) > 0)
      a = mid;
    else
      b = mid;
  }
  return a + (b - a) / 2.0;
}

}  // namespace

std::vector<double> singleExcitationSpectrum(const TCInstance& inst) {
  validate(inst);
  const ArrowProblem prob = reduce(inst);
  std::vector<double> eigen = prob.fixed;

  const std::size_t nPoles = prob.poles.size();
  if (nPoles == 0) {
    eigen.push_back(prob.omegaCavity);  // cavity decouples completely
  } else {
    const double totalWeight =
        std::accumulate(prob.weights.begin(), prob.weights.end(), 0.0);
    const double reach = std::sqrt(totalWeight) + 1.0;
    const double lo =
        std::min(prob.omegaCavity, prob.poles.front()) - reach;
    const double hi = std::max(prob.omegaCavity, prob.poles.back()) + reach;

    constexpr double up = std::numeric_limits<double>::infinity();
    eigen.push_back(
        bisectRoot(prob, lo, std::nextafter(prob.poles.front(), -up)));
    for (std::size_t k = 0; k + 1 < nPoles; ++k)
      eigen.push_back(bisectRoot(prob, std::nextafter(prob.poles[k], up),
                                 std::nextafter(prob.poles[k + 1], -up)));
    eigen.push_back(
        bisectRoot(prob, std::nextafter(prob.poles.back(), up), hi));
  }

  std::sort(eigen.begin(), eigen.end());
  return eigen;
}

double effectiveCoupling(const TCInstance& inst) {
  validate(inst);
  for (std::size_t i = 0; i < inst.spinFreqs.size(); ++i) {
    if (std::abs(inst.spinFreqs[i] - inst.omegaCavity) >
        1e-9 * inst.omegaCavity)
      fail(ErrorCode::NotResonant,
           "spin at index " + std::to_string(i) +
               " is detuned from the cavity; effective coupling is defined "
               "on resonance");
  }
  const std::vector<double> eigen = singleExcitationSpectrum(inst);
  return (eigen.back() - eigen.front()) / 2.0;
}

std::vector<BranchComparison> branchesVsTwoLevel(
    const TCInstance& inst, const std::vector<double>& detunings) {
  validate(inst);
  const double g = inst.couplings.front();
  for (double gi : inst.couplings)
    if (gi != g)
      fail(ErrorCode::InvalidArgument,
           "branch comparison requires uniform couplings");
  for (double d : detunings)
    if (!std::isfinite(d))
      fail(ErrorCode::InvalidArgument, "detunings must be finite");
  const double gCollective =
      g * std::sqrt(static_cast<double>(inst.spinFreqs.size()));

  std::vector<BranchComparison> out;
  out.reserve(detunings.size());
  TCInstance shifted = inst;
  for (double delta : detunings) {
    std::fill(shifted.spinFreqs.begin(), shifted.spinFreqs.end(),
              inst.omegaCavity + delta);
    const std::vector<double> eigen = singleExcitationSpectrum(shifted);
    const RabiBranches formula =
        rabiBranchesAt(inst.omegaCavity, delta, gCollective);
    BranchComparison cmp;
    cmp.delta = delta;
    cmp.oracleLower = eigen.front();
    cmp.oracleUpper = eigen.back();
    cmp.twoLevelLower = formula.lower;
    cmp.twoLevelUpper = formula.upper;
    cmp.relErrLower =
        std::abs(cmp.oracleLower - formula.lower) / std::abs(formula.lower);
    cmp.relErrUpper =
        std::abs(cmp.oracleUpper - formula.upper) / std::abs(formula.upper);
    out.push_back(cmp);
  }
  return out;
}

}  // namespace cqed
