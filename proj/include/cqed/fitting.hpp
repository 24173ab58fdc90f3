#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/constants.hpp"
#include "cqed/field_map.hpp"
#include "cqed/spectral_model.hpp"

namespace cqed {

// Result of a least-squares fit: a named parameter vector with standard
// errors from the residual covariance, the root-mean-square residual (dB for
// spectral fits, MHz for frequency-domain fits), and convergence metadata. A
// FitResult is only ever returned after the convergence criteria are met
// (otherwise the engine throws NotConverged), so converged is always true on
// returned values.
struct FitResult {
  std::vector<std::string> paramNames;
  Eigen::VectorXd params;
  Eigen::VectorXd stdErrs;
  double residualNorm = 0.0;
  int iterations = 0;
  bool converged = false;

  double param(std::string_view name) const;
  double stdErr(std::string_view name) const;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct MinimizeOptions {
  int maxIterations = 200;
  double stepTol = 1e-10;    // max_i |step_i| / |p_i|
  double gradTolRel = 1e-12; // ||J^T r|| vs its initial value
  double fdStep = 1e-6;      // central-difference step, relative to scale
  JacobianFn jacobian;       // optional analytic Jacobian
  std::vector<std::string> paramNames;
};

// Damped Gauss-Newton (Levenberg-Marquardt) minimizer of ||residual(p)||^2.
// Deterministic given inputs. Throws NonFiniteResidual if the residual is
// non-finite at the initial point (the message carries the parameter vector)
// and NotConverged when the iteration budget is exhausted.
FitResult nllsMinimize(const ResidualFn& residual, const Eigen::VectorXd& init,
                       const MinimizeOptions& options = {});

// Lorentzian resonance fit in dB space with uniform weights.
// Parameters: {f0_hz, q_loaded, il_db}. When init is omitted the initial
// guess comes from the peak sample (f0), the half-power bandwidth (qL), and
// the peak value (il); the peak estimators' typed errors propagate.
FitResult fitLorentzian(const Spectrum& spec,
                        const std::optional<ResonatorParams>& init = {});

enum class Branch { Lower, Upper };

struct BranchPoint {
  double b;       // applied field, T
  double fPeak;   // extracted peak frequency, Hz
  Branch branch;
  double weight = 1.0;  // 0.5 for crossing ties assigned to both branches
};

// >= 4 finite points spanning both branches.
struct AnticrossingData {
  std::vector<BranchPoint> points;
};

struct SkippedRow {
  std::size_t rowIndex;
  double b;            // field of the skipped row, T
  std::string reason;  // why the row was unresolved
};

struct BranchExtraction {
  AnticrossingData data;
  std::vector<SkippedRow> skipped;
};

// Per-row peak extraction: local maxima above the prominence threshold (dB
// over the local baseline) with 3-point parabolic refinement. Branch labels
// follow frequency ordering relative to the inferred bare resonator
// frequency; a single peak at the crossing is assigned to both branches at
// half weight. Unresolvable rows (no prominent peak, or more than two) are
// returned in the skip list, never silently dropped.
BranchExtraction extractBranchPeaks(const FieldMap& map,
                                    double minProminenceDb = 3.0);

// Branch-position fit against the two-level model with the Zeeman detuning
// of the given species. Parameters: {gc_hz, bres_t, f0_hz}; when f0Fixed is
// given the fit has two free parameters and f0 is reported with zero
// standard error. Residuals are weighted peak-frequency errors in MHz.
// Throws InsufficientSpan when the data cannot bracket the crossing (all
// fields identical, a single branch, or all fields on one side).
FitResult fitAnticrossing(const AnticrossingData& data,
                          const SpinSpecies& species,
                          const std::optional<double>& f0Fixed = {},
                          const PhysicalConstants& consts = kConstants);

struct TempPoint {
  double t;      // K
  double gcRad;  // measured collective coupling, rad/s
};

// One-parameter fit of gC(t) = prefactor * sqrt(tanh(h f/(2 kB t))), solved
// in closed form (prefactor = sum(y*x)/sum(x^2)). Parameters:
// {prefactor_hz} plus {g_single_hz} = prefactor/sqrt(nTotal) when nTotal is
// supplied. Requires >= 2 points with t > 0.
FitResult fitTemperatureScaling(const std::vector<TempPoint>& points, double f,
                                const std::optional<double>& nTotal = {},
                                const PhysicalConstants& consts = kConstants);

void validate(const AnticrossingData& data);

}  // namespace cqed
