#include "cqed/fitting.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <utility>

#include "cqed/estimators.hpp"
#include "cqed/peaks.hpp"
#include "cqed/spin_ensemble.hpp"

namespace cqed {

namespace {

std::size_t findParamIndex(const std::vector<std::string>& names,
                           std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  fail(ErrorCode::InvalidArgument,
       "unknown parameter \"" + std::string(name) + "\"");
}

std::string formatParams(const Eigen::VectorXd& p) {
  std::ostringstream os;
  os << std::setprecision(17) << "[";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i > 0) os << ", ";
    os << p[i];
  }
  os << "]";
  return os.str();
}

double relStepSize(const Eigen::VectorXd& step, const Eigen::VectorXd& p) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < step.size(); ++i)
    worst = std::max(worst, std::abs(step[i]) / (std::abs(p[i]) + DBL_MIN));
  return worst;
}

Eigen::MatrixXd numericJacobian(const ResidualFn& residual,
                                const Eigen::VectorXd& p, Eigen::Index m,
                                double fdStep) {
  Eigen::MatrixXd jac(m, p.size());
  Eigen::VectorXd probe = p;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const double h = fdStep * std::max(std::abs(p[j]), 1.0);
    probe[j] = p[j] + h;
    const Eigen::VectorXd up = residual(probe);
    probe[j] = p[j] - h;
    const Eigen::VectorXd down = residual(probe);
    probe[j] = p[j];
    if (up.size() != m || down.size() != m)
      fail(ErrorCode::InvalidArgument,
           "residual length changed during differentiation");
    jac.col(j) = (up - down) / (2.0 * h);
  }
  return jac;
}

Eigen::VectorXd standardErrors(const Eigen::MatrixXd& jac, double cost,
                               Eigen::Index m) {
  const Eigen::Index n = jac.cols();
  if (m <= n) return Eigen::VectorXd::Zero(n);
  const double s2 = cost / static_cast<double>(m - n);
  // Equilibrate the columns first: parameters of wildly different physical
  // scale would otherwise make the normal matrix look rank-deficient.
  Eigen::VectorXd scale(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = jac.col(j).norm();
    scale[j] = norm > 0 ? 1.0 / norm : 1.0;
  }
  const Eigen::MatrixXd scaled = jac * scale.asDiagonal();
  const Eigen::MatrixXd inv = (scaled.transpose() * scaled)
                                  .completeOrthogonalDecomposition()
                                  .pseudoInverse();
  Eigen::VectorXd errs(n);
  for (Eigen::Index i = 0; i < n; ++i)
    errs[i] = scale[i] * std::sqrt(std::max(s2 * inv(i, i), 0.0));
  return errs;
}

}  // namespace

double FitResult::param(std::string_view name) const {
  return params[static_cast<Eigen::Index>(findParamIndex(paramNames, name))];
}

double FitResult::stdErr(std::string_view name) const {
  return stdErrs[static_cast<Eigen::Index>(findParamIndex(paramNames, name))];
}

FitResult nllsMinimize(const ResidualFn& residual, const Eigen::VectorXd& init,
                       const MinimizeOptions& options) {
  if (init.size() == 0)
    fail(ErrorCode::InvalidArgument, "fit needs at least one parameter");
  if (options.maxIterations < 1)
    fail(ErrorCode::InvalidArgument, "iteration budget must be at least 1");
  if (!(options.stepTol > 0) || !(options.fdStep > 0) ||
      !(options.gradTolRel >= 0))
    fail(ErrorCode::InvalidArgument, "fit tolerances must be positive");
  if (!options.paramNames.empty() &&
      options.paramNames.size() != static_cast<std::size_t>(init.size()))
    fail(ErrorCode::InvalidArgument,
         "parameter name list does not match the parameter count");

  FitResult result;
  if (options.paramNames.empty()) {
    for (Eigen::Index i = 0; i < init.size(); ++i)
      result.paramNames.push_back("p" + std::to_string(i));
  } else {
    result.paramNames = options.paramNames;
  }

  Eigen::VectorXd p = init;
  Eigen::VectorXd r = residual(p);
  if (r.size() == 0)
    fail(ErrorCode::InvalidArgument, "residual must not be empty");
  if (!r.allFinite())
    fail(ErrorCode::NonFiniteResidual,
         "residual is non-finite at initial parameters " + formatParams(p));
  const Eigen::Index m = r.size();

  const auto jacobianAt = [&](const Eigen::VectorXd& point) {
    if (options.jacobian) {
      Eigen::MatrixXd jac = options.jacobian(point);
      if (jac.rows() != m || jac.cols() != p.size())
        fail(ErrorCode::InvalidArgument, "analytic Jacobian has wrong shape");
      return jac;
    }
    return numericJacobian(residual, point, m, options.fdStep);
  };

  double cost = r.squaredNorm();
  Eigen::MatrixXd jac = jacobianAt(p);
  Eigen::VectorXd grad = jac.transpose() * r;
  const double grad0 = grad.norm();

  const auto finish = [&](int iterations) {
    result.params = p;
    result.stdErrs = standardErrors(jac, cost, m);
    result.residualNorm = std::sqrt(cost / static_cast<double>(m));
    result.iterations = iterations;
    result.converged = true;
    return result;
  };

  if (grad0 == 0.0) return finish(0);

  double lambda = 0.0;
  int iterations = 0;
  while (iterations < options.maxIterations) {
    ++iterations;

    const Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::MatrixXd damped = normal;
    if (lambda > 0.0)
      for (Eigen::Index i = 0; i < damped.rows(); ++i)
        damped(i, i) += lambda * std::max(normal(i, i), DBL_MIN);
    const Eigen::VectorXd step = damped.ldlt().solve(-grad);

    bool accepted = false;
    double relStep = std::numeric_limits<double>::infinity();
    if (step.allFinite()) {
      relStep = relStepSize(step, p);
      const Eigen::VectorXd pNew = p + step;
      const Eigen::VectorXd rNew = residual(pNew);
      if (rNew.size() != m)
        fail(ErrorCode::InvalidArgument,
             "residual length changed during iteration");
      const double costNew = rNew.squaredNorm();
      if (std::isfinite(costNew) && costNew < cost) {
        accepted = true;
        p = pNew;
        r = rNew;
        cost = costNew;
      }
    }

    if (accepted) {
      if (lambda > 0.0) {
        lambda /= 10.0;
        if (lambda < 1e-12) lambda = 0.0;
      }
      jac = jacobianAt(p);
      grad = jac.transpose() * r;
      if (relStep < options.stepTol) return finish(iterations);
      if (grad.norm() <= options.gradTolRel * grad0) return finish(iterations);
    } else {
      // A rejected step this small means the model cannot improve on the
      // current point; report it as the minimum.
      if (relStep < options.stepTol) return finish(iterations);
      lambda = (lambda == 0.0) ? 1e-3 : lambda * 10.0;
      if (lambda > 1e14)
        fail(ErrorCode::NotConverged,
             "damping exploded after " + std::to_string(iterations) +
                 " passes; the model cannot descend from " + formatParams(p));
    }
  }
  fail(ErrorCode::NotConverged,
       "iteration budget exhausted after " +
           std::to_string(options.maxIterations) + " passes");
}

FitResult fitLorentzian(const Spectrum& spec,
                        const std::optional<ResonatorParams>& init) {
  validate(spec);
  double f0Init, qInit, ilInit;
  if (init) {
    f0Init = init->f0;
    qInit = init->qL;
    ilInit = init->il;
  } else {
    const auto& s = spec.s21Db;
    const std::size_t ipk = static_cast<std::size_t>(
        std::max_element(s.begin(), s.end()) - s.begin());
    if (ipk == 0 || ipk + 1 == s.size())
      fail(ErrorCode::NoPeak, "transmission maximum sits on a grid edge");
    f0Init = spec.freqs[ipk];
    qInit = qFrom3Db(spec);
    ilInit = -s[ipk];
  }

  const auto residual = [&spec](const Eigen::VectorXd& p) {
    const double f0 = p[0], q = p[1], il = p[2];
    Eigen::VectorXd r(static_cast<Eigen::Index>(spec.freqs.size()));
    for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
      const double y = spec.freqs[i] / f0 - f0 / spec.freqs[i];
      const double u = q * y;
      r[static_cast<Eigen::Index>(i)] =
          (-il - 10.0 * std::log10(1.0 + u * u)) - spec.s21Db[i];
    }
    return r;
  };

  MinimizeOptions options;
  options.paramNames = {"f0_hz", "q_loaded", "il_db"};
  Eigen::VectorXd p0(3);
  p0 << f0Init, qInit, ilInit;
  return nllsMinimize(residual, p0, options);
}

BranchExtraction extractBranchPeaks(const FieldMap& map,
                                    double minProminenceDb) {
  validate(map);
  if (map.fields.size() < 2)
    fail(ErrorCode::InvalidArgument,
         "branch extraction needs at least 2 field rows");

  const auto rowPeaks = [&](std::size_t i) {
    const Spectrum spec = map.row(i);
    return findPeaks(spec.freqs, spec.s21Db, minProminenceDb);
  };
  const auto strongest = [](const std::vector<Peak>& peaks) {
    return std::max_element(peaks.begin(), peaks.end(),
                            [](const Peak& a, const Peak& b) {
                              return a.value < b.value;
                            });
  };

  // The bare resonator frequency is taken from the edge rows, where the
  // spins are far detuned and the strongest peak is cavity-like.
  const std::vector<Peak> firstRow = rowPeaks(0);
  const std::vector<Peak> lastRow = rowPeaks(map.fields.size() - 1);
  double f0Bare;
  if (!firstRow.empty() && !lastRow.empty())
    f0Bare = (strongest(firstRow)->x + strongest(lastRow)->x) / 2.0;
  else if (!firstRow.empty())
    f0Bare = strongest(firstRow)->x;
  else if (!lastRow.empty())
    f0Bare = strongest(lastRow)->x;
  else
    fail(ErrorCode::NoPeak,
         "cannot infer the bare resonator frequency: no prominent peak in "
         "either edge row");

  BranchExtraction out;
  for (std::size_t i = 0; i < map.fields.size(); ++i) {
    const std::vector<Peak> peaks = rowPeaks(i);
    const double b = map.fields[i];
    if (peaks.empty()) {
      out.skipped.push_back({i, b, "no peak above the prominence threshold"});
    } else if (peaks.size() == 1) {
      const double f = peaks[0].x;
      if (std::abs(f - f0Bare) <= 1e-9 * f0Bare) {
        // Unresolved crossing: one peak feeds both branches at half weight.
        out.data.points.push_back({b, f, Branch::Lower, 0.5});
        out.data.points.push_back({b, f, Branch::Upper, 0.5});
      } else {
        out.data.points.push_back(
            {b, f, f >= f0Bare ? Branch::Upper : Branch::Lower, 1.0});
      }
    } else if (peaks.size() == 2) {
      out.data.points.push_back({b, peaks[0].x, Branch::Lower, 1.0});
      out.data.points.push_back({b, peaks[1].x, Branch::Upper, 1.0});
    } else {
      out.skipped.push_back(
          {i, b,
           "more than two prominent peaks (" + std::to_string(peaks.size()) +
               ")"});
    }
  }
  return out;
}

void validate(const AnticrossingData& data) {
  if (data.points.size() < 4)
    fail(ErrorCode::InvalidArgument,
         "anticrossing fit needs at least 4 branch points, got " +
             std::to_string(data.points.size()));
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    const BranchPoint& pt = data.points[i];
    if (!std::isfinite(pt.b) || !std::isfinite(pt.fPeak) || pt.fPeak <= 0)
      fail(ErrorCode::InvalidArgument,
           "branch point " + std::to_string(i) +
               " has a non-finite field or non-positive frequency");
    if (!std::isfinite(pt.weight) || pt.weight <= 0)
      fail(ErrorCode::InvalidArgument,
           "branch point " + std::to_string(i) + " has a non-positive weight");
  }
}

namespace {

double medianOf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

// Crossing-field estimate: the field whose two branches come closest. Rows
// without both branches fall back to the field where the branch labels flip.
double estimateCrossingField(const std::vector<BranchPoint>& pts) {
  struct FieldGroup {
    double b;
    std::vector<double> lower, upper;
  };
  std::vector<FieldGroup> groups;
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].b < pts[b].b;
  });
  for (std::size_t idx : order) {
    if (groups.empty() || groups.back().b != pts[idx].b)
      groups.push_back({pts[idx].b, {}, {}});
    (pts[idx].branch == Branch::Lower ? groups.back().lower
                                      : groups.back().upper)
        .push_back(pts[idx].fPeak);
  }

  double bestField = 0.0, bestSep = std::numeric_limits<double>::infinity();
  for (const FieldGroup& g : groups) {
    if (g.lower.empty() || g.upper.empty()) continue;
    for (double fl : g.lower)
      for (double fu : g.upper)
        if (std::abs(fu - fl) < bestSep) {
          bestSep = std::abs(fu - fl);
          bestField = g.b;
        }
  }
  if (std::isfinite(bestSep)) return bestField;

  // No field carries both branches: the cavity-like label flips across the
  // crossing, so take the midpoint of the first adjacent label change.
  for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
    const bool hasLower = !groups[k].lower.empty();
    const bool hasLowerNext = !groups[k + 1].lower.empty();
    if (hasLower != hasLowerNext)
      return (groups[k].b + groups[k + 1].b) / 2.0;
  }
  std::vector<double> fields;
  for (const FieldGroup& g : groups) fields.push_back(g.b);
  return medianOf(fields);
}

// Smallest nonzero same-field branch separation, Hz; falls back to a quarter
// of the overall frequency spread when only coincident pairs exist.
double minBranchSeparation(const std::vector<BranchPoint>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (const BranchPoint& a : pts)
    for (const BranchPoint& b : pts) {
      if (a.b != b.b || a.branch != Branch::Lower ||
          b.branch != Branch::Upper)
        continue;
      const double sep = std::abs(b.fPeak - a.fPeak);
      if (sep > 0 && sep < best) best = sep;
    }
  if (std::isfinite(best)) return best;
  double lo = pts.front().fPeak, hi = pts.front().fPeak;
  for (const BranchPoint& p : pts) {
    lo = std::min(lo, p.fPeak);
    hi = std::max(hi, p.fPeak);
  }
  return std::max((hi - lo) / 4.0, 1.0);
}

}  // namespace

FitResult fitAnticrossing(const AnticrossingData& data,
                          const SpinSpecies& species,
                          const std::optional<double>& f0Fixed,
                          const PhysicalConstants& consts) {
  validate(data);
  validate(species);
  validate(consts);
  if (f0Fixed && (!std::isfinite(*f0Fixed) || *f0Fixed <= 0))
    fail(ErrorCode::InvalidArgument, "fixed f0 must be positive (Hz)");
  const std::vector<BranchPoint>& pts = data.points;

  bool anyLower = false, anyUpper = false;
  double minB = pts.front().b, maxB = pts.front().b;
  for (const BranchPoint& pt : pts) {
    (pt.branch == Branch::Lower ? anyLower : anyUpper) = true;
    minB = std::min(minB, pt.b);
    maxB = std::max(maxB, pt.b);
  }
  if (minB == maxB)
    fail(ErrorCode::InsufficientSpan, "all points share one applied field");
  if (!anyLower || !anyUpper)
    fail(ErrorCode::InsufficientSpan, "only one branch is represented");

  const double bRes0 = estimateCrossingField(pts);
  if (minB >= bRes0 || maxB <= bRes0)
    fail(ErrorCode::InsufficientSpan,
         "all applied fields sit on one side of the estimated crossing");

  const double gc0 = kPi * minBranchSeparation(pts) / kTwoPi;  // Hz

  double f0Init;
  if (f0Fixed) {
    f0Init = *f0Fixed;
  } else {
    // Cavity-like points: the branch that stays near the bare resonance on
    // each side of the crossing; keep the most-detuned half.
    std::vector<std::pair<double, double>> cavityLike;  // (|b - bRes0|, f)
    for (const BranchPoint& pt : pts) {
      const bool cavity = (pt.branch == Branch::Upper && pt.b < bRes0) ||
                          (pt.branch == Branch::Lower && pt.b > bRes0);
      if (cavity) cavityLike.push_back({std::abs(pt.b - bRes0), pt.fPeak});
    }
    std::vector<double> candidates;
    if (!cavityLike.empty()) {
      std::sort(cavityLike.begin(), cavityLike.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
      const std::size_t keep = (cavityLike.size() + 1) / 2;
      for (std::size_t i = 0; i < keep; ++i)
        candidates.push_back(cavityLike[i].second);
    } else {
      for (const BranchPoint& pt : pts) candidates.push_back(pt.fPeak);
    }
    f0Init = medianOf(std::move(candidates));
  }

  const double zeeman = species.gFactor * consts.muB / consts.hbar;
  const auto residual = [&pts, f0Fixed, zeeman](const Eigen::VectorXd& p) {
    const double gcRad = kTwoPi * p[0];
    const double bRes = p[1];
    const double omega0 = kTwoPi * (f0Fixed ? *f0Fixed : p[2]);
    Eigen::VectorXd r(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double delta = zeeman * (pts[i].b - bRes);
      const RabiBranches br = rabiBranchesAt(omega0, delta, gcRad);
      const double model =
          (pts[i].branch == Branch::Lower ? br.lower : br.upper) / kTwoPi;
      r[static_cast<Eigen::Index>(i)] =
          std::sqrt(pts[i].weight) * (model - pts[i].fPeak) / 1e6;
    }
    return r;
  };

  MinimizeOptions options;
  if (f0Fixed) {
    options.paramNames = {"gc_hz", "bres_t"};
    Eigen::VectorXd p0(2);
    p0 << gc0, bRes0;
    FitResult partial = nllsMinimize(residual, p0, options);
    FitResult full;
    full.paramNames = {"gc_hz", "bres_t", "f0_hz"};
    full.params = Eigen::VectorXd(3);
    full.params << partial.params[0], partial.params[1], *f0Fixed;
    full.stdErrs = Eigen::VectorXd(3);
    full.stdErrs << partial.stdErrs[0], partial.stdErrs[1], 0.0;
    full.residualNorm = partial.residualNorm;
    full.iterations = partial.iterations;
    full.converged = partial.converged;
    return full;
  }
  options.paramNames = {"gc_hz", "bres_t", "f0_hz"};
  Eigen::VectorXd p0(3);
  p0 << gc0, bRes0, f0Init;
  return nllsMinimize(residual, p0, options);
}

FitResult fitTemperatureScaling(const std::vector<TempPoint>& points, double f,
                                const std::optional<double>& nTotal,
                                const PhysicalConstants& consts) {
  validate(consts);
  if (points.size() < 2)
    fail(ErrorCode::InvalidArgument,
         "temperature-scaling fit needs at least 2 points, got " +
             std::to_string(points.size()));
  if (!std::isfinite(f) || f <= 0)
    fail(ErrorCode::InvalidArgument, "frequency must be positive (Hz)");
  if (nTotal && (!std::isfinite(*nTotal) || *nTotal <= 0))
    fail(ErrorCode::InvalidArgument, "total spin count must be positive");

  double sumXY = 0.0, sumXX = 0.0;
  std::vector<double> xs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].gcRad) || points[i].gcRad < 0)
      fail(ErrorCode::InvalidArgument,
           "coupling at point " + std::to_string(i) +
               " must be non-negative (rad/s)");
    xs[i] = std::sqrt(polarizedFraction(f, points[i].t, consts));
    sumXY += points[i].gcRad * xs[i];
    sumXX += xs[i] * xs[i];
  }
  const double prefRad = sumXY / sumXX;

  double rss = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double resid = points[i].gcRad - prefRad * xs[i];
    rss += resid * resid;
  }
  const double stdErrRad =
      std::sqrt(rss / static_cast<double>(points.size() - 1) / sumXX);

  FitResult result;
  result.paramNames = {"prefactor_hz"};
  if (nTotal) result.paramNames.push_back("g_single_hz");
  const Eigen::Index n = static_cast<Eigen::Index>(result.paramNames.size());
  result.params = Eigen::VectorXd(n);
  result.stdErrs = Eigen::VectorXd(n);
  result.params[0] = prefRad / kTwoPi;
  result.stdErrs[0] = stdErrRad / kTwoPi;
  if (nTotal) {
    const double root = std::sqrt(*nTotal);
    result.params[1] = result.params[0] / root;
    result.stdErrs[1] = result.stdErrs[0] / root;
  }
  result.residualNorm =
      std::sqrt(rss / static_cast<double>(points.size())) / kTwoPi / 1e6;
  result.iterations = 1;
  result.converged = true;
  return result;
}

}  // namespace cqed
