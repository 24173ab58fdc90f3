#pragma once

#include <vector>

#include "cqed/constants.hpp"

namespace cqed {

// Single-excitation Tavis-Cummings instance: one cavity mode at omegaCavity
// plus N spins at spinFreqs[i] with single-spin couplings couplings[i]
// (all rad/s, couplings >= 0, equal lengths N >= 1).
struct TCInstance {
  double omegaCavity;
  std::vector<double> spinFreqs;
  std::vector<double> couplings;
};

void validate(const TCInstance& inst);

// Eigenfrequencies of the (N+1)x(N+1) single-excitation Hamiltonian: diagonal
// (omega_cav, omega_s1, ..., omega_sN), first row/column off-diagonals
// (g_1, ..., g_N), zeros elsewhere. Sorted ascending, all real. Solved
// exactly via the arrow-matrix secular equation (poles split the real line
// into strictly monotone intervals); spins sharing a frequency contribute
// their dark states at that frequency exactly. The sorted result is
// bit-for-bit invariant under permutations of the spin order.
std::vector<double> singleExcitationSpectrum(const TCInstance& inst);

// Half the distance between the extremal eigenvalues; analytically equals
// sqrt(sum g_i^2) when all spins are degenerate at omegaCavity. Throws
// NotResonant if any spin frequency differs from omegaCavity by more than
// 1e-9 relative.
double effectiveCoupling(const TCInstance& inst);

// Per-detuning comparison between the exact oracle and the two-level branch
// formula with g_c = g*sqrt(N).
struct BranchComparison {
  double delta;          // applied detuning, rad/s
  double oracleLower;    // smallest oracle eigenvalue, rad/s
  double oracleUpper;    // largest oracle eigenvalue, rad/s
  double twoLevelLower;  // branch formula omega_-, rad/s
  double twoLevelUpper;  // branch formula omega_+, rad/s
  double relErrLower;    // |oracle - formula| / |formula|
  double relErrUpper;
};

// Sweeps the instance's spins to omegaCavity + delta for each delta and
// compares the two bright eigenvalues against the branch formula. Requires
// uniform couplings (InvalidArgument otherwise).
std::vector<BranchComparison> branchesVsTwoLevel(
    const TCInstance& inst, const std::vector<double>& detunings);

}  // namespace cqed
