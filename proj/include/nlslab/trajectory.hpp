#pragma once

// Solver configuration and the time-stamped trajectory record shared by the
// evolver and the gauge-phase computation.

#include "lattice.hpp"

namespace nlslab {

struct SolverConfig {
  int d = 1;
  int p = 3;                 // odd nonlinearity degree
  long N = 8;                // dyadic truncation (band for the projected system)
  bool wick = true;          // false: plain |u|^{p-1}u nonlinearity
  double sigma = 0;          // Wick constant (ignored when !wick)
  double dt = 1e-4;
  double tau = 0.1;          // final time
  int snapshotStride = 10;   // record every this many steps
  double selfCheckTol = 1e-6;  // step-doubling tolerance on the final field
  bool selfCheck = false;

  void validate() const {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("degree p must be odd and >= 3");
    if (dt <= 0 || tau <= 0) throw std::invalid_argument("dt and tau must be positive");
    requireDyadic(N, "truncation N");
    if (snapshotStride < 1) throw std::invalid_argument("snapshot stride must be >= 1");
  }
};

struct Trajectory {
  SolverConfig config;
  std::vector<double> times;
  std::vector<LatticeField> snapshots;
  std::vector<double> massLedger;      // sum_k |u_k|^2 per snapshot
  bool selfCheckPassed = true;
  double selfCheckError = 0;           // |u_dt - u_dt/2| relative, when checked
};

}  // namespace nlslab
