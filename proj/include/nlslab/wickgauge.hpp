#pragma once

// Wick-ordered monomials W^q(u) evaluated pointwise on collocation grids, the
// projected Wick nonlinearity, and the mean-field gauge phase.

#include "trajectory.hpp"

namespace nlslab {

struct WickContext {
  int p = 3;          // odd degree >= 3
  double sigma = 0;   // Wick constant
  long N = 8;

  void validate() const {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("degree p must be odd and >= 3");
    requireDyadic(N, "truncation N");
  }
};

// Coefficients c_j of W^q as a polynomial in m = |u|^2:
//   even q = 2r:    W^q = sum_j c_j m^j
//   odd  q = 2r+1:  W^q = (sum_j c_j m^j) u
// with c_j = (-1)^{r-j} C(r,j) sigma^{r-j} r!/j!   (even)
//      c_j = (-1)^{r-j} C(r+1,j+1) sigma^{r-j} r!/j!  (odd).
inline std::vector<double> wickCoefficients(int q, double sigma) {
  if (q < 1) throw std::invalid_argument("Wick degree must be >= 1");
  int r = q / 2;
  bool odd = q % 2 == 1;
  auto binom = [](int n, int k) {
    double b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  std::vector<double> c(r + 1);
  double factR = 1;
  for (int i = 2; i <= r; ++i) factR *= i;
  double factJ = 1;
  for (int j = 0; j <= r; ++j) {
    if (j > 1) factJ *= j;
    double sign = ((r - j) % 2 == 0) ? 1.0 : -1.0;
    double bin = odd ? binom(r + 1, j + 1) : binom(r, j);
    c[j] = sign * bin * std::pow(sigma, r - j) * factR / factJ;
  }
  return c;
}

// Horner evaluation of the Wick polynomial at m = |u|^2.
inline double wickPoly(const std::vector<double>& c, double m) {
  double v = 0;
  for (int j = (int)c.size() - 1; j >= 0; --j) v = v * m + c[j];
  return v;
}

// Pointwise W^q(u) on grid values.
template <class C>
inline std::vector<C> wickApply(const std::vector<C>& u, int q, double sigma) {
  auto c = wickCoefficients(q, sigma);
  std::vector<C> out(u.size());
  bool odd = q % 2 == 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double m = std::norm(u[i]);
    double v = wickPoly(c, m);
    out[i] = odd ? C(v * u[i].real(), v * u[i].imag()) : C(v, 0);
  }
  return out;
}

// Single-mode eigenvalue: W^p(c e^{ikx}) = lambda(|c|^2, sigma) c e^{ikx}.
inline double wickLambda(double modSq, int p, double sigma) {
  return wickPoly(wickCoefficients(p, sigma), modSq);
}

// Pi_N W^p(f) (or the unprojected band-K result when piN == 0), computed on an
// alias-free grid so every retained coefficient is exact.
template <class Real>
inline LatticeField wickNonlinearity(GridEngine<Real>& eng, const LatticeField& f, int p,
                                     double sigma, long piN = 0) {
  int G = niceGridSize(minAliasFreeGrid(f.K, p, f.K));
  auto grid = eng.toGrid(f, G);
  auto w = wickApply(grid, p, sigma);
  LatticeField out = eng.fromGrid(w, f.d, G, f.K);
  if (piN > 0) out = project(out, piN, Proj::Pi);
  return out;
}

// Spatial mean of W^{q}(u) for band-limited u; exact on a grid with
// G >= qK+1 (no product frequency wraps to zero).
template <class Real>
inline double wickMean(GridEngine<Real>& eng, const LatticeField& f, int q, double sigma) {
  int G = niceGridSize(q * f.K + 1);
  auto grid = eng.toGrid(f, G);
  auto c = wickCoefficients(q, sigma);
  double sum = 0;
  for (auto& v : grid) sum += wickPoly(c, std::norm(v));
  return sum / (double)grid.size();
}

// Gauge phase theta(t) = (p+1)/2 * int_0^t mean(W^{p-1}(u)) dt', composite
// trapezoid over the stored snapshots.  Returns theta at each snapshot time.
template <class Real>
inline std::vector<double> gaugePhase(GridEngine<Real>& eng, const Trajectory& traj, int p,
                                      double sigma) {
  if (traj.times.size() < 2) throw std::invalid_argument("gauge phase needs >= 2 snapshots");
  std::size_t n = traj.times.size();
  std::vector<double> mean(n), theta(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    mean[i] = wickMean(eng, traj.snapshots[i], p - 1, sigma);
  double half = 0.5 * (p + 1) / 2.0;
  for (std::size_t i = 1; i < n; ++i)
    theta[i] = theta[i - 1] +
               half * (traj.times[i] - traj.times[i - 1]) * (mean[i] + mean[i - 1]);
  return theta;
}

}  // namespace nlslab
