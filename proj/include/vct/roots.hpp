#pragma once

// Dense complex polynomials and a simultaneous-iteration root solver
// (Aberth-Ehrlich) with a companion-matrix eigenvalue fallback.

#include "vct/common.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace vct {

using Cplx = std::complex<double>;

struct Poly {
  std::vector<Cplx> c;  // c[i] y^i

  static Poly from_coeffs(std::vector<Cplx> coeffs) {
    Poly p{std::move(coeffs)};
    p.trim();
    return p;
  }
  static Poly from_roots(const std::vector<Cplx>& roots, Cplx lead = 1.0) {
    Poly p{{lead}};
    for (const Cplx& r : roots) {
      std::vector<Cplx> next(p.c.size() + 1, Cplx(0));
      for (std::size_t i = 0; i < p.c.size(); ++i) {
        next[i + 1] += p.c[i];
        next[i] -= p.c[i] * r;
      }
      p.c = std::move(next);
    }
    return p;
  }

  void trim() {
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }

  Cplx eval(Cplx z) const {
    Cplx v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
  }
  Poly derivative() const {
    if (c.size() <= 1) return Poly{{Cplx(0)}};
    std::vector<Cplx> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
      d[i - 1] = c[i] * static_cast<double>(i);
    return Poly{std::move(d)};
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Cplx> s(std::max(a.c.size(), b.c.size()), Cplx(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) s[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) s[i] += b.c[i];
    return from_coeffs(std::move(s));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Cplx> s(std::max(a.c.size(), b.c.size()), Cplx(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) s[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) s[i] -= b.c[i];
    return from_coeffs(std::move(s));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    std::vector<Cplx> s(a.c.size() + b.c.size() - 1, Cplx(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) s[i + j] += a.c[i] * b.c[j];
    return from_coeffs(std::move(s));
  }
  friend Poly operator*(Cplx s, Poly p) {
    for (auto& v : p.c) v *= s;
    return p;
  }
};

inline std::vector<Cplx> companion_roots(const Poly& p) {
  int n = p.degree();
  if (n < 1) return {};
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  Cplx lead = p.c.back();
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) M(i + 1, i) = 1.0;
    M(i, n - 1) = -p.c[static_cast<std::size_t>(i)] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  std::vector<Cplx> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return roots;
}

// Aberth-Ehrlich simultaneous iteration; relative tolerance on the update.
// Falls back to companion eigenvalues when the iteration stalls, then
// polishes with Newton steps.
inline std::vector<Cplx> solve_roots(const Poly& p,
                                     const std::vector<Cplx>& warm = {},
                                     double tol = 1e-12, int max_iter = 300) {
  int n = p.degree();
  if (n < 1) return {};
  if (std::abs(p.c.back()) == 0.0)
    throw invalid_input("zero leading coefficient");
  Poly dp = p.derivative();

  std::vector<Cplx> z;
  if (static_cast<int>(warm.size()) == n) {
    z = warm;
  } else {
    // companion eigenvalues make a reliable starting configuration, also
    // for clustered roots where a plain initial circle stalls
    z = companion_roots(p);
  }

  bool converged = false;
  for (int iter = 0; iter < max_iter && !converged; ++iter) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      Cplx zi = z[static_cast<std::size_t>(i)];
      Cplx pv = p.eval(zi);
      Cplx dv = dp.eval(zi);
      if (std::abs(pv) == 0.0) continue;
      Cplx w = (std::abs(dv) == 0.0) ? Cplx(1e-14) : pv / dv;
      Cplx sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Cplx diff = zi - z[static_cast<std::size_t>(j)];
        if (std::abs(diff) < 1e-300) diff = Cplx(1e-300);
        sum += 1.0 / diff;
      }
      Cplx denom = 1.0 - w * sum;
      Cplx corr = (std::abs(denom) < 1e-300) ? w : w / denom;
      z[static_cast<std::size_t>(i)] = zi - corr;
      if (std::abs(corr) > tol * (1.0 + std::abs(zi))) converged = false;
    }
  }

  if (!converged) z = companion_roots(p);

  // guarded Newton polish: accept steps only while the residual shrinks
  // (an unguarded step can jump across a root cluster where p' vanishes)
  for (auto& zi : z)
    for (int it = 0; it < 3; ++it) {
      Cplx dv = dp.eval(zi);
      if (std::abs(dv) < 1e-300) break;
      Cplx znew = zi - p.eval(zi) / dv;
      if (std::abs(p.eval(znew)) >= std::abs(p.eval(zi))) break;
      zi = znew;
    }

  // quality gate: backward-stable residual bound |p(z)| <= tol * sum |c_i z^i|
  for (const Cplx& zi : z) {
    double zn = std::abs(zi);
    double bound = 0, zpow = 1.0;
    for (const Cplx& c : p.c) {
      bound += std::abs(c) * zpow;
      zpow *= zn;
    }
    if (!(std::abs(p.eval(zi)) <= 1e-8 * bound))
      throw convergence_error("root solver failed to converge");
  }
  return z;
}

}  // namespace vct
