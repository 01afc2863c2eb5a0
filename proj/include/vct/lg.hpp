#pragma once

// Floating-point verification of the potential f_s = P(y)/(xy) + s x + y on
// the hypersurface zx = P(y): critical points and their clusters, branch
// points of the y-projection, root path-tracking with monodromy
// permutations, the Sturm count for the twin-collision argument, lattice
// counting for the Newton polygon, and the gradient lower-bound sampling.

#include "vct/roots.hpp"
#include "vct/sturm.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>

namespace vct {

struct LGSpec {
  int k = 5;
  double s = 1e-2;
  double delta = 1e-2;               // P = (1+y)^{k+1} + delta
  std::vector<double> roots_q;       // optional: P = prod (y + q_i)
  std::vector<double> tau = {1.0};   // only tau_1 = 1 is used by the ops

  bool uses_explicit_roots() const { return !roots_q.empty(); }
};

// q_i = 1 + (i-1) 1e-3, all distinct.
inline LGSpec default_lg_spec(int k, double s = 1e-2) {
  LGSpec spec;
  spec.k = k;
  spec.s = s;
  spec.roots_q.clear();
  for (int i = 1; i <= k + 1; ++i)
    spec.roots_q.push_back(1.0 + (i - 1) * 1e-3);
  return spec;
}

inline Poly lg_P(const LGSpec& spec) {
  if (spec.uses_explicit_roots()) {
    std::vector<Cplx> roots;
    for (double q : spec.roots_q) roots.emplace_back(-q, 0.0);
    return Poly::from_roots(roots);
  }
  // (1+y)^{k+1} + delta
  std::vector<Cplx> c(static_cast<std::size_t>(spec.k) + 2, Cplx(0));
  double binom = 1;
  for (int i = 0; i <= spec.k + 1; ++i) {
    c[static_cast<std::size_t>(i)] = binom;
    binom = binom * (spec.k + 1 - i) / (i + 1);
  }
  c[0] += spec.delta;
  return Poly::from_coeffs(std::move(c));
}

// P with exact (dyadic) coefficients, for the discriminant check.
inline RatPoly lg_P_exact(const LGSpec& spec) {
  if (spec.uses_explicit_roots()) {
    RatPoly p = {Rat(1)};
    for (double q : spec.roots_q) {
      RatPoly next(p.size() + 1, Rat(0));
      for (std::size_t i = 0; i < p.size(); ++i) {
        next[i + 1] += p[i];
        next[i] += p[i] * Rat(q);
      }
      p = std::move(next);
    }
    return p;
  }
  RatPoly p(static_cast<std::size_t>(spec.k) + 2, Rat(0));
  Int binom = 1;
  for (int i = 0; i <= spec.k + 1; ++i) {
    p[static_cast<std::size_t>(i)] = Rat(binom);
    binom = binom * (spec.k + 1 - i) / (i + 1);
  }
  p[0] += Rat(spec.delta);
  return p;
}

inline void validate_lg(const LGSpec& spec) {
  if (spec.k < 3 || spec.k % 2 == 0)
    throw invalid_input("LGSpec requires odd k >= 3");
  if (!(spec.s > 0)) throw invalid_input("LGSpec requires s > 0");
  if (spec.uses_explicit_roots() &&
      spec.roots_q.size() != static_cast<std::size_t>(spec.k + 1))
    throw invalid_input("P needs k+1 roots");
  // all the closed forms below use the linear twisted-sector term only
  for (std::size_t i = 0; i < spec.tau.size(); ++i)
    if (spec.tau[i] != (i == 0 ? 1.0 : 0.0))
      throw invalid_input("only tau = (1, 0, ..., 0) is supported");
  if (discriminant(lg_P_exact(spec)) == 0)
    throw invalid_input("P has a double root");
}

// --- Newton polygon ------------------------------------------------------

struct PolygonCount {
  long interior = 0, boundary = 0, two_volume = 0;
};

// Lattice counts for the triangle (-1,-1), (1,0), (-1,k).
inline PolygonCount newton_polygon_count(int k) {
  if (k < 1) throw invalid_input("k >= 1");
  struct Pt {
    long x, y;
  };
  std::array<Pt, 3> v = {Pt{-1, -1}, Pt{1, 0}, Pt{-1, k}};
  auto cross = [](Pt a, Pt b, Pt c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  };
  long two_area = cross(v[0], v[1], v[2]);
  if (two_area < 0) two_area = -two_area;

  PolygonCount pc;
  pc.two_volume = two_area;
  for (long x = -1; x <= 1; ++x)
    for (long y = -1; y <= k; ++y) {
      Pt p{x, y};
      long c1 = cross(v[0], v[1], p);
      long c2 = cross(v[1], v[2], p);
      long c3 = cross(v[2], v[0], p);
      bool on = (c1 == 0 || c2 == 0 || c3 == 0);
      bool inside_or_on = (c1 >= 0 && c2 >= 0 && c3 >= 0) ||
                          (c1 <= 0 && c2 <= 0 && c3 <= 0);
      if (!inside_or_on) continue;
      if (on) ++pc.boundary;
      else ++pc.interior;
    }
  // Pick self-check: 2A = 2i + b - 2
  if (pc.two_volume != 2 * pc.interior + pc.boundary - 2)
    throw claim_violation("Pick identity failed");
  return pc;
}

// --- critical points -----------------------------------------------------

struct CriticalPoint {
  Cplx y, x, t;
  char type;  // 'I', 'T' (II), 'H' (III)  -- stored as 1/2/3 below
  int cls;    // 1, 2, 3
};

struct CriticalSet {
  std::vector<CriticalPoint> points;
  int count_I = 0, count_II = 0, count_III = 0;
  int real_axis = 0;               // points with y, x, t all real and y > 0
  double type_I_radius = 0;        // ((k-2)/k) s^{-1/(k-2)}, as displayed
  double type_I_radius_balance = 0;  // ((k-2)/k) (k^2 s)^{-1/(k-2)}, the
                                     // dominant balance of the equation
  double max_type_I_rel_err = 0;     // measured |t| vs the displayed radius
  double max_type_I_rel_err_balance = 0;
  double max_y_ksx = 0;   // |y + k s x| / |y| over type I
  double max_t_vs_y = 0;  // |t - ((k-2)/k) y| / |t| over type I
  double cluster_gap = 0;  // min type-I |y| over max type-II |y|
};

struct ClusterThresholds {
  double min_gap_III = 3.0;  // P-root-distance gap isolating the III cluster
  double min_gap = 1.3;      // |y| gap between clusters II and I
};

// Solves the critical polynomial, recovers (x, t), and classifies by
// cluster: the k+1 points nearest the roots of P (in y) are type III, and
// of the rest the k-2 largest |y| are type I and the 3 smallest type II.
inline CriticalSet critical_set(const LGSpec& spec, double tol = 1e-9,
                                ClusterThresholds th = {}) {
  validate_lg(spec);
  int k = spec.k;
  Poly P = lg_P(spec);
  Poly dP = P.derivative();
  Poly y1 = Poly::from_coeffs({Cplx(0), Cplx(1)});
  Poly G = P - y1 * dP;  // P - y P'
  Poly crit = G * G - (1.0 / spec.s) * (P * y1 * y1 * y1);

  long expect = newton_polygon_count(k).two_volume;  // 2k+2
  if (crit.degree() != expect)
    throw claim_violation("critical polynomial degree != Kouchnirenko count");
  auto ys = solve_roots(crit, {}, tol);

  auto proots = solve_roots(P);
  CriticalSet cs;
  cs.type_I_radius =
      (double(k - 2) / k) * std::pow(1.0 / spec.s, 1.0 / (k - 2));
  cs.type_I_radius_balance =
      (double(k - 2) / k) * std::pow(1.0 / (spec.s * k * k), 1.0 / (k - 2));

  std::vector<double> pdist;
  for (const Cplx& y : ys) {
    CriticalPoint cp;
    cp.y = y;
    cp.x = G.eval(y) / (y * y);
    cp.t = 2.0 * spec.s * cp.x + y;
    cp.cls = 0;
    double dmin = 1e300;
    for (const Cplx& r : proots) dmin = std::min(dmin, std::abs(y - r));
    pdist.push_back(dmin);
    cs.points.push_back(cp);
  }
  std::vector<std::size_t> by_pdist(cs.points.size());
  for (std::size_t i = 0; i < by_pdist.size(); ++i) by_pdist[i] = i;
  std::sort(by_pdist.begin(), by_pdist.end(),
            [&](std::size_t a, std::size_t b) { return pdist[a] < pdist[b]; });
  for (std::size_t i = 0; i < static_cast<std::size_t>(k + 1); ++i)
    cs.points[by_pdist[i]].cls = 3;
  double gap3 = pdist[by_pdist[static_cast<std::size_t>(k + 1)]] /
                std::max(pdist[by_pdist[static_cast<std::size_t>(k)]], 1e-300);
  if (gap3 < th.min_gap_III)
    throw claim_violation("type-III cluster is not separated");

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < cs.points.size(); ++i)
    if (cs.points[i].cls == 0) rest.push_back(i);
  if (rest.size() != static_cast<std::size_t>(k + 1))
    throw claim_violation("unexpected non-III count");
  std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(cs.points[a].y) < std::abs(cs.points[b].y);
  });
  for (std::size_t i = 0; i < rest.size(); ++i)
    cs.points[rest[i]].cls = i < 3 ? 2 : 1;
  cs.cluster_gap =
      std::abs(cs.points[rest[3]].y) / std::abs(cs.points[rest[2]].y);
  if (cs.cluster_gap < th.min_gap)
    throw claim_violation("type I/II clusters are not separated");

  for (auto& cp : cs.points) {
    cp.type = cp.cls == 1 ? 'I' : (cp.cls == 2 ? 'T' : 'H');
    if (cp.cls == 1) {
      double at = std::abs(cp.t);
      cs.max_type_I_rel_err =
          std::max(cs.max_type_I_rel_err,
                   std::abs(at - cs.type_I_radius) / cs.type_I_radius);
      cs.max_type_I_rel_err_balance =
          std::max(cs.max_type_I_rel_err_balance,
                   std::abs(at - cs.type_I_radius_balance) /
                       cs.type_I_radius_balance);
      cs.max_y_ksx =
          std::max(cs.max_y_ksx,
                   std::abs(cp.y + double(k) * spec.s * cp.x) / std::abs(cp.y));
      cs.max_t_vs_y =
          std::max(cs.max_t_vs_y,
                   std::abs(cp.t - (double(k - 2) / k) * cp.y) / std::abs(cp.t));
    }
    // real-axis points: y, x, t all real with y on the positive axis
    double ay = std::abs(cp.y), ax = std::abs(cp.x), at = std::abs(cp.t);
    if (std::abs(cp.y.imag()) < 1e-6 * (1 + ay) && cp.y.real() > 0 &&
        std::abs(cp.x.imag()) < 1e-6 * (1 + ax) &&
        std::abs(cp.t.imag()) < 1e-6 * (1 + at))
      ++cs.real_axis;
  }
  for (const auto& cp : cs.points) {
    if (cp.cls == 1) ++cs.count_I;
    else if (cp.cls == 2) ++cs.count_II;
    else ++cs.count_III;
  }
  if (cs.count_I != k - 2 || cs.count_II != 3 || cs.count_III != k + 1)
    throw claim_violation("critical clusters are not (k-2, 3, k+1)");
  return cs;
}

// --- branch points -------------------------------------------------------

inline Poly branch_poly(const LGSpec& spec, Cplx t) {
  Poly P = lg_P(spec);
  // P - (1/(4s)) y (t-y)^2
  Poly y1 = Poly::from_coeffs({Cplx(0), Cplx(1)});
  Poly lin = Poly::from_coeffs({t, Cplx(-1)});
  return P - (1.0 / (4.0 * spec.s)) * (y1 * lin * lin);
}

struct BranchSet {
  std::vector<Cplx> roots;
  std::array<std::size_t, 2> twins;  // indices of the two roots nearest t
  std::size_t near_zero;
  std::vector<std::size_t> outer;
  double outer_radius = 0;          // (1/(4s))^{1/(k-2)}
  double max_outer_rel_err = 0;
  bool regime_warning = false;      // outside 1/s >> |t| >> 0
};

inline BranchSet branch_points(const LGSpec& spec, Cplx t) {
  validate_lg(spec);
  int k = spec.k;
  auto roots = solve_roots(branch_poly(spec, t));
  if (roots.size() != static_cast<std::size_t>(k + 1))
    throw claim_violation("branch polynomial must have k+1 roots");
  BranchSet bs;
  bs.roots = roots;
  bs.outer_radius = std::pow(1.0 / (4.0 * spec.s), 1.0 / (k - 2));

  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(roots[a] - t) < std::abs(roots[b] - t);
  });
  bs.twins = {order[0], order[1]};
  double zmin = 1e300;
  bs.near_zero = order[2];
  for (std::size_t i = 2; i < order.size(); ++i)
    if (std::abs(roots[order[i]]) < zmin) {
      zmin = std::abs(roots[order[i]]);
      bs.near_zero = order[i];
    }
  for (std::size_t i = 2; i < order.size(); ++i) {
    if (order[i] == bs.near_zero) continue;
    bs.outer.push_back(order[i]);
    bs.max_outer_rel_err =
        std::max(bs.max_outer_rel_err,
                 std::abs(std::abs(roots[order[i]]) - bs.outer_radius) /
                     bs.outer_radius);
  }
  if (bs.outer.size() != static_cast<std::size_t>(k - 2))
    throw claim_violation("outer branch cluster has wrong size");
  bs.regime_warning =
      std::abs(t) >= 0.6 * bs.outer_radius || std::abs(t) <= 10 * zmin;
  return bs;
}

// --- path tracking -------------------------------------------------------

struct Collision {
  std::size_t step;
  std::array<std::size_t, 2> pair;
  double separation;
};

struct RootTrajectory {
  std::vector<Cplx> t_path;                 // accepted path points
  std::vector<std::vector<Cplx>> roots;     // per step, in strand order
  std::vector<std::size_t> permutation;     // strand i ends at start slot
  bool closed = false;                      // endpoints match as sets
  std::vector<Collision> collisions;
};

namespace detail {

// Greedy globally-nearest matching of new roots to old strands; returns the
// new roots in strand order, or nullopt when the safety ratio fails.
inline std::optional<std::vector<Cplx>> match_strands(
    const std::vector<Cplx>& old_roots, const std::vector<Cplx>& new_roots,
    double safety = 4.0) {
  std::size_t n = old_roots.size();
  std::vector<bool> used_old(n, false), used_new(n, false);
  std::vector<std::size_t> to_new(n, 0);
  for (std::size_t pick = 0; pick < n; ++pick) {
    double best = 1e300;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_old[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_new[j]) continue;
        double d = std::abs(old_roots[i] - new_roots[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    used_old[bi] = used_new[bj] = true;
    to_new[bi] = bj;
  }
  double max_disp = 0;
  for (std::size_t i = 0; i < n; ++i)
    max_disp = std::max(max_disp, std::abs(old_roots[i] - new_roots[to_new[i]]));
  double min_sep = 1e300;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      min_sep = std::min(min_sep, std::abs(new_roots[i] - new_roots[j]));
  if (!(min_sep > safety * max_disp)) return std::nullopt;
  std::vector<Cplx> strands(n);
  for (std::size_t i = 0; i < n; ++i) strands[i] = new_roots[to_new[i]];
  return strands;
}

}  // namespace detail

// Predictor-corrector continuation of the branch points along a t-path.
// Intermediate refinement steps are not recorded: the output has one row per
// input path point.  initial_strands seeds the strand order (must solve the
// first path point); used for reversal tests.
inline RootTrajectory track_roots(const LGSpec& spec,
                                  const std::vector<Cplx>& t_path,
                                  int max_refinement = 48,
                                  double collision_tol = 1e-6,
                                  std::vector<Cplx> initial_strands = {}) {
  validate_lg(spec);
  if (t_path.size() < 1) throw invalid_input("empty path");
  RootTrajectory tr;
  std::vector<Cplx> cur;
  if (!initial_strands.empty()) {
    cur = solve_roots(branch_poly(spec, t_path[0]), initial_strands);
    auto m = detail::match_strands(initial_strands, cur);
    if (!m) throw convergence_error("initial strand seed is ambiguous");
    cur = *m;
  } else {
    cur = solve_roots(branch_poly(spec, t_path[0]));
  }
  tr.t_path.push_back(t_path[0]);
  tr.roots.push_back(cur);

  for (std::size_t seg = 1; seg < t_path.size(); ++seg) {
    // adaptive bisection stack over [a, b]
    struct Seg {
      Cplx a, b;
      int depth;
    };
    std::vector<Seg> stack = {{t_path[seg - 1], t_path[seg], 0}};
    while (!stack.empty()) {
      Seg sg = stack.back();
      stack.pop_back();
      auto rts = solve_roots(branch_poly(spec, sg.b), cur);
      auto matched = detail::match_strands(cur, rts);
      if (!matched) {
        if (sg.depth >= max_refinement)
          throw convergence_error(
              "ambiguous strand matching at step " + std::to_string(seg) +
              " after maximal refinement");
        Cplx mid = sg.a + 0.5 * (sg.b - sg.a);
        stack.push_back({mid, sg.b, sg.depth + 1});
        stack.push_back({sg.a, mid, sg.depth + 1});
        continue;
      }
      cur = *matched;
    }
    tr.t_path.push_back(t_path[seg]);
    tr.roots.push_back(cur);
    double min_sep = 1e300;
    std::array<std::size_t, 2> pair{0, 0};
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (std::abs(cur[i] - cur[j]) < min_sep) {
          min_sep = std::abs(cur[i] - cur[j]);
          pair = {i, j};
        }
    if (min_sep < collision_tol)
      tr.collisions.push_back({seg, pair, min_sep});
  }

  // permutation against the start configuration
  const auto& start = tr.roots.front();
  const auto& end = tr.roots.back();
  double scale = 0;
  for (const Cplx& r : start) scale = std::max(scale, std::abs(r));
  tr.permutation.assign(start.size(), 0);
  tr.closed = true;
  std::vector<bool> used(start.size(), false);
  for (std::size_t i = 0; i < end.size(); ++i) {
    double best = 1e300;
    std::size_t bj = 0;
    for (std::size_t j = 0; j < start.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(end[i] - start[j]);
      if (d < best) {
        best = d;
        bj = j;
      }
    }
    used[bj] = true;
    tr.permutation[i] = bj;
    if (best > 1e-6 * (1 + scale)) tr.closed = false;
  }
  return tr;
}

// Convenience: the two strands nearest t at the path start.
inline std::array<std::size_t, 2> twin_indices(const RootTrajectory& tr) {
  const auto& r = tr.roots.front();
  Cplx t = tr.t_path.front();
  std::size_t a = 0, b = 1;
  double da = 1e300, db = 1e300;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double d = std::abs(r[i] - t);
    if (d < da) {
      db = da;
      b = a;
      da = d;
      a = i;
    } else if (d < db) {
      db = d;
      b = i;
    }
  }
  return {a, b};
}

inline std::vector<Cplx> circle_path(Cplx t0, double total_angle,
                                     int steps) {
  std::vector<Cplx> path;
  for (int i = 0; i <= steps; ++i) {
    double ang = -total_angle * i / steps;  // t e^{-i theta}
    path.push_back(t0 * Cplx(std::cos(ang), std::sin(ang)));
  }
  return path;
}

// Strand permutation of the endpoint against a phase-rotated start frame:
// end_i is matched to phase * start_j.  For a 2pi/(k-2) sector the branch
// configuration is carried to its own rotation, so the intrinsic
// permutation lives in this frame.
inline std::vector<std::size_t> rotated_frame_permutation(
    const RootTrajectory& tr, Cplx phase) {
  const auto& start = tr.roots.front();
  const auto& end = tr.roots.back();
  std::vector<std::size_t> perm(end.size());
  std::vector<bool> used(start.size(), false);
  for (std::size_t i = 0; i < end.size(); ++i) {
    double best = 1e300;
    std::size_t bj = 0;
    for (std::size_t j = 0; j < start.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(end[i] - phase * start[j]);
      if (d < best) {
        best = d;
        bj = j;
      }
    }
    used[bj] = true;
    perm[i] = bj;
  }
  return perm;
}

// Relative winding of the twin difference along the path, in units of pi.
inline double twin_winding_pi(const RootTrajectory& tr) {
  auto tw = twin_indices(tr);
  double total = 0;
  double prev = 0;
  bool first = true;
  for (const auto& row : tr.roots) {
    Cplx d = row[tw[0]] - row[tw[1]];
    double ang = std::arg(d);
    if (!first) {
      double delta = ang - prev;
      while (delta > std::numbers::pi) delta -= 2 * std::numbers::pi;
      while (delta < -std::numbers::pi) delta += 2 * std::numbers::pi;
      total += delta;
    }
    prev = ang;
    first = false;
  }
  return total / std::numbers::pi;
}

// --- radial collision ----------------------------------------------------

struct RadialCollisionReport {
  double t_start = 0;
  double t_critical = 0;     // real positive type-I critical value
  double t_collision = 0;    // extrapolated collision parameter
  double final_separation = 0;
  bool monotone_decrease = true;
  bool smaller_stays_below = true;
  double max_imag = 0;       // twins and target, distance to the real axis
};

inline RadialCollisionReport radial_collision(const LGSpec& spec, double t0,
                                              int steps = 400) {
  validate_lg(spec);
  auto cs = critical_set(spec);
  double tc = 0;
  for (const auto& cp : cs.points)
    if (cp.cls == 1 && std::abs(cp.t.imag()) < 1e-6 * std::abs(cp.t) &&
        cp.t.real() > 0)
      tc = cp.t.real();
  if (tc == 0) throw claim_violation("no real positive type-I critical value");
  if (!(t0 > 0) || t0 >= tc)
    throw invalid_input("t0 must lie in (0, t_critical)");

  RadialCollisionReport rep;
  rep.t_start = t0;
  rep.t_critical = tc;

  // track to just before the critical value; separations shrink like
  // sqrt(tc - t), so stop at a modest separation and extrapolate sep^2
  double t_stop = tc - 1e-7 * tc;
  std::vector<Cplx> path;
  for (int i = 0; i <= steps; ++i) {
    double u = static_cast<double>(i) / steps;
    // concentrate samples near the collision
    double t = t0 + (t_stop - t0) * (1 - (1 - u) * (1 - u));
    path.emplace_back(t, 0.0);
  }
  auto tr = track_roots(spec, path, 60, 1e-9);
  auto tw = twin_indices(tr);

  // the target is the outer strand that starts real positive beyond |t0|
  std::size_t target = tw[0];
  {
    double best = 1e300;
    for (std::size_t i = 0; i < tr.roots.front().size(); ++i) {
      if (i == tw[0] || i == tw[1]) continue;
      const Cplx& r = tr.roots.front()[i];
      if (r.real() <= std::abs(path.front())) continue;
      if (std::abs(r.imag()) < best) {
        best = std::abs(r.imag());
        target = i;
      }
    }
    if (target == tw[0])
      throw claim_violation("no real positive outer branch point");
  }

  // larger twin approaches the target monotonically; smaller stays below
  double prev_dist = 1e300;
  std::size_t big = tw[0], small = tw[1];
  if (tr.roots.front()[big].real() < tr.roots.front()[small].real())
    std::swap(big, small);
  std::vector<double> ts, sep2;
  for (std::size_t step = 0; step < tr.roots.size(); ++step) {
    const auto& row = tr.roots[step];
    double dist = std::abs(row[big] - row[target]);
    if (dist > prev_dist + 1e-9 * (1 + dist)) rep.monotone_decrease = false;
    prev_dist = dist;
    if (row[small].real() > row[big].real() + 1e-9)
      rep.smaller_stays_below = false;
    rep.max_imag = std::max({rep.max_imag, std::abs(row[big].imag()),
                             std::abs(row[small].imag()),
                             std::abs(row[target].imag())});
    ts.push_back(tr.t_path[step].real());
    sep2.push_back(dist * dist);
  }
  rep.final_separation = std::sqrt(sep2.back());

  // sep^2 vanishes linearly at the collision: fit the last few samples
  std::size_t n = ts.size();
  double x1 = ts[n - 2], y1v = sep2[n - 2];
  double x2 = ts[n - 1], y2v = sep2[n - 1];
  double slope = (y2v - y1v) / (x2 - x1);
  rep.t_collision = x2 - y2v / slope;
  return rep;
}

// --- the twin-collision Sturm count ---------------------------------------

// h = y^k - (y - t0)^2; the double-root boundary in t0.
inline double sturm_t_double(int k) {
  double lambda = double(k) / (k - 2);
  double c = (std::pow(lambda, k - 2) - 1.0) * k * k / 4.0;
  return std::pow(1.0 / c, 1.0 / (k - 2));
}

struct SturmReport {
  int real_roots = 0;
  double t_double = 0;
};

inline SturmReport sturm_real_roots(int k, double t0) {
  if (!(t0 > 0)) throw invalid_input("t0 > 0 required");
  RatPoly h(static_cast<std::size_t>(k) + 1, Rat(0));
  Rat t(t0);  // dyadic: exact value of the double
  h[0] = -t * t;
  h[1] = 2 * t;
  h[2] = -1;
  h[static_cast<std::size_t>(k)] += 1;
  SturmReport rep;
  rep.real_roots = count_real_roots(h);
  rep.t_double = sturm_t_double(k);
  return rep;
}

// The measured 3 <-> 1 root-count boundary (= the double-root parameter,
// where disc(h) vanishes).  Sits a few percent below the displayed
// t_double, which is only a sufficient-condition estimate.
inline double sturm_count_boundary(int k) {
  double lo = 1e-3, hi = 4.0 * sturm_t_double(k);
  if (sturm_real_roots(k, lo).real_roots != 3 ||
      sturm_real_roots(k, hi).real_roots != 1)
    throw claim_violation("unexpected root counts bracketing the boundary");
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (sturm_real_roots(k, mid).real_roots == 3) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// --- Palais-Smale sampling -------------------------------------------------

namespace mp {

using Real = boost::multiprecision::cpp_bin_float_50;

struct C {
  Real re{0}, im{0};
  friend C operator+(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
  friend C operator-(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
  friend C operator*(const C& a, const C& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend C operator*(const Real& s, const C& a) { return {s * a.re, s * a.im}; }
  C conj() const { return {re, -im}; }
  Real abs2() const { return re * re + im * im; }
  friend C operator/(const C& a, const C& b) {
    Real d = b.abs2();
    C n = a * b.conj();
    return {n.re / d, n.im / d};
  }
};

}  // namespace mp

struct PalaisSmaleReport {
  double min_value = 0;       // min of the displayed expression
  double min_value_s0 = 0;    // same with s = 0
  double max_residual = 0;    // relative |zx - P(y)| over samples
  double max_route_diff = 0;  // formula vs projected-vector norm
  double bound = 0;           // s^2 / 2
};

// Samples the displayed gradient expression on the hypersurface zx = P(y)
// with |x|, |y|, |z| >= radius.  The expression cancels catastrophically at
// large radius, so it is evaluated with 50-digit floats and cross-checked
// against the algebraically equal projected-gradient norm.
inline PalaisSmaleReport palais_smale_sample(const LGSpec& spec, double radius,
                                             int n_samples, unsigned seed = 1) {
  validate_lg(spec);
  using mp::C;
  using mp::Real;

  // P and P' evaluated at 50-digit precision from the expanded coefficients
  Poly Pd = lg_P(spec);
  Poly dPd = Pd.derivative();
  auto evalP = [&](const C& y) {
    C v{Real(Pd.c.back().real()), Real(Pd.c.back().imag())};
    for (std::size_t i = Pd.c.size() - 1; i-- > 0;) {
      v = v * y;
      v.re += Real(Pd.c[i].real());
      v.im += Real(Pd.c[i].imag());
    }
    return v;
  };
  auto evaldP = [&](const C& y) {
    C v{Real(dPd.c.back().real()), Real(dPd.c.back().imag())};
    for (std::size_t i = dPd.c.size() - 1; i-- > 0;) {
      v = v * y;
      v.re += Real(dPd.c[i].real());
      v.im += Real(dPd.c[i].imag());
    }
    return v;
  };

  std::mt19937_64 rng(seed);
  auto uniform = [&] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  Real min_expr = 0, min_expr_s0 = 0;
  bool first = true;
  double max_res = 0, max_diff = 0;
  Real s(spec.s);

  for (int it = 0; it < n_samples; ++it) {
    double phi_y = 2 * std::numbers::pi * uniform();
    double ry = radius * std::pow(10.0, 1.5 * uniform());
    C y{Real(ry * std::cos(phi_y)), Real(ry * std::sin(phi_y))};
    C Py = evalP(y);
    C x{Real(0), Real(0)};
    if (it % 2 == 0) {
      // |x| log-uniform over the full admissible range [radius, |P(y)|/radius]
      double pabs =
          static_cast<double>(boost::multiprecision::sqrt(Py.abs2()));
      double hi = std::max(pabs / radius, radius * 10.0);
      double rx = radius * std::pow(hi / radius, uniform());
      double phi_x = 2 * std::numbers::pi * uniform();
      x = C{Real(rx * std::cos(phi_x)), Real(rx * std::sin(phi_x))};
    } else {
      // near the fiber tangent direction z ~ y^2, where the projected
      // gradient is smallest and the s^2/2 bound is tight
      C y2 = y * y;
      double phi_x = 2 * std::numbers::pi * uniform();
      double eps = 0.5 * uniform();
      C pert{Real(1.0 + eps * std::cos(phi_x)), Real(eps * std::sin(phi_x))};
      x = Py / (y2 * pert);
    }
    C z = Py / x;
    // |z| >= radius in both branches: |P(y)| >= radius^{k+1} up to clusters

    // residual of the hypersurface equation, relative
    C res = z * x - Py;
    double pn = static_cast<double>(boost::multiprecision::sqrt(Py.abs2()));
    max_res = std::max(
        max_res,
        static_cast<double>(boost::multiprecision::sqrt(res.abs2())) /
            (1.0 + pn));

    C dPy = evaldP(y);
    Real y2 = y.abs2();
    C z_over_y = z / y;
    C one{Real(1), Real(0)};
    C w = one - z / (y * y);  // 1 - z/y^2 = d_y f

    auto expr_at = [&](const Real& sv) {
      // |s|^2 + 1/|y|^2 + |y - z/y|^2 - |s zbar + xbar/y - |y|^2 w Pbar'|^2
      //                                 / (|x|^2 + |z|^2 + |y P'|^2)
      C num = sv * z.conj() + x.conj() / y - y2 * (w * dPy.conj());
      Real den = x.abs2() + z.abs2() + (y * dPy).abs2();
      C ymzy = y - z_over_y;
      return sv * sv + Real(1) / y2 + ymzy.abs2() - num.abs2() / den;
    };
    Real e = expr_at(s);
    Real e0 = expr_at(Real(0));

    // cross-check: |v|^2 with v = grad f - lambda grad g in the cylinder
    // metric (weights 1, |y|^2, 1 on the x, y, z components)
    {
      C fx{s, Real(0)};
      C fy = w;
      C fz = one / y;
      C gx = z;
      C gy = Real(-1) * dPy;
      C gz = x;
      C inner = fx * gx.conj() + y2 * (fy * gy.conj()) + fz * gz.conj();
      Real gn = gx.abs2() + y2 * gy.abs2() + gz.abs2();
      C lam = inner / C{gn, Real(0)};
      C vx = fx - lam * gx;
      C vy = fy - lam * gy;
      C vz = fz - lam * gz;
      Real vnorm = vx.abs2() + y2 * vy.abs2() + vz.abs2();
      max_diff = std::max(
          max_diff, std::abs(static_cast<double>(vnorm - e)) /
                        (1.0 + std::abs(static_cast<double>(e))));
    }

    if (first || e < min_expr) min_expr = e;
    if (first || e0 < min_expr_s0) min_expr_s0 = e0;
    first = false;
  }

  PalaisSmaleReport rep;
  rep.min_value = static_cast<double>(min_expr);
  rep.min_value_s0 = static_cast<double>(min_expr_s0);
  rep.max_residual = max_res;
  rep.max_route_diff = max_diff;
  rep.bound = 0.5 * spec.s * spec.s;
  return rep;
}

// --- CSV -------------------------------------------------------------------

inline void write_trajectory_csv(const RootTrajectory& tr, std::ostream& os) {
  os << "step,t_re,t_im";
  for (std::size_t i = 0; i < tr.roots.front().size(); ++i)
    os << ",root" << i << "_re,root" << i << "_im";
  os << "\n";
  os << std::setprecision(17);
  for (std::size_t s = 0; s < tr.t_path.size(); ++s) {
    os << s << "," << tr.t_path[s].real() << "," << tr.t_path[s].imag();
    for (const Cplx& r : tr.roots[s]) os << "," << r.real() << "," << r.imag();
    os << "\n";
  }
  os << "# permutation";
  for (std::size_t p : tr.permutation) os << " " << p;
  os << "\n";
}

inline void emit_trajectories(const LGSpec& spec,
                              const std::vector<Cplx>& t_path,
                              const std::string& out_file) {
  auto tr = track_roots(spec, t_path);
  std::ofstream os(out_file);
  if (!os) throw std::runtime_error("cannot open " + out_file);
  write_trajectory_csv(tr, os);
}

}  // namespace vct
