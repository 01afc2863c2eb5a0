#pragma once

// Named verification suites over the other modules, producing
// machine-readable reports.  The `all` suite aggregates the acceptance
// checks; the CLI front end is a thin wrapper around run_suite.

#include "vct/cqs.hpp"
#include "vct/lg.hpp"
#include "vct/mutation.hpp"
#include "vct/quiver.hpp"

#include <chrono>
#include <sstream>

namespace vct {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Check> checks;
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks)
      cs.push_back(
          {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"suite", suite},
            {"params", params},
            {"checks", cs},
            {"payload", payload},
            {"timings", timings}};
  }
};

struct SuiteParams {
  int k = 5;
  long long n = 5;
  long long q = 3;
  double s = 1e-2;
  double delta = 0;  // 0 = use the distinct q_i default for P
  double tol = 1e-9;
  int steps = 128;
  unsigned seed = 1;
  double t0 = 0;  // 0 = suite-chosen
  bool timings = false;
};

namespace detail {

inline LGSpec spec_from(const SuiteParams& p, int k, double s) {
  if (p.delta > 0) {
    LGSpec spec;
    spec.k = k;
    spec.s = s;
    spec.delta = p.delta;
    return spec;
  }
  return default_lg_spec(k, s);
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

// --- individual suites -----------------------------------------------------

inline Report suite_cqs(const SuiteParams& p) {
  Report r;
  r.suite = "cqs";
  r.params = {{"n", p.n}, {"q", p.q}};
  auto d = cqs_descriptor(p.n, p.q);  // validates the HJ identity
  r.checks.push_back({"hj-identity", true, "exact continued fraction"});
  bool order_ok = true;
  std::string detail;
  try {
    order_map(p.n, p.q);
  } catch (const claim_violation& e) {
    order_ok = false;
    detail = e.what();
  }
  r.checks.push_back({"order-map", order_ok, detail});
  r.payload["descriptor"] = to_json(d);
  r.payload["handle_schedule"] = to_json(handle_schedule(p.n, p.q));
  nlohmann::json cores = nlohmann::json::array();
  for (Int dd = 0; dd < d.n; ++dd)
    if (!is_special(d.n, d.q, dd))
      cores.push_back(to_json(core_schedule(d.n, d.q, dd)));
  r.payload["core_schedules"] = cores;
  nlohmann::json om = nlohmann::json::array();
  for (auto& [a, img] : order_map(p.n, p.q))
    om.push_back({{"residue", to_ll(a)}, {"image", to_ll(img)}});
  r.payload["order_map"] = om;
  return r;
}

inline Report suite_gram(const SuiteParams& p) {
  Report r;
  r.suite = "gram";
  r.params = {{"k", p.k}};
  auto basis = xk_fiber_basis(p.k);
  auto dual = left_dual(l_collection(basis));
  auto sg = seifert_gram(dual);
  auto eg = euler_gram(mckay_quiver(p.k), p.seed);
  bool match = sg.size() == eg.size();
  for (std::size_t i = 0; match && i < sg.size(); ++i)
    for (std::size_t j = 0; j < sg.size(); ++j) {
      Int v = sg.entries[i][j];
      if (v < 0) v = -v;
      if (v != eg.entries[i][j]) match = false;
    }
  r.checks.push_back({"dual-gram-matches-euler", match, ""});

  bool first_row = true;
  auto lg = seifert_gram(l_collection(basis));
  for (std::size_t j = 1; j < lg.size(); ++j) {
    Int want = (j % 2 == 0) ? Int(j + 1) : Int(-(Int(j) + 1));
    if (lg.entries[0][j] != want) first_row = false;
  }
  r.checks.push_back({"seifert-first-row", first_row, "1, -2, 3, -4, ..."});
  r.payload["seifert_gram_dual"] = to_json(sg);
  r.payload["euler_gram"] = to_json(eg);
  r.payload["seifert_gram_L"] = to_json(lg);
  return r;
}

inline Report suite_braid(const SuiteParams& p) {
  Report r;
  r.suite = "braid";
  r.params = {{"k", p.k}};
  auto rep = braid_script(p.k);
  auto basis = xk_fiber_basis(p.k);
  for (int st = 1; st <= 6; ++st) {
    const auto& got = rep.steps[static_cast<std::size_t>(st - 1)];
    auto want = braid_expected(basis, st);
    bool ok = equal_up_to_class_signs(got, want);
    std::string diff;
    if (!ok) {
      for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i)
        if (!(sign_normalized(got.classes[i]) ==
              sign_normalized(want.classes[i])))
          diff += "slot " + std::to_string(i) + ": got " +
                  got.classes[i].str() + ", expected " +
                  want.classes[i].str() + "; ";
    }
    r.checks.push_back({"step-" + std::to_string(st), ok, diff});
  }
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : rep.steps) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : st.classes) classes.push_back(c.str());
    steps.push_back(classes);
  }
  r.payload["steps"] = steps;
  r.payload["moves"] = to_json(braid_moves(p.k));
  r.payload["final_gram"] = to_json(seifert_gram(rep.steps.back()));
  return r;
}

inline Report suite_quiver(const SuiteParams& p) {
  Report r;
  r.suite = "quiver";
  r.params = {{"k", p.k}};
  std::vector<BlownUpPoint> pts;
  for (int i = 1; i <= p.k + 1; ++i) pts.push_back({Rat(1), Rat(-i)});
  auto q = xk_quiver(p.k, pts);
  auto d = hom_dims_generic(q, p.seed);
  auto v = [&](const std::string& n) {
    return static_cast<std::size_t>(q.vertex(n));
  };
  std::size_t ek2 = v("e" + std::to_string(p.k - 2));
  std::size_t ek1 = v("e" + std::to_string(p.k - 1));
  bool row2 = d[ek2][v("PhiO")] == 1 && d[ek2][v("PhiT(-H)")] == 3 &&
              d[ek2][v("PhiO(H)")] == 2 && d[ek2][v("B1")] == 1;
  bool row1 = d[ek1][v("PhiO")] == 0 && d[ek1][v("PhiT(-H)")] == 1 &&
              d[ek1][v("PhiO(H)")] == 1 && d[ek1][v("B1")] == 1;
  r.checks.push_back({"thickness-row-e_{k-2}", row2, "(1, 3, 2, 1)"});
  r.checks.push_back({"thickness-row-e_{k-1}", row1, "(0, 1, 1, 1)"});
  bool same = hom_dims_generic(fukaya_quiver(p.k), p.seed) == d;
  r.checks.push_back({"fukaya-dims-match", same, ""});
  nlohmann::json dims = nlohmann::json::array();
  for (auto& row : d) {
    nlohmann::json jr = nlohmann::json::array();
    for (const Int& x : row) jr.push_back(to_ll(x));
    dims.push_back(jr);
  }
  r.payload["hom_dims"] = dims;
  r.payload["quiver"] = to_json(q);
  return r;
}

inline Report suite_normalize(const SuiteParams& p) {
  Report r;
  r.suite = "normalize";
  r.params = {{"k", p.k}};
  bool symbolic = true;
  std::string detail;
  try {
    auto res = normalize_constants(p.k);
    nlohmann::json points = nlohmann::json::array();
    for (const auto& b : res.points) points.push_back(b.str());
    r.payload["points"] = points;
  } catch (const claim_violation& e) {
    symbolic = false;
    detail = e.what();
  }
  r.checks.push_back({"symbolic-normalization", symbolic, detail});

  // numeric specialization q_{1,j} = j
  std::map<std::string, Rat> sp;
  for (int i = 1; i <= p.k + 1; ++i) {
    sp[eta('x', i)] = 1;
    sp[eta('y', i)] = Rat(1, i);
  }
  bool numeric = true;
  try {
    auto res = normalize_constants(p.k, sp);
    for (int i = 1; i <= p.k + 1; ++i)
      if (!(res.points[static_cast<std::size_t>(i - 1)].scalar == Rat(-i)))
        numeric = false;
    numeric = numeric && res.as_xk.has_value();
  } catch (const claim_violation& e) {
    numeric = false;
  }
  r.checks.push_back({"numeric-points", numeric, "q_{1,j} = j gives -1..-(k+1)"});
  return r;
}

inline Report suite_pick(const SuiteParams& p) {
  Report r;
  r.suite = "pick";
  r.params = {{"k", p.k}};
  auto pc = newton_polygon_count(p.k);
  bool ok = pc.interior == (p.k + 1) / 2 && pc.boundary == p.k + 3 &&
            pc.two_volume == 2 * p.k + 2;
  r.checks.push_back({"lattice-counts", ok, "(i, b, 2V)"});
  r.payload = {{"interior", pc.interior},
               {"boundary", pc.boundary},
               {"two_volume", pc.two_volume}};
  return r;
}

inline Report suite_critical(const SuiteParams& p) {
  Report r;
  r.suite = "critical";
  r.params = {{"k", p.k}, {"s", p.s}};
  bool counts = true;
  std::string detail;
  try {
    auto spec = detail::spec_from(p, p.k, p.s);
    auto cs = critical_set(spec, p.tol);
    counts = static_cast<int>(cs.points.size()) == 2 * p.k + 2;
    r.payload["count_I"] = cs.count_I;
    r.payload["count_II"] = cs.count_II;
    r.payload["count_III"] = cs.count_III;
    r.payload["real_axis_points"] = cs.real_axis;
    r.payload["cluster_gap"] = cs.cluster_gap;
    r.payload["type_I_radius_displayed"] = cs.type_I_radius;
    r.payload["type_I_radius_balance"] = cs.type_I_radius_balance;
    r.payload["type_I_rel_err_displayed"] = cs.max_type_I_rel_err;
    r.payload["type_I_rel_err_balance"] = cs.max_type_I_rel_err_balance;
    r.payload["max_y_ksx"] = cs.max_y_ksx;
    r.payload["max_t_vs_y"] = cs.max_t_vs_y;
    r.checks.push_back({"real-axis-points", cs.real_axis == 2, ""});
  } catch (const claim_violation& e) {
    counts = false;
    detail = e.what();
  }
  r.checks.push_back(
      {"kouchnirenko-count-and-clusters", counts, detail});
  return r;
}

inline Report suite_branch(const SuiteParams& p) {
  Report r;
  r.suite = "branch";
  r.params = {{"k", p.k}, {"s", p.s}};
  auto spec = detail::spec_from(p, p.k, p.s);
  double rout = std::pow(1.0 / (4.0 * p.s), 1.0 / (p.k - 2));
  double t0 = p.t0 > 0 ? p.t0 : 0.15 * rout;
  auto bs = branch_points(spec, Cplx(t0, 0));
  r.checks.push_back(
      {"count-k-plus-1",
       bs.roots.size() == static_cast<std::size_t>(p.k + 1), ""});
  r.checks.push_back(
      {"clusters",
       bs.outer.size() == static_cast<std::size_t>(p.k - 2), "k-2 outer"});
  r.payload["outer_radius_formula"] = bs.outer_radius;
  r.payload["outer_radius_rel_err"] = bs.max_outer_rel_err;
  r.payload["regime_warning"] = bs.regime_warning;
  r.payload["t"] = t0;
  nlohmann::json roots = nlohmann::json::array();
  for (const Cplx& z : bs.roots) roots.push_back({z.real(), z.imag()});
  r.payload["roots"] = roots;
  return r;
}

inline Report suite_monodromy(const SuiteParams& p) {
  Report r;
  r.suite = "monodromy";
  r.params = {{"k", p.k}};
  // regime 1 << t0 << (1/4s)^{1/(k-2)}
  double s = p.k <= 5 ? 2e-6 : 1e-9;
  auto spec = detail::spec_from(p, p.k, s);
  double rout = std::pow(1.0 / (4.0 * s), 1.0 / (p.k - 2));
  Cplx t0(p.t0 > 0 ? p.t0 : 0.2 * rout, 0);

  detail::Timer timer;
  auto sector = track_roots(
      spec, circle_path(t0, 2 * std::numbers::pi / (p.k - 2), p.steps));
  double sector_ms = timer.ms();
  auto tw = twin_indices(sector);
  Cplx zeta = std::polar(1.0, -2 * std::numbers::pi / (p.k - 2));
  auto fp = rotated_frame_permutation(sector, zeta);
  bool swap = fp[tw[0]] == tw[1] && fp[tw[1]] == tw[0];
  r.checks.push_back({"sector-twin-transposition", swap, ""});
  double sw = twin_winding_pi(sector);
  double want = -double(p.k) / (p.k - 2);
  r.checks.push_back({"sector-winding",
                      std::abs(sw - want) < 0.15 * std::abs(want),
                      detail::str(sw) + " vs " + detail::str(want)});

  detail::Timer timer2;
  auto full = track_roots(
      spec, circle_path(t0, 2 * std::numbers::pi, p.steps * (p.k - 2)));
  double full_ms = timer2.ms();
  bool transposition = full.closed;
  for (std::size_t i = 0; i < full.permutation.size() && transposition; ++i) {
    std::size_t wanti = i == tw[0] ? tw[1] : (i == tw[1] ? tw[0] : i);
    if (full.permutation[i] != wanti) transposition = false;
  }
  r.checks.push_back({"full-rotation-net-transposition", transposition, ""});
  double fw = twin_winding_pi(full);
  r.checks.push_back({"full-rotation-k-swaps",
                      std::abs(fw + p.k) < 0.02 * p.k,
                      "winding " + detail::str(fw) + " pi"});
  r.payload["sector_winding_pi"] = sw;
  r.payload["full_winding_pi"] = fw;
  r.payload["s"] = s;
  r.payload["t0"] = t0.real();
  if (p.timings) {
    r.timings["sector_ms"] = sector_ms;
    r.timings["full_ms"] = full_ms;
  }
  r.payload["track_seconds_max"] = std::max(sector_ms, full_ms) / 1000.0;
  return r;
}

inline Report suite_sturm(const SuiteParams& p) {
  Report r;
  r.suite = "sturm";
  r.params = {{"k", p.k}};
  double td = sturm_t_double(p.k);
  double ts = sturm_count_boundary(p.k);
  bool grid = true;
  for (double f : {0.25, 0.5, 0.75, 0.98})
    if (sturm_real_roots(p.k, f * ts).real_roots != 3) grid = false;
  for (double f : {1.02, 1.5, 3.0})
    if (sturm_real_roots(p.k, f * ts).real_roots != 1) grid = false;
  r.checks.push_back(
      {"counts-switch-at-measured-boundary", grid, detail::str(ts)});
  r.checks.push_back({"displayed-boundary-is-high", ts < td,
                      "t* = " + detail::str(ts) + " < t_double = " +
                          detail::str(td)});
  // numeric cross-check on a grid
  bool agree = true;
  for (double f : {0.3, 0.7, 1.2, 2.0}) {
    double t0 = f * ts;
    std::vector<Cplx> c(static_cast<std::size_t>(p.k) + 1, Cplx(0));
    c[0] = -t0 * t0;
    c[1] = 2 * t0;
    c[2] = -1;
    c[static_cast<std::size_t>(p.k)] += 1;
    auto roots = solve_roots(Poly::from_coeffs(std::move(c)));
    int numeric = 0;
    for (const Cplx& z : roots)
      if (std::abs(z.imag()) < 1e-9) ++numeric;
    if (numeric != sturm_real_roots(p.k, t0).real_roots) agree = false;
  }
  r.checks.push_back({"numeric-cross-check", agree, ""});
  r.payload = {{"t_double_displayed", td}, {"t_boundary_measured", ts}};
  return r;
}

inline Report suite_palais_smale(const SuiteParams& p) {
  Report r;
  r.suite = "palais-smale";
  r.params = {{"k", p.k}, {"s", p.s}, {"seed", p.seed}};
  auto spec = detail::spec_from(p, p.k, p.s);
  auto rep = palais_smale_sample(spec, 1e3, 10000, p.seed);
  r.checks.push_back({"expression-nonnegative", rep.min_value >= 0, ""});
  r.checks.push_back(
      {"s0-expression-nonnegative", rep.min_value_s0 >= -1e-40, ""});
  r.checks.push_back(
      {"hypersurface-residual", rep.max_residual < 1e-9, ""});
  r.checks.push_back(
      {"route-agreement", rep.max_route_diff < 1e-20, ""});
  r.payload = {{"min_value", rep.min_value},
               {"min_value_s0", rep.min_value_s0},
               {"bound_half_s_squared", rep.bound},
               {"meets_half_s_squared", rep.min_value >= rep.bound}};
  return r;
}

// --- acceptance aggregation -------------------------------------------------

inline std::vector<Check> acceptance_checks() {
  std::vector<Check> out;
  using detail::str;

  {  // 1. Gram-matrix match, odd k in [3, 15], exact, < 1 s
    detail::Timer t;
    bool ok = true;
    for (int k = 3; k <= 15; k += 2) {
      auto basis = xk_fiber_basis(k);
      auto sg = seifert_gram(left_dual(l_collection(basis)));
      auto eg = euler_gram(mckay_quiver(k));
      for (std::size_t i = 0; i < sg.size(); ++i)
        for (std::size_t j = 0; j < sg.size(); ++j) {
          Int v = sg.entries[i][j];
          if (v < 0) v = -v;
          if (v != eg.entries[i][j]) ok = false;
        }
    }
    double ms = t.ms();
    out.push_back({"1 gram match |seifert(dual)| = euler(mckay), k<=15",
                   ok && ms < 1000, "elapsed " + str(ms) + " ms"});
  }

  {  // 2. Seifert first row (1, -2, 3, -4, ...)
    bool ok = true;
    for (int k = 3; k <= 15; k += 2) {
      auto g = seifert_gram(l_collection(xk_fiber_basis(k)));
      for (std::size_t j = 1; j < g.size(); ++j) {
        Int want = (j % 2 == 0) ? Int(j + 1) : Int(-(Int(j) + 1));
        if (g.entries[0][j] != want) ok = false;
      }
    }
    out.push_back({"2 L-collection seifert first row, odd k<=15", ok, ""});
  }

  {  // 3. Braid replay, k in {5, 7}
    bool ok = true;
    std::string detail;
    for (int k : {5, 7}) {
      auto rep = braid_script(k);
      if (rep.first_divergent_step != 0) {
        ok = false;
        detail = "k=" + str(k) + " diverges at step " +
                 str(rep.first_divergent_step);
      }
    }
    out.push_back({"3 braid steps 1-6 match, k in {5,7}", ok, detail});
  }

  {  // 4. CF table, k in {5, 7, 9}
    bool ok = true;
    for (int k : {5, 7, 9}) {
      auto bs = xk_fiber_basis(k);
      auto P0 = class_preset(bs, "P0");
      auto Pt = class_preset(bs, "Ptilde");
      auto P1 = class_preset(bs, "P1");
      auto B = class_preset(bs, "B");
      auto Lt = [&](int j) { return class_dual_L(bs, j); };
      auto expect = [&](const HomologyClass& x, const HomologyClass& y,
                        long want) {
        if (cf_dimension(x, y) != want) ok = false;
      };
      for (int i = 2; i <= k - 2; ++i) expect(Lt(i), Lt(i + 1), 2);
      for (int i = 2; i <= k - 3; ++i) expect(Lt(i), Lt(i + 2), 1);
      expect(P0, Pt, 3);
      expect(Pt, P1, 3);
      expect(P0, P1, 3);
      expect(P0, B, 1);
      expect(P1, B, 1);
      expect(Pt, B, 2);
      expect(Lt(k - 1), P0, 0);
      expect(Lt(k - 1), Pt, 1);
      expect(Lt(k - 1), P1, 1);
      expect(Lt(k - 1), B, 1);
      expect(Lt(k - 2), P0, 1);
      expect(Lt(k - 2), Pt, 3);
      expect(Lt(k - 2), P1, 2);
      expect(Lt(k - 2), B, 1);
    }
    out.push_back({"4 CF dimension table, k in {5,7,9}", ok, ""});
  }

  {  // 5. Quiver dims + symbolic normalization
    bool ok = true;
    std::string detail;
    for (int k : {5, 7}) {
      SuiteParams p;
      p.k = k;
      auto r = suite_quiver(p);
      if (!r.pass()) {
        ok = false;
        detail = "hom dims k=" + str(k);
      }
      try {
        auto res = normalize_constants(k);
        for (int i = 1; i <= k + 1; ++i) {
          Coeff expectc = Coeff(novikov_q(1, i)).negated();
          if (!(res.points[static_cast<std::size_t>(i - 1)] == expectc))
            ok = false;
        }
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
    }
    out.push_back(
        {"5 thickness rows and exact constant normalization, k in {5,7}", ok,
         detail});
  }

  {  // 6. Kouchnirenko/Pick counts, k in {3,5,7} x s in {1e-2,1e-3}, < 5 s
    detail::Timer t;
    bool ok = true;
    std::string detail;
    for (int k : {3, 5, 7}) {
      auto pc = newton_polygon_count(k);
      if (pc.interior != (k + 1) / 2 || pc.boundary != k + 3 ||
          pc.two_volume != 2 * k + 2)
        ok = false;
      for (double s : {1e-2, 1e-3}) {
        try {
          auto cs = critical_set(default_lg_spec(k, s));
          if (static_cast<int>(cs.points.size()) != 2 * k + 2) ok = false;
        } catch (const claim_violation& e) {
          ok = false;
          detail += "k=" + str(k) + " s=" + str(s) + ": " + e.what() + "; ";
        }
      }
    }
    double ms = t.ms();
    if (ms >= 5000) ok = false;
    out.push_back({"6 pick counts and critical clusters", ok,
                   detail + "elapsed " + str(ms) + " ms"});
  }

  {  // 7. Type-I and branch-radius asymptotics at s = 1e-3, 5%
    bool ok = true;
    std::string detail;
    for (int k : {5, 7}) {
      try {
        auto cs = critical_set(default_lg_spec(k, 1e-3));
        detail += "k=" + str(k) +
                  " |t| err vs displayed radius: " +
                  str(cs.max_type_I_rel_err) + "; ";
        if (cs.max_type_I_rel_err > 0.05) ok = false;
      } catch (const claim_violation&) {
        ok = false;
      }
      double rout = std::pow(1.0 / 4e-3, 1.0 / (k - 2));
      auto bs = branch_points(default_lg_spec(k, 1e-3), Cplx(0.15 * rout, 0));
      detail += "branch radius err: " + str(bs.max_outer_rel_err) + "; ";
      if (bs.max_outer_rel_err > 0.05) ok = false;
    }
    out.push_back({"7 type-I and branch radius within 5% at s=1e-3", ok,
                   detail});
  }

  {  // 8. Monodromy, k in {5, 7}, < 30 s per track
    bool ok = true;
    std::string detail;
    for (int k : {5, 7}) {
      SuiteParams p;
      p.k = k;
      p.steps = 128;
      auto r = suite_monodromy(p);
      if (!r.pass()) ok = false;
      double secs = r.payload["track_seconds_max"].get<double>();
      if (secs >= 30) ok = false;
      detail += "k=" + str(k) + " max track " + str(secs) + " s; ";
    }
    out.push_back(
        {"8 sector twin transposition and full-rotation k swaps", ok, detail});
  }

  {  // 9. Sturm counts against the displayed t_double
    bool ok = true;
    std::string detail;
    for (int k : {5, 7, 9}) {
      double td = sturm_t_double(k);
      for (double f : {0.25, 0.5, 0.75, 0.9, 0.95, 0.99})
        if (sturm_real_roots(k, f * td).real_roots != 3) {
          ok = false;
          detail += "k=" + str(k) + ": only 1 root at " + str(f) +
                    " t_double; ";
          break;
        }
      for (double f : {1.05, 1.5, 3.0})
        if (sturm_real_roots(k, f * td).real_roots != 1) ok = false;
      detail += "k=" + str(k) + " measured boundary " +
                str(sturm_count_boundary(k)) + " vs displayed " + str(td) +
                "; ";
    }
    out.push_back(
        {"9 sturm 3/1 switch at the displayed t_double", ok, detail});
  }

  {  // 10. Palais-Smale sampling
    SuiteParams p;
    p.k = 5;
    p.s = 1e-2;
    auto r = suite_palais_smale(p);
    bool nonneg = r.pass();
    bool half = r.payload["meets_half_s_squared"].get<bool>();
    out.push_back({"10 gradient bound >= 0.5 s^2 (and >= 0 at s = 0)",
                   nonneg && half,
                   "sampled min " + str(r.payload["min_value"].get<double>()) +
                       " vs bound " +
                       str(r.payload["bound_half_s_squared"].get<double>())});
  }

  {  // 11. Order map, exhaustive n <= 200, < 1 s
    detail::Timer t;
    bool ok = true;
    for (int n = 2; n <= 200 && ok; ++n)
      for (int q = 1; q < n && ok; ++q) {
        if (gcd(n, q) != 1) continue;
        try {
          order_map(n, q);
        } catch (const claim_violation&) {
          ok = false;
        }
      }
    double ms = t.ms();
    out.push_back({"11 order map preserves order, all coprime n <= 200",
                   ok && ms < 1000, "elapsed " + str(ms) + " ms"});
  }

  {  // 12. Path-sum lemma, i <= 12
    bool ok = true;
    try {
      auto s = path_sum_lemma(12);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != Int(i) + 2) ok = false;
    } catch (const claim_violation&) {
      ok = false;
    }
    out.push_back({"12 weighted path sums s_i = i+1, i <= 12", ok, ""});
  }

  return out;
}

inline Report suite_all(const SuiteParams& p) {
  Report r;
  r.suite = "all";
  r.params = nlohmann::json::object();
  r.checks = acceptance_checks();
  (void)p;
  return r;
}

inline Report run_suite(const std::string& name, const SuiteParams& p) {
  if (name == "cqs") return suite_cqs(p);
  if (name == "gram") return suite_gram(p);
  if (name == "braid") return suite_braid(p);
  if (name == "quiver") return suite_quiver(p);
  if (name == "normalize") return suite_normalize(p);
  if (name == "critical") return suite_critical(p);
  if (name == "branch") return suite_branch(p);
  if (name == "monodromy") return suite_monodromy(p);
  if (name == "sturm") return suite_sturm(p);
  if (name == "palais-smale") return suite_palais_smale(p);
  if (name == "pick") return suite_pick(p);
  if (name == "all") return suite_all(p);
  throw invalid_input("unknown suite " + name);
}

}  // namespace vct
