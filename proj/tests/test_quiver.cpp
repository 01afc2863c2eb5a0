#include "vct/quiver.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <random>

using namespace vct;

static std::vector<BlownUpPoint> generic_points(int k) {
  std::vector<BlownUpPoint> pts;
  for (int i = 1; i <= k + 1; ++i) pts.push_back({Rat(1), Rat(-i)});
  return pts;
}

TEST_CASE("monomial coefficient group law", "[quiver]") {
  auto a = MonomialCoeff::symbol("u", 2);
  auto b = MonomialCoeff::symbol("v").negated();
  auto ab = a * b;
  CHECK(ab.sign == -1);
  CHECK(ab.exp.at("u") == 2);
  CHECK(ab.exp.at("v") == 1);
  CHECK((ab * ab.inverse()).is_one());
  CHECK(MonomialCoeff::one().is_one());
  // exponents cancel to the identity
  CHECK((a * MonomialCoeff::symbol("u", -2)).is_one());

  Coeff c = Coeff(Rat(3, 4)) * Coeff::symbol("w", -1);
  CHECK((c * c.inverse()) == Coeff(Rat(1)));
  CHECK(c.evaluate({{"w", Rat(1, 2)}}) == Rat(3, 2));
  CHECK_THROWS_AS(Coeff(Rat(0)).inverse(), invalid_input);
  CHECK_THROWS_AS(c.evaluate({{"w", Rat(0)}}), invalid_input);
  CHECK_THROWS_AS(c.evaluate({}), invalid_input);
}

TEST_CASE("hom_dims rejects backward arrows", "[quiver]") {
  Quiver q;
  q.vertices = {"a", "b"};
  CHECK_THROWS_AS(q.add_arrow("b", "a", "back"), invalid_input);
  q.arrows.push_back({1, 0, "back", 0, 0});  // bypass the constructor check
  CHECK_THROWS_AS(hom_dims(q), invalid_input);
}

TEST_CASE("mckay hom dims", "[quiver]") {
  for (int k : {5, 7}) {
    auto q = mckay_quiver(k);
    auto d = hom_dims_generic(q);
    int n = k - 2;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Int want = 0;
        if (j == i) want = 1;
        else if (j == i + 1) want = 2;
        else if (j == i + 2) want = 1;
        INFO("k=" << k << " i=" << i << " j=" << j);
        CHECK(d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
              want);
      }
  }
}

TEST_CASE("single vertex quiver", "[quiver]") {
  auto q = mckay_quiver(3);  // just e_2, no arrows
  auto d = hom_dims(q);
  REQUIRE(d.size() == 1);
  CHECK(d[0][0] == 1);
}

TEST_CASE("euler_gram of mckay_quiver(5)", "[quiver]") {
  auto g = euler_gram(mckay_quiver(5));
  std::vector<std::vector<Int>> want = {{1, 2, 1}, {0, 1, 2}, {0, 0, 1}};
  CHECK(g.entries == want);
}

TEST_CASE("euler_gram equals |seifert_gram(left_dual)| for odd k <= 15",
          "[quiver][gram]") {
  for (int k = 3; k <= 15; k += 2) {
    auto eg = euler_gram(mckay_quiver(k));
    auto b = xk_fiber_basis(k);
    auto sg = seifert_gram(left_dual(l_collection(b)));
    REQUIRE(eg.size() == sg.size());
    for (std::size_t i = 0; i < eg.size(); ++i)
      for (std::size_t j = 0; j < eg.size(); ++j) {
        Int s = sg.entries[i][j];
        if (s < 0) s = -s;
        INFO("k=" << k << " (" << i << "," << j << ")");
        CHECK(eg.entries[i][j] == s);
      }
  }
}

TEST_CASE("euler_gram rejects graded arrows", "[quiver]") {
  auto q = mckay_quiver(5);
  q.arrows[0].degree = 1;
  CHECK_THROWS_AS(euler_gram(q), invalid_input);
}

TEST_CASE("euler_gram of a fully orthogonal quiver is the identity",
          "[quiver]") {
  Quiver q;
  q.vertices = {"u", "v", "w"};
  auto g = euler_gram(q);
  REQUIRE(g.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(g.entries[i][j] == (i == j ? 1 : 0));
}

TEST_CASE("xk_quiver validation", "[quiver]") {
  CHECK_THROWS_AS(xk_quiver(4, {}), invalid_input);
  auto pts = generic_points(5);
  pts[3] = pts[1];  // coincident points
  CHECK_THROWS_AS(xk_quiver(5, pts), invalid_input);
  auto zero = generic_points(5);
  zero[0] = {Rat(0), Rat(0)};
  CHECK_THROWS_AS(xk_quiver(5, zero), invalid_input);
  // proportional but not equal is still the same point of P^1
  auto prop = generic_points(5);
  prop[2] = {Rat(2), prop[1].b * 2};
  CHECK_THROWS_AS(xk_quiver(5, prop), invalid_input);
}

TEST_CASE("xk_quiver thickness rows", "[quiver]") {
  for (int k : {5, 7}) {
    auto q = xk_quiver(k, generic_points(k));
    auto d = hom_dims_generic(q);
    auto v = [&](const std::string& n) {
      return static_cast<std::size_t>(q.vertex(n));
    };
    std::size_t ek2 = v("e" + std::to_string(k - 2));
    std::size_t ek1 = v("e" + std::to_string(k - 1));
    // row from e_{k-2}: (1, 3, 2, 1)
    CHECK(d[ek2][v("PhiO")] == 1);
    CHECK(d[ek2][v("PhiT(-H)")] == 3);
    CHECK(d[ek2][v("PhiO(H)")] == 2);
    for (int i = 1; i <= k + 1; ++i)
      CHECK(d[ek2][v("B" + std::to_string(i))] == 1);
    // row from e_{k-1}: (0, 1, 1, 1)
    CHECK(d[ek1][v("PhiO")] == 0);
    CHECK(d[ek1][v("PhiT(-H)")] == 1);
    CHECK(d[ek1][v("PhiO(H)")] == 1);
    for (int i = 1; i <= k + 1; ++i)
      CHECK(d[ek1][v("B" + std::to_string(i))] == 1);
    // the plane block and B-orthogonality
    CHECK(d[v("PhiO")][v("PhiT(-H)")] == 3);
    CHECK(d[v("PhiT(-H)")][v("PhiO(H)")] == 3);
    CHECK(d[v("PhiO")][v("PhiO(H)")] == 3);
    CHECK(d[v("PhiO")][v("B1")] == 1);
    CHECK(d[v("PhiT(-H)")][v("B1")] == 2);
    CHECK(d[v("PhiO(H)")][v("B2")] == 1);
    CHECK(d[v("B1")][v("B2")] == 0);
    // vertices e_j with j <= k-3 are orthogonal to the plane block
    for (int j = 2; j <= k - 3; ++j) {
      std::size_t ej = v("e" + std::to_string(j));
      CHECK(d[ej][v("PhiO")] == 0);
      CHECK(d[ej][v("PhiT(-H)")] == 0);
      CHECK(d[ej][v("PhiO(H)")] == 0);
      CHECK(d[ej][v("B1")] == 0);
    }
  }
}

TEST_CASE("gluing identifications cut Hom(e_{k-2}, PhiT) from 5 to 3",
          "[quiver]") {
  int k = 5;
  auto q = xk_quiver(k, generic_points(k));
  auto d = hom_dims_generic(q);
  auto v = [&](const std::string& n) {
    return static_cast<std::size_t>(q.vertex(n));
  };
  CHECK(d[v("e3")][v("PhiT(-H)")] == 3);

  // dropping x0 delta' = deltat p_{2,k-2} and its y0 twin leaves the three
  // delta'-composites and the two deltat-composites unidentified
  Quiver q2 = xk_quiver(k, generic_points(k));
  q2.relations.erase(
      std::remove_if(q2.relations.begin(), q2.relations.end(),
                     [&](const Relation& r) {
                       return r.terms.size() == 2 &&
                              q2.arrows[static_cast<std::size_t>(
                                            r.terms[1].path[1])]
                                      .label == "deltat";
                     }),
      q2.relations.end());
  auto d2 = hom_dims_generic(q2);
  CHECK(d2[v("e3")][v("PhiT(-H)")] == 5);
}

TEST_CASE("composites through e_{k-1} span a 2-dim subspace of the 3-dim hom",
          "[quiver]") {
  // removing delta' (and its relations) leaves only the deltat routes
  // e_{k-2} -> e_{k-1} -> PhiT(-H), which must span exactly 2 dimensions
  int k = 5;
  auto q = xk_quiver(k, generic_points(k));
  int dp = q.arrow("delta'");
  Quiver q2 = q;
  q2.relations.erase(
      std::remove_if(q2.relations.begin(), q2.relations.end(),
                     [&](const Relation& r) {
                       for (const auto& t : r.terms)
                         for (int a : t.path)
                           if (a == dp) return true;
                       return false;
                     }),
      q2.relations.end());
  // neutralize the arrow by re-pointing nothing at it: rebuild without it
  Quiver q3;
  q3.vertices = q2.vertices;
  std::map<int, int> remap;
  for (std::size_t i = 0; i < q2.arrows.size(); ++i) {
    if (static_cast<int>(i) == dp) continue;
    remap[static_cast<int>(i)] = static_cast<int>(q3.arrows.size());
    q3.arrows.push_back(q2.arrows[i]);
  }
  for (auto rel : q2.relations) {
    for (auto& t : rel.terms)
      for (auto& a : t.path) a = remap.at(a);
    q3.relations.push_back(rel);
  }
  auto d3 = hom_dims_generic(q3);
  auto v = [&](const std::string& n) {
    return static_cast<std::size_t>(q3.vertex(n));
  };
  CHECK(d3[v("e3")][v("PhiT(-H)")] == 2);
}

TEST_CASE("hom_dims invariant under random specialization seeds", "[quiver]") {
  auto q = fukaya_quiver(5);
  auto d1 = hom_dims(q, random_specialization(q, 11));
  auto d2 = hom_dims(q, random_specialization(q, 222));
  auto d3 = hom_dims(q, random_specialization(q, 3333));
  CHECK(d1 == d2);
  CHECK(d2 == d3);
}

TEST_CASE("fukaya_quiver has the stated relations", "[quiver]") {
  auto q = fukaya_quiver(5);
  // mu2(x1, x0) = 0 present as a single-term relation
  bool found_x1x0 = false;
  for (const auto& r : q.relations) {
    if (r.terms.size() != 1) continue;
    const auto& p = r.terms[0].path;
    if (q.arrows[static_cast<std::size_t>(p[0])].label == "x0" &&
        q.arrows[static_cast<std::size_t>(p[1])].label == "x1")
      found_x1x0 = true;
  }
  CHECK(found_x1x0);

  // kernel relation mu2(r_i, eta_{y,i} x1 - eta_{x,i} y1) = 0
  int kernel_count = 0;
  for (const auto& r : q.relations) {
    if (r.terms.size() != 2) continue;
    const auto& lab =
        q.arrows[static_cast<std::size_t>(r.terms[0].path[1])].label;
    if (lab.rfind("r", 0) == 0) {
      ++kernel_count;
      CHECK(r.terms[0].c.exp.count(eta('y', std::stoi(lab.substr(1)))) == 1);
    }
  }
  CHECK(kernel_count == 6);  // k+1 = 6

  // q_C = 1 imposed: alpha_zx was eliminated by the -q_C cycle constraint
  for (const auto& s : q.constant_symbols()) CHECK(s != "alpha_zx");
}

TEST_CASE("fukaya alpha relations satisfy the -q_C cycle identity",
          "[quiver]") {
  // The product of the three x/y/z coefficient ratios around the cycle is
  // the gauge-invariant obstruction; with q_C = 1 it must equal -1.
  auto q = fukaya_quiver(5);
  auto ratio_for = [&](const char* first0, const char* first1) {
    for (const auto& rel : q.relations) {
      if (rel.terms.size() != 2) continue;
      const auto& l0 =
          q.arrows[static_cast<std::size_t>(rel.terms[0].path[0])].label;
      const auto& l1 =
          q.arrows[static_cast<std::size_t>(rel.terms[0].path[1])].label;
      if (l0 == first0 && l1 == first1)
        return rel.terms[0].c / rel.terms[1].c;
    }
    throw std::runtime_error("relation not found");
  };
  // term-ratio product around the cycle must equal the target's (+1) ...
  Coeff c4a = ratio_for("x0", "y1");
  Coeff c4b = ratio_for("x0", "z1");
  Coeff c4c = ratio_for("y0", "z1");
  CHECK(c4a * c4c / c4b == Coeff(Rat(1)));
  // ... equivalently, the alpha-ratio product A C / B equals -q_C = -1
  Coeff A = (Coeff(Rat(1)) / c4a).negated();
  Coeff B = (Coeff(Rat(1)) / c4b).negated();
  Coeff C = (Coeff(Rat(1)) / c4c).negated();
  CHECK(A * C / B == Coeff(Rat(-1)));
}

TEST_CASE("pre-shift degrees match the graded-crossing degrees", "[quiver]") {
  // p-arrows carry pre-shift degree 1 and their crossings have Seidel
  // degree 1; Ext^2 composites correspond to degree-2 crossings.
  auto q = mckay_quiver(7);
  for (const auto& a : q.arrows) {
    CHECK(a.degree == 0);
    CHECK(a.pre_shift_degree == 1);
  }
  CHECK(seidel_degree(p_type_crossing()) == 1);
  CHECK(seidel_degree(g_type_crossing()) == 2);  // = two composed p's
  // gluing generators: delta' sits two shifts down, deltat one
  auto x = xk_quiver(5, {{Rat(1), Rat(-1)},
                         {Rat(1), Rat(-2)},
                         {Rat(1), Rat(-3)},
                         {Rat(1), Rat(-4)},
                         {Rat(1), Rat(-5)},
                         {Rat(1), Rat(-6)}});
  CHECK(x.arrows[static_cast<std::size_t>(x.arrow("delta'"))].pre_shift_degree ==
        2);
  CHECK(x.arrows[static_cast<std::size_t>(x.arrow("deltat"))].pre_shift_degree ==
        1);
}

TEST_CASE("fukaya_quiver matches xk hom dims", "[quiver]") {
  for (int k : {5, 7}) {
    auto fd = hom_dims_generic(fukaya_quiver(k));
    auto xd = hom_dims_generic(xk_quiver(k, generic_points(k)));
    CHECK(fd == xd);
  }
}

TEST_CASE("normalize_constants: symbolic points are -q_{1,i}",
          "[quiver][normalize]") {
  for (int k : {5, 7}) {
    auto res = normalize_constants(k);
    REQUIRE(res.points.size() == static_cast<std::size_t>(k + 1));
    CHECK(res.points[0] == Coeff(Rat(-1)));
    for (int i = 2; i <= k + 1; ++i) {
      Coeff expect = Coeff(novikov_q(1, i)).negated();
      CHECK(res.points[static_cast<std::size_t>(i - 1)] == expect);
    }
    CHECK_FALSE(res.degenerate_exact_case);

    for (const auto& rel : res.normalized.relations) {
      if (rel.terms.size() != 2) continue;
      CHECK(rel.terms[0].c == Coeff(Rat(1)));
    }
  }
}

TEST_CASE("normalize_constants: McKay relation becomes exact -1",
          "[quiver][normalize]") {
  auto res = normalize_constants(5);
  const Quiver& q = res.normalized;
  bool checked = false;
  for (const auto& rel : q.relations) {
    if (rel.terms.size() != 2) continue;
    const auto& l0 =
        q.arrows[static_cast<std::size_t>(rel.terms[0].path[0])].label;
    const auto& l1 =
        q.arrows[static_cast<std::size_t>(rel.terms[0].path[1])].label;
    if (l0 == "p1_2" && l1 == "p1_3") {
      CHECK(rel.terms[0].c == Coeff(Rat(1)));
      CHECK(rel.terms[1].c == Coeff(Rat(1)));  // p1 p1 + p2 p2 = 0
      checked = true;
    }
  }
  CHECK(checked);
}

TEST_CASE("normalize_constants: numeric q give the blown-up points",
          "[quiver][normalize]") {
  // k=5 with q_{1,j} = j: specialize eta_{x,i} = 1, eta_{y,i} = 1/i so that
  // q_{1,i} = (eta_{y,1}/eta_{x,1}) (eta_{x,i}/eta_{y,i}) = i.
  int k = 5;
  std::map<std::string, Rat> sp;
  for (int i = 1; i <= k + 1; ++i) {
    sp[eta('x', i)] = 1;
    sp[eta('y', i)] = Rat(1, i);
  }
  auto res = normalize_constants(k, sp);
  REQUIRE(res.points.size() == 6);
  for (int i = 1; i <= 6; ++i) {
    CHECK(res.points[static_cast<std::size_t>(i - 1)].is_rational());
    CHECK(res.points[static_cast<std::size_t>(i - 1)].scalar == Rat(-i));
  }
  REQUIRE(res.as_xk.has_value());
  auto dn = hom_dims_generic(res.normalized);
  auto dx = hom_dims_generic(*res.as_xk);
  CHECK(dn == dx);
}

TEST_CASE("normalize_constants: exact symplectic degeneration flagged",
          "[quiver][normalize]") {
  // all q_{i,j} = 1: every eta ratio equal, so all points coincide
  int k = 5;
  std::map<std::string, Rat> sp;
  for (int i = 1; i <= k + 1; ++i) {
    sp[eta('x', i)] = 1;
    sp[eta('y', i)] = 1;
  }
  auto res = normalize_constants(k, sp);
  CHECK(res.degenerate_exact_case);
  CHECK_FALSE(res.as_xk.has_value());
  for (const auto& p : res.points) CHECK(p == Coeff(Rat(-1)));
}

TEST_CASE("normalize_constants leaves hom_dims unchanged",
          "[quiver][normalize]") {
  int k = 5;
  auto fq = fukaya_quiver(k);
  auto res = normalize_constants(k);
  CHECK(hom_dims_generic(fq) == hom_dims_generic(res.normalized));
}

TEST_CASE("normalization fails under the corollary's inverted alpha ratio",
          "[quiver][normalize]") {
  // The corollary prints mu2(z1,x0) = (a_zx/a_xz) mu2(x1,z0); the per-disk
  // proposition gives the reciprocal.  With the inverted ratio the
  // gauge-invariant product around the x/y/z cycle is alpha^2-valued rather
  // than -q_C, so no generator rescaling can reach the B-side relations.
  int k = 5;
  Quiver q = fukaya_quiver(k);
  bool flipped = false;
  for (auto& rel : q.relations) {
    if (rel.terms.size() != 2) continue;
    const auto& l0 =
        q.arrows[static_cast<std::size_t>(rel.terms[0].path[0])].label;
    const auto& l1 =
        q.arrows[static_cast<std::size_t>(rel.terms[0].path[1])].label;
    if (l0 == "x0" && l1 == "z1") {
      Coeff inv;
      inv.scalar = rel.terms[1].c.scalar;
      for (auto& [s, e] : rel.terms[1].c.exp) inv.exp[s] = -e;
      rel.terms[1].c = inv;
      flipped = true;
    }
  }
  REQUIRE(flipped);
  CHECK_THROWS_AS(normalize_quiver(q, k), claim_violation);
}

TEST_CASE("path reduction is confluent on paths of length <= 5",
          "[quiver][confluence]") {
  // Rewriting engine over specialized coefficients: every two-term relation
  // is oriented from its lexicographically larger path to the smaller one,
  // single-term relations send their path to zero.  Any path of length <= 5
  // must reduce to the same normal form under leftmost-first and
  // rightmost-first strategies.
  int k = 5;
  for (const Quiver& q : {mckay_quiver(k), xk_quiver(k, generic_points(k))}) {
    struct Rewrite {
      std::vector<int> from, to;
      Rat coef;  // from -> coef * to; empty "to" means zero
    };
    std::vector<Rewrite> rewrites;
    auto values = random_specialization(q, 5);
    auto key = [&](const std::vector<int>& p) {
      std::string s;
      for (int a : p) s += q.arrows[static_cast<std::size_t>(a)].label + "|";
      return s;
    };
    for (const auto& rel : q.relations) {
      if (rel.terms.size() == 1) {
        rewrites.push_back({rel.terms[0].path, {}, Rat(0)});
      } else {
        const auto& t0 = rel.terms[0];
        const auto& t1 = rel.terms[1];
        Rat c0 = t0.c.evaluate(values), c1 = t1.c.evaluate(values);
        if (key(t0.path) > key(t1.path))
          rewrites.push_back({t0.path, t1.path, -c1 / c0});
        else
          rewrites.push_back({t1.path, t0.path, -c0 / c1});
      }
    }

    using Combo = std::map<std::vector<int>, Rat>;
    auto reduce_once = [&](Combo& c, bool leftmost) {
      for (auto it = c.begin(); it != c.end(); ++it) {
        const auto& path = it->first;
        std::vector<std::pair<std::size_t, const Rewrite*>> hits;
        for (const auto& rw : rewrites)
          for (std::size_t pos = 0; pos + rw.from.size() <= path.size();
               ++pos) {
            bool match = true;
            for (std::size_t i = 0; i < rw.from.size(); ++i)
              if (path[pos + i] != rw.from[i]) {
                match = false;
                break;
              }
            if (match) hits.emplace_back(pos, &rw);
          }
        if (hits.empty()) continue;
        auto chosen = hits.front();
        for (auto& h : hits)
          if (leftmost ? h.first < chosen.first : h.first > chosen.first)
            chosen = h;
        Rat c0 = it->second;
        std::vector<int> prefix(
            path.begin(), path.begin() + static_cast<long>(chosen.first));
        std::vector<int> suffix(
            path.begin() +
                static_cast<long>(chosen.first + chosen.second->from.size()),
            path.end());
        c.erase(it);
        if (chosen.second->to.empty() || chosen.second->coef == 0) return true;
        std::vector<int> np = prefix;
        np.insert(np.end(), chosen.second->to.begin(), chosen.second->to.end());
        np.insert(np.end(), suffix.begin(), suffix.end());
        c[np] += c0 * chosen.second->coef;
        if (c[np] == 0) c.erase(np);
        return true;
      }
      return false;
    };
    auto normal_form = [&](const std::vector<int>& path, bool leftmost) {
      Combo c;
      c[path] = 1;
      while (reduce_once(c, leftmost)) {
      }
      return c;
    };

    // all composable paths of length <= 5
    std::vector<std::vector<int>> paths;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& p) {
      if (!p.empty()) paths.push_back(p);
      if (p.size() == 5) return;
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (!p.empty() && q.arrows[static_cast<std::size_t>(p.back())].tgt !=
                              q.arrows[a].src)
          continue;
        p.push_back(static_cast<int>(a));
        grow(p);
        p.pop_back();
      }
    };
    std::vector<int> start;
    grow(start);

    // Reduction order ambiguity must stay inside the relation ideal: the two
    // normal forms are compared in the quotient.  (The naive one-step system
    // is not syntactically confluent for the gluing relations: the ideal
    // contains derived elements such as z delta' = 0 that no orientation of
    // the two-term relations can rewrite.)
    auto ideal_contains = [&](const Combo& diff) {
      if (diff.empty()) return true;
      int src = q.arrows[static_cast<std::size_t>(diff.begin()->first[0])].src;
      int tgt =
          q.arrows[static_cast<std::size_t>(diff.begin()->first.back())].tgt;
      std::size_t maxlen = 0;
      for (auto& [w, c] : diff) maxlen = std::max(maxlen, w.size());

      // enumerate paths src->tgt of length <= maxlen, and an index for them
      std::map<std::vector<int>, std::size_t> index;
      std::vector<std::vector<int>> all;
      std::function<void(std::vector<int>&, int)> grow2 =
          [&](std::vector<int>& p, int at) {
            if (!p.empty() && at == tgt) {
              index.emplace(p, all.size());
              all.push_back(p);
            }
            if (p.size() == maxlen) return;
            for (std::size_t a = 0; a < q.arrows.size(); ++a) {
              if (q.arrows[a].src != at) continue;
              p.push_back(static_cast<int>(a));
              grow2(p, q.arrows[a].tgt);
              p.pop_back();
            }
          };
      std::vector<int> w;
      grow2(w, src);

      // ideal elements pre * rel * post restricted to that span
      std::vector<std::vector<Rat>> rows;
      std::vector<std::vector<int>> pres, posts;
      for (const auto& rel : q.relations) {
        int rs = q.arrows[static_cast<std::size_t>(rel.terms[0].path[0])].src;
        int rt =
            q.arrows[static_cast<std::size_t>(rel.terms[0].path.back())].tgt;
        pres.clear();
        posts.clear();
        std::function<void(std::vector<int>&, int)> pgrow =
            [&](std::vector<int>& p, int at) {
              if (at == rs) pres.push_back(p);
              if (p.size() + 2 >= maxlen) return;
              for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                if (q.arrows[a].src != at) continue;
                p.push_back(static_cast<int>(a));
                pgrow(p, q.arrows[a].tgt);
                p.pop_back();
              }
            };
        std::function<void(std::vector<int>&, int)> sgrow =
            [&](std::vector<int>& p, int at) {
              if (at == tgt) posts.push_back(p);
              if (p.size() + 2 >= maxlen) return;
              for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                if (q.arrows[a].src != at) continue;
                p.push_back(static_cast<int>(a));
                sgrow(p, q.arrows[a].tgt);
                p.pop_back();
              }
            };
        std::vector<int> t;
        pgrow(t, src);
        t.clear();
        sgrow(t, rt);
        for (const auto& pre : pres)
          for (const auto& post : posts) {
            if (pre.size() + 2 + post.size() > maxlen) continue;
            std::vector<Rat> row(all.size(), Rat(0));
            bool ok = true;
            for (const auto& term : rel.terms) {
              std::vector<int> full = pre;
              full.insert(full.end(), term.path.begin(), term.path.end());
              full.insert(full.end(), post.begin(), post.end());
              auto it = index.find(full);
              if (it == index.end()) {
                ok = false;
                break;
              }
              row[it->second] += term.c.evaluate(values);
            }
            if (ok) rows.push_back(std::move(row));
          }
      }

      // membership: rank(rows) == rank(rows + diff)
      auto rank_of = [&](std::vector<std::vector<Rat>> m) {
        std::size_t r = 0, cols = m.empty() ? 0 : m[0].size();
        for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
          std::size_t p = r;
          while (p < m.size() && m[p][c] == 0) ++p;
          if (p == m.size()) continue;
          std::swap(m[p], m[r]);
          for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
          }
          ++r;
        }
        return r;
      };
      std::vector<Rat> dvec(all.size(), Rat(0));
      for (auto& [word, c] : diff) {
        auto it = index.find(word);
        if (it == index.end()) return false;
        dvec[it->second] = c;
      }
      auto with = rows;
      with.push_back(dvec);
      return rank_of(rows) == rank_of(with);
    };

    std::size_t unresolved = 0;
    bool is_mckay = q.vertices.size() == static_cast<std::size_t>(k - 2);
    std::size_t syntactic = 0;
    for (const auto& p : paths) {
      auto nl = normal_form(p, true);
      auto nr = normal_form(p, false);
      if (nl == nr) continue;
      ++syntactic;
      Combo diff = nl;
      for (auto& [word, c] : nr) {
        diff[word] -= c;
        if (diff[word] == 0) diff.erase(word);
      }
      if (!ideal_contains(diff)) ++unresolved;
    }
    if (is_mckay) CHECK(syntactic == 0);  // McKay set is confluent outright
    CHECK(unresolved == 0);
  }
}

TEST_CASE("quiver JSON shape", "[quiver]") {
  auto q = mckay_quiver(5);
  auto j = to_json(q);
  CHECK(j["vertices"].size() == 3);
  CHECK(j["arrows"].size() == 4);
  CHECK(j["relations"].size() == 3);
  CHECK(j["arrows"][0]["degree"] == 0);
  CHECK(j["arrows"][0]["pre_shift_degree"] == 1);
}
