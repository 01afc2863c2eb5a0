#include "vct/mutation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace vct;

static ExceptionalSequence random_sequence(const BasisPtr& b, std::mt19937& rng,
                                           std::size_t len) {
  std::uniform_int_distribution<int> coef(-5, 5);
  ExceptionalSequence s;
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Int> c(b->size());
    for (auto& v : c) v = coef(rng);
    s.classes.emplace_back(b, c);
  }
  return s;
}

TEST_CASE("mutate_left basics", "[mutation]") {
  auto b = xk_fiber_basis(7);
  // orthogonal pair -> pure transposition
  ExceptionalSequence s;
  s.classes = {basis_class(b, "a"), basis_class(b, "l")};  // <a,l> = 0
  auto t = mutate_left(s, 0);
  CHECK(t.classes[0] == basis_class(b, "l"));
  CHECK(t.classes[1] == basis_class(b, "a"));

  // L_{L_{k-1}} L_{k-2} = [L_{k-2}] + 2[L_{k-1}] = -(l_{k-2} - 2l_{k-1} + l)
  ExceptionalSequence lc;
  lc.classes = {class_L(b, 6), class_L(b, 5)};
  auto m = mutate_left(lc, 0);
  CHECK(sign_normalized(m.classes[0]) ==
        sign_normalized(basis_class(b, "l_5") -
                        Int(2) * basis_class(b, "l_6") + basis_class(b, "l")));
  CHECK(m.classes[1] == class_L(b, 6));

  CHECK_THROWS_AS(mutate_left(lc, 1), invalid_input);
}

TEST_CASE("mutate_right inverts mutate_left on random sequences",
          "[mutation]") {
  auto b = xk_fiber_basis(9);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_sequence(b, rng, 6);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      CHECK(mutate_right(mutate_left(s, i), i) == s);
      CHECK(mutate_left(mutate_right(s, i), i) == s);
    }
  }
}

TEST_CASE("mutate_right recovers Ptilde", "[mutation]") {
  auto b = xk_fiber_basis(5);
  ExceptionalSequence s;
  s.classes = {class_preset(b, "P-1"), class_preset(b, "P0")};
  auto t = mutate_right(s, 0);
  CHECK(t.classes[0] == class_preset(b, "P0"));
  CHECK(sign_normalized(t.classes[1]) ==
        sign_normalized(class_preset(b, "Ptilde")));

  // orthogonal pair -> transposition
  ExceptionalSequence o;
  o.classes = {basis_class(b, "a"), basis_class(b, "l")};
  auto u = mutate_right(o, 0);
  CHECK(u.classes[0] == basis_class(b, "l"));
  CHECK(u.classes[1] == basis_class(b, "a"));
}

TEST_CASE("left_dual of the L-collection", "[mutation]") {
  auto b = xk_fiber_basis(5);
  ExceptionalSequence one;
  one.classes = {class_L(b, 4)};
  CHECK(left_dual(one) == one);

  auto dual = left_dual(l_collection(b));
  REQUIRE(dual.size() == 3);
  CHECK(sign_normalized(dual.classes[0]) == sign_normalized(class_dual_L(b, 2)));
  CHECK(sign_normalized(dual.classes[1]) == sign_normalized(class_dual_L(b, 3)));
  CHECK(sign_normalized(dual.classes[2]) == sign_normalized(class_dual_L(b, 4)));
}

TEST_CASE("left_dual classes match the closed form for odd k <= 15",
          "[mutation]") {
  for (int k = 3; k <= 15; k += 2) {
    auto b = xk_fiber_basis(k);
    auto dual = left_dual(l_collection(b));
    REQUIRE(dual.size() == static_cast<std::size_t>(k - 2));
    for (int j = 2; j <= k - 1; ++j)
      CHECK(sign_normalized(dual.classes[static_cast<std::size_t>(j - 2)]) ==
            sign_normalized(class_dual_L(b, j)));
  }
}

TEST_CASE("seifert_gram examples", "[mutation]") {
  auto b = xk_fiber_basis(7);
  auto g = seifert_gram(l_collection(b));
  // first row 1, -2, 3, -4, 5
  std::vector<Int> want = {1, -2, 3, -4, 5};
  CHECK(g.entries[0] == want);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.entries[i][i] == 1);
    for (std::size_t j = 0; j < i; ++j) CHECK(g.entries[i][j] == 0);
  }

  // orthogonal classes -> identity matrix
  ExceptionalSequence o;
  o.classes = {basis_class(b, "a"), basis_class(b, "l")};
  auto id = seifert_gram(o);
  CHECK(id.entries ==
        std::vector<std::vector<Int>>{{Int(1), Int(0)}, {Int(0), Int(1)}});
}

TEST_CASE("dual Gram is the (1,2,1) band up to sign for odd k <= 15",
          "[mutation]") {
  for (int k = 3; k <= 15; k += 2) {
    auto b = xk_fiber_basis(k);
    auto g = seifert_gram(left_dual(l_collection(b)));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i; j < g.size(); ++j) {
        Int a = g.entries[i][j];
        if (a < 0) a = -a;
        Int want = 0;
        if (j == i) want = 1;
        else if (j == i + 1) want = 2;
        else if (j == i + 2) want = 1;
        CHECK(a == want);
      }
  }
}

TEST_CASE("single mutation conjugates the pairing matrix", "[mutation]") {
  auto b = xk_fiber_basis(7);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_sequence(b, rng, 5);
    std::uniform_int_distribution<std::size_t> slot(0, s.size() - 2);
    std::size_t i = slot(rng);
    std::size_t n = s.size();
    Int c = pair(s.classes[i], s.classes[i + 1]);

    // E = elementary matrix of the left mutation at slot i:
    // new_i = old_{i+1} - c * old_i, new_{i+1} = old_i.
    std::vector<std::vector<Int>> E(n, std::vector<Int>(n, 0));
    for (std::size_t r = 0; r < n; ++r)
      E[r][r] = (r == i || r == i + 1) ? 0 : 1;
    E[i][i + 1] = 1;
    E[i][i] = -c;
    E[i + 1][i] = 1;

    auto pairing = [&](const ExceptionalSequence& q) {
      std::vector<std::vector<Int>> p(n, std::vector<Int>(n, 0));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t cc = 0; cc < n; ++cc)
          p[r][cc] = pair(q.classes[r], q.classes[cc]);
      return p;
    };
    auto P = pairing(s);
    auto Q = pairing(mutate_left(s, i));

    // Q = E P E^T
    std::vector<std::vector<Int>> EP(n, std::vector<Int>(n, 0)), want = EP;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t t = 0; t < n; ++t) EP[r][t] += E[r][m] * P[m][t];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t t = 0; t < n; ++t) want[r][t] += EP[r][m] * E[t][m];
    CHECK(Q == want);
  }
}

TEST_CASE("path_sum_lemma", "[mutation]") {
  auto s = path_sum_lemma(12);
  REQUIRE(s.size() == 12);
  CHECK(s[0] == 2);
  CHECK(s[1] == 3);
  CHECK(s[6] == 8);
  // recursion s_i = 2 s_{i-1} - s_{i-2} as an independent replay
  for (std::size_t i = 2; i < s.size(); ++i)
    CHECK(s[i] == 2 * s[i - 1] - s[i - 2]);
  CHECK_THROWS_AS(path_sum_lemma(0), invalid_input);
}

TEST_CASE("transpose rejects non-orthogonal pairs", "[mutation]") {
  auto b = xk_fiber_basis(5);
  ExceptionalSequence s;
  s.classes = {class_preset(b, "P0"), class_preset(b, "P1")};
  CHECK_THROWS_AS(transpose(s, 0), claim_violation);
}

TEST_CASE("braid replay matches all six displays for k = 5 and 7",
          "[mutation][braid]") {
  for (int k : {5, 7, 9, 11}) {
    auto r = braid_script(k);
    INFO("k = " << k << ", first divergent step " << r.first_divergent_step);
    CHECK(r.first_divergent_step == 0);
    REQUIRE(r.steps.size() == 6);
    for (const auto& st : r.steps)
      CHECK(st.size() == static_cast<std::size_t>(2 * k + 2));
  }
}

TEST_CASE("braid step sublists", "[mutation][braid]") {
  auto b = xk_fiber_basis(5);
  auto r = braid_script(5);
  // Step 1 contains the sublist b-4a-2l, b-2a-l, b at the P-block slots.
  CHECK(r.steps[0].classes[2] == class_preset(b, "P-2"));
  CHECK(r.steps[0].classes[3] == class_preset(b, "P-1"));
  CHECK(r.steps[0].classes[4] == class_preset(b, "P0"));
  // Step 3 begins b-4a-l, b-4a, b-2a-l, b-2a, b.
  CHECK(sign_normalized(r.steps[2].classes[0]) ==
        sign_normalized(class_preset(b, "b-4a-l")));
  CHECK(sign_normalized(r.steps[2].classes[1]) ==
        sign_normalized(class_preset(b, "b-4a")));
  CHECK(sign_normalized(r.steps[2].classes[2]) ==
        sign_normalized(class_preset(b, "P-1")));
  CHECK(sign_normalized(r.steps[2].classes[3]) ==
        sign_normalized(class_preset(b, "b-2a")));
  CHECK(sign_normalized(r.steps[2].classes[4]) ==
        sign_normalized(class_preset(b, "P0")));
  // Step 6 ends with ..., b-l, b.
  auto& last = r.steps[5].classes;
  CHECK(sign_normalized(last[last.size() - 2]) ==
        sign_normalized(class_preset(b, "b-l")));
  CHECK(sign_normalized(last.back()) == sign_normalized(class_preset(b, "P0")));
}

TEST_CASE("braid script JSON round trip", "[mutation][braid]") {
  auto steps = braid_moves(5);
  auto j = to_json(steps);
  auto back = braid_steps_from_json(j);
  REQUIRE(back.size() == steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    REQUIRE(back[i].moves.size() == steps[i].moves.size());
    for (std::size_t m = 0; m < steps[i].moves.size(); ++m) {
      CHECK(back[i].moves[m].kind == steps[i].moves[m].kind);
      CHECK(back[i].moves[m].pos == steps[i].moves[m].pos);
    }
  }
}
