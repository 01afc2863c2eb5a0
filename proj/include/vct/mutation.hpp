#pragma once

// Exceptional sequences over a fiber lattice: left/right mutations, the
// left-dual algorithm, Seifert Gram matrices, the weighted path-sum lemma,
// and the six-step mutation script for the alternative collection.

#include "vct/fiber_lattice.hpp"

#include <functional>

namespace vct {

struct ExceptionalSequence {
  std::vector<HomologyClass> classes;

  std::size_t size() const { return classes.size(); }
  const HomologyClass& operator[](std::size_t i) const { return classes[i]; }

  bool operator==(const ExceptionalSequence& o) const {
    return classes == o.classes;
  }
};

struct GramMatrix {
  std::vector<std::vector<Int>> entries;

  std::size_t size() const { return entries.size(); }
  bool operator==(const GramMatrix& o) const { return entries == o.entries; }
};

inline void check_slot(const ExceptionalSequence& s, std::size_t i) {
  if (i + 1 >= s.size()) throw invalid_input("mutation slot out of range");
}

// (a, b) -> (b - <a,b> a, a): b moves left past a.
inline ExceptionalSequence mutate_left(ExceptionalSequence s, std::size_t i) {
  check_slot(s, i);
  HomologyClass a = s.classes[i];
  HomologyClass b = s.classes[i + 1];
  s.classes[i] = b - pair(a, b) * a;
  s.classes[i + 1] = a;
  return s;
}

// (a, b) -> (b, a - <a,b> b): a moves right past b.  Inverse of mutate_left.
inline ExceptionalSequence mutate_right(ExceptionalSequence s, std::size_t i) {
  check_slot(s, i);
  HomologyClass a = s.classes[i];
  HomologyClass b = s.classes[i + 1];
  s.classes[i] = b;
  s.classes[i + 1] = a - pair(a, b) * b;
  return s;
}

// Swap of an orthogonal pair; throws if the classes actually pair.
inline ExceptionalSequence transpose(ExceptionalSequence s, std::size_t i) {
  check_slot(s, i);
  if (pair(s.classes[i], s.classes[i + 1]) != 0)
    throw claim_violation("transposition of a non-orthogonal pair at slot " +
                          std::to_string(i));
  std::swap(s.classes[i], s.classes[i + 1]);
  return s;
}

inline ExceptionalSequence flip_sign(ExceptionalSequence s, std::size_t i) {
  if (i >= s.size()) throw invalid_input("flip slot out of range");
  s.classes[i] = -s.classes[i];
  return s;
}

// Iterated left mutations producing the dual order: element p is bubbled to
// the front through everything mutated before it.
inline ExceptionalSequence left_dual(ExceptionalSequence s) {
  for (std::size_t p = 1; p < s.size(); ++p)
    for (std::size_t j = p; j-- > 0;) s = mutate_left(s, j);
  return s;
}

inline GramMatrix seifert_gram(const ExceptionalSequence& s) {
  GramMatrix g;
  g.entries.assign(s.size(), std::vector<Int>(s.size(), 0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    g.entries[i][i] = 1;
    for (std::size_t j = i + 1; j < s.size(); ++j)
      g.entries[i][j] = pair(s.classes[i], s.classes[j]);
  }
  return g;
}

// The ordered type-I collection (L_{k-1}, L_{k-2}, ..., L_2).
inline ExceptionalSequence l_collection(const BasisPtr& b) {
  ExceptionalSequence s;
  for (int j = b->k - 1; j >= 2; --j) s.classes.push_back(class_L(b, j));
  return s;
}

// Weighted path sums of the left-dual proof's jump quiver: steps of size 1
// carry weight 2 and steps of size 2 carry weight -1 (the sign (-1)^s folded
// into the 2-jump weight).  Computed by exhaustive enumeration.
inline std::vector<Int> path_sum_lemma(int m) {
  if (m < 1) throw invalid_input("path_sum_lemma: m >= 1 required");
  std::vector<Int> s(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 1; i <= m; ++i) {
    Int total = 0;
    std::function<void(int, Int)> walk = [&](int pos, Int w) {
      if (pos == 0) {
        total += w;
        return;
      }
      walk(pos - 1, w * 2);
      if (pos >= 2) walk(pos - 2, -w);
    };
    walk(i, 1);
    if (total != i + 1)
      throw claim_violation("path sum s_" + std::to_string(i) +
                            " != " + std::to_string(i + 1));
    s[static_cast<std::size_t>(i)] = total;
  }
  return {s.begin() + 1, s.end()};
}

// Sign normalization: first nonzero coordinate made positive.
inline HomologyClass sign_normalized(HomologyClass c) {
  for (const Int& v : c.coeffs) {
    if (v == 0) continue;
    return v < 0 ? -c : c;
  }
  return c;
}

inline bool equal_up_to_class_signs(const ExceptionalSequence& x,
                                    const ExceptionalSequence& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(sign_normalized(x.classes[i]) == sign_normalized(y.classes[i])))
      return false;
  return true;
}

// --- the six-step script ------------------------------------------------

struct BraidMove {
  enum Kind { MutL, MutR, Transpose, Flip } kind;
  std::size_t pos;
};

struct BraidStep {
  std::string description;
  std::vector<BraidMove> moves;
};

// The declarative move list realizing steps 1-6.  Sequence layout at seed:
// [P_{-2}, P_{-1}, P_0, B x (k+1), R_{k-1}, ..., R_2], length 2k+2.
inline std::vector<BraidStep> braid_moves(int k) {
  if (k < 5 || k % 2 == 0)
    throw invalid_input("braid script needs odd k >= 5");
  std::size_t K = static_cast<std::size_t>(k);
  std::vector<BraidStep> steps(6);

  // Step 1: interleave k-2 of the B's with the R_i (R_i passes i-1 of them,
  // gaining (i-1) l), then carry two B's across the whole P-block.
  steps[0].description = "interleave B's with the R_i; move two B's in front";
  {
    auto& mv = steps[0].moves;
    // R_i sits at position 3 + (k+1) + (k-1-i) = 2k+3-i... 0-based:
    // seed: 0..2 P's, 3..k+3 B's, k+4+(k-1-i)' -- R_{k-1} at k+4, R_2 at 2k+1.
    for (int i = k - 1; i >= 2; --i) {
      std::size_t pos = 2 * K + 3 - static_cast<std::size_t>(i);
      for (int hop = 0; hop < i - 1; ++hop)
        mv.push_back({BraidMove::MutL, --pos});
    }
    for (int rep = 0; rep < 2; ++rep) {
      std::size_t pos = 3 + static_cast<std::size_t>(rep);
      for (int hop = 0; hop < 3; ++hop) mv.push_back({BraidMove::MutL, --pos});
    }
  }

  // Step 2: one B over P_{-2}; mutate the k-2 pairs (l_i, l) -> (l - l_i, l_i).
  steps[1].description = "one B over P_{-2}; mutate the k-2 (l_i, l) pairs";
  {
    auto& mv = steps[1].moves;
    mv.push_back({BraidMove::MutL, 1});
    for (int i = 0; i < k - 2; ++i)
      mv.push_back({BraidMove::MutL, 6 + 2 * static_cast<std::size_t>(i)});
  }

  // Step 3: collect the l_i - l on the left by orthogonal transpositions;
  // right mutate the two leading B's over their neighbours.
  steps[2].description = "sort l_i - l left; right mutate the two front B's";
  {
    auto& mv = steps[2].moves;
    // pairs now: positions 6,7 = (X_{k-1}, l_{k-1}), 8,9 = (X_{k-2}, l_{k-2})...
    // bubble each X_j (j < k-1) left past the plain l_i blocks
    for (int b = 1; b < k - 2; ++b) {
      std::size_t from = 6 + 2 * static_cast<std::size_t>(b);
      for (int hop = 0; hop < b; ++hop)
        mv.push_back({BraidMove::Transpose, --from});
    }
    mv.push_back({BraidMove::MutR, 0});
    mv.push_back({BraidMove::MutR, 2});
  }

  // Step 4: push the middle B right through the X block.
  steps[3].description = "push the middle B past the l_i - l block";
  {
    auto& mv = steps[3].moves;
    for (int i = 0; i < k - 2; ++i)
      mv.push_back({BraidMove::MutL, 5 + static_cast<std::size_t>(i)});
  }

  // Step 5: push P_0 all the way right; then push b-2a past the l_i.
  steps[4].description = "push P_0 to the far right, then b-2a past the l_i";
  {
    auto& mv = steps[4].moves;
    for (int i = 0; i < 2 * (k - 2) + 1; ++i)
      mv.push_back({BraidMove::MutL, 4 + static_cast<std::size_t>(i)});
    for (int i = 0; i < k - 2; ++i)
      mv.push_back({BraidMove::Transpose, 3 + static_cast<std::size_t>(i)});
  }

  // Step 6: push b-2a-l and b-l through their l_i blocks.
  steps[5].description = "push b-2a-l and b-l through the l_i blocks";
  {
    auto& mv = steps[5].moves;
    for (int i = 0; i < k - 2; ++i)
      mv.push_back({BraidMove::MutL, 2 + static_cast<std::size_t>(i)});
    for (int i = 0; i < k - 2; ++i)
      mv.push_back({BraidMove::MutL, K + 2 + static_cast<std::size_t>(i)});
  }

  return steps;
}

inline ExceptionalSequence braid_seed(const BasisPtr& b) {
  int k = b->k;
  ExceptionalSequence s;
  s.classes.push_back(class_preset(b, "P-2"));
  s.classes.push_back(class_preset(b, "P-1"));
  s.classes.push_back(class_preset(b, "P0"));
  for (int i = 0; i <= k; ++i) s.classes.push_back(class_preset(b, "B"));
  for (int i = k - 1; i >= 2; --i)
    s.classes.push_back(class_preset(b, "R" + std::to_string(i)));
  return s;
}

// Expected class lists after each step (the displayed sequences, with the
// Step-1 count and the Step-6 first-series uniformity corrected).
inline ExceptionalSequence braid_expected(const BasisPtr& bs, int step) {
  int k = bs->k;
  auto l = [&] { return basis_class(bs, "l"); };
  auto li = [&](int i) { return basis_class(bs, "l_" + std::to_string(i)); };
  auto pre = [&](const std::string& n) { return class_preset(bs, n); };
  ExceptionalSequence s;
  auto push = [&](HomologyClass c) { s.classes.push_back(std::move(c)); };
  switch (step) {
    case 1:
      push(l());
      push(l());
      push(pre("P-2"));
      push(pre("P-1"));
      push(pre("P0"));
      push(l());
      for (int i = k - 1; i >= 2; --i) {
        push(li(i));
        push(l());
      }
      break;
    case 2:
      push(l());
      push(pre("b-4a-l"));
      push(l());
      push(pre("P-1"));
      push(pre("P0"));
      push(l());
      for (int i = k - 1; i >= 2; --i) {
        push(li(i) - l());
        push(li(i));
      }
      break;
    case 3:
      push(pre("b-4a-l"));
      push(pre("b-4a"));
      push(pre("P-1"));
      push(pre("b-2a"));
      push(pre("P0"));
      push(l());
      for (int i = k - 1; i >= 2; --i) push(li(i) - l());
      for (int i = k - 1; i >= 2; --i) push(li(i));
      break;
    case 4:
      push(pre("b-4a-l"));
      push(pre("b-4a"));
      push(pre("P-1"));
      push(pre("b-2a"));
      push(pre("P0"));
      for (int i = k - 1; i >= 2; --i) push(li(i));
      push(l());
      for (int i = k - 1; i >= 2; --i) push(li(i));
      break;
    case 5:
      push(pre("b-4a-l"));
      push(pre("b-4a"));
      push(pre("P-1"));
      for (int i = k - 1; i >= 2; --i) push(li(i));
      push(pre("b-2a"));
      push(pre("b-l"));
      for (int i = k - 1; i >= 2; --i) push(li(i));
      push(pre("P0"));
      break;
    case 6:
      push(pre("b-4a-l"));
      push(pre("b-4a"));
      for (int i = k - 1; i >= 2; --i) push(pre("P-1") - li(i));
      push(pre("P-1"));
      push(pre("b-2a"));
      for (int i = k - 1; i >= 2; --i) push(pre("b-l") - li(i));
      push(pre("b-l"));
      push(pre("P0"));
      break;
    default:
      throw invalid_input("braid step must be 1..6");
  }
  return s;
}

inline ExceptionalSequence apply_move(ExceptionalSequence s,
                                      const BraidMove& m) {
  switch (m.kind) {
    case BraidMove::MutL:
      return mutate_left(std::move(s), m.pos);
    case BraidMove::MutR:
      return mutate_right(std::move(s), m.pos);
    case BraidMove::Transpose:
      return transpose(std::move(s), m.pos);
    case BraidMove::Flip:
      return flip_sign(std::move(s), m.pos);
  }
  throw invalid_input("unknown move kind");
}

struct BraidReplay {
  ExceptionalSequence seed;
  std::vector<ExceptionalSequence> steps;  // after steps 1..6
  int first_divergent_step = 0;            // 0 = all six match
};

inline BraidReplay braid_script(int k) {
  auto bs = xk_fiber_basis(k);
  BraidReplay r;
  r.seed = braid_seed(bs);
  ExceptionalSequence cur = r.seed;
  auto steps = braid_moves(k);
  for (int st = 1; st <= 6; ++st) {
    for (const BraidMove& m : steps[static_cast<std::size_t>(st - 1)].moves)
      cur = apply_move(std::move(cur), m);
    r.steps.push_back(cur);
    if (r.first_divergent_step == 0 &&
        !equal_up_to_class_signs(cur, braid_expected(bs, st)))
      r.first_divergent_step = st;
  }
  return r;
}

// --- JSON -------------------------------------------------------------

inline nlohmann::json to_json(const GramMatrix& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto& row : g.entries) {
    nlohmann::json r = nlohmann::json::array();
    for (const Int& v : row) r.push_back(to_ll(v));
    rows.push_back(r);
  }
  return rows;
}

inline nlohmann::json to_json(const ExceptionalSequence& s) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : s.classes) a.push_back(to_json(c));
  return a;
}

inline const char* move_name(BraidMove::Kind k) {
  switch (k) {
    case BraidMove::MutL: return "mutate_left";
    case BraidMove::MutR: return "mutate_right";
    case BraidMove::Transpose: return "transpose";
    case BraidMove::Flip: return "flip";
  }
  return "?";
}

inline nlohmann::json to_json(const std::vector<BraidStep>& steps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& st : steps) {
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& m : st.moves)
      moves.push_back({{"move", move_name(m.kind)}, {"pos", m.pos}});
    out.push_back({{"description", st.description}, {"moves", moves}});
  }
  return out;
}

inline std::vector<BraidStep> braid_steps_from_json(const nlohmann::json& j) {
  std::vector<BraidStep> steps;
  for (const auto& st : j) {
    BraidStep s;
    s.description = st.value("description", "");
    for (const auto& m : st.at("moves")) {
      std::string name = m.at("move");
      BraidMove::Kind kind;
      if (name == "mutate_left") kind = BraidMove::MutL;
      else if (name == "mutate_right") kind = BraidMove::MutR;
      else if (name == "transpose") kind = BraidMove::Transpose;
      else if (name == "flip") kind = BraidMove::Flip;
      else throw invalid_input("unknown move " + name);
      s.moves.push_back({kind, m.at("pos").get<std::size_t>()});
    }
    steps.push_back(std::move(s));
  }
  return steps;
}

}  // namespace vct
