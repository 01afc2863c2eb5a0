#pragma once

// Integer and modular arithmetic attached to a cyclic quotient singularity
// 1/n(1,q): the Hirzebruch-Jung expansion, the special I-series and its dual
// j-series, the order-preserving residue map, and the handle/core schedules
// of the abstract fibration construction.

#include "vct/common.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <optional>

namespace vct {

inline void validate_nq(const Int& n, const Int& q) {
  if (n < 2 || q < 1 || q >= n) throw invalid_input("require 1 <= q < n");
  if (gcd(n, q) != 1) throw invalid_input("require gcd(n,q) = 1");
}

// Ceiling-division continued fraction n/q = b_1 - 1/(b_2 - ...), all b_t >= 2.
inline std::vector<Int> hj_expand(Int n, Int q) {
  validate_nq(n, q);
  std::vector<Int> b;
  while (q > 0) {
    Int bt = (n + q - 1) / q;  // ceil(n/q)
    b.push_back(bt);
    Int next = bt * q - n;
    n = q;
    q = next;
  }
  return b;
}

// I' = [i_1 = q, ..., i_{r+1} = 0], generated by i_{t+1} = b_t*i_t - i_{t-1}
// from i_0 = n.
inline std::vector<Int> i_series(const Int& n, const Int& q) {
  std::vector<Int> b = hj_expand(n, q);
  std::vector<Int> is = {q};
  Int prev = n, cur = q;
  for (const Int& bt : b) {
    Int next = bt * cur - prev;
    prev = cur;
    cur = next;
    is.push_back(cur);
  }
  if (is.back() != 0) throw claim_violation("i-series did not terminate at 0");
  return is;
}

// Dual sequence j_1 = 1, j_t = b_{t-1} j_{t-1} - j_{t-2}, seeded with j_0 = 0.
inline std::vector<Int> j_series(const Int& n, const Int& q) {
  std::vector<Int> b = hj_expand(n, q);
  std::vector<Int> js = {Int(1)};
  Int prev = 0, cur = 1;
  for (std::size_t t = 0; t < b.size(); ++t) {
    Int next = b[t] * cur - prev;
    prev = cur;
    cur = next;
    js.push_back(cur);
  }
  return js;
}

struct CQSDescriptor {
  Int n, q;
  std::vector<Int> b;
  std::vector<Int> i_series;
  std::vector<Int> j_series;
};

inline CQSDescriptor cqs_descriptor(const Int& n, const Int& q) {
  CQSDescriptor d{n, q, hj_expand(n, q), i_series(n, q), j_series(n, q)};
  // HJ identity, exactly in rationals: n/q = b_1 - 1/(b_2 - 1/(...)).
  Rat cf = Rat(d.b.back());
  for (auto it = d.b.rbegin() + 1; it != d.b.rend(); ++it)
    cf = Rat(*it) - 1 / cf;
  if (cf != Rat(n, q)) throw claim_violation("HJ identity failed");
  for (const Int& bt : d.b)
    if (bt < 2) throw claim_violation("HJ expansion has a term < 2");
  for (std::size_t t = 1; t < d.i_series.size(); ++t)
    if (d.i_series[t] >= d.i_series[t - 1])
      throw claim_violation("i-series not strictly decreasing");
  return d;
}

inline bool is_special(const Int& n, const Int& q, const Int& d) {
  auto is = i_series(n, q);
  return std::find(is.begin(), is.end(), mod(d, n)) != is.end();
}

// a -> -a q^{-1} mod n on I'.  Throws claim_violation if the images fail to
// be strictly decreasing alongside the (decreasing) i-series.
inline std::vector<std::pair<Int, Int>> order_map(const Int& n, const Int& q) {
  validate_nq(n, q);
  Int qinv = mod_inverse(q, n);
  std::vector<std::pair<Int, Int>> m;
  for (const Int& a : i_series(n, q)) m.emplace_back(a, mod(-a * qinv, n));
  for (std::size_t t = 1; t + 1 < m.size(); ++t)
    if (m[t].second >= m[t - 1].second)
      throw claim_violation("order map is not order-preserving");
  // i_{r+1} = 0 maps to 0, below every other image.
  if (m.back().second != 0)
    throw claim_violation("0 must map to 0 under the order map");
  return m;
}

// The appendix proof's companion sequence: P_0 = 1, P_1 = b_1,
// P_t = b_t P_{t-1} - P_{t-2}; the order map sends i_t to n - P_{t-1}.
inline std::vector<Int> order_map_p_sequence(const Int& n, const Int& q) {
  std::vector<Int> b = hj_expand(n, q);
  std::vector<Int> p = {Int(1)};
  if (!b.empty()) p.push_back(b[0]);
  for (std::size_t t = 1; t < b.size(); ++t)
    p.push_back(b[t] * p[t] - p[t - 1]);
  return p;
}

struct HandleSchedule {
  Int n, q;
  std::vector<std::pair<Int, Int>> gluings;  // a on d_+ glued to -q^{-1}a on d_-
  std::vector<Int> special_subset;           // the residues I'
  std::vector<bool> non_special;             // per residue a = 0..n-1
};

inline HandleSchedule handle_schedule(const Int& n, const Int& q) {
  validate_nq(n, q);
  HandleSchedule h;
  h.n = n;
  h.q = q;
  Int qinv = mod_inverse(q, n);
  for (Int a = 0; a < n; ++a) h.gluings.emplace_back(a, mod(-a * qinv, n));
  h.special_subset = i_series(n, q);
  h.non_special.assign(static_cast<std::size_t>(to_ll(n)), true);
  for (const Int& a : h.special_subset)
    h.non_special[static_cast<std::size_t>(to_ll(a))] = false;
  return h;
}

// One of the four joining arcs of the L~_d surgery.
struct CoreJoin {
  int from_core;  // index into CoreSchedule::cores
  char from_end;  // '+' or '-'
  int to_core;
  char to_end;
  bool up;  // arc direction on the surface
};

struct CoreSchedule {
  Int d;
  Int t;  // the index with i_{t-1} > d > i_t
  std::array<Int, 4> cores;      // residues of 1+d+q, 1+d+q-j_t q, d+q, d+q-j_t q
  std::array<int, 4> translate;  // 0 = original, 1 = parallel translate above
  std::array<CoreJoin, 4> joins;
};

inline CoreSchedule core_schedule(const Int& n, const Int& q, const Int& d) {
  validate_nq(n, q);
  if (is_special(n, q, d)) throw invalid_input("d must be a non-special residue");
  auto is = i_series(n, q);
  auto js = j_series(n, q);
  Int dd = mod(d, n);
  // i_0 = n; find t with i_{t-1} > d > i_t (t is 1-based into the I-series).
  Int prev = n;
  std::size_t t = 0;
  for (std::size_t u = 0; u < is.size(); ++u) {
    if (prev > dd && dd > is[u]) {
      t = u + 1;
      break;
    }
    prev = is[u];
  }
  if (t == 0) throw claim_violation("no I-series gap contains d");
  Int jt = js[t - 1];  // j_t, with j_series stored from j_1
  CoreSchedule cs;
  cs.d = dd;
  cs.t = Int(t);
  cs.cores = {mod(1 + dd + q, n), mod(1 + dd + q - jt * q, n), mod(dd + q, n),
              mod(dd + q - jt * q, n)};
  // Vertical order, top to bottom: cores[0], cores[2], cores[1], cores[3].
  // Among duplicate residues the higher one is drawn as a translate above.
  const int vertical_rank[4] = {0, 2, 1, 3};
  cs.translate = {0, 0, 0, 0};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b && cs.cores[a] == cs.cores[b] &&
          vertical_rank[a] < vertical_rank[b])
        cs.translate[a] = 1;
  cs.joins = {CoreJoin{0, '-', 2, '-', false}, CoreJoin{0, '+', 1, '+', true},
              CoreJoin{1, '-', 3, '-', false}, CoreJoin{2, '+', 3, '+', true}};
  return cs;
}

// --- JSON -------------------------------------------------------------

inline nlohmann::json to_json(const std::vector<Int>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& x : v) a.push_back(to_ll(x));
  return a;
}

inline nlohmann::json to_json(const CQSDescriptor& d) {
  return {{"n", to_ll(d.n)},
          {"q", to_ll(d.q)},
          {"b", to_json(d.b)},
          {"i_series", to_json(d.i_series)},
          {"j_series", to_json(d.j_series)}};
}

inline nlohmann::json to_json(const HandleSchedule& h) {
  nlohmann::json g = nlohmann::json::array();
  for (auto& [a, img] : h.gluings)
    g.push_back({{"positive", to_ll(a)}, {"negative", to_ll(img)}});
  return {{"n", to_ll(h.n)},
          {"q", to_ll(h.q)},
          {"gluings", g},
          {"special_subset", to_json(h.special_subset)}};
}

inline nlohmann::json to_json(const CoreSchedule& c) {
  nlohmann::json joins = nlohmann::json::array();
  for (const CoreJoin& j : c.joins)
    joins.push_back({{"from_core", j.from_core},
                     {"from_end", std::string(1, j.from_end)},
                     {"to_core", j.to_core},
                     {"to_end", std::string(1, j.to_end)},
                     {"direction", j.up ? "up" : "down"}});
  nlohmann::json cores = nlohmann::json::array();
  for (const Int& r : c.cores) cores.push_back(to_ll(r));
  return {{"d", to_ll(c.d)},
          {"t", to_ll(c.t)},
          {"cores", cores},
          {"translate", c.translate},
          {"joins", joins}};
}

}  // namespace vct
