#pragma once

// Exact real-root counting for rational polynomials via Sturm chains,
// plus the Sylvester resultant used as a discriminant oracle.

#include "vct/common.hpp"

namespace vct {

using RatPoly = std::vector<Rat>;  // p[i] y^i

inline void rp_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int rp_degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly rp_derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(i));
  return d;
}

inline Rat rp_eval(const RatPoly& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// remainder of a by b
inline RatPoly rp_rem(RatPoly a, const RatPoly& b) {
  rp_trim(a);
  if (b.empty()) throw invalid_input("division by zero polynomial");
  while (rp_degree(a) >= rp_degree(b) && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    rp_trim(a);
  }
  return a;
}

inline std::vector<RatPoly> sturm_chain(RatPoly p) {
  rp_trim(p);
  std::vector<RatPoly> chain;
  if (p.empty()) return chain;
  chain.push_back(p);
  RatPoly d = rp_derivative(p);
  rp_trim(d);
  if (d.empty()) return chain;
  chain.push_back(d);
  while (true) {
    RatPoly r = rp_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& v : r) v = -v;
    chain.push_back(r);
  }
  return chain;
}

inline int sign_at_infinity(const RatPoly& p, bool positive) {
  if (p.empty()) return 0;
  int s = p.back() > 0 ? 1 : (p.back() < 0 ? -1 : 0);
  if (!positive && rp_degree(p) % 2 == 1) s = -s;
  return s;
}

inline int sign_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// Number of distinct real roots of p.
inline int count_real_roots(const RatPoly& p) {
  auto chain = sturm_chain(p);
  if (chain.empty()) return 0;
  std::vector<int> neg, pos;
  for (const auto& q : chain) {
    neg.push_back(sign_at_infinity(q, false));
    pos.push_back(sign_at_infinity(q, true));
  }
  return sign_variations(neg) - sign_variations(pos);
}

// Number of distinct real roots of p in (a, b].
inline int count_real_roots_in(const RatPoly& p, const Rat& a, const Rat& b) {
  auto chain = sturm_chain(p);
  if (chain.empty()) return 0;
  std::vector<int> sa, sb;
  for (const auto& q : chain) {
    Rat va = rp_eval(q, a), vb = rp_eval(q, b);
    sa.push_back(va > 0 ? 1 : (va < 0 ? -1 : 0));
    sb.push_back(vb > 0 ? 1 : (vb < 0 ? -1 : 0));
  }
  return sign_variations(sa) - sign_variations(sb);
}

// Sylvester resultant of p and q, exact.
inline Rat resultant(const RatPoly& p, const RatPoly& q) {
  int m = rp_degree(p), n = rp_degree(q);
  if (m < 0 || n < 0) return 0;
  std::size_t N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rat>> S(N, std::vector<Rat>(N, Rat(0)));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i)
      S[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + i)] =
          p[static_cast<std::size_t>(m - i)];
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i)
      S[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + i)] =
          q[static_cast<std::size_t>(n - i)];
  // rational Gaussian elimination determinant
  Rat det = 1;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t pvt = c;
    while (pvt < N && S[pvt][c] == 0) ++pvt;
    if (pvt == N) return 0;
    if (pvt != c) {
      std::swap(S[pvt], S[c]);
      det = -det;
    }
    det *= S[c][c];
    Rat inv = 1 / S[c][c];
    for (std::size_t r = c + 1; r < N; ++r) {
      if (S[r][c] == 0) continue;
      Rat f = S[r][c] * inv;
      for (std::size_t j = c; j < N; ++j) S[r][j] -= f * S[c][j];
    }
  }
  return det;
}

// disc(p) up to the conventional normalization; zero iff p has a double root.
inline Rat discriminant(const RatPoly& p) {
  return resultant(p, rp_derivative(p));
}

}  // namespace vct
