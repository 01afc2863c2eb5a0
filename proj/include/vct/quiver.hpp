#pragma once

// Directed graded quivers with relations and monomial structure constants:
// the McKay quiver of a 1/k(1,1) point, the full quiver of the blown-up
// plane with the two gluing generators, its Fukaya-side counterpart with
// formal constants, hom-dimension matrices by exact linear algebra, Euler
// Gram matrices, and the rescaling normalization of the mirror theorem.

#include "vct/common.hpp"
#include "vct/mutation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <random>

namespace vct {

// Multiplicative group element: sign times a monomial in named constants.
struct MonomialCoeff {
  int sign = 1;
  std::map<std::string, long long> exp;

  static MonomialCoeff one() { return {}; }
  static MonomialCoeff symbol(const std::string& s, long long e = 1) {
    MonomialCoeff m;
    if (e != 0) m.exp[s] = e;
    return m;
  }

  MonomialCoeff& operator*=(const MonomialCoeff& o) {
    sign *= o.sign;
    for (auto& [s, e] : o.exp) {
      auto it = exp.find(s);
      if (it == exp.end()) exp[s] = e;
      else if ((it->second += e) == 0) exp.erase(it);
    }
    return *this;
  }
  friend MonomialCoeff operator*(MonomialCoeff a, const MonomialCoeff& b) {
    return a *= b;
  }
  MonomialCoeff inverse() const {
    MonomialCoeff m;
    m.sign = sign;
    for (auto& [s, e] : exp) m.exp[s] = -e;
    return m;
  }
  MonomialCoeff negated() const {
    MonomialCoeff m = *this;
    m.sign = -m.sign;
    return m;
  }
  bool is_one() const { return sign == 1 && exp.empty(); }
  bool operator==(const MonomialCoeff& o) const {
    return sign == o.sign && exp == o.exp;
  }
};

// Relation-term coefficient: a rational scalar times a monomial.
struct Coeff {
  Rat scalar = 1;
  std::map<std::string, long long> exp;

  Coeff() = default;
  Coeff(Rat s) : scalar(std::move(s)) {}
  Coeff(const MonomialCoeff& m) : scalar(m.sign), exp(m.exp) {}
  static Coeff symbol(const std::string& s, long long e = 1) {
    Coeff c;
    if (e != 0) c.exp[s] = e;
    return c;
  }

  bool is_zero() const { return scalar == 0; }
  Coeff& operator*=(const Coeff& o) {
    scalar *= o.scalar;
    if (scalar == 0) {
      exp.clear();
      return *this;
    }
    for (auto& [s, e] : o.exp) {
      auto it = exp.find(s);
      if (it == exp.end()) exp[s] = e;
      else if ((it->second += e) == 0) exp.erase(it);
    }
    return *this;
  }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
  Coeff inverse() const {
    if (scalar == 0) throw invalid_input("inverse of zero coefficient");
    Coeff c;
    c.scalar = 1 / scalar;
    for (auto& [s, e] : exp) c.exp[s] = -e;
    return c;
  }
  Coeff negated() const {
    Coeff c = *this;
    c.scalar = -c.scalar;
    return c;
  }
  friend Coeff operator/(const Coeff& a, const Coeff& b) {
    return a * b.inverse();
  }
  bool operator==(const Coeff& o) const {
    return scalar == o.scalar && exp == o.exp;
  }
  bool is_rational() const { return exp.empty(); }

  Rat evaluate(const std::map<std::string, Rat>& values) const {
    Rat v = scalar;
    for (auto& [s, e] : exp) {
      auto it = values.find(s);
      if (it == values.end())
        throw invalid_input("unspecialized constant " + s);
      Rat base = it->second;
      if (base == 0) throw invalid_input("constant " + s + " specialized to 0");
      long long n = e < 0 ? -e : e;
      Rat p = 1;
      for (long long r = 0; r < n; ++r) p *= base;
      v *= (e < 0) ? Rat(1) / p : p;
    }
    return v;
  }

  std::string str() const {
    std::ostringstream os;
    os << scalar;
    for (auto& [s, e] : exp) {
      os << "*" << s;
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }
};

struct Arrow {
  int src, tgt;
  std::string label;
  int degree = 0;            // after the shifts: everything in degree 0
  int pre_shift_degree = 0;  // metadata: 1 for the p's, 2 for composites
};

struct RelTerm {
  Coeff c;
  std::vector<int> path;  // arrow ids, path[0] composed first
};

struct Relation {
  std::vector<RelTerm> terms;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  int vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    throw invalid_input("unknown vertex " + name);
  }
  int arrow(const std::string& label) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].label == label) return static_cast<int>(i);
    throw invalid_input("unknown arrow " + label);
  }
  int add_arrow(const std::string& src, const std::string& tgt,
                const std::string& label, int pre_deg = 0) {
    int s = vertex(src), t = vertex(tgt);
    if (s >= t) throw invalid_input("arrows must go forward in vertex order");
    arrows.push_back({s, t, label, 0, pre_deg});
    return static_cast<int>(arrows.size()) - 1;
  }
  void check_relation(const Relation& r) const {
    if (r.terms.empty()) throw invalid_input("empty relation");
    for (const auto& t : r.terms) {
      if (t.path.empty()) throw invalid_input("empty relation path");
      for (std::size_t i = 0; i + 1 < t.path.size(); ++i)
        if (arrows[t.path[i]].tgt != arrows[t.path[i + 1]].src)
          throw invalid_input("non-composable relation path");
      if (arrows[t.path.front()].src != arrows[r.terms[0].path.front()].src ||
          arrows[t.path.back()].tgt != arrows[r.terms[0].path.back()].tgt)
        throw invalid_input("relation terms with mismatched endpoints");
    }
  }
  void add_relation(Relation r) {
    check_relation(r);
    relations.push_back(std::move(r));
  }
  // c1 * (a2 o a1) + c2 * (b2 o b1) = 0
  void rel2(const Coeff& c1, const std::string& a1, const std::string& a2,
            const Coeff& c2, const std::string& b1, const std::string& b2) {
    add_relation(Relation{{RelTerm{c1, {arrow(a1), arrow(a2)}},
                           RelTerm{c2, {arrow(b1), arrow(b2)}}}});
  }
  // (a2 o a1) = 0
  void rel_zero(const std::string& a1, const std::string& a2) {
    add_relation(Relation{{RelTerm{Coeff(Rat(1)), {arrow(a1), arrow(a2)}}}});
  }

  std::vector<std::string> constant_symbols() const {
    std::vector<std::string> out;
    for (const auto& r : relations)
      for (const auto& t : r.terms)
        for (auto& [s, e] : t.c.exp)
          if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    return out;
  }
};

// --- constructors -------------------------------------------------------

inline std::string pl(int which, int i) {
  return "p" + std::to_string(which) + "_" + std::to_string(i);
}

inline Quiver mckay_quiver(int k) {
  if (k < 3) throw invalid_input("mckay_quiver needs k >= 3");
  Quiver q;
  for (int i = 2; i <= k - 1; ++i) q.vertices.push_back("e" + std::to_string(i));
  for (int i = 2; i <= k - 2; ++i) {
    q.add_arrow("e" + std::to_string(i), "e" + std::to_string(i + 1), pl(1, i),
                1);
    q.add_arrow("e" + std::to_string(i), "e" + std::to_string(i + 1), pl(2, i),
                1);
  }
  for (int i = 2; i <= k - 3; ++i) {
    q.rel2(Rat(1), pl(1, i), pl(1, i + 1), Rat(1), pl(2, i), pl(2, i + 1));
    q.rel_zero(pl(2, i), pl(1, i + 1));
    q.rel_zero(pl(1, i), pl(2, i + 1));
  }
  return q;
}

// Point on the z = 0 line as [a_i : b_i].
struct BlownUpPoint {
  Rat a, b;
};

inline void append_plane_vertices(Quiver& q, int k) {
  q.vertices.push_back("PhiO");
  q.vertices.push_back("PhiT(-H)");
  q.vertices.push_back("PhiO(H)");
  for (int i = 1; i <= k + 1; ++i)
    q.vertices.push_back("B" + std::to_string(i));
}

inline void append_plane_arrows(Quiver& q, int k) {
  q.add_arrow("e" + std::to_string(k - 2), "PhiO", "delta'", 2);
  q.add_arrow("e" + std::to_string(k - 1), "PhiT(-H)", "deltat", 1);
  for (const char* c : {"x0", "y0", "z0"}) q.add_arrow("PhiO", "PhiT(-H)", c);
  for (const char* c : {"x1", "y1", "z1"})
    q.add_arrow("PhiT(-H)", "PhiO(H)", c);
  for (int i = 1; i <= k + 1; ++i)
    q.add_arrow("PhiO(H)", "B" + std::to_string(i), "r" + std::to_string(i));
}

inline Quiver xk_quiver(int k, const std::vector<BlownUpPoint>& points) {
  if (k < 5 || k % 2 == 0) throw invalid_input("xk_quiver needs odd k >= 5");
  if (points.size() != static_cast<std::size_t>(k + 1))
    throw invalid_input("xk_quiver needs k+1 blown-up points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].a == 0 && points[i].b == 0)
      throw invalid_input("blown-up point must be nonzero");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].a * points[j].b - points[j].a * points[i].b == 0)
        throw invalid_input("blown-up points must be distinct");
  }
  Quiver q = mckay_quiver(k);
  append_plane_vertices(q, k);
  append_plane_arrows(q, k);

  q.rel_zero(pl(1, k - 3), "delta'");
  q.rel_zero(pl(2, k - 3), "delta'");
  // y1 x0 = -x1 y0 (= -z), z1 x0 = -x1 z0 (= y), z1 y0 = -y1 z0 (= -x)
  q.rel2(Rat(1), "x0", "y1", Rat(1), "y0", "x1");
  q.rel2(Rat(1), "x0", "z1", Rat(1), "z0", "x1");
  q.rel2(Rat(1), "y0", "z1", Rat(1), "z0", "y1");
  q.rel_zero("x0", "x1");
  q.rel_zero("y0", "y1");
  q.rel_zero("z0", "z1");
  for (int i = 1; i <= k + 1; ++i) {
    const auto& p = points[static_cast<std::size_t>(i - 1)];
    std::string r = "r" + std::to_string(i);
    if (p.a != 0 && p.b != 0)
      q.rel2(Coeff(p.a), "x1", r, Coeff(p.b), "y1", r);
    else if (p.a != 0)
      q.rel_zero("x1", r);
    else
      q.rel_zero("y1", r);
  }
  q.rel_zero("deltat", "x1");
  q.rel_zero("deltat", "y1");
  // x0 delta' = deltat p_{2,k-2},  y0 delta' = deltat p_{1,k-2}
  q.rel2(Rat(1), "delta'", "x0", Rat(-1), pl(2, k - 2), "deltat");
  q.rel2(Rat(1), "delta'", "y0", Rat(-1), pl(1, k - 2), "deltat");
  return q;
}

// Formal constant names of the Fukaya-side quiver.
inline std::string theta(int which, int i) {
  return "theta" + std::to_string(which) + "_" + std::to_string(i);
}
inline std::string alpha2(char in, char out) {
  return std::string("alpha_") + in + out;  // alpha_{in,out}: coeff of mu2
}
inline std::string eta(char coord, int i) {
  return std::string("eta_") + coord + "_" + std::to_string(i);
}

// q_{i,j} = (eta_{y,i}/eta_{x,i}) / (eta_{y,j}/eta_{x,j}) as a monomial.
inline MonomialCoeff novikov_q(int i, int j) {
  MonomialCoeff m;
  m *= MonomialCoeff::symbol(eta('y', i));
  m *= MonomialCoeff::symbol(eta('x', i), -1);
  m *= MonomialCoeff::symbol(eta('x', j));
  m *= MonomialCoeff::symbol(eta('y', j), -1);
  return m;
}

// The A-side quiver with formal constants.  q_C = 1 is imposed by
// eliminating alpha_zx through the -q_C cycle identity
// alpha_xy alpha_yz alpha_zx / (alpha_yx alpha_zy alpha_xz) = -q_C.
inline Quiver fukaya_quiver(int k) {
  if (k < 5 || k % 2 == 0)
    throw invalid_input("fukaya_quiver needs odd k >= 5");
  Quiver q;
  for (int i = 2; i <= k - 1; ++i) q.vertices.push_back("e" + std::to_string(i));
  for (int i = 2; i <= k - 2; ++i) {
    q.add_arrow("e" + std::to_string(i), "e" + std::to_string(i + 1), pl(1, i),
                1);
    q.add_arrow("e" + std::to_string(i), "e" + std::to_string(i + 1), pl(2, i),
                1);
  }
  append_plane_vertices(q, k);
  append_plane_arrows(q, k);

  // mu2(p_{1,i+1}, p_{1,i}) = (theta1_i/theta2_i) mu2(p_{2,i+1}, p_{2,i})
  for (int i = 2; i <= k - 3; ++i) {
    Coeff th = Coeff::symbol(theta(1, i)) * Coeff::symbol(theta(2, i), -1);
    q.rel2(Rat(1), pl(1, i), pl(1, i + 1), th.negated(), pl(2, i), pl(2, i + 1));
    q.rel_zero(pl(2, i), pl(1, i + 1));
    q.rel_zero(pl(1, i), pl(2, i + 1));
  }
  q.rel_zero(pl(1, k - 3), "delta'");
  q.rel_zero(pl(2, k - 3), "delta'");

  // mu2(y1,x0) = (a_xy/a_yx) mu2(x1,y0), etc., per-disk constants.
  Coeff axy = Coeff::symbol(alpha2('x', 'y'));
  Coeff ayx = Coeff::symbol(alpha2('y', 'x'));
  Coeff axz = Coeff::symbol(alpha2('x', 'z'));
  Coeff ayz = Coeff::symbol(alpha2('y', 'z'));
  Coeff azy = Coeff::symbol(alpha2('z', 'y'));
  // alpha_zx := -a_yx a_zy a_xz / (a_xy a_yz) by q_C = 1
  Coeff azx = (ayx * azy * axz / (axy * ayz)).negated();
  q.rel2(Rat(1), "x0", "y1", (axy / ayx).negated(), "y0", "x1");
  q.rel2(Rat(1), "x0", "z1", (axz / azx).negated(), "z0", "x1");
  q.rel2(Rat(1), "y0", "z1", (ayz / azy).negated(), "z0", "y1");
  q.rel_zero("x0", "x1");
  q.rel_zero("y0", "y1");
  q.rel_zero("z0", "z1");

  // mu2(r_{1,i}, eta_{y,i} x1 - eta_{x,i} y1) = 0
  for (int i = 1; i <= k + 1; ++i) {
    std::string r = "r" + std::to_string(i);
    q.rel2(Coeff::symbol(eta('y', i)), "x1", r,
           Coeff::symbol(eta('x', i)).negated(), "y1", r);
  }
  q.rel_zero("deltat", "x1");
  q.rel_zero("deltat", "y1");

  // x0 delta' = (a_{d,x0}/a_{p2,dt}) deltat p_{2,k-2} and the y0 mirror
  Coeff adx0 = Coeff::symbol("alpha_d_x0");
  Coeff ady0 = Coeff::symbol("alpha_d_y0");
  Coeff ap1 = Coeff::symbol("alpha_p1_dt");
  Coeff ap2 = Coeff::symbol("alpha_p2_dt");
  q.rel2(Rat(1), "delta'", "x0", (adx0 / ap2).negated(), pl(2, k - 2),
         "deltat");
  q.rel2(Rat(1), "delta'", "y0", (ady0 / ap1).negated(), pl(1, k - 2),
         "deltat");
  return q;
}

// --- hom dimensions by exact linear algebra ------------------------------

namespace detail {

using Mat = std::vector<std::vector<Rat>>;

inline Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return Mat(a.size());
  Mat c(a.size(), std::vector<Rat>(b[0].size(), Rat(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k2 = 0; k2 < b.size(); ++k2) {
      if (a[i][k2] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j)
        c[i][j] += a[i][k2] * b[k2][j];
    }
  return c;
}

// Row-reduce in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t rows = m.size();
  if (rows == 0) return pivots;
  std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

}  // namespace detail

// Pseudorandom rational specialization of every constant symbol.
inline std::map<std::string, Rat> random_specialization(const Quiver& q,
                                                        unsigned seed) {
  std::map<std::string, Rat> values;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(2, 97);
  for (const auto& s : q.constant_symbols())
    values[s] = Rat(num(rng), num(rng));
  return values;
}

// dim Hom(u, v) in the path algebra modulo relations, for every ordered
// pair, with constants specialized to the given rationals.  Works
// vertex-by-vertex: the hom space into v is the direct sum over incoming
// arrows of the hom spaces into their sources, modulo the instantiated
// length-two relations ending at v.
inline std::vector<std::vector<Int>> hom_dims(
    const Quiver& q, const std::map<std::string, Rat>& values = {}) {
  using detail::Mat;
  int V = static_cast<int>(q.vertices.size());
  for (const auto& a : q.arrows)
    if (a.src >= a.tgt) throw invalid_input("hom_dims needs an acyclic quiver");
  for (const auto& r : q.relations)
    for (const auto& t : r.terms)
      if (t.path.size() != 2)
        throw invalid_input("hom_dims expects length-two relation paths");

  std::vector<std::vector<Int>> dims(
      static_cast<std::size_t>(V), std::vector<Int>(static_cast<std::size_t>(V), 0));

  for (int u = 0; u < V; ++u) {
    std::vector<int> dim(static_cast<std::size_t>(V), 0);
    // arrow_map[a]: Q_{src(a)} -> Q_{tgt(a)} as a matrix (filled as targets
    // get processed)
    std::vector<Mat> arrow_map(q.arrows.size());
    dim[static_cast<std::size_t>(u)] = 1;

    for (int v = u + 1; v < V; ++v) {
      // ambient = direct sum over arrows into v
      std::vector<int> in_arrows;
      std::vector<int> offset;
      int total = 0;
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].tgt != v) continue;
        int ds = dim[static_cast<std::size_t>(q.arrows[a].src)];
        if (ds == 0) continue;
        in_arrows.push_back(static_cast<int>(a));
        offset.push_back(total);
        total += ds;
      }
      if (total == 0) continue;

      auto slot_of = [&](int arrow_id) -> int {
        for (std::size_t i = 0; i < in_arrows.size(); ++i)
          if (in_arrows[i] == arrow_id) return offset[i];
        return -1;
      };

      // instantiate relations ending at v against every basis vector of
      // the hom space at the relation source
      Mat rels;
      for (const auto& rel : q.relations) {
        int tgt = q.arrows[rel.terms[0].path.back()].tgt;
        if (tgt != v) continue;
        int rsrc = q.arrows[rel.terms[0].path.front()].src;
        int dsrc = dim[static_cast<std::size_t>(rsrc)];
        for (int b = 0; b < dsrc; ++b) {
          std::vector<Rat> vec(static_cast<std::size_t>(total), Rat(0));
          bool live = false;
          for (const auto& term : rel.terms) {
            int a1 = term.path[0], a2 = term.path[1];
            const Mat& m1 = arrow_map[static_cast<std::size_t>(a1)];
            if (m1.empty()) continue;  // first arrow lands in a dead space
            int slot = slot_of(a2);
            if (slot < 0) continue;
            Rat c = term.c.evaluate(values);
            for (std::size_t r = 0; r < m1.size(); ++r) {
              if (m1[r][static_cast<std::size_t>(b)] == 0) continue;
              vec[static_cast<std::size_t>(slot) + r] +=
                  c * m1[r][static_cast<std::size_t>(b)];
              live = true;
            }
          }
          if (live) rels.push_back(std::move(vec));
        }
      }

      auto pivots = detail::rref(rels);
      int dv = total - static_cast<int>(pivots.size());
      dim[static_cast<std::size_t>(v)] = dv;

      // projection ambient -> quotient: reduce each ambient basis vector by
      // the rref rows, read off the non-pivot coordinates
      std::vector<bool> is_pivot(static_cast<std::size_t>(total), false);
      for (auto p : pivots) is_pivot[p] = true;
      std::vector<int> qcoord(static_cast<std::size_t>(total), -1);
      {
        int c = 0;
        for (int j = 0; j < total; ++j)
          if (!is_pivot[static_cast<std::size_t>(j)])
            qcoord[static_cast<std::size_t>(j)] = c++;
      }
      // proj[i][j]: quotient coordinate i of reduced ambient basis vector j
      Mat proj(static_cast<std::size_t>(dv),
               std::vector<Rat>(static_cast<std::size_t>(total), Rat(0)));
      for (int j = 0; j < total; ++j) {
        if (!is_pivot[static_cast<std::size_t>(j)]) {
          proj[static_cast<std::size_t>(qcoord[static_cast<std::size_t>(j)])]
              [static_cast<std::size_t>(j)] = 1;
          continue;
        }
        // e_j reduces to -sum of the non-pivot tail of its pivot row
        for (std::size_t r = 0; r < rels.size(); ++r) {
          if (rels[r][static_cast<std::size_t>(j)] == 0) continue;
          // rref: the row with pivot at column j
          bool pivot_row = true;
          for (std::size_t c2 = 0; c2 < static_cast<std::size_t>(j); ++c2)
            if (rels[r][c2] != 0) {
              pivot_row = false;
              break;
            }
          if (!pivot_row) continue;
          for (int c2 = j + 1; c2 < total; ++c2) {
            if (is_pivot[static_cast<std::size_t>(c2)]) continue;
            proj[static_cast<std::size_t>(
                qcoord[static_cast<std::size_t>(c2)])]
                [static_cast<std::size_t>(j)] =
                    -rels[r][static_cast<std::size_t>(c2)];
          }
          break;
        }
      }

      // store the induced map for each incoming arrow
      for (std::size_t i = 0; i < in_arrows.size(); ++i) {
        int a = in_arrows[i];
        int ds = dim[static_cast<std::size_t>(q.arrows[static_cast<std::size_t>(a)].src)];
        Mat emb(static_cast<std::size_t>(dv),
                std::vector<Rat>(static_cast<std::size_t>(ds), Rat(0)));
        for (int r = 0; r < dv; ++r)
          for (int c = 0; c < ds; ++c)
            emb[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                proj[static_cast<std::size_t>(r)]
                    [static_cast<std::size_t>(offset[i] + c)];
        arrow_map[static_cast<std::size_t>(a)] = std::move(emb);
      }
    }

    for (int v = 0; v < V; ++v)
      dims[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
          (v == u) ? Int(1) : Int(dim[static_cast<std::size_t>(v)]);
  }
  return dims;
}

// Hom dimensions with the constants specialized at two independent seeds;
// throws if the generic dimensions disagree.
inline std::vector<std::vector<Int>> hom_dims_generic(const Quiver& q,
                                                      unsigned seed = 1) {
  auto d1 = hom_dims(q, random_specialization(q, seed));
  auto d2 = hom_dims(q, random_specialization(q, seed + 77));
  if (d1 != d2)
    throw convergence_error("hom_dims disagree between specializations");
  return d1;
}

inline GramMatrix euler_gram(const Quiver& q, unsigned seed = 1) {
  for (const auto& a : q.arrows)
    if (a.degree != 0)
      throw invalid_input("euler_gram needs a strong quiver (degree-0 arrows)");
  GramMatrix g;
  g.entries = q.relations.empty() && q.arrows.empty()
                  ? std::vector<std::vector<Int>>()
                  : hom_dims_generic(q, seed);
  if (g.entries.empty()) {
    g.entries.assign(q.vertices.size(),
                     std::vector<Int>(q.vertices.size(), 0));
    for (std::size_t i = 0; i < q.vertices.size(); ++i) g.entries[i][i] = 1;
  }
  return g;
}

// --- normalization -------------------------------------------------------

struct NormalizationResult {
  Quiver normalized;                   // relations over the residual constants
  std::vector<Coeff> points;           // b_i with a_i = 1, after b_1 -> -1
  std::map<std::string, Coeff> gauge;  // completed generator rescaling
  bool degenerate_exact_case = false;  // all points coincide (all q_{i,j} = 1)
  std::optional<Quiver> as_xk;         // built when the points are rational
};

namespace detail {

// Multiply every occurrence of each substituted arrow: old = lambda * new.
inline void rescale_generators(Quiver& q,
                               const std::map<std::string, Coeff>& lambda) {
  for (auto& rel : q.relations)
    for (auto& term : rel.terms)
      for (int a : term.path) {
        auto it = lambda.find(q.arrows[static_cast<std::size_t>(a)].label);
        if (it != lambda.end()) term.c *= it->second;
      }
}

}  // namespace detail

// The explicit rescaling of the mirror theorem: substitutes the displayed
// factors, completes them with a diagonal gauge solved by propagation, and
// checks that every relation lands exactly on its B-side counterpart.  The
// blown-up points are read off the r_i kernel relations and normalized by
// the residual coordinate rescaling that fixes the first point at -1.
inline NormalizationResult normalize_quiver(
    Quiver q, int k, const std::map<std::string, Rat>& specialize = {}) {
  if (!specialize.empty()) {
    for (auto& rel : q.relations)
      for (auto& term : rel.terms) {
        Coeff reduced;
        reduced.scalar = term.c.scalar;
        for (auto& [s, e] : term.c.exp) {
          auto it = specialize.find(s);
          if (it == specialize.end()) reduced.exp[s] = e;
          else
            reduced *= [&] {
              Coeff c;
              c.exp[s] = e;
              return Coeff(c.evaluate({{s, it->second}}));
            }();
        }
        term.c = reduced;
      }
  }

  // the displayed substitution, old = lambda * new
  std::map<std::string, Coeff> lambda;
  for (int i = 2; i <= k - 3; ++i)
    lambda[pl(1, i)] =
        (Coeff::symbol(theta(1, i)) / Coeff::symbol(theta(2, i))).negated();
  lambda[pl(1, k - 2)] = Coeff::symbol("alpha_d_y0") *
                         Coeff::symbol("alpha_p2_dt") /
                         (Coeff::symbol("alpha_p1_dt") *
                          Coeff::symbol("alpha_d_x0"));
  lambda["deltat"] =
      Coeff::symbol("alpha_d_x0") / Coeff::symbol("alpha_p2_dt");
  Coeff t_ratio = Coeff::symbol(eta('y', 1)) / Coeff::symbol(eta('x', 1));
  lambda["x1"] = t_ratio;
  lambda["y1"] = (Coeff::symbol(alpha2('x', 'y')) /
                  Coeff::symbol(alpha2('y', 'x')) / t_ratio)
                     .negated();
  lambda["z1"] = Coeff::symbol(alpha2('z', 'y')) /
                 Coeff::symbol(alpha2('y', 'z')) *
                 Coeff::symbol(alpha2('y', 'x')) /
                 Coeff::symbol(alpha2('x', 'y')) * t_ratio;
  if (!specialize.empty())
    for (auto& [lab, c] : lambda) {
      Coeff reduced;
      reduced.scalar = c.scalar;
      for (auto& [s, e] : c.exp) {
        auto it = specialize.find(s);
        if (it == specialize.end()) reduced.exp[s] = e;
        else {
          Coeff tmp;
          tmp.exp[s] = e;
          reduced *= Coeff(tmp.evaluate({{s, it->second}}));
        }
      }
      c = reduced;
    }
  detail::rescale_generators(q, lambda);

  // Gauge completion: the displayed substitution is partial, so the
  // remaining diagonal rescaling is solved by propagation.  Target
  // coefficient ratios come from the B-side relation shapes: the two
  // delta-gluing relations carry ratio -1, every other two-term relation
  // carries +1, and the r_i kernels are free (they define the points).
  std::map<std::string, Coeff> gamma;
  auto gamma_known = [&](const std::string& lab) {
    return gamma.count(lab) != 0;
  };
  auto is_point_relation = [&](const Relation& rel) {
    return rel.terms.size() == 2 &&
           q.arrows[static_cast<std::size_t>(rel.terms[0].path[1])]
                   .label.rfind("r", 0) == 0;
  };
  auto target_ratio = [&](const Relation& rel) {
    const std::string& last =
        q.arrows[static_cast<std::size_t>(rel.terms[1].path[1])].label;
    return last == "deltat" ? Coeff(Rat(-1)) : Coeff(Rat(1));
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& rel : q.relations) {
      if (rel.terms.size() != 2 || is_point_relation(rel)) continue;
      // want: (c1 G(p1)) / (c2 G(p2)) = target with G = product of gammas
      std::vector<std::pair<std::string, int>> unknown;  // label, net exponent
      Coeff known = rel.terms[0].c / rel.terms[1].c;
      auto absorb = [&](int a, int e) {
        const std::string& lab = q.arrows[static_cast<std::size_t>(a)].label;
        if (gamma_known(lab)) {
          Coeff g = gamma[lab];
          if (e < 0) g = g.inverse();
          known *= g;
        } else {
          bool merged = false;
          for (auto& [l2, e2] : unknown)
            if (l2 == lab) {
              e2 += e;
              merged = true;
            }
          if (!merged) unknown.emplace_back(lab, e);
        }
      };
      for (int a : rel.terms[0].path) absorb(a, +1);
      for (int a : rel.terms[1].path) absorb(a, -1);
      unknown.erase(std::remove_if(unknown.begin(), unknown.end(),
                                   [](auto& p) { return p.second == 0; }),
                    unknown.end());
      if (unknown.size() == 1 && std::abs(unknown[0].second) == 1) {
        // known * gamma^e = target  =>  gamma^e = target/known
        Coeff g = target_ratio(rel) / known;
        if (unknown[0].second == -1) g = g.inverse();
        gamma[unknown[0].first] = g;
        progress = true;
      }
    }
    if (!progress) {
      // free gauge direction: pin one undetermined arrow to 1
      for (const auto& a : q.arrows)
        if (!gamma_known(a.label)) {
          bool used = false;
          for (const auto& rel : q.relations) {
            if (rel.terms.size() != 2 || is_point_relation(rel)) continue;
            for (const auto& t : rel.terms)
              for (int ai : t.path)
                if (q.arrows[static_cast<std::size_t>(ai)].label == a.label)
                  used = true;
          }
          if (used) {
            gamma[a.label] = Coeff(Rat(1));
            progress = true;
            break;
          }
        }
      if (progress) continue;
      break;
    }
  }
  for (const auto& a : q.arrows)
    if (!gamma_known(a.label)) gamma[a.label] = Coeff(Rat(1));

  detail::rescale_generators(q, gamma);

  // verify: every non-point relation now carries exactly its B-side ratio
  for (const auto& rel : q.relations) {
    if (rel.terms.size() != 2 || is_point_relation(rel)) continue;
    Coeff ratio = rel.terms[0].c / rel.terms[1].c;
    if (!(ratio == target_ratio(rel)))
      throw claim_violation(
          "relation fails to normalize; residual ratio " + ratio.str());
  }

  // scale every relation to leading coefficient 1
  for (auto& rel : q.relations) {
    Coeff lead = rel.terms[0].c;
    for (auto& t : rel.terms) t.c = t.c / lead;
  }

  NormalizationResult out;
  // points: relation a_i (x1 r_i) + b_i (y1 r_i) = 0 with a_i normalized to 1
  std::vector<Coeff> raw;
  for (const auto& rel : q.relations) {
    if (!is_point_relation(rel)) continue;
    const RelTerm* tx = nullptr;
    const RelTerm* ty = nullptr;
    for (const auto& t : rel.terms) {
      const std::string& lab =
          q.arrows[static_cast<std::size_t>(t.path[0])].label;
      if (lab == "x1") tx = &t;
      if (lab == "y1") ty = &t;
    }
    if (!tx || !ty) throw claim_violation("malformed point relation");
    raw.push_back(ty->c / tx->c);
  }
  if (raw.size() != static_cast<std::size_t>(k + 1))
    throw claim_violation("expected k+1 point relations");

  // residual y-coordinate rescaling: divide by -raw[0] so the first point
  // is exactly -1; then b_i = -q_{1,i}
  Coeff rho = raw[0].negated();
  for (auto& b : raw) b = b / rho;
  out.points = raw;

  // symbolic check b_i = -q_{1,i}
  for (int i = 1; i <= k + 1; ++i) {
    Coeff expect = Coeff(novikov_q(1, i)).negated();
    if (!specialize.empty()) {
      Coeff reduced;
      reduced.scalar = expect.scalar;
      for (auto& [s, e] : expect.exp) {
        auto it = specialize.find(s);
        if (it == specialize.end()) reduced.exp[s] = e;
        else {
          Coeff tmp;
          tmp.exp[s] = e;
          reduced *= Coeff(tmp.evaluate({{s, it->second}}));
        }
      }
      expect = reduced;
    }
    if (!(out.points[static_cast<std::size_t>(i - 1)] == expect))
      throw claim_violation("point " + std::to_string(i) +
                            " is not -q_{1,i}: got " +
                            out.points[static_cast<std::size_t>(i - 1)].str());
  }

  out.normalized = q;
  out.gauge = gamma;

  // if the points are all rational, attempt the B-side construction
  bool rational = true;
  for (const auto& b : out.points)
    if (!b.is_rational()) rational = false;
  if (rational) {
    std::vector<BlownUpPoint> pts;
    for (const auto& b : out.points) pts.push_back({Rat(1), b.scalar});
    bool distinct = true;
    for (std::size_t i = 0; i < pts.size() && distinct; ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i].b == pts[j].b) {
          distinct = false;
          break;
        }
    if (!distinct) out.degenerate_exact_case = true;
    else out.as_xk = xk_quiver(k, pts);
  }
  return out;
}

inline NormalizationResult normalize_constants(
    int k, const std::map<std::string, Rat>& specialize = {}) {
  return normalize_quiver(fukaya_quiver(k), k, specialize);
}

// Overload inferring k from the quiver shape (|V| = 2k+2).
inline NormalizationResult normalize_constants(
    const Quiver& fq, const std::map<std::string, Rat>& specialize = {}) {
  int V = static_cast<int>(fq.vertices.size());
  if (V < 12 || V % 2 != 0)
    throw invalid_input("not a Fukaya-side quiver shape");
  return normalize_quiver(fq, (V - 2) / 2, specialize);
}

// --- JSON -----------------------------------------------------------------

inline nlohmann::json to_json(const Coeff& c) {
  nlohmann::json e = nlohmann::json::object();
  for (auto& [s, v] : c.exp) e[s] = v;
  std::ostringstream os;
  os << c.scalar;
  return {{"scalar", os.str()}, {"exponents", e}};
}

inline nlohmann::json to_json(const Quiver& q) {
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& a : q.arrows)
    arrows.push_back({{"src", q.vertices[static_cast<std::size_t>(a.src)]},
                      {"tgt", q.vertices[static_cast<std::size_t>(a.tgt)]},
                      {"label", a.label},
                      {"degree", a.degree},
                      {"pre_shift_degree", a.pre_shift_degree}});
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : q.relations) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : r.terms) {
      nlohmann::json path = nlohmann::json::array();
      for (int a : t.path)
        path.push_back(q.arrows[static_cast<std::size_t>(a)].label);
      terms.push_back({{"coefficient", to_json(t.c)}, {"path", path}});
    }
    rels.push_back(terms);
  }
  return {{"vertices", q.vertices}, {"arrows", arrows}, {"relations", rels}};
}

}  // namespace vct
