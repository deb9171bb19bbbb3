#pragma once

#include <gmpxx.h>

#include <cassert>
#include <compare>
#include <string>
#include <vector>

namespace gkm {

using Rat = mpq_class;

// Element of Q(sqrt(3)): a + b*sqrt(3).  Everything except the G2 ambient
// geometry lives in the b == 0 slice.
struct Quad {
  Rat a{0};
  Rat b{0};

  Quad() = default;
  Quad(long v) : a(v) {}            // NOLINT(google-explicit-constructor)
  Quad(const Rat& v) : a(v) {}      // NOLINT(google-explicit-constructor)
  Quad(Rat va, Rat vb) : a(std::move(va)), b(std::move(vb)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  Quad operator-() const { return Quad(-a, -b); }
  Quad operator+(const Quad& o) const { return Quad(a + o.a, b + o.b); }
  Quad operator-(const Quad& o) const { return Quad(a - o.a, b - o.b); }
  Quad operator*(const Quad& o) const {
    return Quad(a * o.a + 3 * b * o.b, a * o.b + b * o.a);
  }
  Quad& operator+=(const Quad& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Quad& operator-=(const Quad& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  Quad& operator*=(const Quad& o) { return *this = *this * o; }

  Quad inv() const {
    // (a + b√3)(a - b√3) = a² - 3b², nonzero for nonzero elements since √3
    // is irrational.
    Rat n = a * a - 3 * b * b;
    assert(n != 0);
    return Quad(a / n, -b / n);
  }
  Quad operator/(const Quad& o) const { return *this * o.inv(); }

  bool operator==(const Quad& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Quad& o) const { return !(*this == o); }

  // Sign of a + b√3 as a real number, computed exactly.
  int sgn() const {
    int sa = ::sgn(a);
    int sb = ::sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a² with 3b²; the sign of the larger magnitude
    // side wins.
    Rat d = a * a - 3 * b * b;
    return ::sgn(d) * sa;
  }

  bool operator<(const Quad& o) const { return (*this - o).sgn() < 0; }
  bool operator>(const Quad& o) const { return (*this - o).sgn() > 0; }
  bool operator<=(const Quad& o) const { return (*this - o).sgn() <= 0; }
  bool operator>=(const Quad& o) const { return (*this - o).sgn() >= 0; }

  std::string str() const {
    if (b == 0) return a.get_str();
    std::string s = a == 0 ? std::string() : a.get_str();
    std::string bs = b.get_str();
    if (!s.empty() && b > 0) s += "+";
    if (bs == "1")
      s += "r3";
    else if (bs == "-1")
      s += "-r3";
    else
      s += bs + "r3";
    return s;
  }
};

inline Quad operator*(long k, const Quad& q) { return Quad(k) * q; }

using QVec = std::vector<Quad>;

inline QVec operator+(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

inline QVec operator-(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

inline QVec operator*(const Quad& c, const QVec& x) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

inline QVec operator-(const QVec& x) { return Quad(-1) * x; }

inline bool is_zero(const QVec& x) {
  for (const auto& c : x)
    if (!c.is_zero()) return false;
  return true;
}

inline Quad dot(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  Quad s;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline std::string vec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

// Dense matrix over Quad, row major.  Small: ambient Weyl actions only.
struct QMat {
  int rows = 0;
  int cols = 0;
  std::vector<Quad> m;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), m(size_t(r) * c) {}

  static QMat identity(int n) {
    QMat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = Quad(1);
    return I;
  }

  Quad& operator()(int i, int j) { return m[size_t(i) * cols + j]; }
  const Quad& operator()(int i, int j) const { return m[size_t(i) * cols + j]; }

  bool operator==(const QMat& o) const {
    return rows == o.rows && cols == o.cols && m == o.m;
  }

  QVec apply(const QVec& v) const {
    assert(int(v.size()) == cols);
    QVec r(rows);
    for (int i = 0; i < rows; ++i) {
      Quad s;
      for (int j = 0; j < cols; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  QMat operator*(const QMat& o) const {
    assert(cols == o.rows);
    QMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Quad& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (int j = 0; j < o.cols; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  QMat transposed() const {
    QMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  std::string key() const {
    std::string s;
    for (const auto& q : m) {
      s += q.a.get_str();
      s += ':';
      s += q.b.get_str();
      s += ';';
    }
    return s;
  }
};

// Solves M x = rhs exactly (M square, nonsingular).  Used for expressing
// roots/weights in other bases; sizes are tiny.
inline QVec solve_linear(QMat M, QVec rhs) {
  int n = M.rows;
  assert(M.cols == n && int(rhs.size()) == n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!M(r, col).is_zero()) {
        piv = r;
        break;
      }
    assert(piv >= 0 && "singular system");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(M(piv, j), M(col, j));
      std::swap(rhs[piv], rhs[col]);
    }
    Quad inv = M(col, col).inv();
    for (int j = col; j < n; ++j) M(col, j) *= inv;
    rhs[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || M(r, col).is_zero()) continue;
      Quad f = M(r, col);
      for (int j = col; j < n; ++j) M(r, j) -= f * M(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

}  // namespace gkm
