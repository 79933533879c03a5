#pragma once

// Dense univariate polynomials over the rationals, plus the exact real-root
// toolbox used by the certification pipelines: Euclidean gcd, Yun squarefree
// decomposition, Sturm sequences, bisection-based root isolation with exact
// rational-root detection, and Sylvester resultants.

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bloch/rational.hpp"

namespace bloch {

class UniPoly {
public:
  UniPoly() = default;
  UniPoly(std::initializer_list<Rational> ascending) : c_(ascending) { trim(); }
  explicit UniPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly lambda() { return UniPoly({Rational(0), Rational(1)}); }
  // c * L^k
  static UniPoly term(const Rational& c, int k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
  }

  bool isZero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const {
    if (isZero()) throw std::invalid_argument("UniPoly: leading of zero");
    return c_.back();
  }
  Rational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[k];
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double evalDouble(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->toDouble();
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(d));
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.isZero() || b.isZero()) return UniPoly();
    std::vector<Rational> p(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(p));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& p) {
    if (s.isZero()) return UniPoly();
    UniPoly r = p;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  // quotient/remainder; divisor must be nonzero
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den) {
    if (den.isZero()) throw std::invalid_argument("UniPoly: division by zero polynomial");
    UniPoly r = num;
    std::vector<Rational> q;
    int dd = den.degree();
    if (r.degree() >= dd) q.assign(r.degree() - dd + 1, Rational(0));
    while (!r.isZero() && r.degree() >= dd) {
      int k = r.degree() - dd;
      Rational f = r.leading() / den.leading();
      q[k] = f;
      for (int i = 0; i <= dd; ++i) r.c_[k + i] -= f * den.c_[i];
      r.trim();
    }
    return {UniPoly(std::move(q)), r};
  }

  UniPoly divExact(const UniPoly& den) const {
    auto [q, r] = divmod(*this, den);
    if (!r.isZero()) throw std::invalid_argument("UniPoly: inexact division");
    return q;
  }

  UniPoly monic() const {
    if (isZero()) return *this;
    return (Rational(1) / leading()) * *this;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().isZero()) c_.pop_back();
  }
  std::vector<Rational> c_;  // c_[k] is the coefficient of L^k
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.isZero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Isolating interval for a single real root.  lo == hi means the root is
// exactly rational; otherwise the (open-below, closed-above] interval contains
// exactly one root of the polynomial it was isolated from.
struct RootInterval {
  Rational lo, hi;
  int multiplicity = 1;
  bool isExact() const { return lo == hi; }
  double approx() const { return ((lo + hi) / Rational(2)).toDouble(); }
};

namespace detail {

inline int signChanges(const std::vector<int>& signs) {
  int changes = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

inline std::vector<UniPoly> sturmSequence(const UniPoly& p) {
  std::vector<UniPoly> seq{p, p.derivative()};
  while (!seq.back().isZero() && seq.back().degree() > 0) {
    auto [q, r] = divmod(seq[seq.size() - 2], seq.back());
    if (r.isZero()) break;
    seq.push_back(-r);
  }
  return seq;
}

inline int sturmVariationsAt(const std::vector<UniPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(p(x).sign());
  return signChanges(signs);
}

// number of distinct real roots in (a, b]; seq must come from a squarefree poly
inline int sturmCount(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b) {
  return sturmVariationsAt(seq, a) - sturmVariationsAt(seq, b);
}

inline Integer floorOf(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
  return q;
}

inline Integer ceilOf(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
  return q;
}

// rational with the smallest denominator in the closed interval [lo, hi]
inline Rational simplestBetween(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplestBetween: empty interval");
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplestBetween(-hi, -lo);
  Integer c = ceilOf(lo);
  if (Rational(c) <= hi) return Rational(c);
  Integer n = floorOf(lo);
  Rational rn(n);
  return rn + Rational(1) / simplestBetween(Rational(1) / (hi - rn), Rational(1) / (lo - rn));
}

}  // namespace detail

inline UniPoly squarefreePart(const UniPoly& p) {
  if (p.isZero() || p.degree() == 0) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  return p.divExact(g).monic();
}

// Yun squarefree decomposition: returns f_1, f_2, ... with p ~ prod f_i^i
// (up to a constant); each f_i is monic and squarefree, pairwise coprime.
inline std::vector<UniPoly> squarefreeDecomposition(const UniPoly& p) {
  if (p.isZero()) throw std::invalid_argument("squarefreeDecomposition: zero polynomial");
  std::vector<UniPoly> out;
  if (p.degree() == 0) return out;
  UniPoly f = p.monic();
  UniPoly fp = f.derivative();
  UniPoly c = gcd(f, fp);
  UniPoly w = f.divExact(c);
  UniPoly y = fp.divExact(c);
  UniPoly z = y - w.derivative();
  while (w.degree() > 0) {
    UniPoly g = gcd(w, z);
    out.push_back(g.monic());
    w = w.divExact(g);
    y = z.divExact(g);
    z = y - w.derivative();
  }
  return out;
}

inline Rational cauchyRootBound(const UniPoly& p) {
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational a = (p.coeff(i) / p.leading()).abs();
    if (a > m) m = a;
  }
  return Rational(1) + m;
}

// Isolates the real roots of a squarefree polynomial.  Each interval is
// bisected until its width drops below `width` or the root is found to be
// exactly rational (tested via the simplest rational in the interval).
inline std::vector<RootInterval> isolateSquarefree(const UniPoly& sf,
                                                  const Rational& width) {
  std::vector<RootInterval> out;
  if (sf.isZero()) throw std::invalid_argument("isolateSquarefree: zero polynomial");
  if (sf.degree() == 0) return out;
  auto seq = detail::sturmSequence(sf);
  Rational bound = cauchyRootBound(sf);

  // stack of (lo, hi] intervals with a known positive root count
  struct Span { Rational lo, hi; int count; };
  std::vector<Span> work;
  int total = detail::sturmCount(seq, -bound, bound);
  if (total > 0) work.push_back({-bound, bound, total});

  while (!work.empty()) {
    Span s = work.back();
    work.pop_back();
    if (s.count == 1) {
      // refine the isolated root
      Rational lo = s.lo, hi = s.hi;
      std::optional<Rational> exact;
      if (sf(hi).isZero()) exact = hi;
      while (!exact && hi - lo >= width) {
        Rational mid = (lo + hi) / Rational(2);
        if (sf(mid).isZero()) {
          exact = mid;
          break;
        }
        if (detail::sturmCount(seq, lo, mid) == 1) hi = mid; else lo = mid;
      }
      if (!exact) {
        Rational cand = detail::simplestBetween(lo, hi);
        if (sf(cand).isZero()) exact = cand;
      }
      if (exact) out.push_back({*exact, *exact, 1});
      else out.push_back({lo, hi, 1});
      continue;
    }
    Rational mid = (s.lo + s.hi) / Rational(2);
    int left = detail::sturmCount(seq, s.lo, mid);
    if (left > 0) work.push_back({s.lo, mid, left});
    if (s.count - left > 0) work.push_back({mid, s.hi, s.count - left});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

inline const Rational& defaultIsolationWidth() {
  static const Rational w(Integer(1), Integer(1) << 32);
  return w;
}

// Real roots of an arbitrary nonzero polynomial, with multiplicities read off
// the Yun decomposition.
inline std::vector<RootInterval> realRoots(const UniPoly& p) {
  if (p.isZero()) throw std::invalid_argument("realRoots: zero polynomial");
  auto factors = squarefreeDecomposition(p);
  UniPoly sf = UniPoly::constant(Rational(1));
  for (const auto& f : factors) sf = sf * f;
  auto roots = isolateSquarefree(sf, defaultIsolationWidth());
  // attribute each isolated root to the unique squarefree factor containing it
  for (auto& r : roots) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() <= 0) continue;
      bool owns;
      if (r.isExact()) {
        owns = factors[i](r.lo).isZero();
      } else {
        auto seq = detail::sturmSequence(factors[i]);
        owns = detail::sturmCount(seq, r.lo, r.hi) > 0;
      }
      if (owns) {
        r.multiplicity = static_cast<int>(i) + 1;
        break;
      }
    }
  }
  return roots;
}

// Narrows an isolating interval of `sf` (squarefree) below the given width.
inline RootInterval refineRoot(const UniPoly& sf, RootInterval r, const Rational& width) {
  if (r.isExact()) return r;
  auto seq = detail::sturmSequence(sf);
  while (r.hi - r.lo >= width) {
    Rational mid = (r.lo + r.hi) / Rational(2);
    if (sf(mid).isZero()) {
      r.lo = r.hi = mid;
      return r;
    }
    if (detail::sturmCount(seq, r.lo, mid) == 1) r.hi = mid; else r.lo = mid;
  }
  return r;
}

// Does p vanish at the root of q isolated by `at`?  Decided exactly through
// gcd(p, q): the gcd divides q, and q has exactly one root in the interval.
inline bool sharesRoot(const UniPoly& p, const UniPoly& q, const RootInterval& at) {
  if (at.isExact()) return p(at.lo).isZero();
  if (p.isZero()) return true;
  UniPoly g = gcd(p, q);
  if (g.degree() <= 0) return false;
  auto seq = detail::sturmSequence(squarefreePart(g));
  return detail::sturmCount(seq, at.lo, at.hi) > 0;
}

// Determinant of the Sylvester matrix of p and q.  By convention the
// resultant involving the zero polynomial is 0, and two nonzero constants
// have resultant 1 (empty matrix).
inline Rational sylvesterResultant(const UniPoly& p, const UniPoly& q) {
  if (p.isZero() || q.isZero()) return Rational(0);
  int m = p.degree(), n = q.degree();
  int size = m + n;
  if (size == 0) return Rational(1);
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = p.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = q.coeff(n - j);
  // Gaussian elimination with exact arithmetic
  Rational det(1);
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int row = col; row < size; ++row)
      if (!s[row][col].isZero()) { pivot = row; break; }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(s[pivot], s[col]);
      det = -det;
    }
    det *= s[col][col];
    Rational inv = Rational(1) / s[col][col];
    for (int row = col + 1; row < size; ++row) {
      if (s[row][col].isZero()) continue;
      Rational f = s[row][col] * inv;
      for (int j = col; j < size; ++j) s[row][j] -= f * s[col][j];
    }
  }
  return det;
}

// Monic gcd of a list plus the real roots of that gcd; errors if every input
// is the zero polynomial (an identically vanishing determinant upstream).
inline std::pair<UniPoly, std::vector<RootInterval>> gcdAndRealRoots(
    const std::vector<UniPoly>& polys) {
  UniPoly g;
  for (const auto& p : polys) g = gcd(g, p);
  if (g.isZero())
    throw std::invalid_argument("gcdAndRealRoots: all inputs are zero");
  if (g.degree() <= 0) return {g, {}};
  return {g, realRoots(g)};
}

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
  if (p.isZero()) return os << "0";
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    if (p.coeff(k).isZero()) continue;
    if (!first) os << " + ";
    os << p.coeff(k).str();
    if (k > 0) os << "*L^" << k;
    first = false;
  }
  return os;
}

}  // namespace bloch
