#pragma once

// Laurent polynomials in z_1..z_d (exponents of either sign) with one
// distinguished ordinary variable L (the spectral parameter).  Coefficients
// are exact rationals; the map-based term storage keeps everything in the
// canonical ordering: lambda degree first, then z-exponent vectors
// lexicographically.

#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bloch/rational.hpp"
#include "bloch/unipoly.hpp"

namespace bloch {

struct ZMonomial {
  int lam = 0;          // exponent of L, always >= 0
  std::vector<int> z;   // exponents of z_1..z_d, any sign

  friend bool operator<(const ZMonomial& a, const ZMonomial& b) {
    if (a.lam != b.lam) return a.lam < b.lam;
    return a.z < b.z;
  }
  friend bool operator==(const ZMonomial& a, const ZMonomial& b) {
    return a.lam == b.lam && a.z == b.z;
  }
};

class LaurentPoly {
public:
  LaurentPoly() : dim_(0) {}
  explicit LaurentPoly(int dim) : dim_(dim) {
    if (dim < 0) throw std::invalid_argument("LaurentPoly: negative dimension");
  }

  static LaurentPoly constant(int dim, const Rational& c) {
    LaurentPoly p(dim);
    if (!c.isZero()) p.terms_[{0, std::vector<int>(dim, 0)}] = c;
    return p;
  }
  static LaurentPoly lambda(int dim) {
    LaurentPoly p(dim);
    p.terms_[{1, std::vector<int>(dim, 0)}] = Rational(1);
    return p;
  }
  // c * z_i^e  (i is 0-based)
  static LaurentPoly zterm(int dim, int i, int e, const Rational& c = Rational(1)) {
    LaurentPoly p(dim);
    if (i < 0 || i >= dim) throw std::invalid_argument("LaurentPoly: variable index");
    if (!c.isZero()) {
      std::vector<int> z(dim, 0);
      z[i] = e;
      p.terms_[{0, std::move(z)}] = c;
    }
    return p;
  }
  static LaurentPoly monomial(int dim, const ZMonomial& m, const Rational& c) {
    LaurentPoly p(dim);
    if (static_cast<int>(m.z.size()) != dim || m.lam < 0)
      throw std::invalid_argument("LaurentPoly: malformed monomial");
    if (!c.isZero()) p.terms_[m] = c;
    return p;
  }
  static LaurentPoly fromUniPoly(int dim, const UniPoly& u) {
    LaurentPoly p(dim);
    for (int k = 0; k <= u.degree(); ++k)
      if (!u.coeff(k).isZero()) p.terms_[{k, std::vector<int>(dim, 0)}] = u.coeff(k);
    return p;
  }

  int dimension() const { return dim_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }
  const std::map<ZMonomial, Rational>& terms() const { return terms_; }

  int lambdaDegree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.lam);
    return d;
  }

  Rational coeff(const ZMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LaurentPoly operator-() const {
    LaurentPoly r(dim_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    checkDim(o);
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    checkDim(o);
    for (const auto& [m, c] : o.terms_) addTerm(m, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.checkDim(b);
    LaurentPoly r(a.dim_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        ZMonomial m;
        m.lam = ma.lam + mb.lam;
        m.z.resize(a.dim_);
        for (int i = 0; i < a.dim_; ++i) m.z[i] = ma.z[i] + mb.z[i];
        r.addTerm(m, ca * cb);
      }
    return r;
  }
  friend LaurentPoly operator*(const Rational& s, const LaurentPoly& p) {
    LaurentPoly r(p.dim_);
    if (s.isZero()) return r;
    for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // z -> z^{-1} on every variable
  LaurentPoly invertZ() const {
    LaurentPoly r(dim_);
    for (const auto& [m, c] : terms_) {
      ZMonomial n = m;
      for (auto& e : n.z) e = -e;
      r.terms_[std::move(n)] = c;
    }
    return r;
  }

  LaurentPoly derivativeZ(int i) const {
    if (i < 0 || i >= dim_) throw std::invalid_argument("derivativeZ: variable index");
    LaurentPoly r(dim_);
    for (const auto& [m, c] : terms_) {
      if (m.z[i] == 0) continue;
      ZMonomial n = m;
      n.z[i] -= 1;
      r.addTerm(n, Rational(m.z[i]) * c);
    }
    return r;
  }

  LaurentPoly derivativeLambda() const {
    LaurentPoly r(dim_);
    for (const auto& [m, c] : terms_) {
      if (m.lam == 0) continue;
      ZMonomial n = m;
      n.lam -= 1;
      r.addTerm(n, Rational(m.lam) * c);
    }
    return r;
  }

  // Substitutes +-1 for the given variables (0-based index -> sign) and
  // relabels the surviving variables in increasing original order.
  LaurentPoly substituteSign(const std::map<int, int>& signs) const {
    std::vector<int> keep;
    for (int i = 0; i < dim_; ++i)
      if (!signs.count(i)) keep.push_back(i);
    for (const auto& [i, s] : signs) {
      if (i < 0 || i >= dim_) throw std::invalid_argument("substituteSign: variable index");
      if (s != 1 && s != -1) throw std::invalid_argument("substituteSign: sign must be +-1");
    }
    LaurentPoly r(static_cast<int>(keep.size()));
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (const auto& [i, s] : signs)
        if (s == -1 && (m.z[i] % 2 != 0)) v = -v;
      ZMonomial n;
      n.lam = m.lam;
      n.z.reserve(keep.size());
      for (int i : keep) n.z.push_back(m.z[i]);
      r.addTerm(n, v);
    }
    return r;
  }

  // L -> L - a*(z_{d+1} + z_{d+1}^{-1}); the result lives in dimension d+1
  // with the new variable appended last.
  LaurentPoly substituteLambdaShift(const Rational& a) const {
    int nd = dim_ + 1;
    LaurentPoly shifted = LaurentPoly::lambda(nd) -
                          a * (LaurentPoly::zterm(nd, dim_, 1) + LaurentPoly::zterm(nd, dim_, -1));
    std::vector<LaurentPoly> pows{LaurentPoly::constant(nd, Rational(1))};
    int maxLam = std::max(lambdaDegree(), 0);
    for (int k = 1; k <= maxLam; ++k) pows.push_back(pows.back() * shifted);
    LaurentPoly r(nd);
    for (const auto& [m, c] : terms_) {
      ZMonomial base;
      base.lam = 0;
      base.z = m.z;
      base.z.push_back(0);
      LaurentPoly mono(nd);
      mono.terms_[base] = c;
      r += mono * pows[m.lam];
    }
    return r;
  }

  std::complex<double> eval(const std::vector<std::complex<double>>& z, double lambda) const {
    if (static_cast<int>(z.size()) != dim_)
      throw std::invalid_argument("LaurentPoly::eval: dimension mismatch");
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
      std::complex<double> t(c.toDouble(), 0.0);
      for (int i = 0; i < dim_; ++i) t *= ipow(z[i], m.z[i]);
      for (int k = 0; k < m.lam; ++k) t *= lambda;
      acc += t;
    }
    return acc;
  }

  // groups terms by z-monomial; each group is a polynomial in L
  std::map<std::vector<int>, UniPoly> groupByZ() const {
    std::map<std::vector<int>, std::vector<Rational>> acc;
    for (const auto& [m, c] : terms_) {
      auto& v = acc[m.z];
      if (static_cast<int>(v.size()) <= m.lam) v.resize(m.lam + 1);
      v[m.lam] = c;
    }
    std::map<std::vector<int>, UniPoly> out;
    for (auto& [z, v] : acc) out.emplace(z, UniPoly(std::move(v)));
    return out;
  }

  // valid when no term carries a z-variable
  UniPoly toUniPoly() const {
    std::vector<Rational> v;
    std::vector<int> zero(dim_, 0);
    for (const auto& [m, c] : terms_) {
      if (m.z != zero)
        throw std::invalid_argument("toUniPoly: polynomial still depends on z");
      if (static_cast<int>(v.size()) <= m.lam) v.resize(m.lam + 1);
      v[m.lam] = c;
    }
    return UniPoly(std::move(v));
  }

  // full corner substitution z_i = signs[i] (each +-1)
  UniPoly atCorner(const std::vector<int>& signs) const {
    if (static_cast<int>(signs.size()) != dim_)
      throw std::invalid_argument("atCorner: dimension mismatch");
    std::map<int, int> all;
    for (int i = 0; i < dim_; ++i) all[i] = signs[i];
    return substituteSign(all).toUniPoly();
  }

  // exact division by (z_i^2 - 1); nullopt when not divisible
  std::optional<LaurentPoly> divideByZSquaredMinusOne(int i) const {
    if (i < 0 || i >= dim_) throw std::invalid_argument("divideByZSquaredMinusOne: index");
    if (isZero()) return LaurentPoly(dim_);
    // collect coefficients by z_i-degree, shifted so the minimum is 0
    int mn = 0, mx = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (first) { mn = mx = m.z[i]; first = false; }
      mn = std::min(mn, m.z[i]);
      mx = std::max(mx, m.z[i]);
    }
    int n = mx - mn;
    std::vector<LaurentPoly> C(n + 1, LaurentPoly(dim_));
    for (const auto& [m, c] : terms_) {
      ZMonomial b = m;
      int k = b.z[i] - mn;
      b.z[i] = 0;
      C[k].addTerm(b, c);
    }
    std::vector<LaurentPoly> Q(n >= 2 ? n - 1 : 0, LaurentPoly(dim_));
    for (int k = n; k >= 2; --k) {
      if (C[k].isZero()) continue;
      Q[k - 2] += C[k];
      C[k - 2] += C[k];
      C[k] = LaurentPoly(dim_);
    }
    if (!C[0].isZero() || (n >= 1 && !C[1].isZero())) return std::nullopt;
    LaurentPoly out(dim_);
    for (int k = 0; k < static_cast<int>(Q.size()); ++k) {
      if (Q[k].isZero()) continue;
      for (const auto& [m, c] : Q[k].terms_) {
        ZMonomial b = m;
        b.z[i] = k + mn;
        out.addTerm(b, c);
      }
    }
    return out;
  }

  // canonical plain-text form: terms in canonical order, each as
  // "c * z1^e1 * ... * L^k" with zero exponents omitted
  std::string canonicalString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool firstTerm = true;
    for (const auto& [m, c] : terms_) {
      if (!firstTerm) os << " + ";
      firstTerm = false;
      os << c.str();
      for (int i = 0; i < dim_; ++i)
        if (m.z[i] != 0) os << " * z" << (i + 1) << "^" << m.z[i];
      if (m.lam == 1) os << " * L";
      else if (m.lam > 1) os << " * L^" << m.lam;
    }
    return os.str();
  }

  std::string latexString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool firstTerm = true;
    for (const auto& [m, c] : terms_) {
      Rational a = c;
      if (firstTerm) {
        if (a.sign() < 0) { os << "-"; a = -a; }
      } else {
        os << (a.sign() < 0 ? " - " : " + ");
        if (a.sign() < 0) a = -a;
      }
      firstTerm = false;
      bool unitCoeff = (a == Rational(1)) && !(m.lam == 0 && allZero(m.z));
      if (!unitCoeff) {
        if (a.isInteger()) os << a.str();
        else os << "\\tfrac{" << a.numerator().get_str() << "}{" << a.denominator().get_str() << "}";
      }
      for (int i = 0; i < dim_; ++i) {
        if (m.z[i] == 0) continue;
        os << "z_{" << (i + 1) << "}";
        if (m.z[i] != 1) os << "^{" << m.z[i] << "}";
      }
      if (m.lam >= 1) {
        os << "\\lambda";
        if (m.lam > 1) os << "^{" << m.lam << "}";
      }
    }
    return os.str();
  }

private:
  static bool allZero(const std::vector<int>& v) {
    for (int e : v) if (e != 0) return false;
    return true;
  }
  static std::complex<double> ipow(std::complex<double> b, int e) {
    if (e < 0) { b = 1.0 / b; e = -e; }
    std::complex<double> r(1.0, 0.0);
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  void checkDim(const LaurentPoly& o) const {
    if (dim_ != o.dim_)
      throw std::invalid_argument("LaurentPoly: dimension mismatch");
  }
  void addTerm(const ZMonomial& m, const Rational& c) {
    if (c.isZero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  int dim_;
  std::map<ZMonomial, Rational> terms_;
};

}  // namespace bloch
