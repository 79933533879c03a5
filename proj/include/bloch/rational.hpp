#pragma once

// Exact rational arithmetic on top of GMP.  Every symbolic quantity in the
// library (edge weights, potentials, polynomial coefficients, corner values)
// is a Rational; floating point only enters in the numeric spectral layer.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bloch {

using Integer = mpz_class;

class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<long int>(n)) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  // Accepts "p", "-p", "p/q" with optional sign; anything else is an error.
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: bad literal '" + s + "'");
    if (q.get_den() == 0)
      throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    Rational r;
    r.v_ = q;
    return r;
  }

  Integer numerator() const { return v_.get_num(); }
  Integer denominator() const { return v_.get_den(); }

  bool isZero() const { return v_ == 0; }
  bool isInteger() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  Rational abs() const { Rational r; r.v_ = ::abs(v_); return r; }

  double toDouble() const { return v_.get_d(); }

  std::string str() const {
    if (isInteger()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { Rational r; r.v_ = -v_; return r; }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.isZero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::string>{}(v_.get_num().get_str());
    std::size_t g = std::hash<std::string>{}(v_.get_den().get_str());
    return h ^ (g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }

private:
  mpq_class v_;
};

inline Rational pow(const Rational& base, unsigned e) {
  Rational r(1), b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace bloch

template <>
struct std::hash<bloch::Rational> {
  std::size_t operator()(const bloch::Rational& r) const { return r.hash(); }
};
