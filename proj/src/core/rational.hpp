#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace conelab {

// Exact rational number, always kept in canonical form (lowest terms,
// positive denominator).  Thin value wrapper around GMP's mpq_class; the
// wrapper exists so the rest of the engine never sees a non-canonical
// fraction and so parsing/printing have a single home.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}             // NOLINT(google-explicit-constructor)
  Rat(int n) : v_(n) {}              // NOLINT(google-explicit-constructor)
  Rat(long n, long d) : v_(n, d) { canonicalize(); }
  explicit Rat(const mpq_class& q) : v_(q) { canonicalize(); }
  explicit Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) { canonicalize(); }

  static Rat parse(const std::string& s);

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
  Rat operator-() const { Rat r; r.v_ = -v_; return r; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(v_.get_den(), v_.get_num()));
  }

  Rat pow(long e) const;

  // Canonical text form: "p" for integers, "p/q" otherwise.
  std::string str() const;

 private:
  void canonicalize() { v_.canonicalize(); }
  mpq_class v_;
};

Rat factorial(long n);
Rat binomial(long n, long k);
Rat double_factorial_odd(long m);  // (2m-1)!!

}  // namespace conelab
