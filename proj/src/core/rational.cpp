#include "core/rational.hpp"

namespace conelab {

Rat Rat::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(mpz_class(s));
    mpz_class n(s.substr(0, slash));
    mpz_class d(s.substr(slash + 1));
    if (sgn(d) == 0) throw std::invalid_argument("zero denominator");
    return Rat(n, d);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rat: cannot parse \"" + s + "\"");
  }
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  if (e < 0) return inv().pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  Rat r;
  r.v_ = mpq_class(n, d);
  return r;  // powers of a canonical fraction stay canonical
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

Rat binomial(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(b);
}

Rat double_factorial_odd(long m) {
  mpz_class r(1);
  for (long i = 2 * m - 1; i > 1; i -= 2) r *= i;
  return Rat(r);
}

}  // namespace conelab
