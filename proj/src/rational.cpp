#include "fairdiv/rational.hpp"

#include <cctype>
#include <ostream>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

bool is_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  require_input(den != 0, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  require_input(den != 0, "rational with zero denominator");
  v_ = mpq_class(num) / mpq_class(den);
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  require_input(!o.is_zero(), "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  // Trim surrounding whitespace.
  size_t b = s.find_first_not_of(" \t\r\n");
  size_t e = s.find_last_not_of(" \t\r\n");
  require_input(b != std::string::npos, "empty rational literal");
  s = s.substr(b, e - b + 1);

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s = s.substr(1);
  }
  require_input(!s.empty(), "sign without digits in rational literal '" + text + "'");

  Rational out;
  size_t slash = s.find('/');
  size_t dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    require_input(is_digits(num) && is_digits(den),
                  "malformed rational literal '" + text + "'");
    mpz_class n(num), d(den);
    require_input(d != 0, "zero denominator in rational literal '" + text + "'");
    out = Rational(n, d);
  } else if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    require_input(!whole.empty() || !frac.empty(),
                  "malformed decimal literal '" + text + "'");
    require_input((whole.empty() || is_digits(whole)) && (frac.empty() || is_digits(frac)),
                  "malformed decimal literal '" + text + "'");
    if (whole.empty()) whole = "0";
    mpz_class n(whole);
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class num = n * scale + (frac.empty() ? mpz_class(0) : mpz_class(frac));
    out = Rational(num, scale);
  } else {
    require_input(is_digits(s), "malformed rational literal '" + text + "'");
    out = Rational(mpz_class(s), mpz_class(1));
  }
  return negative ? -out : out;
}

Rational Rational::pow2(long exponent) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p, 1);
  return Rational(mpz_class(1), p);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace fairdiv
