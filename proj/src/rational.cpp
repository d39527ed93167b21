#include "kolmo/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kolmo {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  mpz_class num;
  mpz_class den = 1;
  const auto head = text.substr(0, slash);
  if (!parse_integer(head, num)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (slash != std::string_view::npos) {
    const auto tail = text.substr(slash + 1);
    if (!parse_integer(tail, den) || tail[0] == '-' || tail[0] == '+') {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
  }
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class num = v_.get_num();
  const mpz_class& den = v_.get_den();
  const bool negative = num < 0;
  if (negative) num = -num;
  mpz_class whole = num / den;
  mpz_class rem = num % den;
  std::string out = negative ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class frac = rem * scale / den;
    std::string f = frac.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  if (negative && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division of a rational by zero");
  v_ /= o.v_;
  return *this;
}

Rational rat(long num, long den) { return Rational(mpz_class(num), mpz_class(den)); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow2(int e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p, 1) : Rational(mpz_class(1), p);
}

Rational pow(const Rational& base, unsigned e) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), e);
  return Rational(num, den);
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

std::size_t RationalHash::operator()(const Rational& r) const {
  const auto h1 = std::hash<std::string>{}(r.numerator().get_str(16));
  const auto h2 = std::hash<std::string>{}(r.denominator().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

}  // namespace kolmo
