#include "kolmo/bigfloat.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

namespace {

constexpr long kDefaultBits = 256;

long initial_precision() {
  if (const char* env = std::getenv("KOLMO_PRECISION")) {
    char* end = nullptr;
    const long bits = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && bits >= MPFR_PREC_MIN && bits <= 1 << 20) return bits;
  }
  return kDefaultBits;
}

std::atomic<long>& precision_slot() {
  static std::atomic<long> bits{initial_precision()};
  return bits;
}

mpfr_rnd_t to_mpfr(Round r) {
  switch (r) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    case Round::Nearest:
      break;
  }
  return MPFR_RNDN;
}

}  // namespace

long BigFloat::default_precision() { return precision_slot().load(); }

void BigFloat::set_default_precision(long bits) {
  if (bits < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
  precision_slot().store(bits);
}

BigFloat::BigFloat() {
  mpfr_init2(v_, default_precision());
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long value) {
  mpfr_init2(v_, default_precision());
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value) {
  mpfr_init2(v_, default_precision());
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, Round rnd) {
  mpfr_init2(v_, default_precision());
  mpfr_set_q(v_, value.raw().get_mpq_t(), to_mpfr(rnd));
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::parse(std::string_view text, Round rnd) {
  if (text.find('/') != std::string_view::npos) return BigFloat(Rational::parse(text), rnd);
  BigFloat out;
  const std::string s(text);
  if (s.empty() || mpfr_set_str(out.v_, s.c_str(), 10, to_mpfr(rnd)) != 0) {
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  return out;
}

BigFloat BigFloat::add(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat out;
  mpfr_add(out.v_, a.v_, b.v_, to_mpfr(rnd));
  return out;
}

BigFloat BigFloat::sub(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat out;
  mpfr_sub(out.v_, a.v_, b.v_, to_mpfr(rnd));
  return out;
}

BigFloat BigFloat::mul(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat out;
  mpfr_mul(out.v_, a.v_, b.v_, to_mpfr(rnd));
  return out;
}

BigFloat BigFloat::div(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat out;
  mpfr_div(out.v_, a.v_, b.v_, to_mpfr(rnd));
  return out;
}

BigFloat BigFloat::mul(const BigFloat& a, const Rational& q, Round rnd) {
  BigFloat out;
  mpfr_mul_q(out.v_, a.v_, q.raw().get_mpq_t(), to_mpfr(rnd));
  return out;
}

BigFloat BigFloat::sqrt(const BigFloat& a, Round rnd) {
  BigFloat out;
  mpfr_sqrt(out.v_, a.v_, to_mpfr(rnd));
  return out;
}

BigFloat BigFloat::pow2_fraction(unsigned long num, unsigned long den, Round rnd) {
  if (den == 0) throw std::invalid_argument("zero root index");
  // 2^num is exact at any precision above num bits; the root rounds once.
  BigFloat base;
  mpfr_set_ui_2exp(base.v_, 1, static_cast<mpfr_exp_t>(num), MPFR_RNDN);
  BigFloat out;
  mpfr_rootn_ui(out.v_, base.v_, den, to_mpfr(rnd));
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(*this);
  mpfr_neg(out.v_, out.v_, MPFR_RNDN);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::string BigFloat::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

std::string BigFloat::fixed(int digits) const {
  if (!is_finite()) return str();
  const int n = mpfr_snprintf(nullptr, 0, "%.*Rf", digits, v_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rf", digits, v_);
  return std::string(buf.data());
}

BigFloat abs(const BigFloat& x) { return x.sign() < 0 ? -x : x; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat out(x);
  mpfr_mul_2si(out.get(), out.get(), e, MPFR_RNDN);
  return out;
}

Rational to_rational(const BigFloat& x) {
  if (!x.is_finite()) throw std::domain_error("non-finite value has no rational form");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return Rational(q);
}

BigFloat BigInterval::mid() const {
  BigFloat s = BigFloat::add(lo, hi, Round::Nearest);
  return ldexp(s, -1);
}

}  // namespace kolmo
