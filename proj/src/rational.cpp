#include "ldcswitch/rational.hpp"

#include <gmpxx.h>

#include <ostream>

namespace ldcswitch {

namespace detail {

struct BigRational {
  mpq_class value;

  static mpq_class of(const Rational& r) {
    if (r.big_) return r.big_->value;
    mpz_class num;
    mpz_class den;
    mpz_set_si(num.get_mpz_t(), r.num_);
    mpz_set_si(den.get_mpz_t(), r.den_);
    mpq_class q(num, den);
    return q;
  }

  // Stores a canonical mpq into r, demoting to the inline form when it fits.
  static void store(Rational& r, mpq_class q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (mpz_fits_slong_p(num.get_mpz_t()) && mpz_fits_slong_p(den.get_mpz_t())) {
      const long n = mpz_get_si(num.get_mpz_t());
      const long d = mpz_get_si(den.get_mpz_t());
      if (n != INT64_MIN) {
        r.set_small(n, d);
        return;
      }
    }
    r.num_ = 0;
    r.den_ = 1;
    r.big_.reset(new BigRational{std::move(q)});
  }
};

void BigRationalDeleter::operator()(BigRational* p) const noexcept { delete p; }

namespace {

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  while (b != 0) {
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi;
  mpz_class lo;
  mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
  mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & ~std::uint64_t{0}));
  mpz_class out = (hi << 64) + lo;
  return negative ? mpz_class(-out) : out;
}

}  // namespace
}  // namespace detail

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  assign_reduced128(den < 0 ? -static_cast<__int128>(num) : num, den < 0 ? -static_cast<__int128>(den) : den);
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_.reset(new detail::BigRational{other.big_->value});
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    big_.reset(new detail::BigRational{other.big_->value});
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::assign_reduced128(__int128 num, __int128 den) {
  if (num == 0) {
    set_small(0, 1);
    return;
  }
  const unsigned __int128 abs_num = num < 0 ? -static_cast<unsigned __int128>(num) : static_cast<unsigned __int128>(num);
  const auto g = static_cast<__int128>(detail::gcd128(abs_num, static_cast<unsigned __int128>(den)));
  num /= g;
  den /= g;
  if (num >= -static_cast<__int128>(kSmallLimit) && num <= kSmallLimit && den <= kSmallLimit) {
    set_small(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    return;
  }
  mpq_class q(detail::to_mpz(num), detail::to_mpz(den));
  q.canonicalize();
  detail::BigRational::store(*this, std::move(q));
}

void Rational::slow_add(const Rational& o, bool subtract) {
  mpq_class a = detail::BigRational::of(*this);
  const mpq_class b = detail::BigRational::of(o);
  detail::BigRational::store(*this, subtract ? mpq_class(a - b) : mpq_class(a + b));
}

void Rational::slow_mul(const Rational& o, bool divide) {
  mpq_class a = detail::BigRational::of(*this);
  const mpq_class b = detail::BigRational::of(o);
  detail::BigRational::store(*this, divide ? mpq_class(a / b) : mpq_class(a * b));
}

std::strong_ordering Rational::slow_compare(const Rational& a, const Rational& b) noexcept {
  const int c = cmp(detail::BigRational::of(a), detail::BigRational::of(b));
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num_text(text.substr(0, slash));
  const std::string den_text = slash == std::string_view::npos ? std::string("1") : std::string(text.substr(slash + 1));
  const auto valid = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  if (!valid(num_text, true) || !valid(den_text, false)) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  mpz_class num(num_text[0] == '+' ? num_text.substr(1) : num_text, 10);
  mpz_class den(den_text, 10);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  Rational r;
  detail::BigRational::store(r, std::move(q));
  return r;
}

std::string Rational::numerator_string() const {
  if (big_) return big_->value.get_num().get_str();
  return std::to_string(num_);
}

std::string Rational::denominator_string() const {
  if (big_) return big_->value.get_den().get_str();
  return std::to_string(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->value.get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

ExtRational ExtRational::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return infinity();
  return Rational::parse(text);
}

const Rational& ExtRational::value() const {
  if (infinite_) throw InfiniteArithmetic("arithmetic on +inf");
  return value_;
}

std::string ExtRational::to_string() const { return infinite_ ? "inf" : value_.to_string(); }

std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.to_string(); }

ExtRational saturating_add(const ExtRational& a, const ExtRational& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtRational::infinity();
  return a.value() + b.value();
}

}  // namespace ldcswitch
