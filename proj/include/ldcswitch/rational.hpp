#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ldcswitch {

namespace detail {
struct BigRational;
struct BigRationalDeleter {
  void operator()(BigRational* p) const noexcept;
};
}  // namespace detail

/// Exact arbitrary-precision rational number.
///
/// Values whose numerator and denominator fit in 63 bits are kept inline and
/// use 128-bit intermediates; anything larger moves to a GMP rational and
/// moves back once it fits again. Always in lowest terms, denominator > 0.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(std::int64_t n) noexcept;  // NOLINT(google-explicit-constructor)
  Rational(int n) noexcept : Rational(static_cast<std::int64_t>(n)) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p", "-p", "p/q" (q may not be zero). Reduces to lowest terms.
  static Rational parse(std::string_view text);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const noexcept;
  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }
  [[nodiscard]] std::string to_string() const;
  /// Numerator and denominator as decimal strings.
  [[nodiscard]] std::string numerator_string() const;
  [[nodiscard]] std::string denominator_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static constexpr std::int64_t kSmallLimit = INT64_MAX;

  bool small() const noexcept { return !big_; }
  void set_small(std::int64_t num, std::int64_t den) noexcept {
    big_.reset();
    num_ = num;
    den_ = den;
  }
  // Sets from a 128-bit fraction with den > 0; spills to GMP if needed.
  void assign_reduced128(__int128 num, __int128 den);
  void slow_add(const Rational& o, bool subtract);
  void slow_mul(const Rational& o, bool divide);
  static std::strong_ordering slow_compare(const Rational& a, const Rational& b) noexcept;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<detail::BigRational, detail::BigRationalDeleter> big_;

  friend struct detail::BigRational;
};

/// Thrown when +INF is used in arithmetic, or when a finite value is
/// requested from +INF.
class InfiniteArithmetic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A rational number or the distinguished value +INF.
///
/// +INF only takes part in comparisons, min/max and saturating sums; any other
/// arithmetic on it throws InfiniteArithmetic.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  ExtRational(std::int64_t n) : value_(n) {}         // NOLINT(google-explicit-constructor)
  ExtRational(int n) : value_(n) {}                  // NOLINT(google-explicit-constructor)

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }
  /// "inf" or anything Rational::parse accepts.
  static ExtRational parse(std::string_view text);

  [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
  [[nodiscard]] bool is_finite() const noexcept { return !infinite_; }
  [[nodiscard]] int sign() const noexcept { return infinite_ ? 1 : value_.sign(); }
  /// The finite value; throws InfiniteArithmetic on +INF.
  [[nodiscard]] const Rational& value() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) noexcept {
    if (a.infinite_ || b.infinite_) return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    return a.value_ <=> b.value_;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) { return a.value() + b.value(); }
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a.value() - b.value(); }
  friend ExtRational operator*(const ExtRational& a, const ExtRational& b) { return a.value() * b.value(); }

  friend std::ostream& operator<<(std::ostream& os, const ExtRational& r);

 private:
  Rational value_;
  bool infinite_ = false;
};

/// a + b where either side being +INF yields +INF.
ExtRational saturating_add(const ExtRational& a, const ExtRational& b);

inline const ExtRational& min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }
inline const ExtRational& max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// inline fast paths

inline Rational::Rational(std::int64_t n) noexcept : num_(n) {
  if (n == INT64_MIN) assign_reduced128(n, 1);
}

inline int Rational::sign() const noexcept {
  if (!small()) return slow_compare(*this, Rational()) < 0 ? -1 : 1;
  return (num_ > 0) - (num_ < 0);
}

inline bool Rational::is_integer() const noexcept { return small() && den_ == 1; }

inline Rational Rational::operator-() const {
  if (small()) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational r = *this;
  r *= Rational(-1);
  return r;
}

inline Rational& Rational::operator+=(const Rational& o) {
  if (small() && o.small()) {
    if (den_ == o.den_) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s) && s != INT64_MIN) {
        if (den_ == 1) {
          num_ = s;
          return *this;
        }
        const auto g = static_cast<std::int64_t>(
            std::gcd(static_cast<std::uint64_t>(s < 0 ? -s : s), static_cast<std::uint64_t>(den_)));
        if (s == 0) {
          num_ = 0;
          den_ = 1;
        } else {
          num_ = s / g;
          den_ /= g;
        }
        return *this;
      }
    }
    assign_reduced128(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
    return *this;
  }
  slow_add(o, false);
  return *this;
}

inline Rational& Rational::operator-=(const Rational& o) {
  if (small() && o.small()) {
    if (den_ == o.den_) {
      std::int64_t s;
      if (!__builtin_sub_overflow(num_, o.num_, &s) && s != INT64_MIN) {
        if (den_ == 1) {
          num_ = s;
          return *this;
        }
        if (s == 0) {
          num_ = 0;
          den_ = 1;
          return *this;
        }
        const auto g = static_cast<std::int64_t>(
            std::gcd(static_cast<std::uint64_t>(s < 0 ? -s : s), static_cast<std::uint64_t>(den_)));
        num_ = s / g;
        den_ /= g;
        return *this;
      }
    }
    assign_reduced128(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
    return *this;
  }
  slow_add(o, true);
  return *this;
}

inline Rational& Rational::operator*=(const Rational& o) {
  if (small() && o.small()) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const auto abs64 = [](std::int64_t v) { return static_cast<std::uint64_t>(v < 0 ? -v : v); };
    const auto g1 = static_cast<std::int64_t>(std::gcd(abs64(num_), static_cast<std::uint64_t>(o.den_)));
    const auto g2 = static_cast<std::int64_t>(std::gcd(abs64(o.num_), static_cast<std::uint64_t>(den_)));
    std::int64_t n;
    std::int64_t d;
    if (!__builtin_mul_overflow(num_ / g1, o.num_ / g2, &n) && !__builtin_mul_overflow(den_ / g2, o.den_ / g1, &d) &&
        n != INT64_MIN) {
      num_ = n;
      den_ = d;
      return *this;
    }
  }
  slow_mul(o, false);
  return *this;
}

inline Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  if (small() && o.small()) {
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    return *this *= inv;
  }
  slow_mul(o, true);
  return *this;
}

inline bool operator==(const Rational& a, const Rational& b) noexcept {
  if (a.small() && b.small()) return a.num_ == b.num_ && a.den_ == b.den_;
  return Rational::slow_compare(a, b) == 0;
}

inline std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  if (a.small() && b.small()) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return Rational::slow_compare(a, b);
}

}  // namespace ldcswitch
