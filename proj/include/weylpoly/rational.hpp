#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace weylpoly {

/// Raised on malformed user input (bad CLI arguments, bad wire data,
/// preconditions violated by a caller). Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on invalid configuration (non-finite Cartan data, degenerate Gram
/// form, irregular base point). Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal certificate check fails, i.e. when a computation
/// contradicts an invariant that provably holds. Must never fire; maps to
/// exit code 3.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

/// Arbitrary-precision rational scalar. Always canonical: reduced fraction,
/// positive denominator, so structural equality is mathematical equality.
class Rational {
 public:
  static_assert(sizeof(long) == 8, "64-bit long assumed for GMP interop");

  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}             // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(n) {}            // NOLINT
  Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT
  Rational(const mpz_class& n) : v_(n) {}  // NOLINT
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw UsageError("Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw UsageError("Rational: zero denominator");
    v_.canonicalize();
  }

  /// Parses the wire format "p/q" or "p" (q > 0 after reduction).
  static Rational parse(std::string_view s) {
    if (s.empty()) throw UsageError("Rational: empty string");
    const auto slash = s.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(mpz_class(std::string(s)));
      }
      mpz_class num{std::string(s.substr(0, slash))};
      mpz_class den{std::string(s.substr(slash + 1))};
      if (den == 0) throw UsageError("Rational: zero denominator in '" + std::string(s) + "'");
      return Rational(num, den);
    } catch (const std::invalid_argument&) {
      throw UsageError("Rational: cannot parse '" + std::string(s) + "'");
    }
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  /// Largest integer <= value.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw UsageError("Rational: division by zero");
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

  /// Wire format: "p/q", or "p" for integers.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  double to_double() const { return v_.get_d(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace weylpoly
