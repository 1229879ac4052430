#ifndef CTP_NUMBER_HPP_
#define CTP_NUMBER_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ctp {

/// Exact element `a + b*sqrt(17)` of the ordered field Q(sqrt 17).
///
/// Every cost, ratio and probability in the library is a Number. Ordinary
/// instances only ever populate the rational part; the surd part exists so
/// that the k = 2 error-one constructions, whose costs involve
/// (3 + sqrt 17) / 2, can be compared and summed without rounding.
class Number {
 public:
  static constexpr long kRadicand = 17;

  Number() = default;
  Number(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  Number(int value) : a_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Number(mpq_class rational);
  Number(mpq_class rational, mpq_class surd);

  static Number fraction(long num, long den);
  static Number sqrt_radicand();
  /// (3 + sqrt 17) / 2, the optimal deterministic error-one ratio for k = 2.
  static Number golden17();

  /// Accepts "p", "p/q", decimals such as "0.25", and surd forms
  /// "p/q+r/s*sqrt(17)" (or "sqrt17"). Throws std::invalid_argument.
  static Number parse(std::string_view text);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& surd_part() const { return b_; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  int sign() const;

  Number& operator+=(const Number& rhs);
  Number& operator-=(const Number& rhs);
  Number& operator*=(const Number& rhs);
  Number& operator/=(const Number& rhs);
  Number operator-() const;

  friend Number operator+(Number lhs, const Number& rhs) { return lhs += rhs; }
  friend Number operator-(Number lhs, const Number& rhs) { return lhs -= rhs; }
  friend Number operator*(Number lhs, const Number& rhs) { return lhs *= rhs; }
  friend Number operator/(Number lhs, const Number& rhs) { return lhs /= rhs; }

  friend bool operator==(const Number& lhs, const Number& rhs) {
    return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
  }
  friend std::strong_ordering operator<=>(const Number& lhs,
                                          const Number& rhs);

  double to_double() const;
  /// Exact rendering: "p/q" for rationals (denominator always printed),
  /// "p/q+r/s*sqrt(17)" otherwise.
  std::string to_string() const;
  /// Decimal rendering with `digits` significant digits.
  std::string to_decimal(int digits = 12) const;

  std::size_t hash() const;

 private:
  mpq_class a_{0};
  mpq_class b_{0};
};

std::ostream& operator<<(std::ostream& os, const Number& n);

inline Number min(const Number& x, const Number& y) { return y < x ? y : x; }
inline Number max(const Number& x, const Number& y) { return x < y ? y : x; }

struct NumberHash {
  std::size_t operator()(const Number& n) const { return n.hash(); }
};

}  // namespace ctp

#endif  // CTP_NUMBER_HPP_
