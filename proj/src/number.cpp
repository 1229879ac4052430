#include "ctp/number.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace ctp {

namespace {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.front() == '+') s.erase(0, 1);
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) {
      throw std::invalid_argument("mixed decimal and fraction: " + s);
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t scale = s.size() - dot - 1;
    if (digits.empty() || digits == "-") {
      throw std::invalid_argument("malformed decimal: " + s);
    }
    std::string den = "1" + std::string(scale, '0');
    mpq_class q;
    if (q.set_str(digits + "/" + den, 10) != 0) {
      throw std::invalid_argument("malformed decimal: " + s);
    }
    q.canonicalize();
    return q;
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed number: " + s);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string render_rational(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

Number::Number(mpq_class rational) : a_(std::move(rational)) { a_.canonicalize(); }

Number::Number(mpq_class rational, mpq_class surd)
    : a_(std::move(rational)), b_(std::move(surd)) {
  a_.canonicalize();
  b_.canonicalize();
}

Number Number::fraction(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Number(q);
}

Number Number::sqrt_radicand() { return Number(mpq_class(0), mpq_class(1)); }

Number Number::golden17() { return Number(mpq_class(3, 2), mpq_class(1, 2)); }

Number Number::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  auto root = s.find("sqrt");
  if (root == std::string::npos) return Number(parse_rational(s));

  std::string tail = s.substr(root);
  if (tail != "sqrt(17)" && tail != "sqrt17") {
    throw std::invalid_argument("only sqrt(17) surds are supported: " +
                                std::string(text));
  }
  std::string head = s.substr(0, root);
  mpq_class coef(1);
  mpq_class rational(0);
  if (!head.empty() && head.back() == '*') head.pop_back();
  // Split "r+c" / "r-c" at the last sign that is not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  std::string coef_text = head;
  if (split != std::string::npos) {
    rational = parse_rational(head.substr(0, split));
    coef_text = head.substr(split);
  }
  if (coef_text.empty() || coef_text == "+") {
    coef = 1;
  } else if (coef_text == "-") {
    coef = -1;
  } else {
    coef = parse_rational(coef_text);
  }
  return Number(rational, coef);
}

int Number::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  mpq_class lhs = a_ * a_;
  mpq_class rhs = b_ * b_ * kRadicand;
  return lhs > rhs ? sa : sb;
}

Number& Number::operator+=(const Number& rhs) {
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

Number& Number::operator-=(const Number& rhs) {
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

Number& Number::operator*=(const Number& rhs) {
  if (is_rational() && rhs.is_rational()) {
    a_ *= rhs.a_;
    return *this;
  }
  mpq_class a = a_ * rhs.a_ + b_ * rhs.b_ * kRadicand;
  mpq_class b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Number& Number::operator/=(const Number& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  if (rhs.is_rational()) {
    a_ /= rhs.a_;
    b_ /= rhs.a_;
    return *this;
  }
  // Multiply by the conjugate: 1 / (c + d r) = (c - d r) / (c^2 - 17 d^2).
  mpq_class norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * kRadicand;
  Number conj(mpq_class(rhs.a_ / norm), mpq_class(-rhs.b_ / norm));
  return *this *= conj;
}

Number Number::operator-() const { return Number(mpq_class(-a_), mpq_class(-b_)); }

std::strong_ordering operator<=>(const Number& lhs, const Number& rhs) {
  if (lhs.is_rational() && rhs.is_rational()) {
    int c = cmp(lhs.a_, rhs.a_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }
  int s = (lhs - rhs).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

double Number::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(kRadicand));
}

std::string Number::to_string() const {
  if (is_rational()) return render_rational(a_);
  std::string out;
  if (sgn(a_) != 0) out = render_rational(a_);
  if (sgn(b_) > 0 && !out.empty()) out += "+";
  out += render_rational(b_) + "*sqrt(17)";
  return out;
}

std::string Number::to_decimal(int digits) const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, to_double());
  return buf;
}

std::size_t Number::hash() const {
  std::hash<std::string> h;
  std::size_t seed = h(a_.get_str());
  if (!is_rational()) seed ^= h(b_.get_str()) + 0x9e3779b97f4a7c15ULL + (seed << 6);
  return seed;
}

std::ostream& operator<<(std::ostream& os, const Number& n) {
  return os << n.to_string();
}

}  // namespace ctp
