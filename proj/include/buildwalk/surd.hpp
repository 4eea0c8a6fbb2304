#pragma once

#include <optional>
#include <string>

#include "buildwalk/scalar.hpp"

namespace buildwalk {

/// Element a + b√2 + c√3 + d√6 of the field ℚ(√2, √3).
class Surd {
 public:
  Surd() = default;
  Surd(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Surd(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    for (Rational* x : {&a_, &b_, &c_, &d_}) x->canonicalize();
  }

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& sqrt2_part() const noexcept { return b_; }
  const Rational& sqrt3_part() const noexcept { return c_; }
  const Rational& sqrt6_part() const noexcept { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && is_rational(); }
  bool is_rational() const { return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  /// Throws unless is_rational().
  Rational as_rational() const;
  double to_double() const;
  int sign() const;

  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);
  Surd operator-() const { return Surd(-a_, -b_, -c_, -d_); }
  Surd inverse() const;

  friend Surd operator+(Surd x, const Surd& y) { return x += y; }
  friend Surd operator-(Surd x, const Surd& y) { return x -= y; }
  friend Surd operator*(Surd x, const Surd& y) { return x *= y; }
  friend Surd operator/(Surd x, const Surd& y) { return x /= y; }
  bool operator==(const Surd& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_; }

  std::string to_string() const;

 private:
  Rational a_ = 0, b_ = 0, c_ = 0, d_ = 0;
};

/// √x inside ℚ(√2, √3), if it lies there. x ≥ 0.
std::optional<Surd> sqrt_of_rational(const Rational& x);

/// cos(2πj/m) when the angle is a multiple of 15°.
std::optional<Surd> cos_two_pi(int j, int m);

}  // namespace buildwalk
