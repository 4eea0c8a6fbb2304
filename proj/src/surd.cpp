#include "buildwalk/surd.hpp"

#include <cmath>

#include "buildwalk/error.hpp"

namespace buildwalk {

namespace {

// Sign of u + v√2.
int sign_sqrt2(const Rational& u, const Rational& v) {
  const int su = sgn(u);
  const int sv = sgn(v);
  if (su >= 0 && sv >= 0) return (su == 0 && sv == 0) ? 0 : 1;
  if (su <= 0 && sv <= 0) return -1;
  const int d = sgn(Rational(u * u - 2 * v * v));
  return su > 0 ? d : -d;
}

bool is_square(const mpz_class& n, mpz_class& root) {
  if (sgn(n) < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

}  // namespace

Rational Surd::as_rational() const {
  if (!is_rational()) throw Error(ErrorKind::InvalidInput, "value " + to_string() + " is irrational");
  return a_;
}

double Surd::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(2.0) + c_.get_d() * std::sqrt(3.0) + d_.get_d() * std::sqrt(6.0);
}

int Surd::sign() const {
  // Write the value as X + Y√3 with X = a + b√2, Y = c + d√2.
  const int sx = sign_sqrt2(a_, b_);
  const int sy = sign_sqrt2(c_, d_);
  if (sx >= 0 && sy >= 0) return (sx == 0 && sy == 0) ? 0 : 1;
  if (sx <= 0 && sy <= 0) return -1;
  // X² − 3Y² = (a² + 2b² − 3c² − 6d²) + (2ab − 6cd)√2
  const Rational u = a_ * a_ + 2 * b_ * b_ - 3 * c_ * c_ - 6 * d_ * d_;
  const Rational v = 2 * a_ * b_ - 6 * c_ * d_;
  const int d = sign_sqrt2(u, v);
  return sx > 0 ? d : -d;
}

Surd& Surd::operator+=(const Surd& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  Rational a = a_ * o.a_ + 2 * b_ * o.b_ + 3 * c_ * o.c_ + 6 * d_ * o.d_;
  Rational b = a_ * o.b_ + b_ * o.a_ + 3 * c_ * o.d_ + 3 * d_ * o.c_;
  Rational c = a_ * o.c_ + c_ * o.a_ + 2 * b_ * o.d_ + 2 * d_ * o.b_;
  Rational d = a_ * o.d_ + d_ * o.a_ + b_ * o.c_ + c_ * o.b_;
  a_ = std::move(a);
  b_ = std::move(b);
  c_ = std::move(c);
  d_ = std::move(d);
  return *this;
}

Surd Surd::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero in ℚ(√2,√3)");
  // x·(X − Y√3) = X² − 3Y² = u + v√2, then (u + v√2)(u − v√2) = u² − 2v².
  const Surd conj3(a_, b_, -c_, -d_);
  const Rational u = a_ * a_ + 2 * b_ * b_ - 3 * c_ * c_ - 6 * d_ * d_;
  const Rational v = 2 * a_ * b_ - 6 * c_ * d_;
  const Rational norm = u * u - 2 * v * v;
  Surd out = conj3 * Surd(u, -v, 0, 0);
  out *= Surd(Rational(1 / norm));
  return out;
}

Surd& Surd::operator/=(const Surd& o) { return *this *= o.inverse(); }

std::string Surd::to_string() const {
  std::string out = buildwalk::to_string(a_);
  auto term = [&](const Rational& x, const char* root) {
    if (sgn(x) == 0) return;
    out += (sgn(x) > 0 ? " + " : " - ");
    out += buildwalk::to_string(Rational(abs(x)));
    out += root;
  };
  term(b_, "√2");
  term(c_, "√3");
  term(d_, "√6");
  return out;
}

std::optional<Surd> sqrt_of_rational(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (sgn(x) == 0) return Surd(0);
  // √(n/d) = √(nd)/d, and √(nd) = s√k for k squarefree in {1,2,3,6}.
  const mpz_class nd = x.get_num() * x.get_den();
  const Rational inv_den(mpz_class(1), x.get_den());
  for (int k : {1, 2, 3, 6}) {
    if (nd % k != 0) continue;
    mpz_class root;
    if (!is_square(nd / k, root)) continue;
    const Rational coeff = Rational(root) * inv_den;
    switch (k) {
      case 1: return Surd(coeff, 0, 0, 0);
      case 2: return Surd(0, coeff, 0, 0);
      case 3: return Surd(0, 0, coeff, 0);
      default: return Surd(0, 0, 0, coeff);
    }
  }
  return std::nullopt;
}

std::optional<Surd> cos_two_pi(int j, int m) {
  if (m <= 0) throw Error(ErrorKind::InvalidInput, "cos_two_pi needs m > 0");
  if ((24L * j) % m != 0) return std::nullopt;
  long k = ((24L * j) / m) % 24;
  if (k < 0) k += 24;
  // cos(15k°); fold into [0°, 180°] then use cos(180° − x) = −cos x.
  if (k > 12) k = 24 - k;
  int sign = 1;
  if (k > 6) {
    k = 12 - k;
    sign = -1;
  }
  const Rational quarter(1, 4);
  const Rational half(1, 2);
  Surd value;
  switch (k) {
    case 0: value = Surd(1); break;
    case 1: value = Surd(0, quarter, 0, quarter); break;
    case 2: value = Surd(0, 0, half, 0); break;
    case 3: value = Surd(0, half, 0, 0); break;
    case 4: value = Surd(half); break;
    case 5: value = Surd(0, -quarter, 0, quarter); break;
    default: value = Surd(0); break;
  }
  return sign > 0 ? value : -value;
}

}  // namespace buildwalk
