#include "buildwalk/scalar.hpp"

#include <charconv>
#include <cmath>

#include "buildwalk/error.hpp"

namespace buildwalk {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty rational");
  Rational x;
  if (x.set_str(s, 10) != 0) throw Error(ErrorKind::InvalidInput, "not a rational: '" + s + "'");
  if (x.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator: '" + s + "'");
  x.canonicalize();
  return x;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string format_decimal(double x, int significant) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

}  // namespace buildwalk
