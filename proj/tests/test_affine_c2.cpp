#include <doctest.h>

#include <cmath>

#include "buildwalk/affine_c2.hpp"

using namespace buildwalk;

namespace {

using D = LatticeDistribution<Rational>;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("sphere sizes") {
  const C2Params p(2, 2);
  CHECK(vertex_count(p, 0, 0) == 1);
  CHECK(vertex_count(p, 1, 0) == 30);
  CHECK(vertex_count(p, 0, 1) == 15);
  const C2Params p23(2, 3);
  CHECK(vertex_count(p23, 1, 0) == 2 * 4 * 7);
  CHECK(vertex_count(p23, 0, 1) == 3 * 7);
  CHECK(vertex_count_float(p23, 2, 3) == doctest::Approx(vertex_count(p23, 2, 3).get_d()));
}

TEST_CASE("parameter validation") {
  CHECK(kind_of([] { C2Params(1, 2); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { exact_n_step(C2Params(2, 2), D::point(2, 0), 3); }) == ErrorKind::InvalidInput);
}

TEST_CASE("every row preserves the normaliser") {
  for (const auto& e : RecursionTable::standard().audit()) {
    INFO(e.name);
    CHECK(e.passed);
  }
}

TEST_CASE("row selection covers the quadrant exactly once") {
  const auto& t = RecursionTable::standard();
  for (auto g : {C2Generator::A10, C2Generator::A01}) {
    for (int m = 0; m < 5; ++m) {
      for (int n = 0; n < 5; ++n) CHECK_NOTHROW(t.select(g, m, n));
    }
  }
  CHECK(t.select(C2Generator::A10, 0, 1).reconstructed);
}

TEST_CASE("generators commute and products associate") {
  for (auto [q, r] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{5, 3}}) {
    const C2Params p(q, r);
    for (int m = 0; m <= 3; ++m) {
      for (int n = 0; n <= 4; ++n) {
        const D a = D::point(m, n);
        CAPTURE(m);
        CAPTURE(n);
        CHECK(right_mul_generator(p, right_mul_generator(p, a, C2Generator::A10), C2Generator::A01) ==
              right_mul_generator(p, right_mul_generator(p, a, C2Generator::A01), C2Generator::A10));
      }
    }
  }
}

TEST_CASE("powers stay stochastic") {
  const C2Params p(3, 2);
  D walk;
  walk.add(0, 0, Rational(1, 4));
  walk.add(1, 0, Rational(1, 4));
  walk.add(0, 1, Rational(1, 2));
  for (int n : {0, 1, 5, 12}) CHECK(exact_n_step(p, walk, n).total() == 1);
}

TEST_CASE("series and single powers agree") {
  const C2Params p(2, 2);
  const std::vector<LatticePoint> targets{{0, 0}, {1, 0}, {0, 2}, {1, 1}};
  const auto series = exact_n_step_series(p, simple_vertex_walk<Rational>(), 10, targets);
  for (int n = 0; n <= 10; ++n) {
    const auto h = exact_n_step(p, simple_vertex_walk<Rational>(), n);
    for (std::size_t t = 0; t < targets.size(); ++t) CHECK(series[n][t] == h.at(targets[t].first, targets[t].second));
  }
}

TEST_CASE("two-step return probability") {
  // From a special vertex the simple walk returns after two steps with
  // probability 1/N01.
  const C2Params p(2, 2);
  CHECK(exact_n_step(p, simple_vertex_walk<Rational>(), 2).at(0, 0) == Rational(1, 15));
}

TEST_CASE("spherical functions") {
  const C2Params p(2, 3);
  const TorusPoint t{0.7, 1.9};
  CHECK(std::abs(spherical_function(p, 0, 0, t) - 1.0) < 1e-12);
  const auto [u, v] = uv_from_z(p, t.t1(), t.t2());
  CHECK(std::abs(spherical_function(p, 1, 0, t) - u) < 1e-12);
  CHECK(std::abs(spherical_function(p, 0, 1, t) - v) < 1e-12);
  const Complex z1(1.3, 0.2);
  const Complex z2(0.4, -0.9);
  const auto [u2, v2] = uv_from_z(p, z1, z2);
  CHECK(std::abs(spherical_function(p, 1, 0, z1, z2) - u2) < 1e-10);
  CHECK(std::abs(spherical_function(p, 0, 1, z1, z2) - v2) < 1e-10);
  CHECK(signed_permutations(z1, z2).size() == 8);
}

TEST_CASE("singular points") {
  const C2Params p(2, 2);
  CHECK(kind_of([&] { c_func(p, Complex(1, 0), Complex(0, 1)); }) == ErrorKind::SingularPoint);
  CHECK(kind_of([&] { c_func(p, Complex(0, 1), Complex(0, 1)); }) == ErrorKind::SingularPoint);
  CHECK(kind_of([] { QuadratureGrid(64, 64, 0.0, 0.0); }) == ErrorKind::SingularPoint);
  CHECK_NOTHROW(QuadratureGrid(64, 64));
}

TEST_CASE("Plancherel orthogonality and inversion") {
  const C2Params p(3, 2);
  const QuadratureGrid grid(120, 120);
  CHECK(orthogonality_check(p, grid, 2) < 1e-9);
  const std::vector<LatticePoint> targets{{0, 0}, {0, 1}, {1, 0}, {0, 2}};
  const auto walk = simple_vertex_walk<double>();
  const auto spectral = pn_spectral_table(p, walk, 8, targets, grid);
  const auto exact = exact_n_step_series(p, walk, 8, targets);
  for (int n = 0; n <= 8; ++n) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const double pe = exact[n][t] / vertex_count_float(p, targets[t].first, targets[t].second);
      CHECK(std::abs(spectral[n][t].value - pe) < 1e-9);
      CHECK(spectral[n][t].max_imaginary < 1e-12);
    }
  }
  const auto single = pn_spectral(p, walk, 6, {0, 2}, grid);
  CHECK(single.value == doctest::Approx(spectral[6][3].value).epsilon(1e-14));
}

TEST_CASE("local limit constants") {
  const auto llt = srw_llt_asymptote(C2Params(2, 2), 100);
  CHECK(llt.rho == doctest::Approx(8.0 * std::sqrt(2.0) / 15.0).epsilon(1e-14));
  CHECK(llt.leading_constant == doctest::Approx(4.0 * llt.displayed_constant));
  CHECK(llt.leading_constant == doctest::Approx(17280.0 / (4.0 * std::atan(1.0))).epsilon(1e-12));
}
