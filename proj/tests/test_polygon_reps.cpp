#include <doctest.h>

#include <cmath>

#include "buildwalk/polygon_reps.hpp"

using namespace buildwalk;

namespace {

template <class F>
bool same(const Mat2<F>& a, const Mat2<F>& b) {
  if constexpr (Field<F>::exact) {
    return (a - b).is_zero();
  } else {
    return (a - b).max_abs() < 1e-12;
  }
}

// ρ(T_s)² = q⁻¹ + (1 − q⁻¹)ρ(T_s) and the braid relation of length m.
template <class F>
void check_relations(int m, const Rational& q, const Rational& r) {
  for (const auto& rho : build_irreps<F>(m, q, r, true)) {
    const Mat2<F> id = Mat2<F>::identity(rho.dim);
    for (int s = 0; s < 2; ++s) {
      const auto& t = s == 0 ? rho.t1 : rho.t2;
      const F qi = Field<F>::from_rational(Rational(1 / (s == 0 ? q : r)));
      Mat2<F> rhs = id * qi;
      rhs += t * F(F(1) - qi);
      CHECK(same(t * t, rhs));
    }
    Mat2<F> left = Mat2<F>::identity(rho.dim);
    Mat2<F> right = Mat2<F>::identity(rho.dim);
    for (int i = 0; i < m; ++i) {
      left = left * (i % 2 == 0 ? rho.t1 : rho.t2);
      right = right * (i % 2 == 0 ? rho.t2 : rho.t1);
    }
    CHECK(same(left, right));
  }
}

}  // namespace

TEST_CASE("irreps satisfy the Hecke relations") {
  check_relations<double>(5, 2, 2);
  check_relations<double>(8, 2, 4);
  check_relations<double>(6, 3, 3);
  check_relations<Surd>(4, 2, 3);
  check_relations<Surd>(6, 2, 8);
  check_relations<Surd>(3, 2, 2);
  check_relations<Surd>(8, 2, 8);
}

TEST_CASE("Feit-Higman orders are enforced") {
  CHECK_THROWS_AS(build_irreps<double>(5, 2, 2), Error);
  try {
    build_irreps<double>(7, 2, 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RejectedByFeitHigman);
  }
  CHECK(build_irreps<double>(6, 2, 2).size() == 6);
}

TEST_CASE("multiplicities of the quadrangle W(2)") {
  const auto table = make_character_table<Surd>(make_dihedral_algebra(4, 2, 2));
  std::vector<Rational> mult;
  Rational total = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    mult.push_back(table.multiplicity(i).as_rational());
    total += mult.back() * table.irreps()[i].dim;
  }
  CHECK(mult == std::vector<Rational>{1, 16, 5, 5, 9});
  CHECK(total == 45);
}

TEST_CASE("character formula matches Hecke powers") {
  for (auto [m, q, r] : {std::tuple{6, 2, 2}, std::tuple{8, 2, 4}, std::tuple{4, 3, 9}, std::tuple{3, 4, 4}}) {
    const auto alg = make_dihedral_algebra(m, q, r);
    const auto table = make_character_table<double>(alg);
    const auto spec = simple_random_walk<double>(alg);
    const auto steps = n_step_sequence(simple_random_walk<Rational>(alg), 12);
    for (int n = 0; n <= 12; ++n) {
      const auto p = pn_characters_all(table, spec, n);
      for (std::size_t w = 0; w < alg->size(); ++w) {
        CHECK(p[w] == doctest::Approx(transition_probability(steps[n], w).get_d()).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("exact characters give rational probabilities") {
  const auto alg = make_dihedral_algebra(6, 2, 8);
  const auto table = make_character_table<Surd>(alg);
  const auto spec = simple_random_walk<Rational>(alg);
  const auto h = n_step(spec, 7);
  const auto p = pn_characters_all(table, spec, 7);
  for (std::size_t w = 0; w < alg->size(); ++w) CHECK(p[w].as_rational() == transition_probability(h, w));
}

TEST_CASE("results do not depend on the split of c c'") {
  const auto alg = make_dihedral_algebra(8, 2, 4);
  const auto spec = simple_random_walk<double>(alg);
  const auto a = make_character_table<double>(alg);
  const auto b = make_character_table<double>(alg, false, {0.5, -3.0, 7.0});
  for (int n : {1, 4, 9}) {
    const auto pa = pn_characters_all(a, spec, n);
    const auto pb = pn_characters_all(b, spec, n);
    for (std::size_t w = 0; w < pa.size(); ++w) CHECK(pa[w] == doctest::Approx(pb[w]).epsilon(1e-10));
    CHECK(tv_upper_bound(a, spec, n) == doctest::Approx(tv_upper_bound(b, spec, n)).epsilon(1e-10));
  }
}

TEST_CASE("quadrangle closed form") {
  const auto c = quadrangle_constants(2, 2);
  CHECK(c.k[0] == 16);
  CHECK(c.k[1] == 5);
  CHECK(c.k[2] == 5);
  CHECK(c.k[3] == 9);
  CHECK(c.lambda1 == Rational(-1, 2));
  CHECK(c.lambda_plus == 0.75);
  CHECK(c.lambda_minus == -0.25);
  CHECK(quadrangle_srw_closed_form(2, 2, 0).p_n_oo == 1.0);
  CHECK(quadrangle_srw_closed_form(2, 2, 1).p_n_oo == 0.0);
  const auto alg = make_dihedral_algebra(4, 2, 3);
  const auto table = make_character_table<double>(alg);
  const auto spec = simple_random_walk<double>(alg);
  for (int n = 0; n <= 15; ++n) {
    const auto v = quadrangle_srw_closed_form(2, 3, n);
    CHECK(v.p_n_oo == doctest::Approx(pn_characters(table, spec, n, 0)).epsilon(1e-12));
    CHECK(v.tv_bound == doctest::Approx(tv_upper_bound(table, spec, n)).epsilon(1e-10));
  }
}

TEST_CASE("inner products from the definition and the closed form") {
  const auto fh = feit_higman_check(4, 2, 2);
  CHECK(fh.admissible);
  CHECK(fh.exact);
  REQUIRE(fh.inner_products.size() == 1);
  CHECK(fh.inner_products[0].from_definition == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(fh.inner_products[0].closed_form == doctest::Approx(10.0).epsilon(1e-12));
  for (int m : {5, 7, 9, 12}) {
    const auto report = feit_higman_check(m, 3, 3);
    for (const auto& e : report.inner_products) CHECK(e.from_definition == doctest::Approx(e.closed_form).epsilon(1e-10));
  }
  CHECK_FALSE(feit_higman_check(5, 2, 2).admissible);
  CHECK(feit_higman_closed_form<Surd>(4, 2, 2, 1) == Surd(10));
}

TEST_CASE("parameter constraints") {
  auto all = [](int m, int q, int r) {
    for (const auto& c : parameter_constraints(m, q, r)) {
      if (!c.passed) return false;
    }
    return true;
  };
  CHECK_FALSE(all(3, 6, 6));
  CHECK_FALSE(all(6, 2, 3));
  CHECK(all(3, 2, 2));
  CHECK(all(4, 2, 4));
  CHECK(all(8, 2, 4));
}

TEST_CASE("rational recognition") {
  CHECK(*recognise_rational(1.0 / 3.0, 100) == Rational(1, 3));
  CHECK(*recognise_rational(-22.0 / 7.0, 100) == Rational(-22, 7));
  CHECK_FALSE(recognise_rational(std::sqrt(2.0), 1000).has_value());
}

TEST_CASE("A2 chamber spectral radius") {
  CHECK(a2_chamber_spectral_radius(2.0) == doctest::Approx((3.0 + std::sqrt(73.0)) / 12.0));
  CHECK(a2_chamber_spectral_radius(2.0) < 1.0);
}
