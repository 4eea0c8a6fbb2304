#include <doctest.h>

#include <random>
#include <sstream>

#include "buildwalk/hecke.hpp"

using namespace buildwalk;

namespace {

using H = HeckeElement<Rational>;

H random_element(const HeckeAlgebraPtr& alg, std::mt19937& gen) {
  H h(alg);
  for (int i = 0; i < 4; ++i) {
    Rational c(static_cast<long>(gen() % 7) - 3, 1 + gen() % 4);
    c.canonicalize();
    h.add(gen() % alg->size(), c);
  }
  return h;
}

}  // namespace

TEST_CASE("quadratic relation") {
  const auto alg = make_dihedral_algebra(4, 2, 3);
  for (Generator s = 0; s < 2; ++s) {
    const auto ts = H::basis(alg, alg->system().right_mul(0, s));
    H expected = H::identity(alg) * Rational(1, s == 0 ? 2 : 3);
    expected.add(ts.terms().begin()->first, Rational(1) - Rational(1, s == 0 ? 2 : 3));
    CHECK(mul(ts, ts) == expected);
  }
}

TEST_CASE("associativity and the anti-involution") {
  const auto alg = make_hecke_algebra(diagrams::B(3), {Rational(2), Rational(2), Rational(3)});
  std::mt19937 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const H a = random_element(alg, gen);
    const H b = random_element(alg, gen);
    const H c = random_element(alg, gen);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(star(mul(a, b)) == mul(star(b), star(a)));
  }
}

TEST_CASE("structure constants at the identity") {
  const auto alg = make_dihedral_algebra(3, 2, 2);
  const auto& sys = alg->system();
  for (std::size_t u = 0; u < sys.size(); ++u) {
    for (std::size_t v = 0; v < sys.size(); ++v) {
      const Rational expected = v == sys.inverse(u) ? Rational(1) / alg->qw(u) : Rational(0);
      CHECK(structure_constant(alg, u, v, 0) == expected);
    }
  }
}

TEST_CASE("walk powers stay stochastic") {
  const auto alg = make_dihedral_algebra(6, 2, 2);
  const auto spec = simple_random_walk<Rational>(alg);
  for (const auto& h : n_step_sequence(spec, 12)) CHECK(h.coefficient_sum() == 1);
  const auto uni = uniform_walk<Rational>(alg);
  CHECK(n_step(uni, 5).coefficient_sum() == 1);
}

TEST_CASE("simple walk one step") {
  const auto alg = make_dihedral_algebra(4, 2, 2);
  const auto h = n_step(simple_random_walk<Rational>(alg), 1);
  const std::size_t s1 = alg->system().right_mul(0, 0);
  CHECK(h.coeff(s1) == Rational(1, 2));
  CHECK(transition_probability(h, s1) == Rational(1, 4));
}

TEST_CASE("float and rational powers agree") {
  const auto alg = make_dihedral_algebra(8, 2, 4);
  const auto exact = n_step(simple_random_walk<Rational>(alg), 9);
  const auto approx = n_step(simple_random_walk<double>(alg), 9);
  for (std::size_t w = 0; w < alg->size(); ++w) CHECK(approx.coeff(w) == doctest::Approx(exact.coeff(w).get_d()).epsilon(1e-12));
}

TEST_CASE("walk validation") {
  const auto alg = make_dihedral_algebra(3, 2, 2);
  CHECK_THROWS_AS(WalkSpec<Rational>(alg, {{0, Rational(1, 2)}}), Error);
  CHECK_THROWS_AS(WalkSpec<Rational>(alg, {{0, Rational(3, 2)}, {1, Rational(-1, 2)}}), Error);
  try {
    WalkSpec<Rational>(alg, {{0, Rational(1, 2)}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidWalk);
  }
  const auto spec = WalkSpec<Rational>::from_words(alg, {{{0}, Rational(1, 2)}, {{1, 0}, Rational(1, 2)}});
  CHECK(spec.coefficients().size() == 2);
}

TEST_CASE("JSON round trip and CSV") {
  const auto alg = make_dihedral_algebra(3, 2, 2);
  const auto h = n_step(simple_random_walk<Rational>(alg), 3);
  CHECK(hecke_from_json(alg, to_json(h)) == h);
  std::ostringstream csv;
  write_n_step_csv(csv, n_step_sequence(simple_random_walk<Rational>(alg), 2));
  CHECK(csv.str().rfind("n,word,a_w,p_w\n0,e,1,1\n", 0) == 0);
}
