#include <doctest.h>

#include <sstream>

#include "buildwalk/building_models.hpp"
#include "buildwalk/rng.hpp"

using namespace buildwalk;

namespace {

const ChamberSet& fano() {
  static const ChamberSet cs(build_model(ModelKind::ProjectivePlane, 2, 2));
  return cs;
}

const ChamberSet& w2() {
  static const ChamberSet cs(build_model(ModelKind::SymplecticQuadrangle, 2, 2));
  return cs;
}

}  // namespace

TEST_CASE("model sizes") {
  const auto pg2 = build_model(ModelKind::ProjectivePlane, 2, 2);
  CHECK(pg2.point_count() == 7);
  CHECK(pg2.line_count() == 7);
  CHECK(pg2.incident.size() == 21);
  const auto wq = build_model(ModelKind::SymplecticQuadrangle, 2, 2);
  CHECK(wq.point_count() == 15);
  CHECK(wq.line_count() == 15);
  CHECK(wq.incident.size() == 45);
  CHECK(build_model(ModelKind::CompleteBipartite, 1, 1).incident.size() == 4);
  CHECK(build_model(ModelKind::ProjectivePlane, 3, 3).incident.size() == 52);
  CHECK(build_model(ModelKind::SymplecticQuadrangle, 3, 3).incident.size() == 160);
}

TEST_CASE("unsupported models") {
  CHECK_THROWS_AS(build_model(ModelKind::ProjectivePlane, 4, 4), Error);
  CHECK_THROWS_AS(build_model(ModelKind::SymplecticQuadrangle, 5, 5), Error);
  CHECK_THROWS_AS(build_model(ModelKind::CompleteBipartite, 0, 2), Error);
  CHECK_THROWS_AS(parse_model_kind("hexagon"), Error);
  CHECK(parse_model_kind("projective-plane") == ModelKind::ProjectivePlane);
}

TEST_CASE("geometry and chamber audits") {
  for (auto [kind, q, r] : {std::tuple{ModelKind::CompleteBipartite, 1, 1}, std::tuple{ModelKind::CompleteBipartite, 2, 3},
                            std::tuple{ModelKind::ProjectivePlane, 2, 2}, std::tuple{ModelKind::ProjectivePlane, 5, 5},
                            std::tuple{ModelKind::SymplecticQuadrangle, 2, 2},
                            std::tuple{ModelKind::SymplecticQuadrangle, 3, 3}}) {
    const auto model = build_model(kind, q, r);
    const auto geo = audit_geometry(model);
    CHECK(geo.passed);
    CHECK(geo.diameter == model.m);
    CHECK(geo.girth == 2 * model.m);
    CHECK(audit_chamber_set(ChamberSet(model)).passed());
  }
}

TEST_CASE("a broken incidence structure is rejected") {
  auto model = build_model(ModelKind::ProjectivePlane, 2, 2);
  model.incident.pop_back();
  CHECK_FALSE(audit_geometry(model).passed);
  model.m = 4;
  try {
    ChamberSet cs(model);
    FAIL("expected not-a-building");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotABuilding);
  }
}

TEST_CASE("sphere census") {
  const auto& cs = w2();
  std::vector<std::size_t> sizes;
  for (std::size_t w = 0; w < cs.system().size(); ++w) sizes.push_back(cs.sphere(3, w).size());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 4, 4, 8, 8, 16});
  CHECK(fano().sphere(0, fano().system().longest()).size() == 8);
  for (std::size_t x = 0; x < cs.size(); ++x) CHECK(cs.delta(x, x) == 0);
}

TEST_CASE("exact evolution") {
  const auto& cs = w2();
  const auto spec = simple_random_walk<Rational>(cs.algebra());
  const auto mu0 = exact_evolution(cs, spec, 0, 5);
  CHECK(mu0[5] == 1);
  const auto mu1 = exact_evolution(cs, spec, 1, 5);
  for (std::size_t y = 0; y < cs.size(); ++y) {
    const bool neighbour = cs.system().length(cs.delta(5, y)) == 1;
    CHECK(mu1[y] == (neighbour ? Rational(1, 4) : Rational(0)));
  }
  for (int n : {2, 7}) {
    Rational total = 0;
    for (const auto& v : exact_evolution(cs, spec, n)) total += v;
    CHECK(total == 1);
  }
  CHECK(is_stationary(cs, spec));
  CHECK(is_stationary(cs, uniform_walk<Rational>(cs.algebra())));
  CHECK(exact_tv(cs, spec, 0) == Rational(44, 45));
  CHECK(exact_tv(cs, spec, 40) < Rational(1, 10000));
}

TEST_CASE("aperiodicity witness") {
  for (const ChamberSet* cs : {&fano(), &w2()}) {
    const auto spec = simple_random_walk<Rational>(cs->algebra());
    bool even = false;
    bool odd = false;
    for (int n = 1; n <= 2 * cs->model().m; ++n) {
      if (exact_evolution(*cs, spec, n)[0] > 0) (n % 2 ? odd : even) = true;
    }
    CHECK(even);
    CHECK(odd);
  }
}

TEST_CASE("walks over another algebra are rejected") {
  const auto spec = simple_random_walk<Rational>(make_dihedral_algebra(4, 2, 3));
  CHECK_THROWS_AS(exact_evolution(w2(), spec, 1), Error);
}

TEST_CASE("intersection numbers") {
  const auto& cs = fano();
  const auto s1 = cs.system().right_mul(0, 0);
  for (std::size_t x = 0; x < cs.size(); ++x) {
    for (std::size_t y = 0; y < cs.size(); ++y) {
      if (x == y) CHECK(intersection_count(cs, 0, 0, x, y) == 1);
      if (cs.delta(x, y) == s1) CHECK(intersection_count(cs, s1, s1, x, y) == 1);
    }
  }
  const auto table = intersection_table(cs);
  CHECK(product_formula_constant(cs, table, s1, s1, s1) == Rational(1, 2));
}

TEST_CASE("simulation") {
  const auto& cs = fano();
  const auto spec = simple_random_walk<double>(cs.algebra());
  const auto a = simulate(cs, spec, 5, 20000, 99, 0, 1);
  const auto b = simulate(cs, spec, 5, 20000, 99, 0, 3);
  CHECK(a.counts == b.counts);
  const auto c = simulate(cs, spec, 5, 20000, 100, 0, 1);
  CHECK(a.counts != c.counts);
  std::uint64_t total = 0;
  for (auto v : a.counts) total += v;
  CHECK(total == 20000);
  const auto stay = simulate(cs, WalkSpec<double>(cs.algebra(), {{0, 1.0}}), 7, 100, 1, 4);
  CHECK(stay.counts[4] == 100);
}

TEST_CASE("rng streams") {
  auto a = SplitMix64::for_stream(1, 0);
  auto b = SplitMix64::for_stream(1, 0);
  auto c = SplitMix64::for_stream(1, 1);
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
  SplitMix64 g(0);
  CHECK(g.next() == 0xE220A8397B1DCDAFULL);
  std::vector<int> hist(5, 0);
  for (int i = 0; i < 50000; ++i) ++hist[g.below(5)];
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  const double u = g.uniform();
  CHECK((u >= 0.0 && u < 1.0));
}

TEST_CASE("dumps") {
  const auto j = to_json(fano().model());
  CHECK(j["points"].size() == 7);
  CHECK(j["flags"].size() == 21);
  std::ostringstream csv;
  const auto spec = simple_random_walk<Rational>(fano().algebra());
  write_distribution_csv(csv, fano(), exact_evolution(fano(), spec, 1));
  const std::string text = csv.str();
  CHECK(text.rfind("chamber_id,point,line,probability,weyl_word\n0,", 0) == 0);
  CHECK(text.find(",0.25,s") != std::string::npos);
}
