#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "buildwalk/affine_c2.hpp"
#include "buildwalk/building_models.hpp"
#include "buildwalk/hecke.hpp"
#include "buildwalk/polygon_reps.hpp"

using namespace buildwalk;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int criterion, bool passed, const std::string& detail) {
  std::printf("[criterion %d] %s  %s\n", criterion, passed ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  CHECK(passed);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const ChamberSet& fano() {
  static const ChamberSet cs(build_model(ModelKind::ProjectivePlane, 2, 2));
  return cs;
}

const ChamberSet& quadrangle() {
  static const ChamberSet cs(build_model(ModelKind::SymplecticQuadrangle, 2, 2));
  return cs;
}

}  // namespace

TEST_CASE("criterion 1") {
  Stopwatch clock;
  bool exact_ok = true;
  double worst = 0.0;
  for (const ChamberSet* cs : {&fano(), &quadrangle()}) {
    const auto& alg = cs->algebra();
    const auto spec = simple_random_walk<Rational>(alg);
    const auto spec_float = simple_random_walk<double>(alg);
    const auto table = make_character_table<double>(alg);
    const auto hecke = n_step_sequence(spec, 20);
    for (std::size_t start : {std::size_t{0}, cs->size() - 1}) {
      std::vector<Rational> mu(cs->size(), Rational(0));
      mu[start] = 1;
      for (int n = 0; n <= 20; ++n) {
        if (n > 0) mu = step_distribution(*cs, spec, mu);
        const auto chars = pn_characters_all(table, spec_float, n);
        for (std::size_t y = 0; y < cs->size(); ++y) {
          const std::size_t w = cs->delta(start, y);
          const Rational p = transition_probability(hecke[n], w);
          if (mu[y] != p) exact_ok = false;
          worst = std::max(worst, std::abs(chars[w] - p.get_d()));
        }
      }
    }
  }
  const double t = clock.seconds();
  report(1, exact_ok && worst < 1e-10 && t < 10.0,
         "hecke = model exactly: " + std::string(exact_ok ? "yes" : "no") + ", max |characters - exact| = " + fmt(worst) +
             ", " + fmt(t) + " s");
}

TEST_CASE("criterion 2") {
  const auto& cs = quadrangle();
  const auto spec = simple_random_walk<double>(cs.algebra());
  std::vector<double> mu(cs.size(), 0.0);
  mu[0] = 1.0;
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    if (n > 0) mu = step_distribution(cs, spec, mu);
    worst = std::max(worst, std::abs(quadrangle_srw_closed_form(2, 2, n).p_n_oo - mu[0]));
  }
  const auto k = quadrangle_constants(2, 2);
  const bool constants = k.k[0] == 16 && k.k[1] == 5 && k.k[2] == 5 && k.k[3] == 9 && k.lambda1 == Rational(-1, 2) &&
                         k.lambda_plus == 0.75 && k.lambda_minus == -0.25;
  const bool spots =
      quadrangle_srw_closed_form(2, 2, 0).p_n_oo == 1.0 && quadrangle_srw_closed_form(2, 2, 1).p_n_oo == 0.0;
  report(2, worst < 1e-10 && constants && spots,
         "max |closed form - matrix power| = " + fmt(worst) + ", constants " + (constants ? "ok" : "wrong") +
             ", spot values " + (spots ? "ok" : "wrong"));
}

TEST_CASE("criterion 3") {
  bool dominated = true;
  int latest_start = 0;
  double tail = 0.0;
  for (const ChamberSet* cs : {&fano(), &quadrangle()}) {
    const auto spec = simple_random_walk<Rational>(cs->algebra());
    const auto spec_float = simple_random_walk<double>(cs->algebra());
    const auto table = make_character_table<double>(cs->algebra());
    const auto tv = exact_tv_series(*cs, spec, 50);
    std::vector<double> bound(51);
    for (int n = 0; n <= 50; ++n) bound[n] = tv_upper_bound(table, spec_float, n);
    for (int n = 1; n <= 50; ++n) {
      if (tv[n].get_d() > bound[n]) dominated = false;
    }
    // First step from which both sequences decrease strictly up to n = 50.
    int start = 50;
    while (start > 0 && tv[start] < tv[start - 1] && bound[start] < bound[start - 1]) --start;
    latest_start = std::max(latest_start, start);
    tail = std::max({tail, tv[50].get_d(), bound[50]});
  }
  report(3, dominated && latest_start <= 5 && tail < 1e-5,
         std::string("tv <= bound on [1,50]: ") + (dominated ? "yes" : "no") + ", monotone from n = " +
             std::to_string(latest_start) + ", values at n = 50 below " + fmt(tail));
}

TEST_CASE("criterion 4") {
  const auto table = make_character_table<Surd>(make_dihedral_algebra(4, 2, 2));
  std::vector<Rational> mult;
  Rational weighted = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    mult.push_back(table.multiplicity(i).as_rational());
    weighted += mult.back() * table.irreps()[i].dim;
  }
  const bool quad = mult == std::vector<Rational>{1, 16, 5, 5, 9} && weighted == 45;

  const auto plane = make_character_table<Surd>(make_dihedral_algebra(3, 2, 2));
  Rational plane_weighted = 0;
  for (std::size_t i = 0; i < plane.size(); ++i) plane_weighted += plane.multiplicity(i).as_rational() * plane.irreps()[i].dim;

  std::size_t two_dim = 0;
  while (table.irreps()[two_dim].kind != IrrepKind::TwoDim) ++two_dim;
  const auto chi = table.character_values(two_dim);
  const Surd exact_norm = table.inner_product(chi, chi);
  const bool exact_match = exact_norm == feit_higman_closed_form<Surd>(4, 2, 2, 1) / Surd(45) &&
                           exact_norm == Surd(Rational(10, 45));

  const auto table_f = make_character_table<double>(make_dihedral_algebra(4, 2, 2));
  const auto chi_f = table_f.character_values(two_dim);
  const double float_norm = table_f.inner_product(chi_f, chi_f);
  const double float_gap = std::abs(float_norm - feit_higman_closed_form<double>(4, 2, 2, 1) / 45.0);

  report(4, quad && plane_weighted == 21 && exact_match && float_gap < 1e-12,
         "multiplicities " + std::string(quad ? "(1,16,5,5,9), sum 45" : "wrong") + ", plane sum " +
             to_string(plane_weighted) + ", <chi1,chi1> = " + exact_norm.to_string() + ", float gap " + fmt(float_gap));
}

TEST_CASE("criterion 5") {
  bool rejects = true;
  for (auto [m, q] : {std::pair{5, 2}, std::pair{7, 2}, std::pair{12, 3}}) {
    if (feit_higman_check(m, q, q).admissible) rejects = false;
  }
  bool accepts = true;
  int checked = 0;
  for (const auto& entry : known_parameter_catalogue()) {
    if (!feit_higman_order(entry.m)) continue;
    ++checked;
    if (!feit_higman_check(entry.m, Rational(entry.q), Rational(entry.r)).admissible) accepts = false;
  }
  auto fails = [](int m, int q, int r) {
    for (const auto& c : parameter_constraints(m, q, r)) {
      if (!c.passed) return true;
    }
    return false;
  };
  const bool constraints = fails(3, 6, 6) && fails(6, 2, 3);
  report(5, rejects && accepts && constraints && checked > 0,
         std::string("rejections ") + (rejects ? "ok" : "missing") + ", catalogue " + std::to_string(checked) +
             " entries " + (accepts ? "accepted" : "not all accepted") + ", constraints " +
             (constraints ? "fail as expected" : "wrong"));
}

TEST_CASE("criterion 6") {
  bool all = true;
  std::size_t compared = 0;
  for (const ChamberSet* cs : {&fano(), &quadrangle()}) {
    const auto& alg = cs->algebra();
    const auto& sys = alg->system();
    const auto table = intersection_table(*cs);
    for (std::size_t u = 0; u < sys.size(); ++u) {
      for (std::size_t v = 0; v < sys.size(); ++v) {
        const auto product = mul(HeckeElement<Rational>::basis(alg, u), HeckeElement<Rational>::basis(alg, v));
        for (std::size_t w = 0; w < sys.size(); ++w) {
          ++compared;
          if (product.coeff(w) != product_formula_constant(*cs, table, u, v, w)) all = false;
        }
        const Rational at_e = v == sys.inverse(u) ? Rational(1) / alg->qw(u) : Rational(0);
        if (product.coeff(0) != at_e) all = false;
      }
    }
  }
  report(6, all, std::to_string(compared) + " structure constants compared with intersection counts");
}

TEST_CASE("criterion 7") {
  Stopwatch clock;
  const C2Params p(2, 2);
  std::vector<LatticePoint> targets;
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; k + l <= 3; ++l) targets.emplace_back(k, l);
  }
  const QuadratureGrid fine(200, 200);
  const auto walk = simple_vertex_walk<double>();
  const auto spectral = pn_spectral_table(p, walk, 20, targets, fine);
  const auto exact = exact_n_step_series(p, walk, 20, targets);
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const double pe = exact[n][t] / vertex_count_float(p, targets[t].first, targets[t].second);
      worst = std::max(worst, std::abs(spectral[n][t].value - pe));
    }
  }
  const double r50 = orthogonality_check(p, QuadratureGrid(50, 50), 3);
  const double r100 = orthogonality_check(p, QuadratureGrid(100, 100), 3);
  const double r200 = orthogonality_check(p, fine, 3);
  const double t = clock.seconds();
  report(7, worst < 1e-6 && r200 < 1e-6 && r100 < r50 && r200 < r100 && t < 60.0,
         "max |exact - spectral| = " + fmt(worst) + ", orthogonality residuals " + fmt(r50) + " > " + fmt(r100) + " > " +
             fmt(r200) + ", " + fmt(t) + " s");
}

TEST_CASE("criterion 8") {
  Stopwatch clock;
  const C2Params p(2, 2);
  const auto series = exact_n_step_series(p, simple_vertex_walk<double>(), 400, {{0, 0}});
  const double rho_expected = 8.0 * std::sqrt(2.0) / 15.0;
  bool valid = true;
  std::vector<double> gaps;
  std::string detail;
  for (int n : {50, 100, 200}) {
    const auto llt = srw_llt_asymptote(p, n);
    const double ratio = series[2 * n][0] / llt.asymptote;
    if (!std::isfinite(ratio) || ratio <= 0.0 || std::abs(llt.rho - rho_expected) > 1e-14) valid = false;
    gaps.push_back(std::abs(ratio - 1.0));
    detail += "ratio(" + std::to_string(n) + ") = " + fmt(ratio) + ", ";
  }
  const bool decreasing = gaps[1] < gaps[0] && gaps[2] < gaps[1];
  const double t = clock.seconds();
  report(8, valid && decreasing && gaps[2] < 0.2 && t < 300.0,
         detail + "|ratio - 1| decreasing: " + (decreasing ? "yes" : "no") + ", |ratio - 1| at 200 = " + fmt(gaps[2]) +
             " (needs < 0.2), " + fmt(t) + " s");
}

TEST_CASE("criterion 9") {
  const auto& cs = fano();
  const auto spec = simple_random_walk<double>(cs.algebra());
  const std::uint64_t trials = 1'000'000;
  const auto one = simulate(cs, spec, 5, trials, 20240601, 0, 1);
  const auto many = simulate(cs, spec, 5, trials, 20240601, 0, 4);
  const auto automatic = simulate(cs, spec, 5, trials, 20240601);
  const auto exact = exact_evolution(cs, spec, 5);
  double worst = 0.0;
  for (std::size_t x = 0; x < cs.size(); ++x) {
    const double mean = exact[x] * static_cast<double>(trials);
    const double sd = std::sqrt(mean * (1.0 - exact[x]));
    worst = std::max(worst, std::abs(static_cast<double>(one.counts[x]) - mean) / sd);
  }
  const bool identical = one.counts == many.counts && one.counts == automatic.counts;
  report(9, worst < 5.0 && identical,
         "max deviation " + fmt(worst) + " sd, identical across worker counts: " + (identical ? "yes" : "no"));
}

TEST_CASE("criterion 10") {
  const auto audit = RecursionTable::standard().audit();
  bool all = true;
  int reconstructed = 0;
  for (const auto& e : audit) {
    all = all && e.passed;
    reconstructed += e.reconstructed;
  }
  report(10, all && reconstructed > 0,
         std::to_string(audit.size()) + " rows (" + std::to_string(reconstructed) + " reconstructed) satisfy sum = N");
}
