#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "buildwalk/error.hpp"
#include "buildwalk/hecke.hpp"
#include "buildwalk/scalar.hpp"

namespace buildwalk {

enum class ModelKind { CompleteBipartite, ProjectivePlane, SymplecticQuadrangle };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

/// Points and lines of a finite generalised polygon. A point lies on r+1
/// lines and a line carries q+1 points.
struct IncidenceModel {
  ModelKind kind = ModelKind::CompleteBipartite;
  int q = 1;
  int r = 1;
  int m = 2;  // the polygon order: diameter of the incidence graph
  std::vector<std::string> point_labels;
  std::vector<std::string> line_labels;
  std::vector<std::pair<int, int>> incident;  // sorted (point, line)

  std::size_t point_count() const noexcept { return point_labels.size(); }
  std::size_t line_count() const noexcept { return line_labels.size(); }
};

/// complete-bipartite: any q, r ≥ 1. projective-plane: PG(2,p) for
/// p ∈ {2,3,5,7}. symplectic-quadrangle: W(p) for p ∈ {2,3}. Prime fields
/// only; q = r = p for the last two.
IncidenceModel build_model(ModelKind kind, int q, int r);

struct GeometryAudit {
  int diameter = 0;
  int girth = 0;
  bool regular = false;
  bool passed = false;
};

/// Diameter m, girth 2m and bidegrees (r+1, q+1) of the incidence graph.
GeometryAudit audit_geometry(const IncidenceModel& model);

nlohmann::json to_json(const IncidenceModel& model);

/// Flags of a model with panels and the Weyl distance table. Generator s1
/// moves along a line (q+1 chambers per panel), s2 around a point (r+1).
class ChamberSet {
 public:
  /// Builds δ by labelled BFS from every chamber and re-checks every panel
  /// edge; fails with not-a-building on any inconsistency.
  explicit ChamberSet(IncidenceModel model);

  const IncidenceModel& model() const noexcept { return model_; }
  const HeckeAlgebraPtr& algebra() const noexcept { return algebra_; }
  const CoxeterSystem& system() const { return algebra_->system(); }
  std::size_t size() const noexcept { return flags_.size(); }

  const std::pair<int, int>& flag(std::size_t x) const { return flags_.at(x); }
  /// The s-panel of x, including x.
  const std::vector<std::uint32_t>& panel(std::size_t x, Generator s) const { return panels_[s].at(panel_of_[s].at(x)); }
  /// Element index of δ(x,y).
  std::size_t delta(std::size_t x, std::size_t y) const { return delta_[x * size() + y]; }
  /// Δ_w(x) = {y : δ(x,y) = w}.
  const std::vector<std::uint32_t>& sphere(std::size_t x, std::size_t w) const {
    return spheres_[x * system().size() + w];
  }

 private:
  IncidenceModel model_;
  HeckeAlgebraPtr algebra_;
  std::vector<std::pair<int, int>> flags_;
  std::vector<std::vector<std::uint32_t>> panels_[2];
  std::vector<std::size_t> panel_of_[2];
  std::vector<std::uint32_t> delta_;
  std::vector<std::vector<std::uint32_t>> spheres_;
};

struct ChamberAudit {
  bool panel_sizes = false;   // |panel_s(x)| = q_s + 1
  bool sphere_census = false; // |Δ_w(x)| = q_w
  bool transposition = false; // δ(y,x) = δ(x,y)⁻¹
  bool passed() const { return panel_sizes && sphere_census && transposition; }
};

ChamberAudit audit_chamber_set(const ChamberSet& cs);

/// |Δ_u(x) ∩ Δ_{v⁻¹}(y)|.
std::size_t intersection_count(const ChamberSet& cs, std::size_t u, std::size_t v, std::size_t x, std::size_t y);

/// Intersection counts indexed [u][v][w] with δ(x,y) = w, checked to be the
/// same for every pair (x,y) at that distance; not-a-building otherwise.
std::vector<std::vector<std::vector<std::size_t>>> intersection_table(const ChamberSet& cs);

/// (q_w / q_u q_v)·|Δ_u(x) ∩ Δ_{v⁻¹}(y)| from a precomputed table.
Rational product_formula_constant(const ChamberSet& cs, const std::vector<std::vector<std::vector<std::size_t>>>& table,
                                  std::size_t u, std::size_t v, std::size_t w);

namespace detail {

void require_compatible(const ChamberSet& cs, const HeckeAlgebra& algebra);

template <class S>
S abs_value(const S& x) {
  if constexpr (ScalarTraits<S>::exact) {
    return abs(x);
  } else {
    return std::abs(x);
  }
}

}  // namespace detail

/// μ ↦ μP with p(x,y) = a_{δ(x,y)} / q_{δ(x,y)}.
template <class S>
std::vector<S> step_distribution(const ChamberSet& cs, const WalkSpec<S>& spec, const std::vector<S>& mu) {
  detail::require_compatible(cs, spec.algebra());
  std::vector<std::pair<std::size_t, S>> weights;
  for (const auto& [w, a] : spec.coefficients()) {
    weights.emplace_back(w, S(a / ScalarTraits<S>::from_rational(spec.algebra().qw(w))));
  }
  std::vector<S> next(cs.size(), S(0));
  for (std::size_t x = 0; x < cs.size(); ++x) {
    if (ScalarTraits<S>::is_zero(mu[x])) continue;
    for (const auto& [w, p] : weights) {
      const S mass = mu[x] * p;
      for (auto y : cs.sphere(x, w)) next[y] += mass;
    }
  }
  return next;
}

/// Row `start` of Pⁿ.
template <class S>
std::vector<S> exact_evolution(const ChamberSet& cs, const WalkSpec<S>& spec, int n, std::size_t start = 0) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  if (start >= cs.size()) throw Error(ErrorKind::InvalidInput, "start chamber out of range");
  std::vector<S> mu(cs.size(), S(0));
  mu[start] = S(1);
  for (int i = 0; i < n; ++i) mu = step_distribution(cs, spec, mu);
  return mu;
}

/// ½ Σ_x |μ(x) − 1/|Δ||.
template <class S>
S tv_to_uniform(const std::vector<S>& mu) {
  const S u = S(1) / S(static_cast<long>(mu.size()));
  S total(0);
  for (const auto& v : mu) total += detail::abs_value(S(v - u));
  return total / S(2);
}

template <class S>
S exact_tv(const ChamberSet& cs, const WalkSpec<S>& spec, int n) {
  return tv_to_uniform(exact_evolution(cs, spec, n));
}

/// exact_tv for every n = 0..n_max.
template <class S>
std::vector<S> exact_tv_series(const ChamberSet& cs, const WalkSpec<S>& spec, int n_max) {
  std::vector<S> mu(cs.size(), S(0));
  mu[0] = S(1);
  std::vector<S> out{tv_to_uniform(mu)};
  for (int i = 0; i < n_max; ++i) {
    mu = step_distribution(cs, spec, mu);
    out.push_back(tv_to_uniform(mu));
  }
  return out;
}

/// u·P = u for the uniform u.
template <class S>
bool is_stationary(const ChamberSet& cs, const WalkSpec<S>& spec) {
  const std::vector<S> u(cs.size(), S(1) / S(static_cast<long>(cs.size())));
  const auto next = step_distribution(cs, spec, u);
  for (std::size_t x = 0; x < u.size(); ++x) {
    if constexpr (ScalarTraits<S>::exact) {
      if (next[x] != u[x]) return false;
    } else if (std::abs(next[x] - u[x]) > 1e-15) {
      return false;
    }
  }
  return true;
}

struct SimulationResult {
  std::vector<std::uint64_t> counts;  // final chamber tallies
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int steps = 0;
  std::size_t start = 0;
};

/// Monte Carlo with one SplitMix64 stream per trial; results are identical
/// for any worker count.
SimulationResult simulate_weights(const ChamberSet& cs, const std::vector<std::pair<std::size_t, double>>& weights,
                                  int n, std::uint64_t trials, std::uint64_t seed, std::size_t start = 0,
                                  unsigned threads = 0);

template <class S>
SimulationResult simulate(const ChamberSet& cs, const WalkSpec<S>& spec, int n, std::uint64_t trials,
                          std::uint64_t seed, std::size_t start = 0, unsigned threads = 0) {
  detail::require_compatible(cs, spec.algebra());
  std::vector<std::pair<std::size_t, double>> weights;
  for (const auto& [w, a] : spec.coefficients()) weights.emplace_back(w, ScalarTraits<S>::to_double(a));
  return simulate_weights(cs, weights, n, trials, seed, start, threads);
}

/// Rows chamber_id,point,line,probability,weyl_word with δ(start, ·).
void write_distribution_csv(std::ostream& out, const ChamberSet& cs, const std::vector<double>& probabilities,
                            std::size_t start = 0);
void write_distribution_csv(std::ostream& out, const ChamberSet& cs, const std::vector<Rational>& probabilities,
                            std::size_t start = 0);

}  // namespace buildwalk
