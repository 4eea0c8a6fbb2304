#include "buildwalk/building_models.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <set>

#include "buildwalk/parallel.hpp"
#include "buildwalk/rng.hpp"

namespace buildwalk {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::CompleteBipartite: return "complete-bipartite";
    case ModelKind::ProjectivePlane: return "projective-plane";
    case ModelKind::SymplecticQuadrangle: return "symplectic-quadrangle";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  for (auto k : {ModelKind::CompleteBipartite, ModelKind::ProjectivePlane, ModelKind::SymplecticQuadrangle}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorKind::InvalidInput, "unknown model kind '" + std::string(text) + "'");
}

namespace {

template <std::size_t D>
using Vec = std::array<int, D>;

/// Projective points of 𝔽_p^D, each scaled so its first nonzero entry is 1,
/// in lexicographic order.
template <std::size_t D>
std::vector<Vec<D>> projective_points(int p) {
  std::vector<Vec<D>> out;
  Vec<D> v{};
  while (true) {
    auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (first != v.end() && *first == 1) out.push_back(v);
    std::size_t i = D;
    while (i > 0) {
      --i;
      if (++v[i] < p) break;
      v[i] = 0;
      if (i == 0) return out;
    }
  }
}

template <std::size_t D>
Vec<D> normalise(Vec<D> v, int p) {
  auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
  if (first == v.end()) return v;
  int inv = 1;
  while ((inv * *first) % p != 1) ++inv;
  for (auto& x : v) x = (x * inv) % p;
  return v;
}

template <std::size_t D>
std::string vec_label(const Vec<D>& v, char open, char close) {
  std::string s(1, open);
  for (std::size_t i = 0; i < D; ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + close;
}

bool is_small_prime(int p, std::initializer_list<int> allowed) {
  return std::find(allowed.begin(), allowed.end(), p) != allowed.end();
}

IncidenceModel complete_bipartite(int q, int r) {
  if (q < 1 || r < 1) throw Error(ErrorKind::InvalidInput, "complete-bipartite needs q, r ≥ 1");
  IncidenceModel m;
  m.kind = ModelKind::CompleteBipartite;
  m.q = q;
  m.r = r;
  m.m = 2;
  for (int i = 0; i <= q; ++i) m.point_labels.push_back("p" + std::to_string(i));
  for (int j = 0; j <= r; ++j) m.line_labels.push_back("L" + std::to_string(j));
  for (int i = 0; i <= q; ++i) {
    for (int j = 0; j <= r; ++j) m.incident.emplace_back(i, j);
  }
  return m;
}

IncidenceModel projective_plane(int p) {
  const auto pts = projective_points<3>(p);
  IncidenceModel m;
  m.kind = ModelKind::ProjectivePlane;
  m.q = m.r = p;
  m.m = 3;
  // Lines are the kernels of the same normalised vectors.
  for (const auto& v : pts) {
    m.point_labels.push_back(vec_label(v, '(', ')'));
    m.line_labels.push_back(vec_label(v, '[', ']'));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      int dot = 0;
      for (int k = 0; k < 3; ++k) dot += pts[i][k] * pts[j][k];
      if (dot % p == 0) m.incident.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return m;
}

IncidenceModel symplectic_quadrangle(int p) {
  const auto pts = projective_points<4>(p);
  std::map<Vec<4>, int> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = static_cast<int>(i);
  auto form = [p](const Vec<4>& x, const Vec<4>& y) {
    const int v = x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
    return ((v % p) + p) % p;
  };
  std::set<std::vector<int>> lines;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (form(pts[i], pts[j]) != 0) continue;
      std::vector<int> members;
      for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) {
          if (a == 0 && b == 0) continue;
          Vec<4> v;
          for (int k = 0; k < 4; ++k) v[k] = (a * pts[i][k] + b * pts[j][k]) % p;
          members.push_back(index.at(normalise(v, p)));
        }
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      lines.insert(std::move(members));
    }
  }
  IncidenceModel m;
  m.kind = ModelKind::SymplecticQuadrangle;
  m.q = m.r = p;
  m.m = 4;
  for (const auto& v : pts) m.point_labels.push_back(vec_label(v, '(', ')'));
  int line_index = 0;
  for (const auto& members : lines) {
    std::string label = "{";
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k) label += ' ';
      label += std::to_string(members[k]);
    }
    m.line_labels.push_back(label + "}");
    for (int pt : members) m.incident.emplace_back(pt, line_index);
    ++line_index;
  }
  std::sort(m.incident.begin(), m.incident.end());
  return m;
}

}  // namespace

IncidenceModel build_model(ModelKind kind, int q, int r) {
  switch (kind) {
    case ModelKind::CompleteBipartite: return complete_bipartite(q, r);
    case ModelKind::ProjectivePlane:
      if (q != r || !is_small_prime(q, {2, 3, 5, 7})) {
        throw Error(ErrorKind::InvalidInput, "projective-plane models need q = r ∈ {2,3,5,7}");
      }
      return projective_plane(q);
    case ModelKind::SymplecticQuadrangle:
      if (q != r || !is_small_prime(q, {2, 3})) {
        throw Error(ErrorKind::InvalidInput, "symplectic-quadrangle models need q = r ∈ {2,3}");
      }
      return symplectic_quadrangle(q);
  }
  throw Error(ErrorKind::InvalidInput, "unknown model kind");
}

GeometryAudit audit_geometry(const IncidenceModel& model) {
  const int np = static_cast<int>(model.point_count());
  const int nv = np + static_cast<int>(model.line_count());
  std::vector<std::vector<int>> adj(nv);
  for (const auto& [pt, ln] : model.incident) {
    adj[pt].push_back(np + ln);
    adj[np + ln].push_back(pt);
  }
  GeometryAudit out;
  out.regular = true;
  for (int v = 0; v < nv; ++v) {
    const int expected = v < np ? model.r + 1 : model.q + 1;
    if (static_cast<int>(adj[v].size()) != expected) out.regular = false;
  }
  int girth = std::numeric_limits<int>::max();
  bool connected = true;
  for (int root = 0; root < nv; ++root) {
    std::vector<int> dist(nv, -1);
    std::vector<int> parent(nv, -1);
    std::queue<int> queue;
    dist[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int w : adj[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push(w);
        } else if (parent[u] != w) {
          girth = std::min(girth, dist[u] + dist[w] + 1);
        }
      }
    }
    for (int d : dist) {
      if (d < 0) connected = false;
      out.diameter = std::max(out.diameter, d);
    }
  }
  out.girth = girth == std::numeric_limits<int>::max() ? 0 : girth;
  out.passed = connected && out.regular && out.diameter == model.m && out.girth == 2 * model.m;
  return out;
}

nlohmann::json to_json(const IncidenceModel& model) {
  nlohmann::json incidence = nlohmann::json::array();
  for (const auto& [pt, ln] : model.incident) incidence.push_back({pt, ln});
  return {{"kind", to_string(model.kind)}, {"q", model.q},
          {"r", model.r},                  {"m", model.m},
          {"points", model.point_labels},  {"lines", model.line_labels},
          {"incidence", incidence},        {"flags", incidence}};
}

// Chambers -------------------------------------------------------------------

ChamberSet::ChamberSet(IncidenceModel model) : model_(std::move(model)) {
  algebra_ = make_dihedral_algebra(model_.m, Rational(model_.q), Rational(model_.r));
  flags_ = model_.incident;
  std::sort(flags_.begin(), flags_.end());
  const std::size_t n = flags_.size();
  panels_[0].assign(model_.line_count(), {});
  panels_[1].assign(model_.point_count(), {});
  panel_of_[0].resize(n);
  panel_of_[1].resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto [pt, ln] = flags_[x];
    panel_of_[0][x] = static_cast<std::size_t>(ln);
    panel_of_[1][x] = static_cast<std::size_t>(pt);
    panels_[0][ln].push_back(static_cast<std::uint32_t>(x));
    panels_[1][pt].push_back(static_cast<std::uint32_t>(x));
  }

  const auto& sys = algebra_->system();
  constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
  delta_.assign(n * n, unset);
  for (std::size_t x = 0; x < n; ++x) {
    std::uint32_t* row = &delta_[x * n];
    std::queue<std::size_t> queue;
    row[x] = static_cast<std::uint32_t>(sys.identity());
    queue.push(x);
    while (!queue.empty()) {
      const std::size_t y = queue.front();
      queue.pop();
      const std::size_t w = row[y];
      for (Generator s = 0; s < 2; ++s) {
        const std::size_t ws = sys.right_mul(w, s);
        if (sys.length(ws) < sys.length(w)) continue;
        for (auto z : panel(y, s)) {
          if (z == y || row[z] != unset) continue;
          row[z] = static_cast<std::uint32_t>(ws);
          queue.push(z);
        }
      }
    }
    // Every panel edge y ~_s z must satisfy δ(x,z) ∈ {w, ws}, and δ(x,z) = ws
    // when ws is longer.
    for (std::size_t y = 0; y < n; ++y) {
      if (row[y] == unset) throw Error(ErrorKind::NotABuilding, "chamber graph is disconnected");
      const std::size_t w = row[y];
      for (Generator s = 0; s < 2; ++s) {
        const std::size_t ws = sys.right_mul(w, s);
        const bool up = sys.length(ws) > sys.length(w);
        for (auto z : panel(y, s)) {
          if (z == y) continue;
          const bool ok = up ? row[z] == ws : (row[z] == ws || row[z] == w);
          if (!ok) {
            throw Error(ErrorKind::NotABuilding, "inconsistent Weyl distance at chambers " + std::to_string(x) + ", " +
                                                     std::to_string(y) + ", " + std::to_string(z));
          }
        }
      }
    }
  }

  spheres_.assign(n * sys.size(), {});
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) spheres_[x * sys.size() + delta(x, y)].push_back(static_cast<std::uint32_t>(y));
  }
}

ChamberAudit audit_chamber_set(const ChamberSet& cs) {
  const auto& sys = cs.system();
  const auto& alg = *cs.algebra();
  ChamberAudit out{true, true, true};
  for (std::size_t x = 0; x < cs.size(); ++x) {
    for (Generator s = 0; s < 2; ++s) {
      if (Rational(static_cast<long>(cs.panel(x, s).size())) != alg.q(s) + 1) out.panel_sizes = false;
    }
    for (std::size_t w = 0; w < sys.size(); ++w) {
      if (Rational(static_cast<long>(cs.sphere(x, w).size())) != alg.qw(w)) out.sphere_census = false;
    }
    for (std::size_t y = 0; y < cs.size(); ++y) {
      if (cs.delta(y, x) != sys.inverse(cs.delta(x, y))) out.transposition = false;
    }
  }
  return out;
}

std::size_t intersection_count(const ChamberSet& cs, std::size_t u, std::size_t v, std::size_t x, std::size_t y) {
  std::size_t count = 0;
  for (auto z : cs.sphere(x, u)) {
    if (cs.delta(z, y) == v) ++count;
  }
  return count;
}

std::vector<std::vector<std::vector<std::size_t>>> intersection_table(const ChamberSet& cs) {
  const std::size_t order = cs.system().size();
  const std::size_t n = cs.size();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::vector<std::size_t>>> table(
      order, std::vector<std::vector<std::size_t>>(order, std::vector<std::size_t>(order, unset)));
  std::vector<std::size_t> counts(n * order * order);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t z = 0; z < n; ++z) {
      const std::size_t u = cs.delta(x, z);
      for (std::size_t y = 0; y < n; ++y) ++counts[(y * order + u) * order + cs.delta(z, y)];
    }
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t w = cs.delta(x, y);
      for (std::size_t u = 0; u < order; ++u) {
        for (std::size_t v = 0; v < order; ++v) {
          const std::size_t c = counts[(y * order + u) * order + v];
          auto& slot = table[u][v][w];
          if (slot == unset) {
            slot = c;
          } else if (slot != c) {
            throw Error(ErrorKind::NotABuilding, "intersection numbers depend on the chamber pair");
          }
        }
      }
    }
  }
  return table;
}

Rational product_formula_constant(const ChamberSet& cs, const std::vector<std::vector<std::vector<std::size_t>>>& table,
                                  std::size_t u, std::size_t v, std::size_t w) {
  const auto& alg = *cs.algebra();
  Rational out = alg.qw(w) / (alg.qw(u) * alg.qw(v)) * Rational(static_cast<unsigned long>(table.at(u).at(v).at(w)));
  out.canonicalize();
  return out;
}

namespace detail {

void require_compatible(const ChamberSet& cs, const HeckeAlgebra& algebra) {
  if (!(algebra.system().matrix() == cs.system().matrix()) ||
      algebra.params().values() != cs.algebra()->params().values()) {
    throw Error(ErrorKind::InvalidWalk, "walk is defined over a different Coxeter system or parameters");
  }
}

}  // namespace detail

SimulationResult simulate_weights(const ChamberSet& cs, const std::vector<std::pair<std::size_t, double>>& weights,
                                  int n, std::uint64_t trials, std::uint64_t seed, std::size_t start,
                                  unsigned threads) {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be ≥ 1");
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  if (start >= cs.size()) throw Error(ErrorKind::InvalidInput, "start chamber out of range");
  if (weights.empty()) throw Error(ErrorKind::InvalidWalk, "walk has no support");
  std::vector<double> cumulative;
  double running = 0.0;
  for (const auto& [w, a] : weights) {
    running += a;
    cumulative.push_back(running);
  }

  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(trials, 64));
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(cs.size(), 0));
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::uint64_t lo = trials * c / chunks;
        const std::uint64_t hi = trials * (c + 1) / chunks;
        for (std::uint64_t t = lo; t < hi; ++t) {
          auto rng = SplitMix64::for_stream(seed, t);
          std::size_t x = start;
          for (int step = 0; step < n; ++step) {
            const double u = rng.uniform() * running;
            std::size_t k = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                                     cumulative.begin());
            k = std::min(k, weights.size() - 1);
            const auto& sphere = cs.sphere(x, weights[k].first);
            x = sphere[rng.below(sphere.size())];
          }
          ++partial[c][x];
        }
      },
      threads);

  SimulationResult out;
  out.counts.assign(cs.size(), 0);
  for (const auto& p : partial) {
    for (std::size_t x = 0; x < cs.size(); ++x) out.counts[x] += p[x];
  }
  out.trials = trials;
  out.seed = seed;
  out.steps = n;
  out.start = start;
  return out;
}

namespace {

template <class Fmt>
void write_rows(std::ostream& out, const ChamberSet& cs, std::size_t n, std::size_t start, Fmt&& fmt) {
  if (n != cs.size()) throw Error(ErrorKind::InvalidInput, "distribution length differs from the chamber count");
  out << "chamber_id,point,line,probability,weyl_word\n";
  for (std::size_t x = 0; x < n; ++x) {
    const auto [pt, ln] = cs.flag(x);
    out << x << ',' << pt << ',' << ln << ',' << fmt(x) << ','
        << cs.system().element(cs.delta(start, x)).to_string() << '\n';
  }
}

}  // namespace

void write_distribution_csv(std::ostream& out, const ChamberSet& cs, const std::vector<double>& probabilities,
                            std::size_t start) {
  write_rows(out, cs, probabilities.size(), start, [&](std::size_t x) { return format_decimal(probabilities[x]); });
}

void write_distribution_csv(std::ostream& out, const ChamberSet& cs, const std::vector<Rational>& probabilities,
                            std::size_t start) {
  write_rows(out, cs, probabilities.size(), start,
             [&](std::size_t x) { return format_decimal(probabilities[x].get_d()); });
}

}  // namespace buildwalk
