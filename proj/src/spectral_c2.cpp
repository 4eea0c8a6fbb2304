#include <cmath>
#include <numbers>

#include "buildwalk/affine_c2.hpp"
#include "buildwalk/parallel.hpp"

namespace buildwalk {

namespace {

constexpr double kSingularTolerance = 1e-12;

bool close(Complex a, Complex b) { return std::abs(a - b) <= kSingularTolerance * std::max(1.0, std::abs(a)); }

double normalising_factor(const C2Params& p) {
  const double q = p.qd();
  const double r = p.rd();
  return (1.0 + 1.0 / q) * (1.0 + 1.0 / r) * (1.0 + 1.0 / (q * r));
}

// (qr)^{-k}(q√r)^{-l} / ((1+q⁻¹)(1+r⁻¹)(1+q⁻¹r⁻¹))
double prefactor(const C2Params& p, int k, int l) {
  const double q = p.qd();
  const double r = p.rd();
  return std::exp(-k * std::log(q * r) - l * std::log(q * std::sqrt(r))) / normalising_factor(p);
}

// Angles of the eight signed permutations of (θ₁, θ₂) on the torus, in the
// same order as signed_permutations().
std::array<std::pair<double, double>, 8> permuted_angles(double a, double b) {
  return {{{a, b}, {b, a}, {-a, b}, {b, -a}, {a, -b}, {-b, a}, {-a, -b}, {-b, -a}}};
}

// Everything about one torus node that the spherical functions need.
struct NodeData {
  std::array<std::pair<double, double>, 8> angles;
  std::array<Complex, 8> c;
  double density;
};

NodeData node_data(const C2Params& p, const TorusPoint& t, double k_const) {
  NodeData d;
  d.angles = permuted_angles(t.theta1, t.theta2);
  for (int s = 0; s < 8; ++s) {
    d.c[s] = c_func(p, std::polar(1.0, d.angles[s].first), std::polar(1.0, d.angles[s].second));
  }
  d.density = k_const / std::norm(d.c[0]);
  return d;
}

Complex spherical_at(const NodeData& d, double pref, int k, int l) {
  Complex sum{};
  for (int s = 0; s < 8; ++s) {
    sum += d.c[s] * std::polar(1.0, (k + l) * d.angles[s].first + k * d.angles[s].second);
  }
  return pref * sum;
}

// Per-row partial sums over the full grid and over the even sub-grid, reduced
// in row order.
template <class NodeFn>
std::pair<std::vector<double>, std::vector<double>> integrate(const QuadratureGrid& grid, std::size_t count,
                                                              NodeFn&& fn) {
  const int n1 = grid.n1();
  const int n2 = grid.n2();
  std::vector<std::vector<double>> full_rows(n1, std::vector<double>(count, 0.0));
  std::vector<std::vector<double>> half_rows(n1, std::vector<double>(count, 0.0));
  parallel_for(static_cast<std::size_t>(n1), [&](std::size_t i) {
    std::vector<double> values(count);
    for (int j = 0; j < n2; ++j) {
      fn(grid.node(static_cast<int>(i), j), values);
      for (std::size_t q = 0; q < count; ++q) {
        full_rows[i][q] += values[q];
        if (i % 2 == 0 && j % 2 == 0) half_rows[i][q] += values[q];
      }
    }
  });
  std::vector<double> full(count, 0.0);
  std::vector<double> half(count, 0.0);
  for (int i = 0; i < n1; ++i) {
    for (std::size_t q = 0; q < count; ++q) {
      full[q] += full_rows[i][q];
      half[q] += half_rows[i][q];
    }
  }
  const double full_scale = 1.0 / (static_cast<double>(n1) * n2);
  const double half_scale = 1.0 / (static_cast<double>(n1 / 2) * (n2 / 2));
  for (std::size_t q = 0; q < count; ++q) {
    full[q] *= full_scale;
    half[q] = grid.has_half_grid() ? half[q] * half_scale : full[q];
  }
  return {full, half};
}

}  // namespace

Complex c_func(const C2Params& p, Complex z1, Complex z2) {
  if (std::abs(z1) == 0.0 || std::abs(z2) == 0.0) throw Error(ErrorKind::SingularPoint, "c(z₁,z₂) needs nonzero arguments");
  const Complex u1 = 1.0 / z1;
  const Complex u2 = 1.0 / z2;
  const std::array<Complex, 4> pts{z1, z2, u1, u2};
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if (close(pts[a], pts[b])) {
        throw Error(ErrorKind::SingularPoint, "z₁, z₂, z₁⁻¹, z₂⁻¹ are not pairwise distinct");
      }
    }
  }
  const double qi = 1.0 / p.qd();
  const double ri = 1.0 / p.rd();
  const Complex num = (1.0 - qi * u1 * u2) * (1.0 - qi * u1 * z2) * (1.0 - ri * u1 * u1) * (1.0 - ri * u2 * u2);
  const Complex den = (1.0 - u1 * u2) * (1.0 - u1 * z2) * (1.0 - u1 * u1) * (1.0 - u2 * u2);
  return num / den;
}

std::array<std::pair<Complex, Complex>, 8> signed_permutations(Complex z1, Complex z2) {
  const Complex u1 = 1.0 / z1;
  const Complex u2 = 1.0 / z2;
  return {{{z1, z2}, {z2, z1}, {u1, z2}, {z2, u1}, {z1, u2}, {u2, z1}, {u1, u2}, {u2, u1}}};
}

Complex spherical_function(const C2Params& p, int k, int l, Complex z1, Complex z2) {
  if (k < 0 || l < 0) throw Error(ErrorKind::InvalidInput, "lattice coordinates must be ≥ 0");
  Complex sum{};
  for (const auto& [a, b] : signed_permutations(z1, z2)) {
    sum += c_func(p, a, b) * std::pow(a, k + l) * std::pow(b, k);
  }
  return prefactor(p, k, l) * sum;
}

Complex spherical_function(const C2Params& p, int k, int l, const TorusPoint& t) {
  if (k < 0 || l < 0) throw Error(ErrorKind::InvalidInput, "lattice coordinates must be ≥ 0");
  return spherical_at(node_data(p, t, plancherel_constant(p)), prefactor(p, k, l), k, l);
}

double plancherel_constant(const C2Params& p) { return normalising_factor(p) / 8.0; }

double plancherel_density(const C2Params& p, const TorusPoint& t) {
  return plancherel_constant(p) / std::norm(c_func(p, t.t1(), t.t2()));
}

std::pair<Complex, Complex> uv_from_z(const C2Params& p, Complex z1, Complex z2) {
  const double q = p.qd();
  const double r = p.rd();
  const Complex s1 = z1 + 1.0 / z1;
  const Complex s2 = z2 + 1.0 / z2;
  const Complex u = (q * r / vertex_count_float(p, 1, 0)) * ((1.0 - 1.0 / q) * (1.0 + 1.0 / r) + s1 * s2);
  const Complex v = (q * std::sqrt(r) / vertex_count_float(p, 0, 1)) * (s1 + s2);
  return {u, v};
}

// Quadrature ------------------------------------------------------------------

QuadratureGrid::QuadratureGrid(int n1, int n2, double offset1, double offset2)
    : n1_(n1), n2_(n2), offset1_(offset1), offset2_(offset2) {
  if (n1 < 2 || n2 < 2) throw Error(ErrorKind::InvalidInput, "quadrature grids need at least 2×2 nodes");
  constexpr double tol = 1e-9;
  for (int i = 0; i < n1_; ++i) {
    for (int j = 0; j < n2_; ++j) {
      const TorusPoint t = node(i, j);
      const bool singular = std::abs(std::sin(t.theta1)) < tol || std::abs(std::sin(t.theta2)) < tol ||
                            std::abs(std::sin(0.5 * (t.theta1 - t.theta2))) < tol ||
                            std::abs(std::sin(0.5 * (t.theta1 + t.theta2))) < tol;
      if (singular) {
        throw Error(ErrorKind::SingularPoint, "quadrature node (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") lies on the singular set; change the grid size or offsets");
      }
    }
  }
}

TorusPoint QuadratureGrid::node(int i, int j) const {
  const double two_pi = 2.0 * std::numbers::pi;
  return {two_pi * (i + offset1_) / n1_, two_pi * (j + offset2_) / n2_};
}

nlohmann::json QuadratureGrid::to_json() const {
  return {{"n1", n1_}, {"n2", n2_}, {"offset1", offset1_}, {"offset2", offset2_}};
}

double orthogonality_check(const C2Params& p, const QuadratureGrid& grid, int kmax) {
  if (kmax < 0) throw Error(ErrorKind::InvalidInput, "kmax must be ≥ 0");
  std::vector<LatticePoint> idx;
  for (int k = 0; k <= kmax; ++k) {
    for (int l = 0; l <= kmax; ++l) idx.emplace_back(k, l);
  }
  std::vector<double> pref;
  for (const auto& [k, l] : idx) pref.push_back(prefactor(p, k, l));
  const std::size_t f = idx.size();
  const std::size_t pairs = f * (f + 1) / 2;
  const double k_const = plancherel_constant(p);
  auto [full, half] = integrate(grid, pairs, [&](const TorusPoint& t, std::vector<double>& out) {
    const NodeData d = node_data(p, t, k_const);
    std::vector<Complex> vals(f);
    for (std::size_t a = 0; a < f; ++a) vals[a] = spherical_at(d, pref[a], idx[a].first, idx[a].second);
    std::size_t pos = 0;
    for (std::size_t a = 0; a < f; ++a) {
      for (std::size_t b = a; b < f; ++b) out[pos++] = (vals[a] * vals[b]).real() * d.density;
    }
  });
  double worst = 0.0;
  std::size_t pos = 0;
  for (std::size_t a = 0; a < f; ++a) {
    for (std::size_t b = a; b < f; ++b) {
      const double expected = (a == b) ? 1.0 : 0.0;
      const double n_kl = vertex_count_float(p, idx[a].first, idx[a].second);
      worst = std::max(worst, std::abs(n_kl * full[pos] - expected));
      ++pos;
    }
  }
  return worst;
}

std::vector<std::vector<SpectralEstimate>> pn_spectral_table(const C2Params& p,
                                                             const LatticeDistribution<double>& walk, int n_max,
                                                             const std::vector<LatticePoint>& targets,
                                                             const QuadratureGrid& grid) {
  if (n_max < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  const std::size_t t_count = targets.size();
  const std::size_t per_step = t_count;
  const std::size_t count = static_cast<std::size_t>(n_max + 1) * per_step;
  std::vector<double> target_pref;
  for (const auto& [k, l] : targets) target_pref.push_back(prefactor(p, k, l));
  std::vector<std::pair<LatticePoint, double>> walk_terms;
  std::vector<double> walk_pref;
  for (const auto& [pt, a] : walk.terms()) {
    walk_terms.emplace_back(pt, a);
    walk_pref.push_back(prefactor(p, pt.first, pt.second));
  }
  const double k_const = plancherel_constant(p);
  // Imaginary parts are accumulated alongside as a realness diagnostic.
  auto [full, half] = integrate(grid, 2 * count, [&](const TorusPoint& t, std::vector<double>& out) {
    const NodeData d = node_data(p, t, k_const);
    Complex a_hat{};
    for (std::size_t w = 0; w < walk_terms.size(); ++w) {
      a_hat += walk_terms[w].second * spherical_at(d, walk_pref[w], walk_terms[w].first.first, walk_terms[w].first.second);
    }
    std::vector<Complex> tv(t_count);
    for (std::size_t x = 0; x < t_count; ++x) tv[x] = spherical_at(d, target_pref[x], targets[x].first, targets[x].second);
    Complex power = 1.0;
    for (int n = 0; n <= n_max; ++n) {
      for (std::size_t x = 0; x < t_count; ++x) {
        const Complex v = power * tv[x] * d.density;
        out[n * per_step + x] = v.real();
        out[count + n * per_step + x] = v.imag();
      }
      power *= a_hat;
    }
  });
  std::vector<std::vector<SpectralEstimate>> result(n_max + 1, std::vector<SpectralEstimate>(t_count));
  for (int n = 0; n <= n_max; ++n) {
    for (std::size_t x = 0; x < t_count; ++x) {
      const std::size_t pos = n * per_step + x;
      result[n][x] = {full[pos], std::abs(full[pos] - half[pos]), std::abs(full[count + pos])};
    }
  }
  return result;
}

SpectralEstimate pn_spectral(const C2Params& p, const LatticeDistribution<double>& walk, int n, LatticePoint target,
                             const QuadratureGrid& grid) {
  return pn_spectral_table(p, walk, n, {target}, grid).at(n).at(0);
}

LocalLimit srw_llt_asymptote(const C2Params& p, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "the local limit needs n ≥ 1");
  const double q = p.qd();
  const double r = p.rd();
  LocalLimit out;
  out.rho = 4.0 * q * std::sqrt(r) / ((q + 1) * (q * r + 1));
  out.displayed_constant =
      6.0 * (q + 1) * (r + 1) * (q * r + 1) * q * q * r * r / (std::numbers::pi * std::pow(q - 1, 4) * std::pow(r - 1, 4));
  out.leading_constant = 4.0 * out.displayed_constant;
  const double log_rho_power = 2.0 * n * std::log(out.rho);
  out.asymptote = out.leading_constant * std::exp(log_rho_power - 5.0 * std::log(static_cast<double>(n)));
  out.displayed_asymptote = out.displayed_constant * std::exp(log_rho_power - 4.0 * std::log(static_cast<double>(n)));
  return out;
}

}  // namespace buildwalk
