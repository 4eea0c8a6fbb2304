#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "buildwalk/error.hpp"
#include "buildwalk/scalar.hpp"

namespace buildwalk {

/// Thickness parameters of a C̃₂ building with q₀ = q₂ = q and q₁ = r.
struct C2Params {
  Rational q;
  Rational r;

  C2Params(Rational q_, Rational r_) : q(std::move(q_)), r(std::move(r_)) {
    q.canonicalize();
    r.canonicalize();
    if (q <= 1 || r <= 1) throw Error(ErrorKind::InvalidInput, "C̃₂ parameters need q, r > 1");
  }
  double qd() const { return q.get_d(); }
  double rd() const { return r.get_d(); }
};

/// |V_{k,l}(x)|, the number of special vertices at vector distance kω₁ + lω₂.
Rational vertex_count(const C2Params& p, int k, int l);
double vertex_count_float(const C2Params& p, int k, int l);

using LatticePoint = std::pair<int, int>;

/// Finitely supported map (k,l) ↦ coefficient of A_{k,l}.
template <class S>
class LatticeDistribution {
 public:
  LatticeDistribution() = default;

  static LatticeDistribution point(int k, int l, S value = S(1)) {
    LatticeDistribution d;
    d.add(k, l, value);
    return d;
  }

  void add(int k, int l, const S& value) {
    if (k < 0 || l < 0) throw Error(ErrorKind::InvalidInput, "lattice coordinates must be ≥ 0");
    if (ScalarTraits<S>::is_zero(value)) return;
    auto [it, inserted] = b_.try_emplace({k, l}, value);
    if (inserted) return;
    it->second += value;
    if (ScalarTraits<S>::is_zero(it->second)) b_.erase(it);
  }

  S at(int k, int l) const {
    auto it = b_.find({k, l});
    return it == b_.end() ? S(0) : it->second;
  }

  S total() const {
    S out(0);
    for (const auto& [pt, v] : b_) out += v;
    return out;
  }

  const std::map<LatticePoint, S>& terms() const noexcept { return b_; }
  std::size_t support_size() const noexcept { return b_.size(); }
  bool operator==(const LatticeDistribution&) const = default;

 private:
  std::map<LatticePoint, S> b_;
};

/// Two-variable polynomial in (q, r) with rational coefficients.
class Poly2 {
 public:
  using Monomial = std::pair<int, int>;  // (deg q, deg r)

  Poly2() = default;
  Poly2(int c) : Poly2(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly2(const Rational& c);              // NOLINT(google-explicit-constructor)
  static Poly2 q();
  static Poly2 r();

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

  bool is_zero() const { return terms_.empty(); }
  Rational eval(const Rational& q, const Rational& r) const;
  std::string to_string() const;

  /// Exact quotient; throws unsupported-boundary when the division leaves a
  /// remainder.
  Poly2 divide_exact(const Poly2& divisor) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

enum class C2Generator { A10, A01 };

std::string_view to_string(C2Generator g);

/// One row N·A_{m,n}·A_gen = Σ coeff·A_{m+dm, n+dn}, valid on a range of (m, n).
struct RecursionRow {
  struct Term {
    Poly2 coeff;
    int dm;
    int dn;
  };

  std::string name;
  C2Generator generator;
  int m_lo, m_hi;  // inclusive; hi < 0 means unbounded
  int n_lo, n_hi;
  std::vector<Term> terms;
  bool reconstructed = false;

  bool applies(int m, int n) const {
    return m >= m_lo && (m_hi < 0 || m <= m_hi) && n >= n_lo && (n_hi < 0 || n <= n_hi);
  }
  Poly2 coefficient_sum() const;
};

/// N_{1,0} = q(r+1)(qr+1) and N_{0,1} = (q+1)(qr+1) as polynomials.
Poly2 normaliser(C2Generator g);

/// The full set of rows needed to multiply any A_{m,n} by A_{1,0} or A_{0,1}.
class RecursionTable {
 public:
  /// The displayed rows, unit rows at (0,0), and the rows reconstructed from
  /// commutativity A_{1,0}A_{0,1} = A_{0,1}A_{1,0}.
  static const RecursionTable& standard();

  const std::vector<RecursionRow>& rows() const noexcept { return rows_; }
  /// The unique row covering (m, n), or unsupported-boundary.
  const RecursionRow& select(C2Generator g, int m, int n) const;

  struct AuditEntry {
    std::string name;
    bool reconstructed;
    std::string coefficient_sum;
    std::string expected;
    bool passed;
  };
  /// Symbolic check Σ coefficients = N for every row.
  std::vector<AuditEntry> audit() const;

  explicit RecursionTable(std::vector<RecursionRow> rows) : rows_(std::move(rows)) {}

 private:
  std::vector<RecursionRow> rows_;
};

/// Row for A_{0,1}·A_{1,0}: the A_{0,1} row applied at (1,0), rescaled by
/// N_{1,0}/N_{0,1} with exact polynomial division.
RecursionRow reconstruct_by_commutativity(const RecursionRow& a01_row);

/// dist · A_gen.
template <class S>
LatticeDistribution<S> right_mul_generator(const C2Params& p, const LatticeDistribution<S>& dist, C2Generator g);

/// Coefficients of Aⁿ for a walk supported on {(0,0), (1,0), (0,1)}.
template <class S>
LatticeDistribution<S> exact_n_step(const C2Params& p, const LatticeDistribution<S>& walk, int n);

/// a_{k,l}^{(s)} for every step s = 0..n and every requested target.
template <class S>
std::vector<std::vector<S>> exact_n_step_series(const C2Params& p, const LatticeDistribution<S>& walk, int n,
                                                const std::vector<LatticePoint>& targets);

template <class S>
LatticeDistribution<S> simple_vertex_walk() {
  return LatticeDistribution<S>::point(0, 1);
}

// Spectral side -------------------------------------------------------------

using Complex = std::complex<double>;

/// c(z₁,z₂); singular-point when z₁, z₂, z₁⁻¹, z₂⁻¹ are not pairwise distinct.
Complex c_func(const C2Params& p, Complex z1, Complex z2);

struct TorusPoint {
  double theta1 = 0.0;
  double theta2 = 0.0;
  Complex t1() const { return std::polar(1.0, theta1); }
  Complex t2() const { return std::polar(1.0, theta2); }
};

/// The eight signed permutations of (z₁, z₂).
std::array<std::pair<Complex, Complex>, 8> signed_permutations(Complex z1, Complex z2);

/// Â_{k,l}(z) = π_z(A_{k,l}).
Complex spherical_function(const C2Params& p, int k, int l, Complex z1, Complex z2);
Complex spherical_function(const C2Params& p, int k, int l, const TorusPoint& t);

/// K = (1/8)(1+q⁻¹)(1+r⁻¹)(1+q⁻¹r⁻¹).
double plancherel_constant(const C2Params& p);
/// K / |c(t)|².
double plancherel_density(const C2Params& p, const TorusPoint& t);

/// (u, v) = (Â_{1,0}, Â_{0,1}) computed from symmetric functions of z.
std::pair<Complex, Complex> uv_from_z(const C2Params& p, Complex z1, Complex z2);

/// Periodic trapezoid grid on [0,2π)² with phase offsets. Construction fails
/// with singular-point if any node meets the singular set of c.
class QuadratureGrid {
 public:
  QuadratureGrid(int n1, int n2, double offset1 = 0.5, double offset2 = 0.25);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  double offset1() const noexcept { return offset1_; }
  double offset2() const noexcept { return offset2_; }
  TorusPoint node(int i, int j) const;
  /// The sub-grid of even-indexed nodes, used for the error estimate.
  bool has_half_grid() const noexcept { return n1_ % 2 == 0 && n2_ % 2 == 0; }

  nlohmann::json to_json() const;

 private:
  int n1_, n2_;
  double offset1_, offset2_;
};

struct SpectralEstimate {
  double value = 0.0;
  double error_estimate = 0.0;  // |full grid − half grid|
  double max_imaginary = 0.0;
};

/// max over (k,l),(m,n) ∈ [0,kmax]² of |N_{k,l}∫Â_{k,l}Â_{m,n}dμ − δ|.
double orthogonality_check(const C2Params& p, const QuadratureGrid& grid, int kmax);

/// p⁽ⁿ⁾(x,y) for y ∈ V_{k,l}(x): ∫ Â(t)ⁿ Â_{k,l}(t) dμ(t).
SpectralEstimate pn_spectral(const C2Params& p, const LatticeDistribution<double>& walk, int n, LatticePoint target,
                             const QuadratureGrid& grid);

/// All (n, target) pairs in one sweep over the grid; result[n][target index].
std::vector<std::vector<SpectralEstimate>> pn_spectral_table(const C2Params& p,
                                                             const LatticeDistribution<double>& walk, int n_max,
                                                             const std::vector<LatticePoint>& targets,
                                                             const QuadratureGrid& grid);

/// p⁽²ⁿ⁾(x,x) ~ leading_constant · ρ²ⁿ · n⁻⁵ for the simple walk A_{0,1}.
struct LocalLimit {
  double rho = 0.0;
  double leading_constant = 0.0;    // 24(q+1)(r+1)(qr+1)q²r² / (π(q−1)⁴(r−1)⁴)
  double displayed_constant = 0.0;  // a quarter of the above, paired with n⁻⁴
  double asymptote = 0.0;
  double displayed_asymptote = 0.0;
};

LocalLimit srw_llt_asymptote(const C2Params& p, int n);

}  // namespace buildwalk
