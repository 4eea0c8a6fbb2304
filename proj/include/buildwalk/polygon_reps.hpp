#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "buildwalk/error.hpp"
#include "buildwalk/hecke.hpp"
#include "buildwalk/surd.hpp"

namespace buildwalk {

/// Scalar fields for representation matrices: double, or exact ℚ(√2,√3).
template <class F>
struct Field;

template <>
struct Field<double> {
  static constexpr bool exact = false;
  static double from_rational(const Rational& x) { return x.get_d(); }
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static int sign(double x) { return (x > 0.0) - (x < 0.0); }
  static double sqrt_rational(const Rational& x) { return std::sqrt(x.get_d()); }
  static double cos_two_pi(int j, int m) { return std::cos(2.0 * std::numbers::pi * j / m); }
};

template <>
struct Field<Surd> {
  static constexpr bool exact = true;
  static Surd from_rational(const Rational& x) { return Surd(x); }
  static double to_double(const Surd& x) { return x.to_double(); }
  static bool is_zero(const Surd& x) { return x.is_zero(); }
  static int sign(const Surd& x) { return x.sign(); }
  static Surd sqrt_rational(const Rational& x) {
    auto s = sqrt_of_rational(x);
    if (!s) throw Error(ErrorKind::InvalidInput, "√" + to_string(x) + " is not in ℚ(√2,√3)");
    return *s;
  }
  static Surd cos_two_pi(int j, int m) {
    auto c = buildwalk::cos_two_pi(j, m);
    if (!c) {
      throw Error(ErrorKind::InvalidInput,
                  "cos(2π·" + std::to_string(j) + "/" + std::to_string(m) + ") is not in ℚ(√2,√3)");
    }
    return *c;
  }
};

/// 1×1 or 2×2 matrix.
template <class F>
struct Mat2 {
  int dim = 1;
  std::array<F, 4> a{F(0), F(0), F(0), F(0)};

  static Mat2 identity(int dim) {
    Mat2 m;
    m.dim = dim;
    m.a[0] = F(1);
    if (dim == 2) m.a[3] = F(1);
    return m;
  }
  static Mat2 scalar(const F& x) {
    Mat2 m;
    m.a[0] = x;
    return m;
  }
  static Mat2 zero(int dim) {
    Mat2 m;
    m.dim = dim;
    return m;
  }

  F trace() const { return dim == 1 ? a[0] : F(a[0] + a[3]); }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 out;
    out.dim = x.dim;
    if (x.dim == 1) {
      out.a[0] = x.a[0] * y.a[0];
      return out;
    }
    out.a[0] = x.a[0] * y.a[0] + x.a[1] * y.a[2];
    out.a[1] = x.a[0] * y.a[1] + x.a[1] * y.a[3];
    out.a[2] = x.a[2] * y.a[0] + x.a[3] * y.a[2];
    out.a[3] = x.a[2] * y.a[1] + x.a[3] * y.a[3];
    return out;
  }
  Mat2& operator+=(const Mat2& y) {
    for (int i = 0; i < 4; ++i) a[i] += y.a[i];
    return *this;
  }
  friend Mat2 operator*(Mat2 x, const F& c) {
    for (auto& v : x.a) v *= c;
    return x;
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    Mat2 out = x;
    for (int i = 0; i < 4; ++i) out.a[i] -= y.a[i];
    return out;
  }
  bool is_zero() const {
    for (const auto& v : a) {
      if (!Field<F>::is_zero(v)) return false;
    }
    return true;
  }
  double max_abs() const {
    double out = 0.0;
    for (const auto& v : a) out = std::max(out, std::abs(Field<F>::to_double(v)));
    return out;
  }
};

template <class F>
Mat2<F> power(Mat2<F> base, int n) {
  Mat2<F> out = Mat2<F>::identity(base.dim);
  while (n > 0) {
    if (n & 1) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

enum class IrrepKind { Trivial, Sign, OneDimFirst, OneDimSecond, TwoDim };

/// Generator images of one irreducible representation of the rank-2 Hecke
/// algebra with parameters q = q_{s1}, r = q_{s2}.
template <class F>
struct Irrep {
  IrrepKind kind = IrrepKind::Trivial;
  int j = 0;  // index of a 2-dimensional representation
  int dim = 1;
  Mat2<F> t1;
  Mat2<F> t2;

  std::string label() const {
    switch (kind) {
      case IrrepKind::Trivial: return "triv";
      case IrrepKind::Sign: return "sgn";
      case IrrepKind::OneDimFirst: return "rho1";
      case IrrepKind::OneDimSecond: return "rho2";
      case IrrepKind::TwoDim: return "rho_" + std::to_string(j);
    }
    return "?";
  }
};

inline bool feit_higman_order(int m) { return m == 2 || m == 3 || m == 4 || m == 6 || m == 8; }

/// The product c_j·c_j′ that parametrises the j-th 2-dimensional irrep.
template <class F>
F two_dim_product(int m, const Rational& q, const Rational& r, int j) {
  using Fd = Field<F>;
  if (m % 2 == 1) {
    // 4q cos²(πj/m) = 2q(1 + cos(2πj/m))
    return Fd::from_rational(Rational(2 * q)) * (F(1) + Fd::cos_two_pi(j, m));
  }
  return Fd::from_rational(Rational(q + r)) +
         Fd::from_rational(Rational(2)) * Fd::sqrt_rational(Rational(q * r)) * Fd::cos_two_pi(j, m);
}

/// Default split of c_j·c_j′: symmetric in float mode when the product is
/// nonnegative, otherwise (product, 1).
template <class F>
std::pair<F, F> default_split(const F& product) {
  if constexpr (!Field<F>::exact) {
    if (product >= 0.0) return {std::sqrt(product), std::sqrt(product)};
  }
  return {product, F(1)};
}

/// All irreducible representations of the I₂(m) Hecke algebra. Orders outside
/// {2,3,4,6,8} are rejected unless allow_any_m is set. `split_c`, when given,
/// fixes c_j for each 2-dimensional irrep (c_j′ = product / c_j).
template <class F>
std::vector<Irrep<F>> build_irreps(int m, const Rational& q, const Rational& r, bool allow_any_m = false,
                                   const std::vector<F>& split_c = {}) {
  using Fd = Field<F>;
  if (m < 2) throw Error(ErrorKind::InvalidInput, "m must be ≥ 2");
  if (sgn(q) <= 0 || sgn(r) <= 0) throw Error(ErrorKind::InvalidInput, "parameters must be positive");
  if (m % 2 == 1 && q != r) throw Error(ErrorKind::InvalidInput, "odd m requires q = r");
  if (!allow_any_m && !feit_higman_order(m)) {
    throw Error(ErrorKind::RejectedByFeitHigman, "no finite thick generalised " + std::to_string(m) + "-gon exists");
  }
  const F one(1);
  const F zero(0);
  const F minus_qinv = Fd::from_rational(Rational(-1 / q));
  const F minus_rinv = Fd::from_rational(Rational(-1 / r));

  std::vector<Irrep<F>> out;
  auto one_dim = [&](IrrepKind kind, const F& a, const F& b) {
    Irrep<F> rho;
    rho.kind = kind;
    rho.t1 = Mat2<F>::scalar(a);
    rho.t2 = Mat2<F>::scalar(b);
    out.push_back(rho);
  };
  one_dim(IrrepKind::Trivial, one, one);
  one_dim(IrrepKind::Sign, minus_qinv, minus_rinv);
  if (m % 2 == 0) {
    one_dim(IrrepKind::OneDimFirst, one, minus_rinv);
    one_dim(IrrepKind::OneDimSecond, minus_qinv, one);
  }
  const int count = (m % 2 == 1) ? (m - 1) / 2 : (m - 2) / 2;
  if (!split_c.empty() && static_cast<int>(split_c.size()) != count) {
    throw Error(ErrorKind::InvalidInput, "split_c needs one value per 2-dimensional irrep");
  }
  const F qinv = Fd::from_rational(Rational(1 / q));
  const F rinv = Fd::from_rational(Rational(1 / r));
  for (int j = 1; j <= count; ++j) {
    const F product = two_dim_product<F>(m, q, r, j);
    F c;
    F c_prime;
    if (split_c.empty()) {
      std::tie(c, c_prime) = default_split(product);
    } else {
      c = split_c[j - 1];
      if (Fd::is_zero(c)) throw Error(ErrorKind::InvalidInput, "split factor must be nonzero");
      c_prime = product / c;
    }
    Irrep<F> rho;
    rho.kind = IrrepKind::TwoDim;
    rho.j = j;
    rho.dim = 2;
    rho.t1.dim = 2;
    rho.t1.a = {F(-qinv), zero, F(c * qinv), one};
    rho.t2.dim = 2;
    rho.t2.a = {one, F(c_prime * rinv), zero, F(-rinv)};
    out.push_back(rho);
  }
  return out;
}

/// Irreps of a rank-2 algebra with their images on every basis element and
/// their multiplicities in the geometric representation.
template <class F>
class CharacterTable {
 public:
  CharacterTable(HeckeAlgebraPtr algebra, std::vector<Irrep<F>> irreps) : algebra_(std::move(algebra)), irreps_(std::move(irreps)) {
    const auto& sys = algebra_->system();
    if (sys.rank() != 2) throw Error(ErrorKind::InvalidInput, "character tables are implemented for rank 2 only");
    chamber_count_ = Field<F>::from_rational(algebra_->chamber_count());
    for (const auto& rho : irreps_) {
      std::vector<Mat2<F>> img(sys.size());
      img[0] = Mat2<F>::identity(rho.dim);
      // Elements are in ShortLex order, so every prefix precedes its extension.
      for (std::size_t w = 1; w < sys.size(); ++w) {
        const auto word = sys.element(w).word();
        const Generator last = word.back();
        const std::size_t prefix = sys.right_mul(w, last);
        img[w] = img[prefix] * (last == 0 ? rho.t1 : rho.t2);
      }
      images_.push_back(std::move(img));
    }
    for (std::size_t i = 0; i < irreps_.size(); ++i) {
      const auto chi = character_values(i);
      const F norm = inner_product(chi, chi);
      if (Field<F>::is_zero(norm)) throw Error(ErrorKind::InvalidInput, "degenerate character norm");
      multiplicities_.push_back(F(F(irreps_[i].dim) / norm));
    }
  }

  const HeckeAlgebra& algebra() const noexcept { return *algebra_; }
  const std::vector<Irrep<F>>& irreps() const noexcept { return irreps_; }
  std::size_t size() const noexcept { return irreps_.size(); }
  const F& multiplicity(std::size_t i) const { return multiplicities_.at(i); }
  const std::vector<F>& multiplicities() const noexcept { return multiplicities_; }
  const F& chamber_count() const noexcept { return chamber_count_; }
  const Mat2<F>& image(std::size_t i, std::size_t w) const { return images_.at(i).at(w); }

  /// χ_ρ(T_w) for every w.
  std::vector<F> character_values(std::size_t i) const {
    std::vector<F> out;
    out.reserve(images_[i].size());
    for (const auto& m : images_[i]) out.push_back(m.trace());
    return out;
  }

  /// ⟨f,g⟩ = (1/|Δ|) Σ_w q_w f(T_w) g(T_{w⁻¹}).
  F inner_product(const std::vector<F>& f, const std::vector<F>& g) const {
    const auto& sys = algebra_->system();
    F total(0);
    for (std::size_t w = 0; w < sys.size(); ++w) {
      total += Field<F>::from_rational(algebra_->qw(w)) * f[w] * g[sys.inverse(w)];
    }
    return total / chamber_count_;
  }

  template <class S>
  Mat2<F> apply(std::size_t i, const HeckeElement<S>& h) const {
    Mat2<F> out = Mat2<F>::zero(irreps_[i].dim);
    for (const auto& [w, a] : h.terms()) out += images_[i][w] * to_field(a);
    return out;
  }

  template <class S>
  Mat2<F> apply(std::size_t i, const WalkSpec<S>& spec) const {
    Mat2<F> out = Mat2<F>::zero(irreps_[i].dim);
    for (const auto& [w, a] : spec.coefficients()) out += images_[i][w] * to_field(a);
    return out;
  }

  /// Image of T* for a real walk T: Σ a_w ρ(T_{w⁻¹}).
  template <class S>
  Mat2<F> apply_star(std::size_t i, const WalkSpec<S>& spec) const {
    const auto& sys = algebra_->system();
    Mat2<F> out = Mat2<F>::zero(irreps_[i].dim);
    for (const auto& [w, a] : spec.coefficients()) out += images_[i][sys.inverse(w)] * to_field(a);
    return out;
  }

  static F to_field(const Rational& x) { return Field<F>::from_rational(x); }
  static F to_field(double x) {
    if constexpr (Field<F>::exact) {
      return Field<F>::from_rational(Rational(x));
    } else {
      return x;
    }
  }

 private:
  HeckeAlgebraPtr algebra_;
  std::vector<Irrep<F>> irreps_;
  std::vector<std::vector<Mat2<F>>> images_;
  std::vector<F> multiplicities_;
  F chamber_count_ = F(0);
};

/// Character table of I₂(m) built from the algebra's parameters.
template <class F>
CharacterTable<F> make_character_table(const HeckeAlgebraPtr& algebra, bool allow_any_m = false,
                                       const std::vector<F>& split_c = {}) {
  const auto& mat = algebra->system().matrix();
  if (mat.rank() != 2) throw Error(ErrorKind::InvalidInput, "character tables are implemented for rank 2 only");
  return CharacterTable<F>(algebra, build_irreps<F>(mat(0, 1), algebra->q(0), algebra->q(1), allow_any_m, split_c));
}

/// χ_ρ(h) = tr ρ(h).
template <class F, class S>
F character(const CharacterTable<F>& table, std::size_t i, const HeckeElement<S>& h) {
  return table.apply(i, h).trace();
}

template <class F>
F char_inner_product(const CharacterTable<F>& table, const std::vector<F>& f, const std::vector<F>& g) {
  return table.inner_product(f, g);
}

/// p⁽ⁿ⁾(x,y) for every Weyl distance w, from
/// (1/|Δ|) Σ_ρ m_ρ tr(ρ(T)ⁿ ρ(T_{w⁻¹})).
template <class F, class S>
std::vector<F> pn_characters_all(const CharacterTable<F>& table, const WalkSpec<S>& spec, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  const auto& sys = table.algebra().system();
  std::vector<F> out(sys.size(), F(0));
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Mat2<F> tn = power(table.apply(i, spec), n);
    for (std::size_t w = 0; w < sys.size(); ++w) {
      out[w] += table.multiplicity(i) * (tn * table.image(i, sys.inverse(w))).trace();
    }
  }
  for (auto& v : out) v = v / table.chamber_count();
  return out;
}

template <class F, class S>
F pn_characters(const CharacterTable<F>& table, const WalkSpec<S>& spec, int n, std::size_t w) {
  return pn_characters_all(table, spec, n).at(w);
}

/// ¼ Σ_{ρ≠triv} m_ρ χ_ρ(Tⁿ(T*)ⁿ).
template <class F, class S>
F tv_bound_squared(const CharacterTable<F>& table, const WalkSpec<S>& spec, int n) {
  F total(0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.irreps()[i].kind == IrrepKind::Trivial) continue;
    const Mat2<F> m = power(table.apply(i, spec), n) * power(table.apply_star(i, spec), n);
    total += table.multiplicity(i) * m.trace();
  }
  return total / F(4);
}

template <class F, class S>
double tv_upper_bound(const CharacterTable<F>& table, const WalkSpec<S>& spec, int n) {
  return std::sqrt(std::max(0.0, Field<F>::to_double(tv_bound_squared(table, spec, n))));
}

// Quadrangle simple random walk in closed form ----------------------------

struct QuadrangleConstants {
  std::array<Rational, 4> k;  // multiplicities of sgn, rho1, rho2, rho_1
  Rational lambda1, lambda2, lambda3;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  Rational chamber_count;
};

QuadrangleConstants quadrangle_constants(const Rational& q, const Rational& r);

struct QuadrangleValue {
  double p_n_oo = 0.0;
  double tv_bound = 0.0;
};

QuadrangleValue quadrangle_srw_closed_form(const Rational& q, const Rational& r, int n);

// Feit–Higman and parameter checks -----------------------------------------

struct IrrepSummary {
  std::string label;
  int dim = 1;
  double multiplicity = 0.0;
  bool rational = false;
  std::optional<Rational> exact_multiplicity;
};

struct FeitHigmanEntry {
  int j = 0;
  double from_definition = 0.0;  // |Δ|⟨χ_j,χ_j⟩ by direct summation
  double closed_form = 0.0;
  std::string exact_definition;  // exact value in ℚ(√2,√3) when available
  std::string exact_closed_form;
};

struct FeitHigmanReport {
  int m = 0;
  Rational q, r;
  bool exact = false;
  bool admissible = false;
  Rational chamber_count;
  std::vector<IrrepSummary> irreps;
  std::vector<FeitHigmanEntry> inner_products;
};

/// |Δ|⟨χ_j,χ_j⟩ from the closed forms for odd and even m.
template <class F>
F feit_higman_closed_form(int m, const Rational& q, const Rational& r, int j) {
  using Fd = Field<F>;
  const F mf = Fd::from_rational(Rational(m));
  const F qf = Fd::from_rational(q);
  const F rf = Fd::from_rational(r);
  const F c = Fd::cos_two_pi(j, m);
  if (m % 2 == 1) {
    const F qm1 = qf - F(1);
    return F(2) * mf + qm1 * qm1 * mf / (qf * (F(1) - c));
  }
  const F sin2 = F(1) - c * c;
  const F qm1 = qf - F(1);
  const F rm1 = rf - F(1);
  const F root = Fd::sqrt_rational(Rational(q * r));
  return F(2) * mf + (rf * qm1 * qm1 + qf * rm1 * rm1) * mf / (F(2) * qf * rf * sin2) +
         qm1 * rm1 * mf * c / (root * sin2);
}

/// Nearest rational with denominator ≤ max_den within a relative 1e-9.
std::optional<Rational> recognise_rational(double x, const mpz_class& max_den, double tol = 1e-9);

/// True when every quantity needed for (m, q, r) lies in ℚ(√2,√3).
bool exact_tower_applies(int m, const Rational& q, const Rational& r);

FeitHigmanReport feit_higman_check(int m, const Rational& q, const Rational& r);
nlohmann::json to_json(const FeitHigmanReport& report);

struct ConstraintResult {
  std::string name;
  bool passed = false;
};

std::vector<ConstraintResult> parameter_constraints(int m, const mpz_class& q, const mpz_class& r);

struct KnownParameters {
  int m;
  long q;
  long r;
  std::string source;
};

/// Parameters of known finite thick generalised polygons (display data).
const std::vector<KnownParameters>& known_parameter_catalogue();

/// (3(q−1) + √(q² + 34q + 1)) / 6q.
double a2_chamber_spectral_radius(double q);

}  // namespace buildwalk
