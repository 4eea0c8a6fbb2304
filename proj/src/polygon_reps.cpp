#include "buildwalk/polygon_reps.hpp"

#include <cmath>

namespace buildwalk {

QuadrangleConstants quadrangle_constants(const Rational& q, const Rational& r) {
  if (sgn(q) <= 0 || sgn(r) <= 0) throw Error(ErrorKind::InvalidInput, "parameters must be positive");
  QuadrangleConstants c;
  const Rational s = q + r;
  const Rational qr1 = q * r + 1;
  c.k[0] = q * q * r * r;
  c.k[1] = r * r * qr1 / s;
  c.k[2] = q * q * qr1 / s;
  c.k[3] = q * r * (q + 1) * (r + 1) / s;
  c.lambda1 = Rational(-2) / s;
  c.lambda2 = (q - 1) / s;
  c.lambda3 = (r - 1) / s;
  const double sd = s.get_d();
  const double diff = Rational(q - r).get_d();
  const double disc = std::sqrt(diff * diff + 4.0 * sd);
  c.lambda_plus = (sd - 2.0 + disc) / (2.0 * sd);
  c.lambda_minus = (sd - 2.0 - disc) / (2.0 * sd);
  c.chamber_count = (q + 1) * (r + 1) * qr1;
  return c;
}

QuadrangleValue quadrangle_srw_closed_form(const Rational& q, const Rational& r, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  const auto c = quadrangle_constants(q, r);
  const double k1 = c.k[0].get_d();
  const double k2 = c.k[1].get_d();
  const double k3 = c.k[2].get_d();
  const double k4 = c.k[3].get_d();
  const double l1 = c.lambda1.get_d();
  const double l2 = c.lambda2.get_d();
  const double l3 = c.lambda3.get_d();
  auto pw = [](double x, int e) { return std::pow(x, e); };
  QuadrangleValue v;
  v.p_n_oo = (1.0 + k1 * pw(l1, n) + k2 * pw(l2, n) + k3 * pw(l3, n) +
              k4 * (pw(c.lambda_plus, n) + pw(c.lambda_minus, n))) /
             c.chamber_count.get_d();
  const double bound2 = 0.25 * (k1 * pw(l1, 2 * n) + k2 * pw(l2, 2 * n) + k3 * pw(l3, 2 * n) +
                                k4 * (pw(c.lambda_plus, 2 * n) + pw(c.lambda_minus, 2 * n)));
  v.tv_bound = std::sqrt(std::max(0.0, bound2));
  return v;
}

std::optional<Rational> recognise_rational(double x, const mpz_class& max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const double scale = std::max(1.0, std::abs(x));
  mpz_class h_prev = 1, h_prev2 = 0;
  mpz_class k_prev = 0, k_prev2 = 1;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(v);
    const mpz_class a(a_d);
    const mpz_class h = a * h_prev + h_prev2;
    const mpz_class k = a * k_prev + k_prev2;
    if (k > max_den) break;
    const Rational approx(h, k);
    if (std::abs(x - approx.get_d()) <= tol * scale) {
      Rational out = approx;
      out.canonicalize();
      return out;
    }
    const double frac = v - a_d;
    if (frac <= 0.0) break;
    v = 1.0 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

bool exact_tower_applies(int m, const Rational& q, const Rational& r) {
  const int count = (m % 2 == 1) ? (m - 1) / 2 : (m - 2) / 2;
  for (int j = 1; j <= count; ++j) {
    if (!cos_two_pi(j, m)) return false;
  }
  if (m % 2 == 0 && count > 0 && !sqrt_of_rational(Rational(q * r))) return false;
  return true;
}

namespace {

template <class F>
void fill_report(FeitHigmanReport& report, const HeckeAlgebraPtr& algebra) {
  const auto table = make_character_table<F>(algebra, true);
  mpz_class max_den = report.chamber_count.get_num() / report.chamber_count.get_den();
  if (max_den < 1) max_den = 1;
  report.admissible = true;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& rho = table.irreps()[i];
    IrrepSummary s;
    s.label = rho.label();
    s.dim = rho.dim;
    s.multiplicity = Field<F>::to_double(table.multiplicity(i));
    if constexpr (Field<F>::exact) {
      s.rational = table.multiplicity(i).is_rational();
      if (s.rational) s.exact_multiplicity = table.multiplicity(i).as_rational();
    } else {
      s.exact_multiplicity = recognise_rational(s.multiplicity, max_den);
      s.rational = s.exact_multiplicity.has_value();
    }
    report.admissible = report.admissible && s.rational;
    report.irreps.push_back(std::move(s));

    if (rho.kind != IrrepKind::TwoDim) continue;
    const auto chi = table.character_values(i);
    const F definition = table.inner_product(chi, chi) * table.chamber_count();
    FeitHigmanEntry e;
    e.j = rho.j;
    e.from_definition = Field<F>::to_double(definition);
    if constexpr (Field<F>::exact) {
      const F closed = feit_higman_closed_form<F>(report.m, report.q, report.r, rho.j);
      e.closed_form = closed.to_double();
      e.exact_definition = definition.to_string();
      e.exact_closed_form = closed.to_string();
    } else {
      e.closed_form = feit_higman_closed_form<double>(report.m, report.q, report.r, rho.j);
    }
    report.inner_products.push_back(std::move(e));
  }
}

}  // namespace

FeitHigmanReport feit_higman_check(int m, const Rational& q, const Rational& r) {
  if (m < 2) throw Error(ErrorKind::InvalidInput, "m must be ≥ 2");
  if (q <= 1 || r <= 1) throw Error(ErrorKind::InvalidInput, "thick parameters need q, r > 1");
  if (m % 2 == 1 && q != r) throw Error(ErrorKind::InvalidInput, "odd m requires q = r");
  FeitHigmanReport report;
  report.m = m;
  report.q = q;
  report.r = r;
  const auto algebra = make_dihedral_algebra(m, q, r);
  report.chamber_count = algebra->chamber_count();
  report.exact = exact_tower_applies(m, q, r);
  if (report.exact) {
    fill_report<Surd>(report, algebra);
  } else {
    fill_report<double>(report, algebra);
  }
  return report;
}

nlohmann::json to_json(const FeitHigmanReport& report) {
  nlohmann::json irreps = nlohmann::json::array();
  for (const auto& s : report.irreps) {
    nlohmann::json item{{"label", s.label}, {"dim", s.dim}, {"multiplicity", s.multiplicity}, {"rational", s.rational}};
    if (s.exact_multiplicity) item["multiplicity_exact"] = to_string(*s.exact_multiplicity);
    irreps.push_back(std::move(item));
  }
  nlohmann::json products = nlohmann::json::array();
  for (const auto& e : report.inner_products) {
    nlohmann::json item{{"j", e.j}, {"from_definition", e.from_definition}, {"closed_form", e.closed_form}};
    if (!e.exact_definition.empty()) {
      item["exact_definition"] = e.exact_definition;
      item["exact_closed_form"] = e.exact_closed_form;
    }
    products.push_back(std::move(item));
  }
  return {{"m", report.m},
          {"q", to_string(report.q)},
          {"r", to_string(report.r)},
          {"chamber_count", to_string(report.chamber_count)},
          {"exact", report.exact},
          {"admissible", report.admissible},
          {"irreps", irreps},
          {"inner_products", products}};
}

namespace {

bool divides(const mpz_class& num, const mpz_class& den) { return num % den == 0; }

bool perfect_square(const mpz_class& n) {
  if (n < 0) return false;
  const mpz_class root = sqrt(n);
  return root * root == n;
}

bool sum_of_two_squares(const mpz_class& n) {
  for (mpz_class a = 0; a * a <= n; ++a) {
    if (perfect_square(n - a * a)) return true;
  }
  return false;
}

}  // namespace

std::vector<ConstraintResult> parameter_constraints(int m, const mpz_class& q, const mpz_class& r) {
  if (q < 2 || r < 2) throw Error(ErrorKind::InvalidInput, "parameter checks need integers q, r ≥ 2");
  std::vector<ConstraintResult> out;
  switch (m) {
    case 3: {
      out.push_back({"q = r", q == r});
      const mpz_class residue = q % 4;
      const bool applies = residue == 1 || residue == 2;
      out.push_back({"q ≡ 1,2 mod 4 ⇒ q is a sum of two squares", !applies || sum_of_two_squares(q)});
      break;
    }
    case 4:
      out.push_back({"q ≤ r²", q <= r * r});
      out.push_back({"r ≤ q²", r <= q * q});
      out.push_back({"q²(qr+1)/(q+r) ∈ ℤ", divides(q * q * (q * r + 1), q + r)});
      break;
    case 6:
      out.push_back({"q ≤ r³", q <= r * r * r});
      out.push_back({"r ≤ q³", r <= q * q * q});
      out.push_back({"q³(q²r²+qr+1)/(q²+qr+r²) ∈ ℤ",
                     divides(q * q * q * (q * q * r * r + q * r + 1), q * q + q * r + r * r)});
      out.push_back({"√(qr) ∈ ℤ", perfect_square(q * r)});
      break;
    case 8:
      out.push_back({"q ≤ r²", q <= r * r});
      out.push_back({"r ≤ q²", r <= q * q});
      out.push_back({"q⁴(qr+1)(q²r²+1)/((q+r)(q²+r²)) ∈ ℤ",
                     divides(q * q * q * q * (q * r + 1) * (q * q * r * r + 1), (q + r) * (q * q + r * r))});
      out.push_back({"√(2qr) ∈ ℤ", perfect_square(2 * q * r)});
      break;
    default:
      throw Error(ErrorKind::InvalidInput, "parameter constraints exist for m ∈ {3,4,6,8} only");
  }
  return out;
}

const std::vector<KnownParameters>& known_parameter_catalogue() {
  static const std::vector<KnownParameters> catalogue = {
      {2, 2, 2, "complete bipartite graph"},
      {2, 2, 3, "complete bipartite graph"},
      {2, 3, 5, "complete bipartite graph"},
      {3, 2, 2, "Desarguesian plane PG(2,2)"},
      {3, 3, 3, "Desarguesian plane PG(2,3)"},
      {3, 4, 4, "Desarguesian plane PG(2,4)"},
      {3, 5, 5, "Desarguesian plane PG(2,5)"},
      {3, 7, 7, "Desarguesian plane PG(2,7)"},
      {3, 8, 8, "Desarguesian plane PG(2,8)"},
      {3, 9, 9, "Desarguesian plane PG(2,9)"},
      {4, 2, 2, "symplectic quadrangle W(2)"},
      {4, 3, 3, "symplectic quadrangle W(3)"},
      {4, 4, 4, "symplectic quadrangle W(4)"},
      {4, 2, 4, "elliptic quadric Q⁻(5,2)"},
      {4, 4, 2, "Hermitian quadrangle H(3,4)"},
      {4, 3, 9, "elliptic quadric Q⁻(5,3)"},
      {4, 9, 3, "Hermitian quadrangle H(3,9)"},
      {4, 4, 8, "Hermitian quadrangle H(4,4)"},
      {4, 8, 4, "dual of H(4,4)"},
      {4, 3, 5, "Ahrens–Szekeres quadrangle"},
      {4, 5, 3, "Ahrens–Szekeres quadrangle dual"},
      {6, 2, 2, "split Cayley hexagon H(2)"},
      {6, 3, 3, "split Cayley hexagon H(3)"},
      {6, 4, 4, "split Cayley hexagon H(4)"},
      {6, 2, 8, "twisted triality hexagon T(2,8)"},
      {6, 8, 2, "twisted triality hexagon T(8,2)"},
      {8, 2, 4, "Ree–Tits octagon"},
      {8, 4, 2, "Ree–Tits octagon dual"},
  };
  return catalogue;
}

double a2_chamber_spectral_radius(double q) {
  if (!(q > 1.0)) throw Error(ErrorKind::InvalidInput, "the chamber spectral radius needs q > 1");
  return (3.0 * (q - 1.0) + std::sqrt(q * q + 34.0 * q + 1.0)) / (6.0 * q);
}

}  // namespace buildwalk
