#include "buildwalk/affine_c2.hpp"

#include <algorithm>
#include <cmath>

namespace buildwalk {

namespace {

Rational rational_pow(const Rational& x, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

}  // namespace

Rational vertex_count(const C2Params& p, int k, int l) {
  if (k < 0 || l < 0) throw Error(ErrorKind::InvalidInput, "lattice coordinates must be ≥ 0");
  const Rational& q = p.q;
  const Rational& r = p.r;
  if (k == 0 && l == 0) return 1;
  const Rational qr1 = q * r + 1;
  if (l == 0) return (r + 1) * qr1 * q * rational_pow(q * q * r * r, k - 1);
  if (k == 0) return (q + 1) * qr1 * rational_pow(q * q * r, l - 1);
  return (q + 1) * (r + 1) * qr1 * q * q * r * rational_pow(q * q * r * r, k - 1) * rational_pow(q * q * r, l - 1);
}

double vertex_count_float(const C2Params& p, int k, int l) {
  const double q = p.qd();
  const double r = p.rd();
  if (k == 0 && l == 0) return 1.0;
  const double qr1 = q * r + 1.0;
  if (l == 0) return (r + 1) * qr1 * q * std::pow(q * q * r * r, k - 1);
  if (k == 0) return (q + 1) * qr1 * std::pow(q * q * r, l - 1);
  return (q + 1) * (r + 1) * qr1 * q * q * r * std::pow(q * q * r * r, k - 1) * std::pow(q * q * r, l - 1);
}

// Poly2 ---------------------------------------------------------------------

Poly2::Poly2(const Rational& c) { add_term({0, 0}, c); }

Poly2 Poly2::q() {
  Poly2 p;
  p.add_term({1, 0}, 1);
  return p;
}

Poly2 Poly2::r() {
  Poly2 p;
  p.add_term({0, 1}, 1);
  return p;
}

void Poly2::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
  }
  return out;
}

Rational Poly2::eval(const Rational& q, const Rational& r) const {
  Rational out = 0;
  for (const auto& [m, c] : terms_) out += c * rational_pow(q, m.first) * rational_pow(r, m.second);
  return out;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coeff = buildwalk::to_string(Rational(abs(c)));
    out += out.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    std::string mono;
    if (m.first > 0) mono += m.first == 1 ? "q" : "q^" + std::to_string(m.first);
    if (m.second > 0) mono += m.second == 1 ? "r" : "r^" + std::to_string(m.second);
    if (mono.empty()) {
      out += coeff;
    } else {
      out += (coeff == "1" ? "" : coeff) + mono;
    }
  }
  return out;
}

Poly2 Poly2::divide_exact(const Poly2& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
  // Lex order with q before r; the largest key of the map is the leading term.
  Poly2 quotient;
  Poly2 rem = *this;
  const auto& [lead_m, lead_c] = *divisor.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms_.rbegin();
    if (rm.first < lead_m.first || rm.second < lead_m.second) {
      throw Error(ErrorKind::UnsupportedBoundary,
                  "(" + to_string() + ") is not divisible by (" + divisor.to_string() + ")");
    }
    Poly2 step;
    step.add_term({rm.first - lead_m.first, rm.second - lead_m.second}, Rational(rc / lead_c));
    quotient += step;
    rem -= step * divisor;
  }
  return quotient;
}

// Recursion rows ------------------------------------------------------------

std::string_view to_string(C2Generator g) { return g == C2Generator::A10 ? "A10" : "A01"; }

Poly2 normaliser(C2Generator g) {
  const Poly2 q = Poly2::q();
  const Poly2 r = Poly2::r();
  if (g == C2Generator::A10) return q * (r + 1) * (q * r + 1);
  return (q + 1) * (q * r + 1);
}

Poly2 RecursionRow::coefficient_sum() const {
  Poly2 out;
  for (const auto& t : terms) out += t.coeff;
  return out;
}

RecursionRow reconstruct_by_commutativity(const RecursionRow& a01_row) {
  if (a01_row.generator != C2Generator::A01 || !a01_row.applies(1, 0)) {
    throw Error(ErrorKind::UnsupportedBoundary, "commutativity reconstruction needs the A01 row covering (1,0)");
  }
  // N10·A01·A10 = (N10/N01)·(N01·A10·A01), with the A01 row evaluated at (1,0).
  const Poly2 n10 = normaliser(C2Generator::A10);
  const Poly2 n01 = normaliser(C2Generator::A01);
  RecursionRow row;
  row.name = "A(0,1)·A10 [from commutativity]";
  row.generator = C2Generator::A10;
  row.m_lo = row.m_hi = 0;
  row.n_lo = row.n_hi = 1;
  row.reconstructed = true;
  for (const auto& t : a01_row.terms) {
    const int target_m = 1 + t.dm;
    const int target_n = 0 + t.dn;
    row.terms.push_back({(t.coeff * n10).divide_exact(n01), target_m - 0, target_n - 1});
  }
  return row;
}

namespace {

RecursionTable build_standard_table() {
  const Poly2 q = Poly2::q();
  const Poly2 r = Poly2::r();
  const Poly2 one(1);
  using G = C2Generator;
  std::vector<RecursionRow> rows;
  rows.push_back({"A(m,n)·A10, m≥1, n≥2", G::A10, 1, -1, 2, -1,
                  {{r, 1, -2}, {(q - 1) * (r + 1), 0, 0}, {q * q * r * r, 1, 0}, {q * q * r, -1, 2}, {one, -1, 0}}});
  rows.push_back({"A(0,n)·A10, n≥2", G::A10, 0, 0, 2, -1,
                  {{r + 1, 1, -2}, {(q - 1) * (r + 1), 0, 0}, {q * q * r * (r + 1), 1, 0}}});
  rows.push_back({"A(m,0)·A10, m≥1", G::A10, 1, -1, 0, 0,
                  {{q * r * (q + 1), -1, 2}, {q * q * r * r, 1, 0}, {q - 1, 0, 0}, {one, -1, 0}}});
  rows.push_back({"A(m,1)·A10, m≥1", G::A10, 1, -1, 1, 1,
                  {{q * q * r * r, 1, 0}, {q * q * r, -1, 2}, {one, -1, 0}, {q * r + q - 1, 0, 0}}});
  rows.push_back({"A(0,0)·A10", G::A10, 0, 0, 0, 0, {{normaliser(G::A10), 1, 0}}});
  rows.push_back({"A(m,n)·A01, m≥1, n≥1", G::A01, 1, -1, 1, -1,
                  {{one, 0, -1}, {q * r, 1, -1}, {q, -1, 1}, {q * q * r, 0, 1}}});
  rows.push_back({"A(0,n)·A01, n≥1", G::A01, 0, 0, 1, -1,
                  {{one, 0, -1}, {q * q * r, 0, 1}, {q * (r + 1), 1, -1}}});
  rows.push_back({"A(m,0)·A01, m≥1", G::A01, 1, -1, 0, 0, {{q + 1, -1, 1}, {q * r * (q + 1), 0, 1}}});
  rows.push_back({"A(0,0)·A01", G::A01, 0, 0, 0, 0, {{normaliser(G::A01), 0, 1}}});
  const RecursionRow a01_boundary = rows[7];
  rows.push_back(reconstruct_by_commutativity(a01_boundary));
  return RecursionTable(std::move(rows));
}

}  // namespace

const RecursionTable& RecursionTable::standard() {
  static const RecursionTable table = build_standard_table();
  return table;
}

const RecursionRow& RecursionTable::select(C2Generator g, int m, int n) const {
  const RecursionRow* found = nullptr;
  for (const auto& row : rows_) {
    if (row.generator != g || !row.applies(m, n)) continue;
    if (found != nullptr) {
      throw Error(ErrorKind::UnsupportedBoundary, "ambiguous recursion rows for (" + std::to_string(m) + "," +
                                                      std::to_string(n) + ")·" + std::string(to_string(g)));
    }
    found = &row;
  }
  if (found == nullptr) {
    throw Error(ErrorKind::UnsupportedBoundary, "no recursion row covers A(" + std::to_string(m) + "," +
                                                    std::to_string(n) + ")·" + std::string(to_string(g)));
  }
  return *found;
}

std::vector<RecursionTable::AuditEntry> RecursionTable::audit() const {
  std::vector<AuditEntry> out;
  for (const auto& row : rows_) {
    const Poly2 sum = row.coefficient_sum();
    const Poly2 expected = normaliser(row.generator);
    out.push_back({row.name, row.reconstructed, sum.to_string(), expected.to_string(), sum == expected});
  }
  return out;
}

// Evolution -----------------------------------------------------------------

namespace {

template <class S>
S from_rational(const Rational& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return x;
  } else {
    return x.get_d();
  }
}

// Each row's coefficients divided by N, evaluated at (q, r).
template <class S>
struct EvaluatedRow {
  const RecursionRow* row;
  std::vector<S> weights;
};

template <class S>
class RowCache {
 public:
  explicit RowCache(const C2Params& p) {
    const auto& table = RecursionTable::standard();
    for (auto g : {C2Generator::A10, C2Generator::A01}) {
      const Rational norm = normaliser(g).eval(p.q, p.r);
      // Rows are constant on these six boundary classes.
      for (int cls = 0; cls < 6; ++cls) {
        const RecursionRow& row = table.select(g, cls / 3, cls % 3);
        EvaluatedRow<S> ev{&row, {}};
        for (const auto& t : row.terms) ev.weights.push_back(from_rational<S>(Rational(t.coeff.eval(p.q, p.r) / norm)));
        rows_[g == C2Generator::A10 ? 0 : 1][cls] = std::move(ev);
      }
    }
  }

  const EvaluatedRow<S>& get(C2Generator g, int m, int n) const {
    const int cls = std::min(m, 1) * 3 + std::min(n, 2);
    return rows_[g == C2Generator::A10 ? 0 : 1][cls];
  }

 private:
  std::array<std::array<EvaluatedRow<S>, 6>, 2> rows_;
};

template <class S>
void check_walk_support(const LatticeDistribution<S>& walk) {
  for (const auto& [pt, v] : walk.terms()) {
    const bool ok = pt == LatticePoint{0, 0} || pt == LatticePoint{1, 0} || pt == LatticePoint{0, 1};
    if (!ok) {
      throw Error(ErrorKind::InvalidInput, "the exact engine supports walks on {(0,0),(1,0),(0,1)} only; use the spectral route");
    }
    if (ScalarTraits<S>::is_negative(v)) throw Error(ErrorKind::InvalidWalk, "walk coefficients must be ≥ 0");
  }
  const double total = ScalarTraits<S>::to_double(walk.total());
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::InvalidWalk, "walk coefficients must sum to 1");
}

// Dense storage over 2k + l ≤ bound.
template <class S>
class DenseGrid {
 public:
  explicit DenseGrid(int bound) : bound_(bound), width_(bound + 1), cells_((bound / 2 + 1) * (bound + 1), S(0)) {}

  int bound() const { return bound_; }
  S& at(int k, int l) { return cells_[static_cast<std::size_t>(k) * width_ + l]; }
  const S& at(int k, int l) const { return cells_[static_cast<std::size_t>(k) * width_ + l]; }
  void clear() { std::fill(cells_.begin(), cells_.end(), S(0)); }

 private:
  int bound_;
  std::size_t width_;
  std::vector<S> cells_;
};

template <class S>
class Evolver {
 public:
  Evolver(const C2Params& p, const LatticeDistribution<S>& walk, int steps)
      : cache_(p),
        a00_(walk.at(0, 0)),
        a10_(walk.at(1, 0)),
        a01_(walk.at(0, 1)),
        growth_(ScalarTraits<S>::is_zero(a10_) ? 1 : 2),
        cur_(steps * growth_ + 2),
        next_(steps * growth_ + 2) {
    cur_.at(0, 0) = S(1);
  }

  const DenseGrid<S>& state() const { return cur_; }

  void step() {
    next_.clear();
    const int limit = std::min(reach_, cur_.bound());
    for (int k = 0; 2 * k <= limit; ++k) {
      for (int l = 0; 2 * k + l <= limit; ++l) {
        const S& v = cur_.at(k, l);
        if (ScalarTraits<S>::is_zero(v)) continue;
        if (!ScalarTraits<S>::is_zero(a00_)) next_.at(k, l) += a00_ * v;
        if (!ScalarTraits<S>::is_zero(a10_)) scatter(C2Generator::A10, k, l, S(a10_ * v));
        if (!ScalarTraits<S>::is_zero(a01_)) scatter(C2Generator::A01, k, l, S(a01_ * v));
      }
    }
    std::swap(cur_, next_);
    reach_ += growth_;
  }

  LatticeDistribution<S> distribution() const {
    LatticeDistribution<S> out;
    for (int k = 0; 2 * k <= cur_.bound(); ++k) {
      for (int l = 0; 2 * k + l <= cur_.bound(); ++l) out.add(k, l, cur_.at(k, l));
    }
    return out;
  }

 private:
  void scatter(C2Generator g, int k, int l, const S& v) {
    const auto& ev = cache_.get(g, k, l);
    for (std::size_t i = 0; i < ev.weights.size(); ++i) {
      const auto& t = ev.row->terms[i];
      next_.at(k + t.dm, l + t.dn) += ev.weights[i] * v;
    }
  }

  RowCache<S> cache_;
  S a00_, a10_, a01_;
  int growth_;
  int reach_ = 0;
  DenseGrid<S> cur_;
  DenseGrid<S> next_;
};

}  // namespace

template <class S>
LatticeDistribution<S> right_mul_generator(const C2Params& p, const LatticeDistribution<S>& dist, C2Generator g) {
  const auto& table = RecursionTable::standard();
  const Rational norm = normaliser(g).eval(p.q, p.r);
  LatticeDistribution<S> out;
  for (const auto& [pt, v] : dist.terms()) {
    const auto& row = table.select(g, pt.first, pt.second);
    for (const auto& t : row.terms) {
      out.add(pt.first + t.dm, pt.second + t.dn, S(from_rational<S>(Rational(t.coeff.eval(p.q, p.r) / norm)) * v));
    }
  }
  return out;
}

template <class S>
LatticeDistribution<S> exact_n_step(const C2Params& p, const LatticeDistribution<S>& walk, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  check_walk_support(walk);
  Evolver<S> ev(p, walk, n);
  for (int i = 0; i < n; ++i) ev.step();
  return ev.distribution();
}

template <class S>
std::vector<std::vector<S>> exact_n_step_series(const C2Params& p, const LatticeDistribution<S>& walk, int n,
                                                const std::vector<LatticePoint>& targets) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  check_walk_support(walk);
  Evolver<S> ev(p, walk, n);
  std::vector<std::vector<S>> out;
  auto record = [&] {
    std::vector<S> row;
    for (const auto& [k, l] : targets) {
      const bool inside = k >= 0 && l >= 0 && 2 * k + l <= ev.state().bound();
      row.push_back(inside ? ev.state().at(k, l) : S(0));
    }
    out.push_back(std::move(row));
  };
  record();
  for (int i = 0; i < n; ++i) {
    ev.step();
    record();
  }
  return out;
}

template LatticeDistribution<Rational> right_mul_generator(const C2Params&, const LatticeDistribution<Rational>&,
                                                           C2Generator);
template LatticeDistribution<double> right_mul_generator(const C2Params&, const LatticeDistribution<double>&,
                                                         C2Generator);
template LatticeDistribution<Rational> exact_n_step(const C2Params&, const LatticeDistribution<Rational>&, int);
template LatticeDistribution<double> exact_n_step(const C2Params&, const LatticeDistribution<double>&, int);
template std::vector<std::vector<Rational>> exact_n_step_series(const C2Params&, const LatticeDistribution<Rational>&,
                                                                int, const std::vector<LatticePoint>&);
template std::vector<std::vector<double>> exact_n_step_series(const C2Params&, const LatticeDistribution<double>&, int,
                                                              const std::vector<LatticePoint>&);

}  // namespace buildwalk
