#include "buildwalk/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <numbers>

#include "buildwalk/error.hpp"

namespace buildwalk {

namespace {

std::string key_of(std::span<const std::uint8_t> word) {
  return std::string(word.begin(), word.end());
}

void check_generator(const CoxeterMatrix& m, Generator s) {
  if (s < 0 || s >= m.rank()) {
    throw Error(ErrorKind::InvalidInput, "generator index " + std::to_string(s) + " out of range");
  }
}

// ---------------------------------------------------------------------------
// Rank 2: closed-form dihedral normal forms. An element is an alternating word
// (start, length); at length m the two alternating words coincide and the one
// starting with generator 0 is canonical.

struct Dihedral {
  int start = 0;
  int length = 0;
};

int last_letter(const Dihedral& d) { return (d.length % 2 == 1) ? d.start : 1 - d.start; }

Dihedral dihedral_of(const CoxeterElement& w) {
  if (w.is_identity()) return {};
  return {w.word()[0], w.length()};
}

CoxeterElement element_of(const Dihedral& d) {
  std::vector<std::uint8_t> word(static_cast<std::size_t>(d.length));
  for (int i = 0; i < d.length; ++i) word[i] = static_cast<std::uint8_t>((i % 2 == 0) ? d.start : 1 - d.start);
  return CoxeterElement::from_canonical_word(std::move(word));
}

std::pair<Dihedral, int> dihedral_times(int m, Dihedral d, Generator s) {
  const bool finite = m != kInfiniteOrder;
  if (d.length == 0) {
    Dihedral out{s, 1};
    if (finite && m == 1) out.start = 0;
    return {out, +1};
  }
  if (finite && d.length == m) {
    // w₀ has both generators as right descents; use the word ending in s.
    Dihedral rep{0, m};
    if (last_letter(rep) != s) rep.start = 1;
    return {{rep.start, m - 1}, -1};
  }
  if (last_letter(d) == s) return {{d.start, d.length - 1}, -1};
  Dihedral out{d.start, d.length + 1};
  if (finite && out.length == m) out.start = 0;
  return {out, +1};
}

// ---------------------------------------------------------------------------
// General rank: the geometric representation on the root basis. A generator s
// is a left descent of w iff w⁻¹(α_s) is a negative root.

class GeometricRep {
 public:
  explicit GeometricRep(const CoxeterMatrix& m) : n_(static_cast<std::size_t>(m.rank())), b_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const int mij = m(static_cast<int>(i), static_cast<int>(j));
        b_[i * n_ + j] = (mij == kInfiniteOrder) ? -1.0 : -std::cos(std::numbers::pi / mij);
      }
    }
  }

  // M ← M·S_s, where column j of S_s is e_j − 2B(α_s, α_j) e_s.
  void right_apply(std::vector<double>& mat, std::size_t s) const {
    for (std::size_t row = 0; row < n_; ++row) {
      const double ms = mat[row * n_ + s];
      if (ms == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) mat[row * n_ + j] -= 2.0 * b_[s * n_ + j] * ms;
    }
  }

  std::vector<double> identity() const {
    std::vector<double> mat(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) mat[i * n_ + i] = 1.0;
    return mat;
  }

  std::vector<std::uint8_t> normal_form(std::span<const Generator> word) const {
    // inv = w⁻¹ = S_{u_k} ⋯ S_{u_1}
    std::vector<double> inv = identity();
    for (auto s : word) left_apply(inv, static_cast<std::size_t>(s));
    std::vector<std::uint8_t> out;
    out.reserve(word.size());
    for (;;) {
      std::size_t descent = n_;
      for (std::size_t s = 0; s < n_; ++s) {
        double sum = 0.0;
        for (std::size_t row = 0; row < n_; ++row) sum += inv[row * n_ + s];
        if (sum < -1e-9) {
          descent = s;
          break;
        }
      }
      if (descent == n_) break;
      out.push_back(static_cast<std::uint8_t>(descent));
      right_apply(inv, descent);
      if (out.size() > word.size()) {
        throw Error(ErrorKind::InvalidInput, "normal form computation did not terminate");
      }
    }
    return out;
  }

 private:
  // M ← S_s·M: only row s changes, row_s −= 2 Σ_j B(s,j) row_j.
  void left_apply(std::vector<double>& mat, std::size_t s) const {
    std::vector<double> delta(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      const double bsj = b_[s * n_ + j];
      if (bsj == 0.0) continue;
      for (std::size_t col = 0; col < n_; ++col) delta[col] += bsj * mat[j * n_ + col];
    }
    for (std::size_t col = 0; col < n_; ++col) mat[s * n_ + col] -= 2.0 * delta[col];
  }

  std::size_t n_;
  std::vector<double> b_;
};

CoxeterElement reduce_general(const CoxeterMatrix& m, std::span<const Generator> word) {
  return CoxeterElement::from_canonical_word(GeometricRep(m).normal_form(word));
}

}  // namespace

// ---------------------------------------------------------------------------

CoxeterMatrix::CoxeterMatrix(const std::vector<std::vector<int>>& m) : rank_(static_cast<int>(m.size())) {
  if (rank_ < 1) throw Error(ErrorKind::InvalidInput, "Coxeter matrix must have rank ≥ 1");
  m_.reserve(m.size() * m.size());
  for (const auto& row : m) {
    if (row.size() != m.size()) throw Error(ErrorKind::InvalidInput, "Coxeter matrix must be square");
    m_.insert(m_.end(), row.begin(), row.end());
  }
  for (int s = 0; s < rank_; ++s) {
    if ((*this)(s, s) != 1) throw Error(ErrorKind::InvalidInput, "diagonal entries must be 1");
    for (int t = 0; t < rank_; ++t) {
      if ((*this)(s, t) != (*this)(t, s)) throw Error(ErrorKind::InvalidInput, "Coxeter matrix must be symmetric");
      if (s != t && (*this)(s, t) != kInfiniteOrder && (*this)(s, t) < 2) {
        throw Error(ErrorKind::InvalidInput, "off-diagonal entries must be ≥ 2 or ∞");
      }
    }
  }
}

std::vector<std::vector<int>> CoxeterMatrix::entries() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(rank_));
  for (int s = 0; s < rank_; ++s) {
    for (int t = 0; t < rank_; ++t) out[s].push_back((*this)(s, t));
  }
  return out;
}

nlohmann::json CoxeterMatrix::to_json() const { return {{"rank", rank_}, {"m", entries()}}; }

CoxeterMatrix CoxeterMatrix::from_json(const nlohmann::json& j) {
  try {
    CoxeterMatrix m(j.at("m").get<std::vector<std::vector<int>>>());
    if (j.contains("rank") && j.at("rank").get<int>() != m.rank()) {
      throw Error(ErrorKind::InvalidInput, "rank does not match matrix size");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed Coxeter matrix JSON: ") + e.what());
  }
}

CoxeterMatrix dihedral_system(int m) {
  if (m == kInfiniteOrder) throw Error(ErrorKind::InvalidInput, "infinite dihedral group is out of scope");
  if (m < 2) throw Error(ErrorKind::InvalidInput, "dihedral order m must be ≥ 2");
  return CoxeterMatrix({{1, m}, {m, 1}});
}

namespace diagrams {

namespace {

std::vector<std::vector<int>> commuting(int n) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void link(std::vector<std::vector<int>>& m, int a, int b, int order = 3) {
  m[a][b] = order;
  m[b][a] = order;
}

std::vector<std::vector<int>> path(int n, int order = 3) {
  auto m = commuting(n);
  for (int i = 0; i + 1 < n; ++i) link(m, i, i + 1, order);
  return m;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidInput, what);
}

}  // namespace

CoxeterMatrix A(int n) {
  require(n >= 1, "A_n needs n ≥ 1");
  return CoxeterMatrix(path(n));
}

CoxeterMatrix B(int n) {
  require(n >= 2, "B_n needs n ≥ 2");
  auto m = path(n);
  link(m, n - 2, n - 1, 4);
  return CoxeterMatrix(m);
}

CoxeterMatrix C(int n) { return B(n); }

CoxeterMatrix D(int n) {
  require(n >= 4, "D_n needs n ≥ 4");
  auto m = commuting(n);
  for (int i = 0; i + 1 < n - 1; ++i) link(m, i, i + 1);
  link(m, n - 3, n - 1);
  return CoxeterMatrix(m);
}

CoxeterMatrix E(int n) {
  require(n >= 6 && n <= 8, "E_n needs 6 ≤ n ≤ 8");
  // Bourbaki labelling, 0-based: 0-2-3-4-5(-6-7) with 1 attached to 3.
  auto m = commuting(n);
  link(m, 0, 2);
  for (int i = 2; i + 1 < n; ++i) link(m, i, i + 1);
  link(m, 1, 3);
  return CoxeterMatrix(m);
}

CoxeterMatrix F4() {
  auto m = path(4);
  link(m, 1, 2, 4);
  return CoxeterMatrix(m);
}

CoxeterMatrix G2() { return dihedral_system(6); }

CoxeterMatrix H3() {
  auto m = path(3);
  link(m, 0, 1, 5);
  return CoxeterMatrix(m);
}

CoxeterMatrix H4() {
  auto m = path(4);
  link(m, 0, 1, 5);
  return CoxeterMatrix(m);
}

CoxeterMatrix I2(int m) { return dihedral_system(m); }

CoxeterMatrix affine_A(int n) {
  require(n >= 1, "affine A_n needs n ≥ 1");
  if (n == 1) return CoxeterMatrix({{1, kInfiniteOrder}, {kInfiniteOrder, 1}});
  auto m = path(n + 1);
  link(m, n, 0);
  return CoxeterMatrix(m);
}

CoxeterMatrix affine_B(int n) {
  require(n >= 3, "affine B_n needs n ≥ 3");
  // B_n on nodes 0..n-1 plus node n attached to node 1.
  auto m = commuting(n + 1);
  for (int i = 0; i + 1 < n; ++i) link(m, i, i + 1);
  link(m, n - 2, n - 1, 4);
  link(m, n, 1);
  return CoxeterMatrix(m);
}

CoxeterMatrix affine_C(int n) {
  require(n >= 2, "affine C_n needs n ≥ 2");
  auto m = path(n + 1);
  link(m, 0, 1, 4);
  link(m, n - 1, n, 4);
  return CoxeterMatrix(m);
}

CoxeterMatrix affine_D(int n) {
  require(n >= 4, "affine D_n needs n ≥ 4");
  // Path 1..n-1 with forks: 0 attached to 2, n attached to n-2.
  auto m = commuting(n + 1);
  for (int i = 1; i + 1 <= n - 1; ++i) link(m, i, i + 1);
  link(m, 0, 2);
  link(m, n, n - 2);
  return CoxeterMatrix(m);
}

CoxeterMatrix affine_E(int n) {
  require(n >= 6 && n <= 8, "affine E_n needs 6 ≤ n ≤ 8");
  auto m = commuting(n + 1);
  link(m, 0, 2);
  for (int i = 2; i + 1 < n; ++i) link(m, i, i + 1);
  link(m, 1, 3);
  if (n == 6) link(m, 6, 1);  // extends the short arm
  if (n == 7) link(m, 7, 0);  // extends the 0-arm
  if (n == 8) link(m, 8, 7);  // extends the long arm
  return CoxeterMatrix(m);
}

CoxeterMatrix affine_F4() {
  auto m = path(5);
  link(m, 2, 3, 4);
  return CoxeterMatrix(m);
}

CoxeterMatrix affine_G2() {
  auto m = path(3);
  link(m, 1, 2, 6);
  return CoxeterMatrix(m);
}

}  // namespace diagrams

// ---------------------------------------------------------------------------

std::string CoxeterElement::to_string() const {
  if (word_.empty()) return "e";
  std::string out;
  for (auto g : word_) out += "s" + std::to_string(static_cast<int>(g) + 1);
  return out;
}

std::strong_ordering CoxeterElement::operator<=>(const CoxeterElement& other) const {
  if (auto c = word_.size() <=> other.word_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(word_.begin(), word_.end(), other.word_.begin(),
                                                other.word_.end());
}

std::vector<Generator> parse_word(std::string_view text) {
  std::vector<Generator> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip();
  if (text.substr(i) == "e") return out;
  while (i < text.size()) {
    if (text[i] == 's') ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw Error(ErrorKind::InvalidInput, "malformed word: '" + std::string(text) + "'");
    const int label = std::stoi(std::string(text.substr(start, i - start)));
    if (label < 1) throw Error(ErrorKind::InvalidInput, "generator labels are 1-based");
    out.push_back(label - 1);
    skip();
  }
  return out;
}

CoxeterElement reduce(const CoxeterMatrix& m, std::span<const Generator> word) {
  for (auto s : word) check_generator(m, s);
  if (m.rank() == 1) {
    return (word.size() % 2 == 0) ? CoxeterElement{} : CoxeterElement::from_canonical_word({0});
  }
  if (m.rank() == 2) {
    Dihedral d;
    for (auto s : word) d = dihedral_times(m(0, 1), d, s).first;
    return element_of(d);
  }
  return reduce_general(m, word);
}

Product right_multiply(const CoxeterMatrix& m, const CoxeterElement& w, Generator s) {
  check_generator(m, s);
  if (m.rank() == 2) {
    auto [d, sign] = dihedral_times(m(0, 1), dihedral_of(w), s);
    return {element_of(d), sign};
  }
  std::vector<Generator> word(w.word().begin(), w.word().end());
  word.push_back(s);
  CoxeterElement ws = reduce(m, word);
  const int sign = ws.length() > w.length() ? +1 : -1;
  return {std::move(ws), sign};
}

CoxeterElement inverse(const CoxeterMatrix& m, const CoxeterElement& w) {
  std::vector<Generator> word(w.word().rbegin(), w.word().rend());
  return reduce(m, word);
}

std::vector<CoxeterElement> enumerate_elements(const CoxeterMatrix& m, std::size_t cap) {
  std::vector<CoxeterElement> out{CoxeterElement{}};
  std::unordered_map<std::string, std::size_t> seen{{std::string{}, 0}};
  // Breadth-first over right multiplication. Processing each layer in order
  // and generators in increasing order discovers every element first through
  // its ShortLex-least reduced word.
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Generator s = 0; s < m.rank(); ++s) {
      auto [ws, sign] = right_multiply(m, out[head], s);
      if (sign < 0) continue;
      auto key = key_of(ws.word());
      if (seen.contains(key)) continue;
      if (out.size() >= cap) {
        throw Error(ErrorKind::GroupTooLarge,
                    "enumeration exceeded the cap of " + std::to_string(cap) + " elements");
      }
      seen.emplace(std::move(key), out.size());
      out.push_back(std::move(ws));
    }
  }
  return out;
}

bool generators_conjugate(const CoxeterMatrix& m, Generator s, Generator t) {
  check_generator(m, s);
  check_generator(m, t);
  std::vector<bool> reached(static_cast<std::size_t>(m.rank()), false);
  std::deque<Generator> queue{s};
  reached[s] = true;
  while (!queue.empty()) {
    const Generator a = queue.front();
    queue.pop_front();
    for (Generator b = 0; b < m.rank(); ++b) {
      const int mab = m(a, b);
      if (a == b || reached[b] || mab == kInfiniteOrder || mab % 2 == 0) continue;
      reached[b] = true;
      queue.push_back(b);
    }
  }
  return reached[t];
}

// ---------------------------------------------------------------------------

CoxeterSystem::CoxeterSystem(CoxeterMatrix m, std::size_t cap)
    : matrix_(std::move(m)), rank_(static_cast<std::size_t>(matrix_.rank())) {
  elements_ = enumerate_elements(matrix_, cap);
  lookup_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) lookup_.emplace(key_of(elements_[i].word()), i);

  const std::size_t n = elements_.size();
  right_.assign(n * rank_, 0);
  inverse_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < rank_; ++s) {
      right_[i * rank_ + s] = index_of(right_multiply(matrix_, elements_[i], static_cast<Generator>(s)).element);
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    const auto word = elements_[i].word();
    std::vector<Generator> inv_word(word.rbegin(), word.rend());
    inverse_[i] = index_of_word(inv_word);
  }
  left_.assign(n * rank_, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < rank_; ++s) {
      left_[i * rank_ + s] = inverse_[right_[inverse_[i] * rank_ + s]];
    }
  }
}

std::size_t CoxeterSystem::index_of(const CoxeterElement& w) const {
  auto it = lookup_.find(key_of(w.word()));
  if (it == lookup_.end()) throw Error(ErrorKind::InvalidInput, "element " + w.to_string() + " is not canonical");
  return it->second;
}

std::size_t CoxeterSystem::index_of_word(std::span<const Generator> word) const {
  std::size_t i = identity();
  for (auto s : word) {
    check_generator(matrix_, s);
    i = right_mul(i, s);
  }
  return i;
}

std::size_t CoxeterSystem::multiply(std::size_t i, std::size_t j) const {
  for (auto s : elements_[j].word()) i = right_mul(i, s);
  return i;
}

// ---------------------------------------------------------------------------

ParameterMap::ParameterMap(const CoxeterMatrix& m, std::vector<Rational> q) : q_(std::move(q)) {
  if (static_cast<int>(q_.size()) != m.rank()) {
    throw Error(ErrorKind::InvalidInput, "parameter count must equal the rank");
  }
  for (auto& x : q_) {
    x.canonicalize();
    if (sgn(x) <= 0) throw Error(ErrorKind::InvalidInput, "parameters must be positive");
  }
  for (Generator s = 0; s < m.rank(); ++s) {
    for (Generator t = s + 1; t < m.rank(); ++t) {
      if (q_[s] != q_[t] && generators_conjugate(m, s, t)) {
        throw Error(ErrorKind::InvalidInput, "conjugate generators s" + std::to_string(s + 1) + ", s" +
                                                 std::to_string(t + 1) + " need equal parameters");
      }
    }
  }
}

ParameterMap ParameterMap::uniform(const CoxeterMatrix& m, const Rational& q) {
  return ParameterMap(m, std::vector<Rational>(static_cast<std::size_t>(m.rank()), q));
}

Rational q_w(const ParameterMap& params, const CoxeterElement& w) {
  Rational out = 1;
  for (auto s : w.word()) out *= params.q(s);
  return out;
}

double q_w_float(const ParameterMap& params, const CoxeterElement& w) {
  double out = 1.0;
  for (auto s : w.word()) out *= params.q(s).get_d();
  return out;
}

std::string_view to_string(FuchsianClass c) {
  switch (c) {
    case FuchsianClass::NotFuchsian: return "not-fuchsian";
    case FuchsianClass::FuchsianNoThickBuilding: return "fuchsian-no-thick-building";
    case FuchsianClass::FuchsianThickBuildingExists: return "fuchsian-thick-building-exists";
  }
  return "unknown";
}

FuchsianClass fuchsian_admissible(std::span<const int> k) {
  const auto n = static_cast<long>(k.size());
  if (n < 3) throw Error(ErrorKind::InvalidInput, "a Fuchsian polygon needs at least 3 vertices");
  Rational angle_sum = 0;
  for (int ki : k) {
    if (ki < 2) throw Error(ErrorKind::InvalidInput, "vertex orders must be ≥ 2");
    angle_sum += Rational(1, ki);
  }
  if (!(angle_sum < Rational(n - 2))) return FuchsianClass::NotFuchsian;

  const auto allowed = [](int x) { return x == 2 || x == 3 || x == 4 || x == 6 || x == 8; };
  if (!std::all_of(k.begin(), k.end(), allowed)) return FuchsianClass::FuchsianNoThickBuilding;
  const bool has_2_or_4 = std::any_of(k.begin(), k.end(), [](int x) { return x == 2 || x == 4; });
  const auto eights = std::count(k.begin(), k.end(), 8);
  if (has_2_or_4 || eights % 2 == 0) return FuchsianClass::FuchsianThickBuildingExists;
  return FuchsianClass::FuchsianNoThickBuilding;
}

}  // namespace buildwalk
