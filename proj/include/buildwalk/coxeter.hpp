#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "buildwalk/scalar.hpp"

namespace buildwalk {

using Generator = int;

/// Entry value used for m_st = ∞, in memory and in the JSON encoding.
inline constexpr int kInfiniteOrder = 0;

/// Default cap on the number of elements produced by enumeration. Exceeding
/// it is an error, never a silent truncation.
inline constexpr std::size_t kDefaultElementCap = 1'000'000;

class CoxeterMatrix {
 public:
  /// Validates symmetry, unit diagonal and off-diagonal entries ≥ 2 (or ∞).
  explicit CoxeterMatrix(const std::vector<std::vector<int>>& m);

  int rank() const noexcept { return rank_; }
  int operator()(Generator s, Generator t) const { return m_[index(s, t)]; }
  bool is_infinite(Generator s, Generator t) const { return (*this)(s, t) == kInfiniteOrder; }
  std::vector<std::vector<int>> entries() const;

  nlohmann::json to_json() const;
  static CoxeterMatrix from_json(const nlohmann::json& j);

  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::size_t index(Generator s, Generator t) const {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(t);
  }

  int rank_ = 0;
  std::vector<int> m_;
};

/// I₂(m), the dihedral group of order 2m.
CoxeterMatrix dihedral_system(int m);

/// Named constructors for the irreducible spherical and affine diagrams.
/// Affine matrices are data only; enumerating them fails with
/// group-too-large-or-infinite.
namespace diagrams {
CoxeterMatrix A(int n);
CoxeterMatrix B(int n);
CoxeterMatrix C(int n);
CoxeterMatrix D(int n);
CoxeterMatrix E(int n);
CoxeterMatrix F4();
CoxeterMatrix G2();
CoxeterMatrix H3();
CoxeterMatrix H4();
CoxeterMatrix I2(int m);
CoxeterMatrix affine_A(int n);
CoxeterMatrix affine_B(int n);
CoxeterMatrix affine_C(int n);
CoxeterMatrix affine_D(int n);
CoxeterMatrix affine_E(int n);
CoxeterMatrix affine_F4();
CoxeterMatrix affine_G2();
}  // namespace diagrams

/// A group element stored as its ShortLex-least reduced word. Only the
/// functions in this header produce instances from arbitrary words.
class CoxeterElement {
 public:
  CoxeterElement() = default;

  std::span<const std::uint8_t> word() const noexcept { return word_; }
  int length() const noexcept { return static_cast<int>(word_.size()); }
  bool is_identity() const noexcept { return word_.empty(); }

  /// "e" for the identity, otherwise "s1s2s1" with 1-based generator labels.
  std::string to_string() const;

  /// ShortLex order: by length, then lexicographically.
  std::strong_ordering operator<=>(const CoxeterElement& other) const;
  bool operator==(const CoxeterElement&) const = default;

  static CoxeterElement from_canonical_word(std::vector<std::uint8_t> word) {
    CoxeterElement e;
    e.word_ = std::move(word);
    return e;
  }

 private:
  std::vector<std::uint8_t> word_;
};

/// Parses "e", "s1s2s1", "1 2 1" or "1,2,1" into 0-based generator indices.
std::vector<Generator> parse_word(std::string_view text);

struct Product {
  CoxeterElement element;
  int sign;  // ℓ(ws) − ℓ(w)
};

Product right_multiply(const CoxeterMatrix& m, const CoxeterElement& w, Generator s);
CoxeterElement reduce(const CoxeterMatrix& m, std::span<const Generator> word);
CoxeterElement inverse(const CoxeterMatrix& m, const CoxeterElement& w);

/// All elements in ShortLex order.
std::vector<CoxeterElement> enumerate_elements(const CoxeterMatrix& m,
                                               std::size_t cap = kDefaultElementCap);

/// s and t are conjugate iff joined by a path of odd-labelled edges.
bool generators_conjugate(const CoxeterMatrix& m, Generator s, Generator t);

/// A finite Coxeter group, enumerated once, with multiplication tables over
/// element indices. Index order is ShortLex; index 0 is the identity.
class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix m, std::size_t cap = kDefaultElementCap);

  const CoxeterMatrix& matrix() const noexcept { return matrix_; }
  int rank() const noexcept { return matrix_.rank(); }
  std::size_t size() const noexcept { return elements_.size(); }

  const CoxeterElement& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<CoxeterElement>& elements() const noexcept { return elements_; }
  std::size_t index_of(const CoxeterElement& w) const;
  std::size_t index_of_word(std::span<const Generator> word) const;

  std::size_t identity() const noexcept { return 0; }
  std::size_t longest() const noexcept { return elements_.size() - 1; }
  int length(std::size_t i) const { return elements_[i].length(); }
  std::size_t right_mul(std::size_t i, Generator s) const { return right_[i * rank_ + s]; }
  std::size_t left_mul(Generator s, std::size_t i) const { return left_[i * rank_ + s]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  std::size_t multiply(std::size_t i, std::size_t j) const;

 private:
  CoxeterMatrix matrix_;
  std::size_t rank_;
  std::vector<CoxeterElement> elements_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::vector<std::size_t> right_;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> inverse_;
};

/// Thickness parameters q_s, constant on conjugacy classes of generators.
class ParameterMap {
 public:
  ParameterMap(const CoxeterMatrix& m, std::vector<Rational> q);
  static ParameterMap uniform(const CoxeterMatrix& m, const Rational& q);

  int rank() const noexcept { return static_cast<int>(q_.size()); }
  const Rational& q(Generator s) const { return q_.at(static_cast<std::size_t>(s)); }
  const std::vector<Rational>& values() const noexcept { return q_; }

 private:
  std::vector<Rational> q_;
};

Rational q_w(const ParameterMap& params, const CoxeterElement& w);
double q_w_float(const ParameterMap& params, const CoxeterElement& w);

enum class FuchsianClass {
  NotFuchsian,
  FuchsianNoThickBuilding,
  FuchsianThickBuildingExists,
};

std::string_view to_string(FuchsianClass c);

/// Polygon angles π/k_i: hyperbolicity test, then the thick-building
/// existence criterion for the resulting Fuchsian system.
FuchsianClass fuchsian_admissible(std::span<const int> k);

}  // namespace buildwalk
