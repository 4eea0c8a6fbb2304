#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "buildwalk/coxeter.hpp"
#include "buildwalk/error.hpp"
#include "buildwalk/scalar.hpp"

namespace buildwalk {

/// A finite Coxeter system together with its thickness parameters. Shared by
/// every HeckeElement built over it.
class HeckeAlgebra {
 public:
  HeckeAlgebra(CoxeterMatrix m, std::vector<Rational> q, std::size_t cap = kDefaultElementCap)
      : system_(std::move(m), cap), params_(system_.matrix(), std::move(q)) {
    qw_.reserve(system_.size());
    for (const auto& w : system_.elements()) qw_.push_back(q_w(params_, w));
    for (const auto& x : qw_) chamber_count_ += x;
  }

  const CoxeterSystem& system() const noexcept { return system_; }
  const ParameterMap& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return system_.size(); }

  const Rational& q(Generator s) const { return params_.q(s); }
  const Rational& qw(std::size_t w) const { return qw_[w]; }
  /// Σ_w q_w, the number of chambers of any building with these parameters.
  const Rational& chamber_count() const noexcept { return chamber_count_; }

 private:
  CoxeterSystem system_;
  ParameterMap params_;
  std::vector<Rational> qw_;
  Rational chamber_count_ = 0;
};

using HeckeAlgebraPtr = std::shared_ptr<const HeckeAlgebra>;

inline HeckeAlgebraPtr make_hecke_algebra(CoxeterMatrix m, std::vector<Rational> q) {
  return std::make_shared<const HeckeAlgebra>(std::move(m), std::move(q));
}

/// Rank-2 convenience: I₂(m) with q₁ = q, q₂ = r.
inline HeckeAlgebraPtr make_dihedral_algebra(int m, const Rational& q, const Rational& r) {
  return make_hecke_algebra(dihedral_system(m), {q, r});
}

/// Σ a_w T_w with keys the element indices of the underlying system.
template <class S>
class HeckeElement {
 public:
  using Traits = ScalarTraits<S>;
  using Terms = std::map<std::size_t, S>;

  explicit HeckeElement(HeckeAlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  static HeckeElement basis(HeckeAlgebraPtr algebra, std::size_t w, S coeff = S(1)) {
    HeckeElement h(std::move(algebra));
    h.add(w, coeff);
    return h;
  }
  static HeckeElement identity(HeckeAlgebraPtr algebra) { return basis(std::move(algebra), 0); }

  const HeckeAlgebra& algebra() const noexcept { return *algebra_; }
  const HeckeAlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t support_size() const noexcept { return terms_.size(); }

  S coeff(std::size_t w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add(std::size_t w, const S& value) {
    if (Traits::is_zero(value)) return;
    auto [it, inserted] = terms_.try_emplace(w, value);
    if (inserted) return;
    it->second += value;
    if (Traits::is_zero(it->second)) terms_.erase(it);
  }

  S coefficient_sum() const {
    S total(0);
    for (const auto& [w, a] : terms_) total += a;
    return total;
  }

  HeckeElement& operator+=(const HeckeElement& other) {
    for (const auto& [w, a] : other.terms_) add(w, a);
    return *this;
  }
  HeckeElement& operator*=(const S& c) {
    if (Traits::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, a] : terms_) a *= c;
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator*(HeckeElement a, const S& c) { return a *= c; }

  bool operator==(const HeckeElement& other) const { return terms_ == other.terms_; }

 private:
  HeckeAlgebraPtr algebra_;
  Terms terms_;
};

namespace detail {

template <class S>
S inverse_q(const HeckeAlgebra& alg, Generator s) {
  return ScalarTraits<S>::from_rational(Rational(1) / alg.q(s));
}

}  // namespace detail

/// h·T_s: T_w T_s = T_{ws} on an ascent, else q_s⁻¹T_{ws} + (1 − q_s⁻¹)T_w.
template <class S>
HeckeElement<S> mul_generator(const HeckeElement<S>& h, Generator s) {
  const auto& alg = h.algebra();
  const auto& sys = alg.system();
  const S qinv = detail::inverse_q<S>(alg, s);
  const S stay = S(1) - qinv;
  HeckeElement<S> out(h.algebra_ptr());
  for (const auto& [w, a] : h.terms()) {
    const std::size_t ws = sys.right_mul(w, s);
    if (sys.length(ws) > sys.length(w)) {
      out.add(ws, a);
    } else {
      out.add(ws, S(a * qinv));
      out.add(w, S(a * stay));
    }
  }
  return out;
}

/// T_s·h, the mirror image of mul_generator.
template <class S>
HeckeElement<S> mul_generator_left(Generator s, const HeckeElement<S>& h) {
  const auto& alg = h.algebra();
  const auto& sys = alg.system();
  const S qinv = detail::inverse_q<S>(alg, s);
  const S stay = S(1) - qinv;
  HeckeElement<S> out(h.algebra_ptr());
  for (const auto& [w, a] : h.terms()) {
    const std::size_t sw = sys.left_mul(s, w);
    if (sys.length(sw) > sys.length(w)) {
      out.add(sw, a);
    } else {
      out.add(sw, S(a * qinv));
      out.add(w, S(a * stay));
    }
  }
  return out;
}

/// Product in the Hecke algebra. The operand with the smaller support is
/// expanded along reduced words and folded into the other by generator steps.
template <class S>
HeckeElement<S> mul(const HeckeElement<S>& a, const HeckeElement<S>& b) {
  if (&a.algebra() != &b.algebra()) throw Error(ErrorKind::InvalidInput, "Hecke elements from different algebras");
  const auto& sys = a.algebra().system();
  HeckeElement<S> out(a.algebra_ptr());
  if (b.support_size() <= a.support_size()) {
    for (const auto& [v, coeff] : b.terms()) {
      HeckeElement<S> acc = a;
      for (auto s : sys.element(v).word()) acc = mul_generator(acc, s);
      out += acc * coeff;
    }
  } else {
    for (const auto& [u, coeff] : a.terms()) {
      HeckeElement<S> acc = b;
      const auto word = sys.element(u).word();
      for (auto it = word.rbegin(); it != word.rend(); ++it) acc = mul_generator_left(static_cast<Generator>(*it), acc);
      out += acc * coeff;
    }
  }
  return out;
}

/// (Σ a_w T_w)* = Σ conj(a_w) T_{w⁻¹}.
template <class S>
HeckeElement<S> star(const HeckeElement<S>& h) {
  const auto& sys = h.algebra().system();
  HeckeElement<S> out(h.algebra_ptr());
  for (const auto& [w, a] : h.terms()) out.add(sys.inverse(w), ScalarTraits<S>::conj(a));
  return out;
}

template <class To, class From>
HeckeElement<To> convert(const HeckeElement<From>& h) {
  HeckeElement<To> out(h.algebra_ptr());
  for (const auto& [w, a] : h.terms()) {
    if constexpr (std::is_same_v<From, Rational>) {
      out.add(w, ScalarTraits<To>::from_rational(a));
    } else {
      out.add(w, To(a));
    }
  }
  return out;
}

/// Isotropic walk coefficients a_w ≥ 0 with Σ a_w = 1.
template <class S>
class WalkSpec {
 public:
  WalkSpec(HeckeAlgebraPtr algebra, std::map<std::size_t, S> a) : algebra_(std::move(algebra)), a_(std::move(a)) {
    S total(0);
    for (auto it = a_.begin(); it != a_.end();) {
      if (it->first >= algebra_->size()) throw Error(ErrorKind::InvalidWalk, "walk coefficient on unknown element");
      if (ScalarTraits<S>::is_negative(it->second)) throw Error(ErrorKind::InvalidWalk, "walk coefficients must be ≥ 0");
      total += it->second;
      if (ScalarTraits<S>::is_zero(it->second)) {
        it = a_.erase(it);
      } else {
        ++it;
      }
    }
    if constexpr (ScalarTraits<S>::exact) {
      if (total != 1) throw Error(ErrorKind::InvalidWalk, "walk coefficients must sum to 1");
    } else {
      if (std::abs(ScalarTraits<S>::to_double(total) - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidWalk, "walk coefficients must sum to 1");
      }
    }
  }

  /// From a map keyed by reduced words.
  static WalkSpec from_words(HeckeAlgebraPtr algebra, const std::map<std::vector<Generator>, S>& by_word) {
    std::map<std::size_t, S> a;
    for (const auto& [word, coeff] : by_word) a[algebra->system().index_of_word(word)] += coeff;
    return WalkSpec(std::move(algebra), std::move(a));
  }

  const HeckeAlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
  const HeckeAlgebra& algebra() const noexcept { return *algebra_; }
  const std::map<std::size_t, S>& coefficients() const noexcept { return a_; }

 private:
  HeckeAlgebraPtr algebra_;
  std::map<std::size_t, S> a_;
};

/// Simple random walk on chambers: every adjacent chamber equally likely,
/// so a_s = q_s / Σ_t q_t.
template <class S>
WalkSpec<S> simple_random_walk(HeckeAlgebraPtr algebra) {
  const auto& sys = algebra->system();
  Rational total = 0;
  for (Generator s = 0; s < sys.rank(); ++s) total += algebra->q(s);
  std::map<std::size_t, S> a;
  for (Generator s = 0; s < sys.rank(); ++s) {
    a[sys.right_mul(sys.identity(), s)] = ScalarTraits<S>::from_rational(Rational(algebra->q(s) / total));
  }
  return WalkSpec<S>(std::move(algebra), std::move(a));
}

/// Uniform a_w = 1/|W|.
template <class S>
WalkSpec<S> uniform_walk(HeckeAlgebraPtr algebra) {
  const std::size_t n = algebra->size();
  std::map<std::size_t, S> a;
  for (std::size_t w = 0; w < n; ++w) a[w] = ScalarTraits<S>::from_rational(Rational(1, static_cast<unsigned long>(n)));
  return WalkSpec<S>(std::move(algebra), std::move(a));
}

template <class S>
HeckeElement<S> from_walk(const WalkSpec<S>& spec) {
  HeckeElement<S> h(spec.algebra_ptr());
  for (const auto& [w, a] : spec.coefficients()) h.add(w, a);
  return h;
}

/// Tⁿ by n successive right multiplications by T.
template <class S>
HeckeElement<S> n_step(const WalkSpec<S>& spec, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  const HeckeElement<S> t = from_walk(spec);
  HeckeElement<S> h = HeckeElement<S>::identity(spec.algebra_ptr());
  for (int i = 0; i < n; ++i) h = mul(h, t);
  return h;
}

/// Every Tᵏ for k = 0..n.
template <class S>
std::vector<HeckeElement<S>> n_step_sequence(const WalkSpec<S>& spec, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "step count must be ≥ 0");
  const HeckeElement<S> t = from_walk(spec);
  std::vector<HeckeElement<S>> out{HeckeElement<S>::identity(spec.algebra_ptr())};
  for (int i = 0; i < n; ++i) out.push_back(mul(out.back(), t));
  return out;
}

/// p(x,y) = a_w / q_w for δ(x,y) = w.
template <class S>
S transition_probability(const HeckeElement<S>& h, std::size_t w) {
  return S(h.coeff(w) / ScalarTraits<S>::from_rational(h.algebra().qw(w)));
}

/// Coefficient of T_w in T_u·T_v.
inline Rational structure_constant(const HeckeAlgebraPtr& algebra, std::size_t u, std::size_t v, std::size_t w) {
  return mul(HeckeElement<Rational>::basis(algebra, u), HeckeElement<Rational>::basis(algebra, v)).coeff(w);
}

// I/O --------------------------------------------------------------------

/// Rows (n, word, a_w, p_w) for every nonzero coefficient of every step.
void write_n_step_csv(std::ostream& out, const std::vector<HeckeElement<Rational>>& steps);
void write_n_step_csv(std::ostream& out, const std::vector<HeckeElement<double>>& steps);

/// {"terms": [{"word": "s1s2", "coeff": "p/q"}, ...]}
nlohmann::json to_json(const HeckeElement<Rational>& h);
nlohmann::json to_json(const HeckeElement<double>& h);
HeckeElement<Rational> hecke_from_json(const HeckeAlgebraPtr& algebra, const nlohmann::json& j);

}  // namespace buildwalk
