#include <ostream>

#include "buildwalk/hecke.hpp"

namespace buildwalk {

namespace {

std::string cell(const Rational& x) { return format_decimal(x.get_d()); }
std::string cell(double x) { return format_decimal(x); }

nlohmann::json coeff_json(const Rational& x) { return to_string(x); }
nlohmann::json coeff_json(double x) { return x; }

template <class S>
void write_csv(std::ostream& out, const std::vector<HeckeElement<S>>& steps) {
  out << "n,word,a_w,p_w\n";
  for (std::size_t n = 0; n < steps.size(); ++n) {
    const auto& h = steps[n];
    for (const auto& [w, a] : h.terms()) {
      out << n << ',' << h.algebra().system().element(w).to_string() << ',' << cell(a) << ','
          << cell(transition_probability(h, w)) << '\n';
    }
  }
}

template <class S>
nlohmann::json element_json(const HeckeElement<S>& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, a] : h.terms()) {
    terms.push_back({{"word", h.algebra().system().element(w).to_string()}, {"coeff", coeff_json(a)}});
  }
  return {{"terms", terms}};
}

}  // namespace

void write_n_step_csv(std::ostream& out, const std::vector<HeckeElement<Rational>>& steps) { write_csv(out, steps); }
void write_n_step_csv(std::ostream& out, const std::vector<HeckeElement<double>>& steps) { write_csv(out, steps); }

nlohmann::json to_json(const HeckeElement<Rational>& h) { return element_json(h); }
nlohmann::json to_json(const HeckeElement<double>& h) { return element_json(h); }

HeckeElement<Rational> hecke_from_json(const HeckeAlgebraPtr& algebra, const nlohmann::json& j) {
  HeckeElement<Rational> h(algebra);
  try {
    for (const auto& term : j.at("terms")) {
      const auto word = parse_word(term.at("word").get<std::string>());
      const auto& c = term.at("coeff");
      const Rational value = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<double>());
      h.add(algebra->system().index_of_word(word), value);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed Hecke element JSON: ") + e.what());
  }
  return h;
}

}  // namespace buildwalk
