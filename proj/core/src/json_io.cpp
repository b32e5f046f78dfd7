#include "orbint/json_io.hpp"

#include <stdexcept>

namespace orbint {

nlohmann::json to_json(const Rational& x) { return to_string(x); }

nlohmann::json to_json(const CycScalar& x) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& r : x.coords()) c.push_back(to_string(r));
  auto z = x.to_complex();
  return {{"conductor", x.conductor()}, {"coords", c}, {"approx", {z.real(), z.imag()}}};
}

nlohmann::json to_json(const StepFunction& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    nlohmann::json c = nlohmann::json::array(), ph = nlohmann::json::array();
    for (const auto& r : t.box.center) c.push_back(to_string(r));
    for (const auto& r : t.phase) ph.push_back(to_string(r));
    terms.push_back({{"center", c}, {"level", t.box.level}, {"phase", ph}, {"coeff", to_json(t.coeff)}});
  }
  return {{"dim", f.dim()}, {"p", f.p()}, {"terms", terms}};
}

nlohmann::json to_json(const GLTriple& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < d.gamma.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < d.gamma.cols(); ++j) r.push_back(to_string(d.gamma(i, j)));
    rows.push_back(r);
  }
  nlohmann::json v = nlohmann::json::array(), vs = nlohmann::json::array();
  for (const auto& x : d.v) v.push_back(to_string(x));
  for (const auto& x : d.vstar) vs.push_back(to_string(x));
  return {{"gamma", rows}, {"v", v}, {"vstar", vs}};
}

nlohmann::json to_json(const EVal& x) { return {to_string(x.a), to_string(x.b)}; }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}

CycScalar cyc_from_json(const nlohmann::json& j) {
  if (!j.is_object()) return CycScalar(rational_from_json(j));
  std::vector<Rational> c;
  for (const auto& r : j.at("coords")) c.push_back(rational_from_json(r));
  return CycScalar::from_coords(j.at("conductor").get<long>(), c);
}

StepFunction step_function_from_json(const nlohmann::json& j) {
  StepFunction f(j.at("dim").get<std::size_t>(), j.at("p").get<long>());
  for (const auto& t : j.at("terms")) {
    Box b;
    for (const auto& r : t.at("center")) b.center.push_back(rational_from_json(r));
    b.level = t.at("level").get<std::vector<long>>();
    std::vector<Rational> ph;
    if (t.contains("phase"))
      for (const auto& r : t.at("phase")) ph.push_back(rational_from_json(r));
    else
      ph.assign(b.center.size(), Rational(0));
    if (b.center.size() != f.dim() || b.level.size() != f.dim() || ph.size() != f.dim())
      throw std::invalid_argument("step function JSON: term dimension mismatch");
    f.add_term(b, ph, t.contains("coeff") ? cyc_from_json(t.at("coeff")) : CycScalar(1));
  }
  return f;
}

GLTriple triple_from_json(const nlohmann::json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j.at("gamma")) {
    rows.emplace_back();
    for (const auto& x : r) rows.back().push_back(rational_from_json(x));
  }
  GLTriple d;
  d.gamma = QMat::from_rows(rows);
  for (const auto& x : j.at("v")) d.v.push_back(rational_from_json(x));
  for (const auto& x : j.at("vstar")) d.vstar.push_back(rational_from_json(x));
  if (d.v.size() != d.dim() || d.vstar.size() != d.dim()) throw std::invalid_argument("triple JSON: size mismatch");
  return d;
}

EVal eval_from_json(const nlohmann::json& j) {
  return {rational_from_json(j.at(0)), rational_from_json(j.at(1))};
}

}  // namespace orbint
