#pragma once

#include <json.hpp>

#include "orbint/cyclotomic.hpp"
#include "orbint/spaces.hpp"
#include "orbint/step_function.hpp"

namespace orbint {

// Rationals travel as strings ("-3/4"); CycScalar as {conductor, coords};
// a complex approximation is added for readers.
nlohmann::json to_json(const Rational& x);
nlohmann::json to_json(const CycScalar& x);
nlohmann::json to_json(const StepFunction& f);
nlohmann::json to_json(const GLTriple& d);
nlohmann::json to_json(const EVal& x);

Rational rational_from_json(const nlohmann::json& j);
CycScalar cyc_from_json(const nlohmann::json& j);
StepFunction step_function_from_json(const nlohmann::json& j);
GLTriple triple_from_json(const nlohmann::json& j);
EVal eval_from_json(const nlohmann::json& j);

}  // namespace orbint
