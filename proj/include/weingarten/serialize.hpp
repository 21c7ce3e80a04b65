#pragma once

#include <sstream>
#include <string>

#include "json.hpp"
#include "weingarten/class_function.hpp"
#include "weingarten/scalar.hpp"

namespace weingarten {

/// {"k": k, "basis": "cycle-type", "values": {"2,1": "-1/60", ...}} in reverse-lex order.
template <ExactScalar Scalar>
nlohmann::ordered_json to_json(const ClassFunction<Scalar>& f) {
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  const ClassTable& table = class_table(f.degree());
  for (std::size_t c = 0; c < table.size(); ++c) values[table.classes[c].str()] = ScalarTraits<Scalar>::to_string(f.at(c));
  nlohmann::ordered_json out;
  out["k"] = f.degree();
  out["basis"] = "cycle-type";
  out["values"] = std::move(values);
  return out;
}

/// Inverse of to_json. Cycle types missing from "values" are zero.
template <ExactScalar Scalar>
ClassFunction<Scalar> class_function_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("values")) {
    throw std::invalid_argument("class function JSON needs \"k\" and \"values\"");
  }
  if (j.contains("basis") && j.at("basis") != "cycle-type") throw std::invalid_argument("unsupported basis");
  const int k = j.at("k").template get<int>();
  ClassFunction<Scalar> out(k);
  for (const auto& [key, value] : j.at("values").items()) {
    const Partition mu = Partition::parse(key);
    if (mu.weight() != k) throw std::invalid_argument("cycle type " + key + " is not a partition of " + std::to_string(k));
    out.set(mu, ScalarTraits<Scalar>::parse(value.template get<std::string>()));
  }
  return out;
}

/// "cycle_type,value" rows; the cycle type is quoted since it contains commas.
template <ExactScalar Scalar>
std::string to_csv(const ClassFunction<Scalar>& f, bool header = true, const std::string& prefix = "") {
  std::ostringstream os;
  if (header) os << prefix << "cycle_type,value\n";
  const ClassTable& table = class_table(f.degree());
  for (std::size_t c = 0; c < table.size(); ++c) {
    os << prefix << '"' << table.classes[c].str() << "\"," << ScalarTraits<Scalar>::to_string(f.at(c)) << '\n';
  }
  return os.str();
}

}  // namespace weingarten
