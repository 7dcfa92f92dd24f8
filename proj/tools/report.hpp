#pragma once

#include "odeinv/equivalence.hpp"
#include "odeinv/invariants.hpp"
#include "odeinv/tensor.hpp"
#include "odeinv/transform.hpp"

#include "json.hpp"

#include <string>

namespace odeinv::cli {

using nlohmann::json;

json to_json(const Rational &q);
json to_json(const TensorComp &t);
// r, e and a decimal approximation of r t^e with t^5 = F3.
json to_json(const ScaledRational &v, const Rational &F3);
json to_json(const RSectionJet &s);
json to_json(const MapJet &f);
json to_json(const Point &p);

std::string sha256_hex(const std::string &bytes);

// Indented "key: value" rendering of a report.
std::string render_text(const json &report);

} // namespace odeinv::cli
