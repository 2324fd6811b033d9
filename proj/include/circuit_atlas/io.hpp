#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "circuit_atlas/walks.hpp"

namespace circuit_atlas {

using Json = nlohmann::json;

/// Malformed or inconsistent input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Rational& r);
Json to_json(const Vector& v);
Rational rational_from_json(const Json& j);
Vector vector_from_json(const Json& j, std::size_t n);

/// { "name", "n", "A", "b", "rows": [{"coeffs", "lower", "upper"}], "vertices"? }
Json to_json(const Polyhedron& P);
Polyhedron polyhedron_from_json(const Json& j);
Polyhedron parse_polyhedron(const std::string& text);

/// Steps carry the circuit direction, not the index, so reports stay
/// meaningful outside the process that wrote them.
Json walk_to_json(const Instance& inst, const Walk& walk);
Walk walk_from_json(const Instance& inst, const Json& j);

Json result_to_json(const Instance& inst, const DistanceResult& r);

/// FNV-1a over the canonical dump of the polyhedron document.
std::string digest(const Json& j);

}  // namespace circuit_atlas
