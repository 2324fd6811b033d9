#include "circuit_atlas/io.hpp"

#include <cstdio>

namespace circuit_atlas {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError("expected a rational as a string or integer, got " + j.dump());
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Vector vector_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
  if (j.size() != n) {
    throw InputError("expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  }
  Vector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json to_json(const Polyhedron& P) {
  Json j;
  j["name"] = P.name();
  j["n"] = P.dim();
  Json A = Json::array();
  for (std::size_t i = 0; i < P.A().rows(); ++i) A.push_back(to_json(P.A().row(i)));
  j["A"] = A;
  j["b"] = to_json(P.b());
  Json rows = Json::array();
  for (const auto& r : P.input_rows()) {
    Json row;
    row["coeffs"] = to_json(r.coeffs);
    row["lower"] = r.lower ? to_json(*r.lower) : Json(nullptr);
    row["upper"] = r.upper ? to_json(*r.upper) : Json(nullptr);
    rows.push_back(row);
  }
  j["rows"] = rows;
  if (!P.declared_vertex_order().empty()) {
    Json vs = Json::array();
    for (const auto& v : P.declared_vertex_order()) vs.push_back(to_json(v));
    j["vertices"] = vs;
  }
  return j;
}

Polyhedron polyhedron_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("polyhedron document must be an object");
  if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0) {
    throw InputError("field 'n' must be a positive integer");
  }
  const std::size_t n = j["n"].get<std::size_t>();
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "unnamed";

  Matrix A(0, n);
  Vector b;
  if (j.contains("A")) {
    if (!j["A"].is_array()) throw InputError("field 'A' must be an array of rows");
    for (const auto& row : j["A"]) A.append_row(vector_from_json(row, n));
    if (!j.contains("b")) throw InputError("field 'A' needs a matching 'b'");
    b = vector_from_json(j["b"], A.rows());
  } else if (j.contains("b") && !j["b"].empty()) {
    throw InputError("field 'b' given without 'A'");
  }

  if (!j.contains("rows") || !j["rows"].is_array()) throw InputError("field 'rows' must be an array");
  std::vector<RowBound> rows;
  for (const auto& r : j["rows"]) {
    if (!r.is_object() || !r.contains("coeffs")) throw InputError("each row needs 'coeffs'");
    RowBound rb{vector_from_json(r["coeffs"], n), std::nullopt, std::nullopt};
    if (r.contains("lower") && !r["lower"].is_null()) rb.lower = rational_from_json(r["lower"]);
    if (r.contains("upper") && !r["upper"].is_null()) rb.upper = rational_from_json(r["upper"]);
    rows.push_back(std::move(rb));
  }
  try {
    Polyhedron P = Polyhedron::from_bounds(name, n, A, b, rows);
    if (j.contains("vertices")) {
      if (!j["vertices"].is_array()) throw InputError("field 'vertices' must be an array");
      std::vector<Vector> order;
      for (const auto& v : j["vertices"]) order.push_back(vector_from_json(v, n));
      P = P.with_vertex_order(std::move(order));
    }
    return P;
  } catch (const PolyhedronError& e) {
    throw InputError(e.what());
  }
}

Polyhedron parse_polyhedron(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return polyhedron_from_json(j);
}

Json walk_to_json(const Instance& inst, const Walk& walk) {
  Json j;
  j["start"] = to_json(walk.start);
  Json steps = Json::array();
  for (const auto& s : walk.steps) {
    Json step;
    step["direction"] = to_json(inst.circuits()[s.circuit].g);
    step["length"] = to_json(s.length);
    steps.push_back(step);
  }
  j["steps"] = steps;
  Json points = Json::array();
  for (const auto& p : walk.points(inst.circuits())) points.push_back(to_json(p));
  j["points"] = points;
  return j;
}

Walk walk_from_json(const Instance& inst, const Json& j) {
  const std::size_t n = inst.polyhedron().dim();
  if (!j.is_object() || !j.contains("start") || !j.contains("steps")) {
    throw InputError("walk needs 'start' and 'steps'");
  }
  Walk w{vector_from_json(j["start"], n), {}};
  for (const auto& s : j["steps"]) {
    if (!s.contains("direction") || !s.contains("length")) throw InputError("step needs 'direction' and 'length'");
    const Vector d = vector_from_json(s["direction"], n);
    const auto c = inst.circuits().find(d);
    if (!c || inst.circuits()[*c].g != d) throw InputError("step direction " + to_string(d) + " is not a circuit");
    w.steps.push_back({*c, rational_from_json(s["length"])});
  }
  return w;
}

Json result_to_json(const Instance& inst, const DistanceResult& r) {
  Json j;
  j["class"] = std::string(to_string(r.walk_class));
  j["from"] = r.from;
  j["to"] = r.to;
  j["status"] = std::string(to_string(r.status));
  if (r.status == DistanceStatus::exact) j["value"] = r.value;
  if (r.status == DistanceStatus::exceeds_cap) j["cap"] = r.cap;
  j["witness"] = r.witness ? walk_to_json(inst, *r.witness) : Json(nullptr);
  return j;
}

std::string digest(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace circuit_atlas
