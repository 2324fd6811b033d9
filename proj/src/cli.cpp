#include "circuit_atlas/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "circuit_atlas/constructions.hpp"
#include "circuit_atlas/io.hpp"

namespace circuit_atlas {
namespace {

constexpr const char* kTool = "circuit-atlas";
constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string format = "json";
  bool timing = false;
  unsigned jobs = 1;
  std::optional<std::size_t> cap;
  bool check_witness = false;
  std::string input = "-";
};

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string read_all(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

WalkClass class_arg(const std::string& name) {
  const auto c = parse_walk_class(name);
  if (!c) throw InputError("unknown walk class '" + name + "'");
  return *c;
}

// A vertex index, or a point such as "(0,1)" or "0,1".
std::size_t vertex_arg(const Instance& inst, const std::string& text) {
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    const std::size_t i = std::stoul(text);
    if (i >= inst.vertices().size()) {
      throw InputError("vertex index " + text + " out of range (" + std::to_string(inst.vertices().size()) +
                       " vertices)");
    }
    return i;
  }
  std::string body = text;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::vector<std::string> parts;
  std::stringstream ss(body);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  Vector p;
  try {
    p = parse_vector(parts);
  } catch (const std::invalid_argument&) {
    throw InputError("cannot read vertex '" + text + "'");
  }
  const auto i = p.size() == inst.polyhedron().dim() ? inst.vertex_index(p) : std::nullopt;
  if (!i) throw InputError(text + " is not a vertex");
  return *i;
}

Json header(const Json& input) {
  Json j;
  j["tool"] = kTool;
  j["version"] = kVersion;
  j["input_digest"] = digest(input);
  return j;
}

// Serializes a result; with --check-witness the witness is read back from its
// JSON form and verified again.
Json result_record(const Instance& inst, const DistanceResult& r, const Options& opt, bool& witness_failed) {
  Json j = result_to_json(inst, r);
  if (opt.check_witness && r.witness) {
    const Walk back = walk_from_json(inst, j["witness"]);
    const auto check = verify_walk(inst, back, r.walk_class, inst.vertices()[r.to].coords);
    j["witness_check"] = check.ok ? "ok" : "failed";
    if (!check.ok) {
      j["witness_violations"] = check.violations;
      witness_failed = true;
    }
  }
  return j;
}

std::string value_text(const DistanceResult& r) {
  switch (r.status) {
    case DistanceStatus::exact:
      return std::to_string(r.value);
    case DistanceStatus::no_walk:
      return "none";
    case DistanceStatus::exceeds_cap:
      return ">" + std::to_string(r.cap);
  }
  return "?";
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

struct Table {
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
      width.resize(std::max(width.size(), r.size()), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      out << line << "\n";
    }
  }
};

struct Loaded {
  Json document;
  Instance instance;
};

Loaded load(const Options& opt, std::istream& in) {
  Polyhedron P = parse_polyhedron(read_all(opt.input, in));
  try {
    Instance inst(P);
    return Loaded{to_json(inst.polyhedron()), std::move(inst)};
  } catch (const PolyhedronError& e) {
    throw InputError(e.what());
  }
}

int cmd_circuits(const Options& opt, std::istream& in, std::ostream& out) {
  const auto L = load(opt, in);
  const auto& cs = L.instance.circuits();
  Json report = header(L.document);
  Json list = Json::array();
  Table t{{{"index", "g", "Bg"}}};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    list.push_back({{"index", i}, {"g", to_json(cs[i].g)}, {"image", to_json(cs[i].image)}});
    t.rows.push_back({std::to_string(i), to_string(cs[i].g), to_string(cs[i].image)});
  }
  report["circuits"] = list;
  report["count"] = cs.size();
  if (opt.format == "text") {
    t.write(out);
  } else {
    print(out, report);
  }
  return kExitOk;
}

int cmd_vertices(const Options& opt, std::istream& in, std::ostream& out) {
  const auto L = load(opt, in);
  Json report = header(L.document);
  Json list = Json::array();
  Table t{{{"index", "coords", "tight rows"}}};
  const auto& vs = L.instance.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    list.push_back({{"index", i}, {"coords", to_json(vs[i].coords)}, {"tight_rows", vs[i].tight_rows}});
    std::string tight;
    for (auto r : vs[i].tight_rows) tight += (tight.empty() ? "" : " ") + std::to_string(r);
    t.rows.push_back({std::to_string(i), to_string(vs[i].coords), tight});
  }
  report["vertices"] = list;
  report["count"] = vs.size();
  if (opt.format == "text") {
    t.write(out);
  } else {
    print(out, report);
  }
  return kExitOk;
}

int cmd_graph(const Options& opt, std::istream& in, std::ostream& out) {
  const auto L = load(opt, in);
  Json report = header(L.document);
  Json list = Json::array();
  Table t{{{"from", "to", "direction"}}};
  for (const auto& e : L.instance.graph().edges) {
    list.push_back({{"from", e.from}, {"to", e.to}, {"direction", to_json(e.direction)}});
    t.rows.push_back({std::to_string(e.from), std::to_string(e.to), to_string(e.direction)});
  }
  report["edges"] = list;
  report["vertex_count"] = L.instance.vertices().size();
  if (opt.format == "text") {
    t.write(out);
  } else {
    print(out, report);
  }
  return kExitOk;
}

int cmd_distance(const Options& opt, const std::string& cls_name, const std::string& from, const std::string& to,
                 std::istream& in, std::ostream& out) {
  const WalkClass cls = class_arg(cls_name);
  const auto L = load(opt, in);
  const Instance& inst = L.instance;
  const std::size_t u = vertex_arg(inst, from), v = vertex_arg(inst, to);
  SearchOptions so;
  so.cap = opt.cap;
  const Clock clock;
  const auto r = distance(inst, cls, u, v, so);
  bool witness_failed = false;
  Json rec = result_record(inst, r, opt, witness_failed);
  if (opt.timing) rec["wall_ms"] = clock.ms();
  Json report = header(L.document);
  report["records"] = Json::array({rec});
  report["summary"] = {{"cap_hits", r.status == DistanceStatus::exceeds_cap ? 1 : 0},
                       {"witness_failures", witness_failed ? 1 : 0}};
  if (opt.format == "text") {
    out << cls_name << "(" << u << " -> " << v << ") = " << value_text(r) << "\n";
    if (r.witness) {
      for (const auto& p : r.witness->points(inst.circuits())) out << "  " << to_string(p) << "\n";
    }
  } else {
    print(out, report);
  }
  if (witness_failed) return kExitViolation;
  return r.status == DistanceStatus::exceeds_cap ? kExitCapExceeded : kExitOk;
}

int cmd_diameter(const Options& opt, const std::string& cls_name, std::istream& in, std::ostream& out) {
  const WalkClass cls = class_arg(cls_name);
  const auto L = load(opt, in);
  const Instance& inst = L.instance;
  SearchOptions so;
  so.cap = opt.cap;
  const Clock clock;
  const auto d = diameter(inst, cls, so, opt.jobs);
  Json rec;
  rec["class"] = cls_name;
  rec["status"] = std::string(to_string(d.status));
  rec["value"] = d.value;
  rec["from"] = d.from;
  rec["to"] = d.to;
  bool witness_failed = false;
  if (inst.vertices().size() > 1) {
    rec["attained_by"] = result_record(inst, distance(inst, cls, d.from, d.to, so), opt, witness_failed);
  }
  if (opt.timing) rec["wall_ms"] = clock.ms();
  Json report = header(L.document);
  report["records"] = Json::array({rec});
  report["summary"] = {{"cap_hits", d.status == DistanceStatus::exceeds_cap ? 1 : 0},
                       {"witness_failures", witness_failed ? 1 : 0}};
  if (opt.format == "text") {
    out << cls_name << " diameter " << (d.status == DistanceStatus::exact ? std::to_string(d.value) : std::string(to_string(d.status)))
        << " (" << d.from << " -> " << d.to << ")\n";
  } else {
    print(out, report);
  }
  if (witness_failed) return kExitViolation;
  return d.status == DistanceStatus::exceeds_cap ? kExitCapExceeded : kExitOk;
}

Json issue_json(const RelationIssue& issue, const HierarchyReport& rep, std::size_t pair) {
  auto value_of = [&](WalkClass c) {
    for (std::size_t k = 0; k < kAllWalkClasses.size(); ++k) {
      if (kAllWalkClasses[k] == c) return value_text(rep.distances[pair][k]);
    }
    return std::string("?");
  };
  return {{"from", issue.from},
          {"to", issue.to},
          {"greater", std::string(to_string(issue.relation.greater))},
          {"lesser", std::string(to_string(issue.relation.lesser))},
          {"greater_value", value_of(issue.relation.greater)},
          {"lesser_value", value_of(issue.relation.lesser)}};
}

int cmd_hierarchy(const Options& opt, std::istream& in, std::ostream& out) {
  const auto L = load(opt, in);
  const Instance& inst = L.instance;
  SearchOptions so;
  so.cap = opt.cap;
  const Clock clock;
  const auto rep = verify_hierarchy(inst, so, opt.jobs);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
  for (std::size_t i = 0; i < rep.distances.size(); ++i) {
    pair_index[{rep.distances[i][0].from, rep.distances[i][0].to}] = i;
  }

  Json table = Json::array();
  bool witness_failed = false;
  for (const auto& row : rep.distances) {
    Json values;
    for (const auto& r : row) {
      values[std::string(to_string(r.walk_class))] = value_text(r);
      if (opt.check_witness) result_record(inst, r, opt, witness_failed);
    }
    table.push_back({{"from", row[0].from}, {"to", row[0].to}, {"values", values}});
  }
  Json violations = Json::array(), inconclusive = Json::array();
  for (const auto& i : rep.violations) violations.push_back(issue_json(i, rep, pair_index.at({i.from, i.to})));
  for (const auto& i : rep.inconclusive) inconclusive.push_back(issue_json(i, rep, pair_index.at({i.from, i.to})));

  Json report = header(L.document);
  report["pairs"] = rep.pairs;
  report["distances"] = table;
  report["violations"] = violations;
  report["inconclusive"] = inconclusive;
  std::size_t cap_hits = 0;
  for (const auto& row : rep.distances) {
    for (const auto& r : row) cap_hits += r.status == DistanceStatus::exceeds_cap;
  }
  report["summary"] = {{"violations", rep.violations.size()},
                       {"cap_hits", cap_hits},
                       {"inconclusive", rep.inconclusive.size()},
                       {"relations", hierarchy_relations().size()},
                       {"witness_failures", witness_failed ? 1 : 0}};
  if (opt.timing) report["wall_ms"] = clock.ms();
  if (opt.format == "text") {
    out << rep.pairs << " pairs, " << hierarchy_relations().size() << " relations: " << rep.violations.size()
        << " violations, " << rep.inconclusive.size() << " inconclusive\n";
    for (const auto& v : violations) out << "  violation " << v.dump() << "\n";
    for (const auto& v : inconclusive) out << "  inconclusive " << v.dump() << "\n";
  } else {
    print(out, report);
  }
  if (!rep.violations.empty() || witness_failed) return kExitViolation;
  return rep.inconclusive.empty() ? kExitOk : kExitCapExceeded;
}

std::vector<CorpusItem> selected_items(const std::string& item) {
  if (item.empty()) return corpus();
  auto found = corpus_item(item);
  if (!found) throw InputError("no corpus item '" + item + "'");
  return {*found};
}

int cmd_corpus_list(const Options& opt, std::ostream& out) {
  Json list = Json::array();
  Table t{{{"name", "n", "rows", "expectations"}}};
  for (const auto& item : corpus()) {
    Json e = Json::array();
    for (const auto& x : item.expected) e.push_back(describe(x));
    list.push_back({{"name", item.name},
                    {"n", item.polyhedron.dim()},
                    {"rows", item.polyhedron.row_count()},
                    {"expectations", e}});
    t.rows.push_back({item.name, std::to_string(item.polyhedron.dim()), std::to_string(item.polyhedron.row_count()),
                      std::to_string(item.expected.size())});
  }
  if (opt.format == "text") {
    t.write(out);
  } else {
    print(out, Json{{"tool", kTool}, {"version", kVersion}, {"items", list}});
  }
  return kExitOk;
}

int cmd_corpus_verify(const Options& opt, const std::string& item_name, std::ostream& out) {
  const auto items = selected_items(item_name);
  std::vector<Instance> instances;
  Json docs = Json::array();
  for (const auto& item : items) {
    instances.emplace_back(item.polyhedron);
    docs.push_back(to_json(item.polyhedron));
  }
  struct Job {
    std::size_t item;
    std::size_t expectation;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t e = 0; e < items[i].expected.size(); ++e) jobs.push_back({i, e});
  }
  SearchOptions so;
  so.cap = opt.cap;
  std::vector<DistanceResult> results(jobs.size());
  std::vector<double> times(jobs.size(), 0.0);
  parallel_for(jobs.size(), opt.jobs, [&](std::size_t k) {
    const auto& item = items[jobs[k].item];
    const auto& e = item.expected[jobs[k].expectation];
    const Instance& inst = instances[jobs[k].item];
    const auto u = inst.vertex_index(item.point(e.from));
    const auto v = inst.vertex_index(item.point(e.to));
    if (!u || !v) throw std::logic_error("marked point of " + item.name + " is not a vertex");
    const Clock clock;
    results[k] = distance(inst, e.walk_class, *u, *v, so);
    times[k] = clock.ms();
  });

  Json records = Json::array();
  Table t{{{"item", "expectation", "got", "result"}}};
  std::size_t passed = 0, failed = 0;
  bool witness_failed = false;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& item = items[jobs[k].item];
    const auto& e = item.expected[jobs[k].expectation];
    const Instance& inst = instances[jobs[k].item];
    bool ok = satisfied(e, results[k]);
    bool wf = false;
    Json rec = result_record(inst, results[k], opt, wf);
    // Every exact value must come with a witness that checks out.
    if (results[k].status == DistanceStatus::exact) {
      ok = ok && results[k].witness &&
           verify_walk(inst, *results[k].witness, e.walk_class, item.point(e.to)).ok;
    }
    ok = ok && !wf;
    witness_failed = witness_failed || wf;
    rec["item"] = item.name;
    rec["expectation"] = describe(e);
    rec["stated"] = e.stated;
    rec["result"] = ok ? "PASS" : "FAIL";
    if (opt.timing) rec["wall_ms"] = times[k];
    records.push_back(rec);
    (ok ? passed : failed) += 1;
    t.rows.push_back({item.name, describe(e), value_text(results[k]), ok ? "PASS" : "FAIL"});
  }
  Json report = header(docs);
  report["records"] = records;
  std::size_t cap_hits = 0;
  for (const auto& r : results) cap_hits += r.status == DistanceStatus::exceeds_cap;
  report["summary"] = {{"passed", passed}, {"violations", failed}, {"cap_hits", cap_hits}, {"total", jobs.size()}};
  if (opt.format == "text") {
    t.write(out);
    out << passed << "/" << jobs.size() << " expectations hold\n";
  } else {
    print(out, report);
  }
  return failed == 0 && !witness_failed ? kExitOk : kExitViolation;
}

int cmd_corpus_export(const std::string& item_name, std::ostream& out) {
  const auto items = selected_items(item_name);
  if (items.size() == 1) {
    print(out, to_json(items.front().polyhedron));
  } else {
    Json all = Json::array();
    for (const auto& item : items) all.push_back(to_json(item.polyhedron));
    print(out, all);
  }
  return kExitOk;
}

std::optional<std::size_t> env_cap() {
  const char* raw = std::getenv("CIRCUIT_ATLAS_CAP");
  if (!raw || !*raw) return std::nullopt;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos) throw InputError("CIRCUIT_ATLAS_CAP must be a non-negative integer");
  return std::stoul(s);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circuit walk distances and diameters on rational polyhedra", kTool};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Options opt;
  std::size_t cap = 0;
  app.add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", opt.timing, "Add wall times to reports");
  app.add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::Range(1U, 256U));
  auto* cap_opt = app.add_option("--cap", cap, "Depth cap for fm, fmb, fmr, fms");
  app.add_flag("--check-witness", opt.check_witness, "Re-verify every reported witness from its JSON form");

  std::string cls, from, to, item;
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", opt.input, "Polyhedron JSON file, - for stdin"); };

  auto* circuits = app.add_subcommand("circuits", "List the signed circuits");
  add_input(circuits);
  auto* vertices = app.add_subcommand("vertices", "List the vertices");
  add_input(vertices);
  auto* graph = app.add_subcommand("graph", "List the edges of the vertex-edge graph");
  add_input(graph);

  auto* dist = app.add_subcommand("distance", "Distance between two vertices");
  add_input(dist);
  dist->add_option("--class", cls, "Walk class")->required();
  dist->add_option("--from", from, "Vertex index or point")->required();
  dist->add_option("--to", to, "Vertex index or point")->required();

  auto* diam = app.add_subcommand("diameter", "Maximum distance over all vertex pairs");
  add_input(diam);
  diam->add_option("--class", cls, "Walk class")->required();

  auto* hier = app.add_subcommand("verify-hierarchy", "Check every hierarchy relation on every vertex pair");
  add_input(hier);

  auto* corp = app.add_subcommand("corpus", "The built-in separating examples");
  corp->require_subcommand(1);
  auto* corp_list = corp->add_subcommand("list", "Names and expectations");
  auto* corp_verify = corp->add_subcommand("verify", "Recompute every expectation");
  corp_verify->add_option("--item", item, "Only this item");
  auto* corp_export = corp->add_subcommand("export", "Polyhedron JSON of an item (all items without --item)");
  corp_export->add_option("--item", item, "Item name");

  auto* gen = app.add_subcommand("gen", "Generate a polyhedron");
  gen->require_subcommand(1);
  std::size_t k = 0, n = 0, m = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> slopes;
  std::string depth = "1/10";
  auto* gen_extremal = gen->add_subcommand("extremal", "Polygon with fm diameter k/2");
  gen_extremal->add_option("--k", k, "Even vertex count >= 4")->required();
  gen_extremal->add_option("--slopes", slopes, "k/2 decreasing negative slopes");
  auto* gen_random = gen->add_subcommand("random", "Random bounded polytope");
  gen_random->add_option("--n", n, "Dimension 2..4")->required();
  gen_random->add_option("--m", m, "Total row count")->required();
  gen_random->add_option("--seed", seed, "Seed");
  auto* gen_simplex = gen->add_subcommand("simplex", "Standard simplex");
  gen_simplex->add_option("--n", n, "Dimension")->required();
  auto* gen_cube = gen->add_subcommand("cube", "Unit cube");
  gen_cube->add_option("--n", n, "Dimension")->required();
  auto* gen_regular = gen->add_subcommand("regular", "Affinely regular polygon, k in {3,4,6}");
  gen_regular->add_option("--k", k, "Vertex count")->required();
  auto* gen_chain = gen->add_subcommand("chain", "Polygon with efmb(v1,v2) = k - 3");
  gen_chain->add_option("--k", k, "Vertex count >= 5")->required();
  auto* gen_truncated = gen->add_subcommand("truncated-cube", "Cube with six corners cut");
  gen_truncated->add_option("--depth", depth, "Cut depth in (0,1)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    opt.cap = cap_opt->count() > 0 ? std::optional<std::size_t>(cap) : env_cap();
    if (*circuits) return cmd_circuits(opt, in, out);
    if (*vertices) return cmd_vertices(opt, in, out);
    if (*graph) return cmd_graph(opt, in, out);
    if (*dist) return cmd_distance(opt, cls, from, to, in, out);
    if (*diam) return cmd_diameter(opt, cls, in, out);
    if (*hier) return cmd_hierarchy(opt, in, out);
    if (*corp_list) return cmd_corpus_list(opt, out);
    if (*corp_verify) return cmd_corpus_verify(opt, item, out);
    if (*corp_export) return cmd_corpus_export(item, out);
    try {
      if (*gen_extremal) {
        std::vector<Rational> s;
        for (const auto& x : slopes) s.push_back(Rational::parse(x));
        print(out, to_json(extremal_fm_polygon(k, s)));
      } else if (*gen_random) {
        print(out, to_json(random_polytope(n, m, seed)));
      } else if (*gen_simplex) {
        print(out, to_json(simplex(n)));
      } else if (*gen_cube) {
        print(out, to_json(cube(n)));
      } else if (*gen_regular) {
        print(out, to_json(affinely_regular_polygon(k)));
      } else if (*gen_chain) {
        print(out, to_json(backwards_chain_polygon(k)));
      } else if (*gen_truncated) {
        print(out, to_json(truncated_cube(Rational::parse(depth)).polyhedron));
      }
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace circuit_atlas
