#include "circuit_atlas/constructions.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace circuit_atlas {
namespace {

Vector vec(std::initializer_list<Rational> xs) { return Vector(xs); }

Rational q(long num, long den = 1) { return Rational(num, den); }

RowBound row(Vector coeffs, std::optional<Rational> lower, std::optional<Rational> upper) {
  return RowBound{std::move(coeffs), std::move(lower), std::move(upper)};
}

Polyhedron bounded(std::string name, std::size_t n, const std::vector<RowBound>& rows) {
  return Polyhedron::from_bounds(std::move(name), n, Matrix(0, n), {}, rows);
}

Expectation expect(WalkClass c, std::string from, std::string to, std::size_t value, bool stated = true) {
  return Expectation{c, std::move(from), std::move(to), Expectation::Kind::equals, value, stated};
}

CorpusItem fms_polygon() {
  const std::vector<RowBound> rows = {
      row(vec({1, 0}), q(0), std::nullopt),
      row(vec({1, 1}), q(0), q(6)),
      row(vec({1, -1}), q(-1), q(4)),
      row(vec({1, -2}), q(-3), std::nullopt),
  };
  auto P = bounded("fms-polygon", 2, rows)
               .with_vertex_order({vec({0, 1}), vec({1, 2}), vec({3, 3}), vec({5, 1}), vec({2, -2}), vec({0, 0})});
  return CorpusItem{"fms-polygon",
                    std::move(P),
                    {{"v1", vec({2, -2})}, {"v2", vec({1, 2})}},
                    {Expectation{WalkClass::fms, "v1", "v2", Expectation::Kind::no_walk, 0, true}},
                    6};
}

CorpusItem hexagon() {
  auto P = polygon_from_vertices(
      "hexagon", {vec({0, 1}), vec({1, 2}), vec({2, 2}), vec({5, -1}), vec({3, -3}), vec({0, 0})});
  return CorpusItem{"hexagon",
                    std::move(P),
                    {{"v1", vec({0, 1})}, {"v2", vec({5, -1})}},
                    {expect(WalkClass::efm, "v1", "v2", 3), expect(WalkClass::fm, "v1", "v2", 2),
                     expect(WalkClass::fm, "v2", "v1", 3), expect(WalkClass::f, "v2", "v1", 2),
                     expect(WalkClass::fbr, "v2", "v1", 2)},
                    6};
}

CorpusItem seven_gon() {
  auto P = backwards_chain_polygon(7).renamed("7-gon");
  return CorpusItem{"7-gon",
                    std::move(P),
                    {{"v1", vec({-1, 0})}, {"v2", vec({-1, -3})}},
                    {expect(WalkClass::efm, "v1", "v2", 3), expect(WalkClass::efmb, "v1", "v2", 4)},
                    7};
}

CorpusItem cut_cube() {
  std::vector<RowBound> rows;
  for (std::size_t i = 0; i < 3; ++i) {
    Vector e = zeros(3);
    e[i] = 1;
    rows.push_back(row(e, q(0), q(1)));
  }
  const std::vector<std::pair<Vector, Rational>> cuts = {
      {vec({-1, -1, 5}), 4},      {vec({-8, 5, -8}), 3},       {vec({40, 45, -30}), 76},
      {vec({70, 42, 100}), 191},  {vec({-7, -7, 10}), 6},      {vec({-56, 20, -56}), 9},
      {vec({280, 84, 400}), 701}, {vec({-29, -29, 20}), 9},
  };
  for (const auto& [c, rhs] : cuts) rows.push_back(row(c, std::nullopt, rhs));
  return CorpusItem{"cut-cube",
                    bounded("cut-cube", 3, rows),
                    {{"v1", vec({0, 0, 0})}, {"v2", vec({q(7, 10), 1, 1})}},
                    {expect(WalkClass::efm, "v1", "v2", 4), expect(WalkClass::efmr, "v1", "v2", 5)},
                    22};
}

CorpusItem eleven_gon() {
  auto P = polygon_from_vertices("11-gon", {vec({19, 9}), vec({27, 1}), vec({q(681, 25), q(1, 5)}),
                                            vec({q(1363, 50), q(1, 10)}), vec({q(2727, 100), 0}),
                                            vec({q(1363, 50), q(-1, 10)}), vec({q(681, 25), q(-1, 5)}),
                                            vec({27, -1}), vec({1, -1}), vec({0, 0}), vec({9, 9})});
  return CorpusItem{"11-gon",
                    std::move(P),
                    {{"v1", vec({19, 9})}, {"v5", vec({q(2727, 100), 0})}},
                    {expect(WalkClass::fm, "v1", "v5", 3), expect(WalkClass::fmb, "v1", "v5", 4)},
                    11};
}

CorpusItem nine_gon() {
  auto P = polygon_from_vertices("9-gon", {vec({0, 10}), vec({10, 10}), vec({19, 1}), vec({q(153, 8), q(1, 2)}),
                                           vec({q(769, 40), 0}), vec({q(153, 8), q(-1, 2)}), vec({19, -1}),
                                           vec({10, -10}), vec({0, -10})});
  return CorpusItem{"9-gon",
                    std::move(P),
                    {{"v1", vec({0, 10})}, {"v5", vec({q(769, 40), 0})}},
                    {expect(WalkClass::fm, "v1", "v5", 3),
                     Expectation{WalkClass::fmr, "v1", "v5", Expectation::Kind::at_least, 4, true}},
                    9};
}

CorpusItem four_dim() {
  std::vector<RowBound> rows = {
      row(vec({1, 0, 0, 0}), q(0), q(3, 2)),     row(vec({0, 1, 0, 0}), q(0), q(1)),
      row(vec({0, 0, 1, 0}), q(0), q(1)),        row(vec({0, 0, 0, 1}), q(0), q(1)),
      row(vec({1, 1, 0, 0}), std::nullopt, q(2)), row(vec({1, 0, 1, 0}), std::nullopt, q(2)),
      row(vec({1, 0, 0, 1}), std::nullopt, q(2)),
  };
  return CorpusItem{"4d-repetition",
                    bounded("4d-repetition", 4, rows),
                    {{"zero", vec({0, 0, 0, 0})}, {"ones", vec({1, 1, 1, 1})}},
                    {expect(WalkClass::f, "zero", "ones", 3), expect(WalkClass::fr, "zero", "ones", 4, false)},
                    23};
}

CorpusItem fs_vs_fbr() {
  std::vector<RowBound> rows = {
      row(vec({1, 0, 0}), q(0), std::nullopt), row(vec({0, 1, 0}), q(0), q(1)),
      row(vec({0, 0, 1}), q(0), q(1)),         row(vec({1, 1, 0}), std::nullopt, q(2)),
      row(vec({1, 0, 1}), std::nullopt, q(2)),
  };
  return CorpusItem{"fs-vs-fbr",
                    bounded("fs-vs-fbr", 3, rows),
                    {{"zero", vec({0, 0, 0})}, {"ones", vec({1, 1, 1})}},
                    {expect(WalkClass::fs, "zero", "ones", 3), expect(WalkClass::fbr, "zero", "ones", 2),
                     expect(WalkClass::fr, "zero", "ones", 2), expect(WalkClass::fb, "zero", "ones", 2),
                     expect(WalkClass::f, "zero", "ones", 2)},
                    std::nullopt};
}

}  // namespace

std::string describe(const Expectation& e) {
  std::string s = std::string(to_string(e.walk_class)) + "(" + e.from + "," + e.to + ")";
  switch (e.kind) {
    case Expectation::Kind::equals:
      return s + " = " + std::to_string(e.value);
    case Expectation::Kind::at_least:
      return s + " >= " + std::to_string(e.value);
    case Expectation::Kind::no_walk:
      return s + " has no walk";
  }
  return s;
}

bool satisfied(const Expectation& e, const DistanceResult& r) {
  switch (e.kind) {
    case Expectation::Kind::equals:
      return r.status == DistanceStatus::exact && r.value == e.value;
    case Expectation::Kind::at_least:
      if (r.status == DistanceStatus::exact) return r.value >= e.value;
      if (r.status == DistanceStatus::exceeds_cap) return r.cap + 1 >= e.value;
      return true;
    case Expectation::Kind::no_walk:
      return r.status == DistanceStatus::no_walk;
  }
  return false;
}

const Vector& CorpusItem::point(const std::string& marked_name) const {
  for (const auto& m : marked) {
    if (m.name == marked_name) return m.point;
  }
  throw std::out_of_range("no marked vertex '" + marked_name + "' in " + name);
}

CorpusItem truncated_cube(const Rational& depth) {
  if (depth.sign() <= 0 || depth >= Rational(1)) throw std::invalid_argument("cut depth must lie in (0,1)");
  std::vector<RowBound> rows;
  for (std::size_t i = 0; i < 3; ++i) {
    Vector e = zeros(3);
    e[i] = 1;
    rows.push_back(row(e, q(-1), q(1)));
  }
  for (int mask = 1; mask < 7; ++mask) {
    Vector corner(3);
    for (std::size_t i = 0; i < 3; ++i) corner[i] = ((mask >> i) & 1) ? 1 : -1;
    rows.push_back(row(corner, std::nullopt, Rational(3) - depth));
  }
  const std::string name = "truncated-cube";
  return CorpusItem{name,
                    bounded(name, 3, rows),
                    {{"low", vec({-1, -1, -1})}, {"high", vec({1, 1, 1})}},
                    {expect(WalkClass::f, "low", "high", 3), expect(WalkClass::soft, "low", "high", 2)},
                    20};
}

std::vector<CorpusItem> corpus() {
  std::vector<CorpusItem> items;
  items.push_back(fms_polygon());
  items.push_back(hexagon());
  items.push_back(truncated_cube(Rational(1, 10)));
  items.push_back(seven_gon());
  items.push_back(cut_cube());
  items.push_back(eleven_gon());
  items.push_back(nine_gon());
  items.push_back(four_dim());
  items.push_back(fs_vs_fbr());
  return items;
}

std::optional<CorpusItem> corpus_item(const std::string& name) {
  for (auto& item : corpus()) {
    if (item.name == name) return item;
  }
  return std::nullopt;
}

Polyhedron simplex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("simplex needs n >= 1");
  std::vector<RowBound> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = zeros(n);
    e[i] = 1;
    rows.push_back(row(e, q(0), std::nullopt));
  }
  rows.push_back(row(Vector(n, Rational(1)), std::nullopt, q(1)));
  return bounded("simplex-" + std::to_string(n), n, rows);
}

Polyhedron cube(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cube needs n >= 1");
  std::vector<RowBound> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = zeros(n);
    e[i] = 1;
    rows.push_back(row(e, q(0), q(1)));
  }
  return bounded("cube-" + std::to_string(n), n, rows);
}

Polyhedron affinely_regular_polygon(std::size_t k) {
  const std::string name = "regular-" + std::to_string(k);
  switch (k) {
    case 3:
      return polygon_from_vertices(name, {vec({0, 0}), vec({1, 0}), vec({0, 1})});
    case 4:
      return polygon_from_vertices(name, {vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})});
    case 6:
      return polygon_from_vertices(name, {vec({1, 0}), vec({0, 1}), vec({-1, 1}), vec({-1, 0}), vec({0, -1}),
                                          vec({1, -1})});
    default:
      throw std::invalid_argument("no rational affinely regular " + std::to_string(k) + "-gon");
  }
}

Polyhedron backwards_chain_polygon(std::size_t k) {
  if (k < 5) throw std::invalid_argument("backwards chain polygon needs k >= 5");
  // Left chain on the parabola x = -1 - (3/2 - (y - 3/2)^2 / 2), y = -x2.
  const long left = static_cast<long>(k - 4);
  std::vector<Vector> vs = {vec({0, 0}), vec({0, -3}), vec({-1, -3})};
  for (long j = left; j >= 1; --j) {
    const Rational y(3 * (2 * j - 1), 2 * left);
    const Rational t = y - Rational(3, 2);
    const Rational f = Rational(3, 2) - t * t / Rational(2);
    vs.push_back(vec({Rational(-1) - f, -y}));
  }
  vs.push_back(vec({-1, 0}));
  return polygon_from_vertices("chain-" + std::to_string(k), vs);
}

Polyhedron extremal_fm_polygon(std::size_t k, std::vector<Rational> slopes) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("extremal polygon needs an even k >= 4");
  const std::size_t half = k / 2;
  if (slopes.empty()) {
    for (std::size_t j = 0; j < half; ++j) slopes.push_back(Rational(-static_cast<long>(j) - 1));
  }
  if (slopes.size() != half) throw std::invalid_argument("extremal polygon needs k/2 slopes");
  for (std::size_t j = 0; j < half; ++j) {
    if (slopes[j].sign() >= 0 || (j > 0 && !(slopes[j] < slopes[j - 1]))) {
      throw std::invalid_argument("slopes must be negative and strictly decreasing");
    }
  }
  auto mirror = [](const Vector& p) { return vec({p[0], -p[1]}); };

  // upper[i] = v(i) for i = 0..half-1; the lower chain is the mirror image.
  std::vector<Vector> upper = {vec({0, 0}), vec({1, -slopes[0]})};
  auto outline = [&](const Vector& w) {
    std::vector<Vector> vs = upper;
    vs.push_back(w);
    for (std::size_t j = upper.size() - 1; j >= 1; --j) vs.push_back(mirror(upper[j]));
    return vs;
  };

  for (std::size_t i = 1; i < half; ++i) {
    const Vector& vi = upper[i];
    const Vector w = vec({vi[0] - vi[1] / slopes[i], 0});
    if (i + 1 == half) return polygon_from_vertices("extremal-" + std::to_string(k), outline(w));

    const Instance inst(polygon_from_vertices("stage", outline(w)));
    const auto& cs = inst.circuits();
    const Polyhedron& Pi = inst.polyhedron();
    const auto along_upper = cs.find(w - vi);
    const auto along_lower = cs.find(w - mirror(vi));

    // Points reachable from the origin by at most k/2 maximal steps, never
    // walking along one of the two new edges into w.
    auto on_segment = [](const Vector& p, const Vector& a, const Vector& b) {
      const Vector d = b - a;
      const Vector e = p - a;
      if (!(d[0] * e[1] - d[1] * e[0]).is_zero()) return false;
      const Rational t = d[0].is_zero() ? e[1] / d[1] : e[0] / d[0];
      return t.sign() >= 0 && t <= Rational(1);
    };
    std::set<Vector> seen = {upper[0]};
    std::vector<Vector> frontier = {upper[0]};
    for (std::size_t depth = 0; depth < half && !frontier.empty(); ++depth) {
      std::vector<Vector> next;
      for (const auto& y : frontier) {
        for (std::size_t c = 0; c < cs.size(); ++c) {
          if (along_upper && c == *along_upper && on_segment(y, vi, w)) continue;
          if (along_lower && c == *along_lower && on_segment(y, mirror(vi), w)) continue;
          const auto step = maximal_step(Pi, y, cs[c]);
          if (step.kind != StepKind::moved) continue;
          if (seen.insert(step.point).second) next.push_back(step.point);
        }
      }
      frontier = std::move(next);
    }
    if (seen.count(w)) throw std::logic_error("extremal construction reached w; slopes are degenerate");
    Rational best = upper[i][0];
    for (const auto& p : seen) best = std::max(best, p[0]);
    // Place the next vertex on the upper edge at the largest reachable x1.
    const Vector next = vec({best, vi[1] + slopes[i] * (best - vi[0])});
    if (!(best > vi[0]) || !(best < w[0])) throw std::logic_error("extremal construction stalled at stage " + std::to_string(i));
    upper.push_back(next);
  }
  throw std::logic_error("unreachable");
}

Polyhedron random_polytope(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 || n > 4) throw std::invalid_argument("random polytopes need n in {2,3,4}");
  if (m < n + 1) throw std::invalid_argument("random polytopes need m >= n + 1");
  std::size_t directions = 1;
  for (std::size_t i = 0; i < n; ++i) directions *= 3;
  if (m > directions - 1) throw std::invalid_argument("too many rows for coefficients in {-1,0,1}");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-1, 1);
  std::uniform_int_distribution<int> rhs(1, 3);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Bounding simplex around the origin, then random cuts; the origin stays
    // interior so P is full-dimensional.
    std::vector<RowBound> rows;
    for (std::size_t i = 0; i < n; ++i) {
      Vector e = zeros(n);
      e[i] = 1;
      rows.push_back(row(e, q(-2), std::nullopt));
    }
    rows.push_back(row(Vector(n, Rational(1)), std::nullopt, q(2)));
    std::set<Vector> used;
    for (const auto& r : rows) used.insert(r.coeffs);
    while (rows.size() < m) {
      Vector c(n);
      for (auto& x : c) x = coeff(rng);
      const Rational d = rhs(rng);
      if (is_zero(c) || !used.insert(c).second) continue;
      rows.push_back(row(c, std::nullopt, d));
    }
    auto P = bounded("random-" + std::to_string(n) + "-" + std::to_string(m) + "-" + std::to_string(seed), n, rows);
    if (enumerate_vertices(P).size() > n) return P;
  }
  throw std::runtime_error("random_polytope: no valid sample");
}

}  // namespace circuit_atlas
