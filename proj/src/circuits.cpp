#include "circuit_atlas/circuits.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "circuit_atlas/combinations.hpp"

namespace circuit_atlas {
namespace {

Vector canonical(const Vector& g) {
  Vector p = primitive(g);
  for (const auto& x : p) {
    if (x.is_zero()) continue;
    if (x.sign() < 0) p = Rational(-1) * p;
    break;
  }
  return p;
}

std::vector<bool> support(const Vector& v) {
  std::vector<bool> s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = !v[i].is_zero();
  return s;
}

bool strict_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  bool smaller = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
    if (!a[i] && b[i]) smaller = true;
  }
  return smaller;
}

}  // namespace

CircuitSet::CircuitSet(std::vector<Circuit> signed_circuits) : circuits_(std::move(signed_circuits)) {
  for (std::size_t i = 0; i < circuits_.size(); ++i) {
    if (!index_.emplace(circuits_[i].g, i).second) throw std::invalid_argument("duplicate circuit");
  }
}

std::optional<std::size_t> CircuitSet::find(const Vector& direction) const {
  if (is_zero(direction)) return std::nullopt;
  auto it = index_.find(primitive(direction));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CircuitSet enumerate_circuits(const Polyhedron& P) {
  if (!P.is_pointed()) throw PolyhedronError("polyhedron '" + P.name() + "' is not pointed");
  const std::size_t n = P.dim();
  const std::size_t rank_a = rank(P.A());
  std::vector<Vector> reps;
  if (rank_a < n) {
    std::unordered_set<Vector, VectorHash> seen;
    for_each_combination(P.row_count(), n - 1 - rank_a, [&](const std::vector<std::size_t>& subset) {
      const Matrix M = P.A().stack(P.B().select_rows(subset));
      const auto kernel = kernel_basis(M);
      if (kernel.size() != 1) return true;
      Vector g = canonical(kernel.front());
      if (is_zero(P.B() * g)) return true;
      if (seen.insert(g).second) reps.push_back(std::move(g));
      return true;
    });
  }

  std::vector<std::vector<bool>> supports;
  for (const auto& g : reps) supports.push_back(support(P.B() * g));
  std::vector<Vector> minimal;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < reps.size() && !dominated; ++j) {
      dominated = j != i && strict_subset(supports[j], supports[i]);
    }
    if (!dominated) minimal.push_back(reps[i]);
  }
  std::sort(minimal.begin(), minimal.end());

  std::vector<Circuit> out;
  out.reserve(2 * minimal.size());
  for (const auto& g : minimal) {
    Vector image = P.B() * g;
    Vector neg = Rational(-1) * g;
    Vector neg_image = Rational(-1) * image;
    out.push_back({g, std::move(image)});
    out.push_back({std::move(neg), std::move(neg_image)});
  }
  return CircuitSet(std::move(out));
}

bool sign_compatible(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("sign_compatible: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].sign() * y[i].sign() < 0) return false;
  }
  return true;
}

std::vector<std::size_t> compatible_candidates(const Polyhedron& P, const CircuitSet& circuits,
                                               const Vector& w) {
  const Vector bw = P.B() * w;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    if (sign_compatible(circuits[i].image, bw)) out.push_back(i);
  }
  return out;
}

}  // namespace circuit_atlas
