#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "circuit_atlas/polyhedron.hpp"

namespace circuit_atlas {

struct Circuit {
  /// Coprime integer entries; A g = 0.
  Vector g;
  /// B g.
  Vector image;
};

/// Signed circuits of a polyhedron. Index 2i holds the canonical
/// representative of the i-th pair (first nonzero entry positive) and 2i+1 its
/// negation; pairs are sorted lexicographically by representative.
class CircuitSet {
 public:
  CircuitSet() = default;
  explicit CircuitSet(std::vector<Circuit> signed_circuits);

  std::size_t size() const { return circuits_.size(); }
  const Circuit& operator[](std::size_t i) const { return circuits_[i]; }
  static std::size_t negation(std::size_t i) { return i ^ 1U; }
  auto begin() const { return circuits_.begin(); }
  auto end() const { return circuits_.end(); }

  /// Index of the circuit pointing along `direction` (any positive multiple).
  std::optional<std::size_t> find(const Vector& direction) const;

 private:
  std::vector<Circuit> circuits_;
  std::unordered_map<Vector, std::size_t, VectorHash> index_;
};

/// Rank-(n-1) row subsets, one-dimensional kernels, then the support
/// minimality filter. Throws PolyhedronError when P is not pointed.
CircuitSet enumerate_circuits(const Polyhedron& P);

/// (x)_i (y)_i >= 0 for every i.
bool sign_compatible(const Vector& x, const Vector& y);

/// Indices of the circuits whose image is sign-compatible with B w.
std::vector<std::size_t> compatible_candidates(const Polyhedron& P, const CircuitSet& circuits,
                                               const Vector& w);

}  // namespace circuit_atlas
