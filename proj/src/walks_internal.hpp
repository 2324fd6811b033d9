#pragma once

#include <optional>
#include <vector>

#include "circuit_atlas/walks.hpp"

namespace circuit_atlas::detail {

DistanceResult make_result(WalkClass cls, std::size_t u, std::size_t v);
DistanceResult exact_result(WalkClass cls, std::size_t u, std::size_t v, Walk walk);
DistanceResult trivial_result(const Instance& inst, WalkClass cls, std::size_t u);

/// Largest alpha >= 0 with slack - alpha * image >= 0; nullopt when no row
/// limits the direction.
std::optional<Rational> ratio_test(const Vector& slack, const Vector& image);

/// Edge classes: efm, efmb, efmr.
DistanceResult edge_search(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls);

/// fm, fmb, fmr, fms. `bound`, if given, is an exact distance of a walk that
/// is also valid for `cls`; the search then only looks for shorter walks.
DistanceResult maximal_search(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls, std::size_t cap,
                              const DistanceResult* bound);

DistanceResult sign_compatible_search(const Instance& inst, std::size_t u, std::size_t v);

/// f, fb, fr, fbr together; `fs` must be the exact sign-compatible result for
/// the same pair. Results are ordered f, fb, fr, fbr and only the requested
/// classes are filled in.
std::vector<DistanceResult> feasible_search(const Instance& inst, std::size_t u, std::size_t v,
                                            const DistanceResult& fs, const std::vector<WalkClass>& wanted);

/// Soft distance below the exact upper bound `bound` (an fs or f result).
DistanceResult soft_search(const Instance& inst, std::size_t u, std::size_t v, const DistanceResult& bound);

}  // namespace circuit_atlas::detail
