#pragma once

#include <optional>
#include <vector>

#include "sscurve/polynomial.hpp"

namespace sscurve {

/// All minor_size x minor_size minors of the Jacobian (rows: polys, columns:
/// ring variables), zero minors dropped, deduplicated and sorted by leading
/// monomial.
std::vector<Poly> jacobian_minors(const std::vector<Poly>& polys, int minor_size);

enum class Verdict { nonsingular, singular };

struct SmoothnessOptions {
  /// Projective dimension of V(polys). Computed from a Gröbner basis if absent.
  std::optional<int> expected_dim;
  /// Recompute the dimension even when expected_dim is supplied and fail on a mismatch.
  bool verify_dim = false;
};

/// V(polys) in P^r is non-singular iff every coordinate lies in the radical of
/// <minors of size r - dim, polys>. Variables are tested in declared order with
/// an early exit on the first failure.
Verdict determine_nonsingularity(const std::vector<Poly>& polys, const SmoothnessOptions& opts = {});

}  // namespace sscurve
