#pragma once

#include <array>
#include <vector>

#include "sscurve/polynomial.hpp"

namespace sscurve {

/// Strictly negative tuples (k_0..k_r) summing to -sum(degrees), ascending
/// lexicographically. Their number is the arithmetic genus.
struct HWIndexSet {
  int r = 0;
  std::vector<int> degrees;
  std::vector<std::vector<int>> rows;

  int genus() const { return static_cast<int>(rows.size()); }
};

HWIndexSet hw_index_set(int r, const std::vector<int>& degrees);

/// Exponent vector read for entry (i, j): -k^(j) * p + k^(i).
std::vector<int> hw_entry_exponent(const HWIndexSet& idx, int i, int j, int p);

struct HasseWittMatrix {
  HWIndexSet index;
  Matrix matrix;

  bool is_zero() const;
};

/// Coefficient extraction from (f_1 ... f_{r-1})^(p-1) for a complete
/// intersection in P^r (r+1 ring variables in declared order). Requires
/// homogeneous input, no input dividing another, and every sum of r-2 of the
/// degrees at most r.
HasseWittMatrix hasse_witt_matrix(const std::vector<Poly>& polys, int p);

/// The 16 exponent vectors for a (cubic, quadric) pair in P^3, in the fixed
/// table order: entry (i, j) of the matrix sits at position 4*j + i.
std::vector<std::array<int, 4>> genus4_monomials(int p);

/// Genus-4 fast path: all 16 listed coefficients of (fg)^(p-1) vanish.
/// f is the cubic, g the quadric, both in four variables.
bool is_hw_zero(const Poly& f, const Poly& g, int p);

/// Coefficients of the 16 genus-4 monomials in (PQ)^(p-1), as polynomials in
/// the remaining variables of P's ring. `xyzw` lists the declared indices of
/// the four projective coordinates; Q must not involve any other variable.
/// The result lives in `coeff_ring`, whose variables are matched by name.
std::vector<Poly> symbolic_hw_coefficients(const Poly& P, const Poly& Q, int p, const std::array<int, 4>& xyzw,
                                           const RingPtr& coeff_ring);

}  // namespace sscurve
