#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sscurve/polynomial.hpp"

namespace sscurve {

enum class QuadricTag { N1, N2, DEG };

std::string to_string(QuadricTag tag);

/// Polynomial ring in x, y, z, w (grevlex, w < z < y < x).
RingPtr xyzw_ring(FieldPtr field);

/// One of the three quadric normal forms in genus 4, with Q = v^T phi v.
///   N1:  2xw + 2yz
///   N2:  2xw + y^2 - eps z^2  (eps a non-square, from pick_epsilon)
///   DEG: 2yw + z^2            (the form 2yw - eps z^2 with eps = -1)
struct QuadricClass {
  QuadricTag tag;
  FieldElement epsilon;
  Poly Q;
  Matrix phi;
};

QuadricClass quadric(QuadricTag tag, const RingPtr& ring);

/// Element g of the similitude group: g^T phi g = mu phi.
struct GroupElement {
  QuadricTag tag;
  Matrix g;
  FieldElement mu;
};

/// Checks membership and records the similitude; throws MathError otherwise.
GroupElement make_group_element(const QuadricClass& quad, const Matrix& g);

enum class GroupKind {
  // N1
  n1_torus,      // diag(a, b, c/b, c/a)
  n1_unipotent,  // U(a) U'(b)
  n1_swap,       // y <-> z
  n1_s1,
  n1_s2,
  // N2
  n2_h,           // diag(a, 1, 1, 1/a)
  n2_unipotent,   // U(a) U'(b)
  n2_rotation,    // R(a, b)
  n2_w,
  n2_reflection,  // diag(1, 1, -1, 1)
  // DEG
  deg_t,           // T(a)
  deg_u,           // U(a)
  deg_s,           // y <-> w
  deg_v,           // first row (a, b, c, d)
  deg_scalar,      // diag(1, b, b, b)
  deg_reflection,  // diag(1, 1, -1, 1)
};

/// Parameters are listed in the order of the comments above.
GroupElement group_element(const QuadricClass& quad, GroupKind kind, const std::vector<FieldElement>& params = {});

enum class CaseKind { n1i, n1ii, n2, deg };

/// Domain of one loop coefficient.
enum class LoopCoord { unit, any };

/// An enumeration case: P = fixed + sum a_i p_i + sum b_j q_j over a fixed Q.
/// The a_i split into symbolic unknowns (solved for) and loop coefficients
/// (swept over a finite domain); the b_j run over small representative sets.
struct CaseSpec {
  std::string id;
  CaseKind kind;
  int q = 0;
  FieldPtr field;
  RingPtr ring;  // x, y, z, w
  QuadricClass quadric;

  std::vector<std::string> a_names;
  std::vector<Poly> p_basis;
  std::vector<std::string> b_names;
  std::vector<Poly> q_basis;
  Poly fixed;  // coefficient-free part of P

  std::vector<std::vector<FieldElement>> b_domains;
  /// Positions into a_names of the loop coefficients, in sweep order.
  std::vector<int> loop;
  std::vector<LoopCoord> loop_domain;
  /// The first two loop coordinates may not both vanish.
  bool loop_pair_nonzero = false;
  /// Positions into a_names of the unknowns, in declared order.
  std::vector<int> symbolic;
  /// Grevlex priority on the unknowns, most significant first (names).
  std::vector<std::string> symbolic_order;

  long long b_count() const;
  long long loop_count() const;
  long long iterations() const { return b_count() * loop_count(); }

  /// Cell index -> (b tuple, loop tuple); b is the outer coordinate.
  std::vector<FieldElement> b_tuple(long long cell) const;
  std::vector<FieldElement> loop_tuple(long long cell) const;

  /// P with every a_i and b_j a variable: ring (a..., b..., x, y, z, w).
  Poly generic_cubic() const;
  /// P for explicit values of every a_i (in a_names order) and b_j.
  Poly cubic(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) const;
  /// Ring of the unknowns with the pinned grevlex priority.
  RingPtr unknown_ring() const;
};

/// Case ids: n1i-25, n1ii-25, n2-25, deg-25, n1i-49, n1ii-49, n2-49, deg-49.
CaseSpec case_spec(std::string_view id);
/// Builds a case over a caller-supplied field (q must be 25 or 49).
CaseSpec case_spec(CaseKind kind, FieldPtr field);
std::vector<std::string> case_ids();

}  // namespace sscurve
