#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sscurve/families.hpp"

namespace sscurve {

using Rational = boost::multiprecision::cpp_rational;

/// Canonical genus-4 model V(Q, P) in P^3.
struct CurvePair {
  Poly Q;
  Poly P;
};

/// Checks degrees (2, 3), homogeneity, the x, y, z, w ring, and that P is not
/// a multiple of Q.
CurvePair make_curve_pair(const Poly& Q, const Poly& P);

/// Points of V(Q, P) over the coefficient field, one per projective class
/// (first non-zero coordinate equal to 1).
long long count_points(const CurvePair& C);

/// lambda with g P2 = lambda P1 mod Q, where g P2 is P2(g v). Requires
/// C1.Q == C2.Q. Returns none if g does not scale Q or no lambda exists.
std::optional<FieldElement> verify_projective_equivalence(const Matrix& g, const CurvePair& C1, const CurvePair& C2);

/// Square root of 3 used for the symmetric-group generators: the first one in
/// code order. Throws if 3 is not a square.
FieldElement sqrt3(const FieldCtx& F);

/// s1..s4 acting on 2yw + z^2 = x^3 + y^3 + w^3 = 0.
std::array<Matrix, 4> s5_generators(const FieldCtx& F);

/// The curve 2yw + z^2 = x^3 + y^3 + w^3 = 0.
CurvePair fermat_degenerate_curve(const RingPtr& ring);

struct PresentationCheck {
  bool automorphisms = false;  // each s_i maps the curve to itself
  bool involutions = false;    // s_i^2 scalar
  bool commuting = false;      // (s_i s_j)^2 scalar for |i - j| > 1
  bool braid = false;          // (s_i s_j)^2 not scalar, (s_i s_j)^3 scalar for |i - j| = 1
  bool ok() const { return automorphisms && involutions && commuting && braid; }
};

PresentationCheck check_s5_presentation(const FieldCtx& F);
bool verify_s5_presentation(const FieldCtx& F);

/// The parametrised elements of G_k for the curve above (orthogonal group
/// elements g with g P = lambda P mod Q), each verified: mu(g) = 1 and the
/// recorded lambda is recovered. Parameters without roots in F contribute nothing.
struct GkElement {
  Matrix g;
  FieldElement lambda;
};
std::vector<GkElement> enumerate_gk(const FieldCtx& F);

enum class RepFamily { I, II };

struct Representative {
  RepFamily family;
  int i;
  int jk;  // j for family (I), k for family (II)
  CurvePair curve;
  long long expected_points;
};

/// zeta = 1 + sqrt(3) for the first square root of 3 that makes it primitive.
FieldElement zeta_generator(const FieldCtx& F);

/// The 21 curves over F_25: (I) zeta^i x^3 + zeta^j y^3 + w^3, 0 <= i <= 2,
/// 0 <= j <= 3, and (II) zeta^i x^3 + zeta^k y^3 + w^3 + z w^2, 0 <= i <= 2,
/// k in {0, 2, 3}, all on 2yw + z^2 = 0.
std::vector<Representative> representatives_21(const FieldCtx& F);
std::string family_name(const Representative& r);

/// prod_{i=1..g} (-1)^(i+1) B_{2i} / (4i) * prod_{i=1..g} (p^i + (-1)^i).
Rational mass_formula(int genus, int p);

/// Bernoulli number B_n.
Rational bernoulli(int n);

/// (1 / (2 * aut_order)) / mass.
Rational mass_share(long long aut_order, const Rational& mass);

}  // namespace sscurve
