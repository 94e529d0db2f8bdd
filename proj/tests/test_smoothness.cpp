#include <random>

#include "doctest.h"
#include "sscurve/groebner.hpp"
#include "sscurve/smoothness.hpp"

using namespace sscurve;

namespace {

// Homogeneous ideal oracle: V(I) in P^r is empty iff I is unit or its
// Gröbner basis has a pure power of every variable among the leading terms.
bool projectively_empty(const std::vector<Poly>& gens) {
  auto G = groebner_basis(gens);
  if (G.is_unit()) return true;
  const Ring& R = *G.ring;
  for (int v = 0; v < R.nvars(); ++v) {
    bool found = false;
    for (const auto& g : G.basis) {
      const auto e = R.exponents(g.lead_mono());
      int others = 0;
      for (int u = 0; u < R.nvars(); ++u)
        if (u != v) others += e[u];
      if (others == 0 && e[v] > 0) found = true;
    }
    if (!found) return false;
  }
  return true;
}

// Projective points over the coefficient field where the Jacobian drops rank.
bool has_rational_singular_point(const Poly& Q, const Poly& P) {
  const FieldCtx& F = Q.field();
  const int q = F.q();
  std::vector<Poly> grads;
  for (const auto* f : {&Q, &P})
    for (int v = 0; v < 4; ++v) grads.push_back(partial_derivative(*f, v));
  for (int lead = 0; lead < 4; ++lead) {
    int count = 1;
    for (int k = lead + 1; k < 4; ++k) count *= q;
    for (int idx = 0; idx < count; ++idx) {
      std::vector<Code> pt(4, 0);
      pt[lead] = 1;
      int t = idx;
      for (int k = lead + 1; k < 4; ++k) {
        pt[k] = static_cast<Code>(t % q);
        t /= q;
      }
      if (evaluate(Q, pt) != 0 || evaluate(P, pt) != 0) continue;
      std::vector<FieldElement> vals;
      for (const auto& g : grads) vals.push_back(F.element(evaluate(g, pt)));
      if (Matrix::from_elements(2, 4, vals).rank() < 2) return true;
    }
  }
  return false;
}

Poly random_cubic(const RingPtr& R, std::mt19937_64& rng, int terms) {
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    std::vector<int> e(4, 0);
    for (int d = 0; d < 3; ++d) ++e[std::uniform_int_distribution<int>(0, 3)(rng)];
    ts.push_back({R->monomial(e), static_cast<Code>(std::uniform_int_distribution<int>(1, R->field().q() - 1)(rng))});
  }
  return Poly::from_terms(R, ts);
}

}  // namespace

TEST_CASE("jacobian minors") {
  auto F = make_field(5, 1);
  auto R = make_ring(F, {"x", "y", "z", "w"});
  auto p = [&](const char* s) { return parse_poly(R, s); };
  auto lin = jacobian_minors({p("x"), p("y")}, 2);
  CHECK(std::find(lin.begin(), lin.end(), Poly::constant(R, 1)) != lin.end());
  auto m = jacobian_minors({p("2*y*w+z^2"), p("x^3+y^3+w^3")}, 2);
  CHECK(m.size() == 6);
  CHECK(std::find(m.begin(), m.end(), p("-6*x^2*z")) != m.end());
  auto grad = jacobian_minors({p("x^2*y+z^3")}, 1);
  CHECK(grad.size() == 3);
  CHECK_THROWS_AS(jacobian_minors({p("x")}, 0), MathError);
  CHECK_THROWS_AS(jacobian_minors({p("x")}, 2), MathError);
}

TEST_CASE("nonsingularity examples") {
  auto F = make_field(5, 1);
  auto R = make_ring(F, {"x", "y", "z", "w"});
  auto p = [&](const char* s) { return parse_poly(R, s); };
  CHECK(determine_nonsingularity({p("2*y*w+z^2"), p("x^3+y^3+w^3")}, {1}) == Verdict::nonsingular);
  CHECK(determine_nonsingularity({p("2*y*w+z^2"), p("y^3+w^3+x*z^2")}, {1}) == Verdict::singular);
  CHECK(determine_nonsingularity({p("x")}) == Verdict::nonsingular);
  CHECK(determine_nonsingularity({p("2*y*w+z^2"), p("x^3+y^3+w^3")}) == Verdict::nonsingular);
  CHECK_THROWS_AS(determine_nonsingularity({p("2*y*w+z^2"), p("x^3+y^3+w^3")}, {2, true}), MathError);
  // x * Q is a reducible configuration sharing a component with Q.
  CHECK_THROWS_AS(determine_nonsingularity({p("2*y*w+z^2"), p("x*(2*y*w+z^2)")}, {1, true}), MathError);
  CHECK(determine_nonsingularity({p("2*y*w+z^2"), p("x*(2*y*w+z^2)")}, {1}) == Verdict::singular);
}

TEST_CASE("nonsingularity agrees with independent checks") {
  std::mt19937_64 rng(23);
  for (int n : {1, 2}) {
    auto F = make_field(5, n);
    auto R = make_ring(F, {"x", "y", "z", "w"});
    auto Q = parse_poly(R, "2*y*w+z^2");
    int smooth = 0, singular = 0;
    for (int trial = 0; trial < 25; ++trial) {
      auto P = random_cubic(R, rng, trial % 2 ? 5 : 20);
      if (normal_form(P, {Q}).is_zero()) continue;
      const auto v = determine_nonsingularity({Q, P}, {1});
      auto gens = jacobian_minors({Q, P}, 2);
      gens.push_back(Q);
      gens.push_back(P);
      CHECK((v == Verdict::nonsingular) == projectively_empty(gens));
      if (v == Verdict::nonsingular) CHECK_FALSE(has_rational_singular_point(Q, P));
      if (has_rational_singular_point(Q, P)) CHECK(v == Verdict::singular);
      CHECK(determine_nonsingularity({P, Q}, {1}) == v);
      // Invariance under a random invertible change of coordinates.
      for (;;) {
        std::vector<long long> e(16);
        for (auto& x : e) x = std::uniform_int_distribution<int>(0, 4)(rng);
        auto M = Matrix::from_ints(F.get(), 4, 4, e);
        if (M.det().is_zero()) continue;
        CHECK(determine_nonsingularity({linear_transform(Q, M), linear_transform(P, M)}, {1}) == v);
        break;
      }
      (v == Verdict::nonsingular ? smooth : singular)++;
    }
    CHECK(smooth > 0);
    CHECK(singular > 0);
  }
}
