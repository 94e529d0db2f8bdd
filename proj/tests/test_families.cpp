#include <random>
#include <set>

#include "doctest.h"
#include "sscurve/families.hpp"

using namespace sscurve;

namespace {

FieldElement random_element(const FieldCtx& F, std::mt19937_64& rng, bool nonzero = false) {
  return F.element(static_cast<Code>(std::uniform_int_distribution<int>(nonzero ? 1 : 0, F.q() - 1)(rng)));
}

std::string with_eps(std::string text, const FieldElement& eps) {
  const std::string rep = "(" + eps.to_string() + ")";
  for (std::size_t pos = 0; (pos = text.find("eps", pos)) != std::string::npos; pos += rep.size())
    text.replace(pos, 3, rep);
  return text;
}

// Rank of the coefficient vectors of the given polynomials.
int span_rank(const std::vector<Poly>& fs) {
  std::vector<Monomial> monos;
  for (const auto& f : fs)
    for (const auto& t : f.terms())
      if (std::find(monos.begin(), monos.end(), t.m) == monos.end()) monos.push_back(t.m);
  const FieldCtx& F = fs.front().field();
  Matrix M(&F, static_cast<int>(fs.size()), static_cast<int>(monos.size()));
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < monos.size(); ++j) M.set(i, j, fs[i].coefficient(monos[j]));
  return M.rank();
}

}  // namespace

TEST_CASE("quadric normal forms") {
  auto F = make_field(5, 2);
  auto R = xyzw_ring(F);
  auto n1 = quadric(QuadricTag::N1, R);
  CHECK(n1.Q == parse_poly(R, "2*x*w+2*y*z"));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(n1.phi(i, j) == (i + j == 3 ? F->one() : F->zero()));
  auto deg = quadric(QuadricTag::DEG, R);
  CHECK(deg.Q == parse_poly(R, "2*y*w+z^2"));
  CHECK(deg.phi.rank() == 3);
  auto n2 = quadric(QuadricTag::N2, R);
  CHECK_FALSE(is_square(n2.epsilon));
  CHECK(n2.Q == parse_poly(R, "2*x*w+y^2") - Poly::variable(R, 2) * Poly::variable(R, 2) * n2.epsilon);

  // Prime field with a primitive generator: eps = -2 = 3, a non-square mod 5.
  auto F5 = make_field(5, 1, std::vector<int>{-2 + 5, 1});
  auto n2p = quadric(QuadricTag::N2, xyzw_ring(F5));
  CHECK(n2p.epsilon == F5->from_int(3));
  CHECK_FALSE(is_square(F5->from_int(2)));
  CHECK(is_square(F5->from_int(4)));

  // Pairwise inequivalent: rank separates DEG, the discriminant class separates N1 and N2.
  CHECK(n1.phi.rank() == 4);
  CHECK(n2.phi.rank() == 4);
  CHECK(is_square(n1.phi.det()) != is_square(n2.phi.det()));
  CHECK_THROWS_AS(quadric(QuadricTag::N1, make_ring(F, {"x", "y", "z"})), MathError);
}

TEST_CASE("group element examples") {
  auto F5 = make_field(5, 1);
  auto deg5 = quadric(QuadricTag::DEG, xyzw_ring(F5));
  auto t = group_element(deg5, GroupKind::deg_t, {F5->from_int(2)});
  CHECK(t.g == Matrix::diag({F5->one(), F5->from_int(2), F5->one(), F5->from_int(3)}));
  CHECK(t.mu.is_one());
  auto s = group_element(deg5, GroupKind::deg_s);
  CHECK(s.mu.is_one());
  CHECK(linear_transform(deg5.Q, s.g) == deg5.Q);
  CHECK_THROWS_AS(group_element(deg5, GroupKind::deg_t, {F5->zero()}), MathError);
  CHECK_THROWS_AS(group_element(deg5, GroupKind::n1_s1), MathError);
  CHECK_THROWS_AS(make_group_element(deg5, Matrix::diag({F5->one(), F5->from_int(2), F5->one(), F5->one()})),
                  MathError);

  auto F = make_field(5, 2);
  auto n2 = quadric(QuadricTag::N2, xyzw_ring(F));
  int unit_norm = 0;
  for (const auto& a : F->elements())
    for (const auto& b : F->elements())
      if (a * a - n2.epsilon * b * b == F->one()) {
        CHECK(group_element(n2, GroupKind::n2_rotation, {a, b}).mu.is_one());
        ++unit_norm;
      }
  CHECK(unit_norm == 26);  // |C| = q + 1 for the non-split torus
  CHECK_THROWS_AS(group_element(n2, GroupKind::n2_rotation, {F->zero(), F->zero()}), MathError);
}

TEST_CASE("group elements preserve Q up to similitude") {
  std::mt19937_64 rng(5);
  for (int p : {5, 7}) {
    auto F = make_field(p, 2);
    auto R = xyzw_ring(F);
    struct Gen {
      QuadricTag tag;
      GroupKind kind;
      int nparams;
    };
    const std::vector<Gen> gens{
        {QuadricTag::N1, GroupKind::n1_torus, 3},      {QuadricTag::N1, GroupKind::n1_unipotent, 2},
        {QuadricTag::N1, GroupKind::n1_swap, 0},       {QuadricTag::N1, GroupKind::n1_s1, 0},
        {QuadricTag::N1, GroupKind::n1_s2, 0},         {QuadricTag::N2, GroupKind::n2_h, 1},
        {QuadricTag::N2, GroupKind::n2_unipotent, 2},  {QuadricTag::N2, GroupKind::n2_rotation, 2},
        {QuadricTag::N2, GroupKind::n2_w, 0},          {QuadricTag::N2, GroupKind::n2_reflection, 0},
        {QuadricTag::DEG, GroupKind::deg_t, 1},        {QuadricTag::DEG, GroupKind::deg_u, 1},
        {QuadricTag::DEG, GroupKind::deg_s, 0},        {QuadricTag::DEG, GroupKind::deg_v, 4},
        {QuadricTag::DEG, GroupKind::deg_scalar, 1},   {QuadricTag::DEG, GroupKind::deg_reflection, 0},
    };
    for (const auto& gen : gens) {
      auto quad = quadric(gen.tag, R);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<FieldElement> params;
        for (int k = 0; k < gen.nparams; ++k) params.push_back(random_element(*F, rng, true));
        // Non-zero parameters are never degenerate: a^2 - eps b^2 = 0 has no solution for non-square eps.
        const GroupElement g = group_element(quad, gen.kind, params);
        CHECK(linear_transform(quad.Q, g.g) == quad.Q * g.mu);
      }
    }
  }
}

TEST_CASE("rotation subrepresentations on cubics in y, z") {
  std::mt19937_64 rng(11);
  auto F = make_field(5, 2);
  auto R = xyzw_ring(F);
  auto n2 = quadric(QuadricTag::N2, R);
  auto P = [&](const char* s) { return parse_poly(R, with_eps(s, n2.epsilon)); };
  const std::vector<Poly> v1{P("y*(y^2-eps*z^2)"), P("z*(y^2-eps*z^2)")};
  const std::vector<Poly> v2{P("y*(y^2+3*eps*z^2)"), P("z*(3*y^2+eps*z^2)")};
  CHECK(span_rank({v1[0], v1[1], v2[0], v2[1]}) == 4);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_element(*F, rng), b = random_element(*F, rng);
    if (a.is_zero() && b.is_zero()) a = F->one();
    auto g = group_element(n2, GroupKind::n2_rotation, {a, b});
    for (const auto* V : {&v1, &v2})
      for (const auto& f : *V) CHECK(span_rank({(*V)[0], (*V)[1], linear_transform(f, g.g)}) == 2);
  }
}

TEST_CASE("case specs reproduce the displayed cubics") {
  const char* n1i =
      "(a1*y+a2*z)*x^2+a3*y*z*x+y^3+a4*z^3+b1*y^2*z+a5*y*z^2+(a6*y^2+a7*y*z+b2*z^2)*w+(a8*y+a9*z)*w^2+a10*w^3";
  const char* n1ii = "(a1*y+a2*z)*x^2+a3*y*z*x+b1*y^2*z+b2*y*z^2+(a4*y^2+a5*y*z+b3*z^2)*w+(a6*y+a7*z)*w^2+a8*w^3";
  const char* n2 =
      "(a1*y+a2*z)*x^2+a3*(y^2-eps*z^2)*x+b1*y*(y^2-eps*z^2)+a4*y*(y^2+3*eps*z^2)+a5*z*(3*y^2+eps*z^2)"
      "+(a6*y^2+a7*y*z+b2*z^2)*w+(a8*y+a9*z)*w^2+a10*w^3";
  const char* deg = "a0*x^3+(a1*y^2+a2*z^2+a3*w^2+a4*y*z+a5*z*w)*x+a6*y^3+a7*z^3+a8*w^3+a9*y*z^2+b1*z^2*w+b2*z*w^2";
  const std::map<std::string, const char*> shown{{"n1i", n1i}, {"n1ii", n1ii}, {"n2", n2}, {"deg", deg}};
  for (const auto& id : case_ids()) {
    auto spec = case_spec(id);
    auto P = spec.generic_cubic();
    const auto eps = pick_epsilon(*spec.field);
    auto want = parse_poly(P.ring(), with_eps(shown.at(id.substr(0, id.find('-'))), eps));
    CHECK_MESSAGE(P == want, id);
    CHECK(P.to_string() == want.to_string());
  }
}

TEST_CASE("case specs: iteration counts and splits") {
  const std::map<std::string, long long> counts{{"n1i-25", 3456},    {"n1ii-25", 6912},  {"n2-25", 2496},
                                                {"deg-25", 57600},   {"n1i-49", 677376}, {"n1ii-49", 27648},
                                                {"n2-49", 470400},   {"deg-49", 451584}};
  const std::map<std::string, std::size_t> unknowns{{"n1i-25", 8}, {"n1ii-25", 6}, {"n2-25", 8}, {"deg-25", 7},
                                                    {"n1i-49", 7}, {"n1ii-49", 6}, {"n2-49", 7}, {"deg-49", 7}};
  for (const auto& id : case_ids()) {
    auto spec = case_spec(id);
    CHECK_MESSAGE(spec.iterations() == counts.at(id), id);
    CHECK(spec.symbolic.size() == unknowns.at(id));
    CHECK(spec.symbolic.size() + spec.loop.size() == spec.a_names.size());
    auto U = spec.unknown_ring();
    CHECK(U->nvars() == static_cast<int>(spec.symbolic.size()));
    CHECK(U->names()[U->var_at(0)] == spec.symbolic_order.front());
  }
  auto deg = case_spec("deg-25");
  CHECK(deg.symbolic_order == std::vector<std::string>{"a4", "a2", "a5", "a3", "a9", "a7", "a8"});
  auto n1 = case_spec("n1i-25");
  CHECK(n1.b_domains[0][2] == n1.field->generator());  // -eps = g
  CHECK_THROWS_AS(case_spec("n3-25"), MathError);
  CHECK_THROWS_AS(case_spec("deg-27"), MathError);
  CHECK_THROWS_AS(case_spec(CaseKind::deg, make_field(3, 3)), MathError);
}

TEST_CASE("cell decoding covers each domain exactly once") {
  for (const char* id : {"n1ii-25", "n2-25"}) {
    auto spec = case_spec(id);
    std::set<std::vector<Code>> seen;
    for (long long c = 0; c < spec.iterations(); ++c) {
      std::vector<Code> key;
      for (const auto& b : spec.b_tuple(c)) key.push_back(b.code());
      const auto a = spec.loop_tuple(c);
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (spec.loop_domain[k] == LoopCoord::unit) CHECK_FALSE(a[k].is_zero());
        key.push_back(a[k].code());
      }
      if (spec.loop_pair_nonzero) CHECK_FALSE((a[0].is_zero() && a[1].is_zero()));
      seen.insert(key);
    }
    CHECK(static_cast<long long>(seen.size()) == spec.iterations());
    CHECK_THROWS_AS(spec.b_tuple(spec.iterations()), MathError);
  }
}
