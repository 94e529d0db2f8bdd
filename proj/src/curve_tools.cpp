#include "sscurve/curve_tools.hpp"

#include <algorithm>
#include <map>

#include "sscurve/groebner.hpp"

namespace sscurve {

CurvePair make_curve_pair(const Poly& Q, const Poly& P) {
  check_same_ring(Q, P);
  const std::vector<std::string> xyzw{"x", "y", "z", "w"};
  if (Q.ring()->names() != xyzw) throw MathError("curve: expected the ring of x, y, z, w");
  if (Q.is_zero() || P.is_zero() || !Q.is_homogeneous() || !P.is_homogeneous() || Q.total_degree() != 2 ||
      P.total_degree() != 3)
    throw MathError("curve: expected a homogeneous quadric and cubic");
  if (normal_form(P, {Q}).is_zero()) throw MathError("curve: the cubic is a multiple of the quadric");
  return {Q, P};
}

long long count_points(const CurvePair& C) {
  const FieldCtx& F = C.Q.field();
  const int q = F.q();
  long long count = 0;
  std::vector<Code> pt(4);
  for (int lead = 0; lead < 4; ++lead) {
    long long n = 1;
    for (int k = lead + 1; k < 4; ++k) n *= q;
    for (long long idx = 0; idx < n; ++idx) {
      std::fill(pt.begin(), pt.end(), 0);
      pt[lead] = 1;
      long long t = idx;
      for (int k = 3; k > lead; --k) {
        pt[k] = static_cast<Code>(t % q);
        t /= q;
      }
      if (evaluate(C.Q, pt) == 0 && evaluate(C.P, pt) == 0) ++count;
    }
  }
  return count;
}

std::optional<FieldElement> verify_projective_equivalence(const Matrix& g, const CurvePair& C1, const CurvePair& C2) {
  if (C1.Q != C2.Q) throw MathError("verify_projective_equivalence: the curves must share the quadric");
  const Poly& Q = C1.Q;
  if (g.rows() != 4 || g.cols() != 4 || g.ctx() != &Q.field() || g.det().is_zero())
    throw MathError("verify_projective_equivalence: expected an invertible 4x4 matrix over the curve's field");
  // g must scale Q.
  const Poly gQ = linear_transform(Q, g);
  const FieldCtx& F = Q.field();
  const FieldElement mu = F.element(gQ.lead_coeff()) / F.element(Q.lead_coeff());
  if (gQ != Q * mu) return std::nullopt;

  const Poly r1 = normal_form(C1.P, {Q});
  const Poly r2 = normal_form(linear_transform(C2.P, g), {Q});
  if (r1.is_zero()) return std::nullopt;
  const FieldElement c2 = r2.coefficient(r1.lead_mono());
  if (c2.is_zero()) return std::nullopt;
  const FieldElement lambda = c2 / F.element(r1.lead_coeff());
  if (!(r2 - r1 * lambda).is_zero()) return std::nullopt;
  return lambda;
}

FieldElement sqrt3(const FieldCtx& F) {
  const auto roots = square_roots(F.from_int(3));
  if (roots.empty()) throw MathError("sqrt3: 3 is not a square in this field");
  return roots.front();
}

std::array<Matrix, 4> s5_generators(const FieldCtx& F) {
  const FieldElement r = sqrt3(F);
  const FieldElement one = F.one(), zero = F.zero(), two = F.from_int(2);
  std::array<Matrix, 4> s;
  s[0] = Matrix::from_ints(&F, 4, 4, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0});
  s[1] = Matrix::from_elements(
      4, 4, {one, zero, zero, zero, zero, zero, zero, two - r, zero, zero, one, zero, zero, two + r, zero, zero});
  s[2] = Matrix::from_ints(&F, 4, 4, {1, 0, 0, 0, 0, -1, 1, 3, 0, 1, 3, 1, 0, 3, 1, -1});
  s[3] = Matrix::from_ints(&F, 4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1});
  return s;
}

CurvePair fermat_degenerate_curve(const RingPtr& ring) {
  return make_curve_pair(parse_poly(ring, "2*y*w+z^2"), parse_poly(ring, "x^3+y^3+w^3"));
}

PresentationCheck check_s5_presentation(const FieldCtx& F) {
  PresentationCheck out;
  const auto s = s5_generators(F);
  // Non-owning handle: the caller keeps F alive for the duration of the call.
  const FieldPtr fp(std::shared_ptr<const FieldCtx>(), &F);
  const auto C = fermat_degenerate_curve(xyzw_ring(fp));
  out.automorphisms = std::all_of(s.begin(), s.end(), [&](const Matrix& g) {
    return verify_projective_equivalence(g, C, C).has_value();
  });
  out.involutions = std::all_of(s.begin(), s.end(), [](const Matrix& g) { return (g * g).scalar_value().has_value(); });
  out.commuting = true;
  out.braid = true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Matrix m = s[i] * s[j];
      const Matrix m2 = m * m;
      if (j - i > 1) {
        out.commuting = out.commuting && m2.scalar_value().has_value();
      } else {
        out.braid = out.braid && !m2.scalar_value().has_value() && (m2 * m).scalar_value().has_value();
      }
    }
  return out;
}

bool verify_s5_presentation(const FieldCtx& F) { return check_s5_presentation(F).ok(); }

namespace {

std::vector<FieldElement> cube_roots(const FieldElement& a) {
  std::vector<FieldElement> out;
  for (const auto& t : a.ctx()->elements())
    if (t * t * t == a) out.push_back(t);
  return out;
}

}  // namespace

std::vector<GkElement> enumerate_gk(const FieldCtx& F) {
  const FieldPtr fp(std::shared_ptr<const FieldCtx>(), &F);
  const auto ring = xyzw_ring(fp);
  const auto C = fermat_degenerate_curve(ring);
  const auto quad = quadric(QuadricTag::DEG, ring);
  const FieldElement one = F.one();
  std::vector<GkElement> out;
  auto accept = [&](const Matrix& g, const FieldElement& lambda) {
    const auto ge = make_group_element(quad, g);
    if (!ge.mu.is_one()) throw MathError("enumerate_gk: element outside the orthogonal group");
    const auto l = verify_projective_equivalence(g, C, C);
    if (!l || *l != lambda) throw MathError("enumerate_gk: element does not act with the recorded lambda");
    out.push_back({g, lambda});
  };
  for (const FieldElement& lambda : {one, -one})
    for (const FieldElement& sign : {one, -one}) {
      for (const auto& c : cube_roots(lambda))
        for (const auto& d : cube_roots(lambda)) accept(Matrix::diag({d, c, sign, c.inv()}), lambda);
      const Matrix flip = Matrix::diag({one, one, sign, one});
      const Matrix s = group_element(quad, GroupKind::deg_s).g;
      for (const auto& a : F.elements()) {
        const FieldElement t = F.from_int(3) * a.pow(6) + one;
        if (t.is_zero()) continue;
        const FieldElement b = a.pow(17) + a.pow(11) + F.from_int(2) * a.pow(5);
        const Matrix Ua = group_element(quad, GroupKind::deg_u, {a}).g;
        const Matrix Ub = group_element(quad, GroupKind::deg_u, {b}).g;
        for (const auto& c : cube_roots(lambda * t)) {
          const Matrix Tc = group_element(quad, GroupKind::deg_t, {c}).g;
          for (const auto& d : cube_roots(lambda))
            accept(flip * Tc * Ub * s * Ua * Matrix::diag({d, one, one, one}), lambda);
        }
      }
    }
  return out;
}

FieldElement zeta_generator(const FieldCtx& F) {
  for (const auto& r : square_roots(F.from_int(3))) {
    const FieldElement z = F.one() + r;
    if (is_primitive(z)) return z;
  }
  throw MathError("zeta_generator: 1 + sqrt(3) is not primitive for either root");
}

std::vector<Representative> representatives_21(const FieldCtx& F) {
  if (F.q() != 25) throw MathError("representatives_21: expects F_25");
  const FieldPtr fp(std::shared_ptr<const FieldCtx>(), &F);
  const auto ring = xyzw_ring(fp);
  const FieldElement z = zeta_generator(F);
  const Poly Q = parse_poly(ring, "2*y*w+z^2");
  const Poly x3 = parse_poly(ring, "x^3"), y3 = parse_poly(ring, "y^3"), w3 = parse_poly(ring, "w^3");
  const Poly zw2 = parse_poly(ring, "z*w^2");
  const std::map<std::pair<int, int>, long long> count_I{
      {{0, 0}, 66}, {{2, 1}, 36}, {{1, 2}, 36}, {{1, 3}, 36}, {{2, 3}, 36}, {{0, 1}, 21},
      {{1, 1}, 21}, {{0, 2}, 21}, {{2, 2}, 21}, {{1, 0}, 6},  {{2, 0}, 6},  {{0, 3}, 6}};
  const std::map<std::pair<int, int>, long long> count_II{{{0, 2}, 31}, {{2, 2}, 31}, {{0, 0}, 26},
                                                          {{1, 0}, 26}, {{2, 0}, 26}, {{0, 3}, 26},
                                                          {{1, 3}, 26}, {{2, 3}, 26}, {{1, 2}, 16}};
  std::vector<Representative> out;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 3; ++j)
      out.push_back({RepFamily::I, i, j, make_curve_pair(Q, x3 * z.pow(i) + y3 * z.pow(j) + w3), count_I.at({i, j})});
  for (int i = 0; i <= 2; ++i)
    for (int k : {0, 2, 3})
      out.push_back(
          {RepFamily::II, i, k, make_curve_pair(Q, x3 * z.pow(i) + y3 * z.pow(k) + w3 + zw2), count_II.at({i, k})});
  return out;
}

std::string family_name(const Representative& r) { return r.family == RepFamily::I ? "I" : "II"; }

Rational bernoulli(int n) {
  if (n < 0) throw MathError("bernoulli: negative index");
  // Akiyama-Tanigawa; yields B_1 = +1/2, irrelevant for even n.
  std::vector<Rational> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return a[0];
}

Rational mass_formula(int genus, int p) {
  if (genus < 1 || genus > 8) throw MathError("mass_formula: genus must be between 1 and 8");
  if (p < 2) throw MathError("mass_formula: p must be a prime");
  Rational m = 1;
  boost::multiprecision::cpp_int pi = 1;
  for (int i = 1; i <= genus; ++i) {
    const Rational b = bernoulli(2 * i);
    m *= (i % 2 ? b : Rational(-b)) / (4 * i);
    pi *= p;
    m *= Rational(pi + (i % 2 ? -1 : 1));
  }
  return m;
}

Rational mass_share(long long aut_order, const Rational& mass) {
  if (aut_order <= 0) throw MathError("mass_share: automorphism order must be positive");
  if (mass <= 0) throw MathError("mass_share: mass must be positive");
  return Rational(1, 2 * aut_order) / mass;
}

}  // namespace sscurve
