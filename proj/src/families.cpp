#include "sscurve/families.hpp"

#include <algorithm>

namespace sscurve {

std::string to_string(QuadricTag tag) {
  switch (tag) {
    case QuadricTag::N1: return "N1";
    case QuadricTag::N2: return "N2";
    case QuadricTag::DEG: return "DEG";
  }
  return "?";
}

RingPtr xyzw_ring(FieldPtr field) { return make_ring(std::move(field), {"x", "y", "z", "w"}); }

namespace {

void require_xyzw(const Ring& R) {
  const std::vector<std::string> want{"x", "y", "z", "w"};
  if (R.names() != want) throw MathError("expected the ring of x, y, z, w");
}

// v^T phi v
Poly form_of(const RingPtr& ring, const Matrix& phi) {
  std::vector<Term> terms;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Code c = phi(i, j).code();
      if (c == 0) continue;
      std::vector<int> e(4, 0);
      ++e[i];
      ++e[j];
      terms.push_back({ring->monomial(e), c});
    }
  return Poly::from_terms(ring, std::move(terms));
}

Poly parse_with_eps(const RingPtr& ring, std::string text, const FieldElement& eps) {
  const std::string rep = "(" + eps.to_string() + ")";
  for (std::size_t pos = 0; (pos = text.find("eps", pos)) != std::string::npos; pos += rep.size())
    text.replace(pos, 3, rep);
  return parse_poly(ring, text);
}

}  // namespace

QuadricClass quadric(QuadricTag tag, const RingPtr& ring) {
  require_xyzw(*ring);
  const FieldCtx& F = ring->field();
  if (F.p() == 2) throw MathError("quadric: characteristic 2 is not supported");
  QuadricClass out{tag, F.zero(), Poly(ring), Matrix(&F, 4, 4)};
  Matrix& phi = out.phi;
  switch (tag) {
    case QuadricTag::N1:
      for (int i = 0; i < 4; ++i) phi.set(i, 3 - i, F.one());
      out.Q = parse_poly(ring, "2*x*w+2*y*z");
      break;
    case QuadricTag::N2:
      out.epsilon = pick_epsilon(F);
      phi.set(0, 3, F.one());
      phi.set(3, 0, F.one());
      phi.set(1, 1, F.one());
      phi.set(2, 2, -out.epsilon);
      out.Q = parse_with_eps(ring, "2*x*w+y^2-eps*z^2", out.epsilon);
      break;
    case QuadricTag::DEG:
      out.epsilon = -F.one();
      phi.set(1, 3, F.one());
      phi.set(3, 1, F.one());
      phi.set(2, 2, -out.epsilon);
      out.Q = parse_poly(ring, "2*y*w+z^2");
      break;
  }
  if (form_of(ring, phi) != out.Q) throw MathError("quadric: phi does not match Q");
  return out;
}

GroupElement make_group_element(const QuadricClass& quad, const Matrix& g) {
  if (g.rows() != 4 || g.cols() != 4 || g.ctx() != quad.phi.ctx())
    throw MathError("group element: expected a 4x4 matrix over the quadric's field");
  if (g.det().is_zero()) throw MathError("group element: singular matrix");
  const Matrix lhs = g.transpose() * quad.phi * g;
  // mu from any non-zero entry of phi, then checked everywhere.
  FieldElement mu;
  for (int i = 0; i < 4 && mu.ctx() == nullptr; ++i)
    for (int j = 0; j < 4; ++j)
      if (!quad.phi(i, j).is_zero()) {
        mu = lhs(i, j) / quad.phi(i, j);
        break;
      }
  if (mu.is_zero() || !(lhs == quad.phi * mu)) throw MathError("group element: not in the similitude group of Q");
  return {quad.tag, g, mu};
}

GroupElement group_element(const QuadricClass& quad, GroupKind kind, const std::vector<FieldElement>& params) {
  const FieldCtx* F = quad.phi.ctx();
  auto need = [&](std::size_t n) {
    if (params.size() != n) throw MathError("group_element: expected " + std::to_string(n) + " parameters");
  };
  auto tag_is = [&](QuadricTag t) {
    if (quad.tag != t) throw MathError("group_element: kind does not belong to quadric " + to_string(quad.tag));
  };
  auto nonzero = [](const FieldElement& a) {
    if (a.is_zero()) throw MathError("group_element: degenerate parameter");
    return a;
  };
  const FieldElement one = F->one(), zero = F->zero();
  auto M = [&](std::vector<FieldElement> v) { return Matrix::from_elements(4, 4, v); };
  const FieldElement& e = quad.epsilon;
  Matrix g;
  switch (kind) {
    case GroupKind::n1_torus: {
      tag_is(QuadricTag::N1);
      need(3);
      const auto a = nonzero(params[0]), b = nonzero(params[1]), c = nonzero(params[2]);
      g = Matrix::diag({a, b, c / b, c / a});
      break;
    }
    case GroupKind::n1_unipotent: {
      tag_is(QuadricTag::N1);
      need(2);
      const auto& a = params[0];
      const auto& b = params[1];
      g = M({one, a, zero, zero, zero, one, zero, zero, zero, zero, one, -a, zero, zero, zero, one}) *
          M({one, zero, b, zero, zero, one, zero, -b, zero, zero, one, zero, zero, zero, zero, one});
      break;
    }
    case GroupKind::n1_swap:
      tag_is(QuadricTag::N1);
      need(0);
      g = Matrix::from_ints(F, 4, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
      break;
    case GroupKind::n1_s1:
      tag_is(QuadricTag::N1);
      need(0);
      g = Matrix::from_ints(F, 4, 4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
      break;
    case GroupKind::n1_s2:
      tag_is(QuadricTag::N1);
      need(0);
      g = Matrix::from_ints(F, 4, 4, {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0});
      break;
    case GroupKind::n2_h: {
      tag_is(QuadricTag::N2);
      need(1);
      const auto a = nonzero(params[0]);
      g = Matrix::diag({a, one, one, a.inv()});
      break;
    }
    case GroupKind::n2_unipotent: {
      tag_is(QuadricTag::N2);
      need(2);
      const auto& a = params[0];
      const auto& b = params[1];
      const auto two = F->from_int(2);
      g = M({one, a, zero, -(a * a) / two, zero, one, zero, -a, zero, zero, one, zero, zero, zero, zero, one}) *
          M({one, zero, b, (b * b) / (two * e), zero, one, zero, zero, zero, zero, one, b / e, zero, zero, zero, one});
      break;
    }
    case GroupKind::n2_rotation: {
      tag_is(QuadricTag::N2);
      need(2);
      const auto& a = params[0];
      const auto& b = params[1];
      const auto n = nonzero(a * a - e * b * b);
      g = M({one, zero, zero, zero, zero, a, e * b, zero, zero, b, a, zero, zero, zero, zero, n});
      break;
    }
    case GroupKind::n2_w:
      tag_is(QuadricTag::N2);
      need(0);
      g = Matrix::from_ints(F, 4, 4, {0, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0});
      break;
    case GroupKind::n2_reflection:
      tag_is(QuadricTag::N2);
      need(0);
      g = Matrix::from_ints(F, 4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1});
      break;
    case GroupKind::deg_t: {
      tag_is(QuadricTag::DEG);
      need(1);
      const auto a = nonzero(params[0]);
      g = Matrix::diag({one, a, one, a.inv()});
      break;
    }
    case GroupKind::deg_u: {
      tag_is(QuadricTag::DEG);
      need(1);
      const auto& a = params[0];
      const auto two = F->from_int(2);
      g = M({one, zero, zero, zero, zero, one, a, (a * a) / (two * e), zero, zero, one, a / e, zero, zero, zero, one});
      break;
    }
    case GroupKind::deg_s:
      tag_is(QuadricTag::DEG);
      need(0);
      g = Matrix::from_ints(F, 4, 4, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0});
      break;
    case GroupKind::deg_v: {
      tag_is(QuadricTag::DEG);
      need(4);
      const auto a = nonzero(params[0]);
      g = M({a, params[1], params[2], params[3], zero, one, zero, zero, zero, zero, one, zero, zero, zero, zero, one});
      break;
    }
    case GroupKind::deg_scalar: {
      tag_is(QuadricTag::DEG);
      need(1);
      const auto b = nonzero(params[0]);
      g = Matrix::diag({one, b, b, b});
      break;
    }
    case GroupKind::deg_reflection:
      tag_is(QuadricTag::DEG);
      need(0);
      g = Matrix::from_ints(F, 4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1});
      break;
  }
  return make_group_element(quad, g);
}

long long CaseSpec::b_count() const {
  long long n = 1;
  for (const auto& d : b_domains) n *= static_cast<long long>(d.size());
  return n;
}

namespace {

long long radix(LoopCoord c, int q) { return c == LoopCoord::unit ? q - 1 : q; }

FieldElement coord_value(const FieldCtx& F, LoopCoord c, long long i) {
  return F.element(static_cast<Code>(c == LoopCoord::unit ? i + 1 : i));
}

}  // namespace

long long CaseSpec::loop_count() const {
  long long n = 1;
  std::size_t start = 0;
  if (loop_pair_nonzero) {
    n = static_cast<long long>(q) * q - 1;
    start = 2;
  }
  for (std::size_t i = start; i < loop_domain.size(); ++i) n *= radix(loop_domain[i], q);
  return n;
}

std::vector<FieldElement> CaseSpec::b_tuple(long long cell) const {
  if (cell < 0 || cell >= iterations()) throw MathError("cell index out of range");
  long long bi = cell / loop_count();
  std::vector<FieldElement> out(b_domains.size());
  for (std::size_t k = b_domains.size(); k-- > 0;) {
    const auto n = static_cast<long long>(b_domains[k].size());
    out[k] = b_domains[k][bi % n];
    bi /= n;
  }
  return out;
}

std::vector<FieldElement> CaseSpec::loop_tuple(long long cell) const {
  if (cell < 0 || cell >= iterations()) throw MathError("cell index out of range");
  long long li = cell % loop_count();
  const FieldCtx& F = *field;
  std::vector<FieldElement> out(loop_domain.size());
  const std::size_t start = loop_pair_nonzero ? 2 : 0;
  for (std::size_t k = loop_domain.size(); k-- > start;) {
    const long long r = radix(loop_domain[k], q);
    out[k] = coord_value(F, loop_domain[k], li % r);
    li /= r;
  }
  if (loop_pair_nonzero) {
    const long long v = li + 1;
    out[0] = F.element(static_cast<Code>(v / q));
    out[1] = F.element(static_cast<Code>(v % q));
  }
  return out;
}

Poly CaseSpec::generic_cubic() const {
  std::vector<std::string> names = a_names;
  names.insert(names.end(), b_names.begin(), b_names.end());
  for (const auto& v : ring->names()) names.push_back(v);
  auto R = make_ring(field, names);
  Poly P = convert(fixed, R);
  for (std::size_t i = 0; i < a_names.size(); ++i)
    P = P + Poly::variable(R, static_cast<int>(i)) * convert(p_basis[i], R);
  for (std::size_t j = 0; j < b_names.size(); ++j)
    P = P + Poly::variable(R, static_cast<int>(a_names.size() + j)) * convert(q_basis[j], R);
  return P;
}

Poly CaseSpec::cubic(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) const {
  if (a.size() != p_basis.size() || b.size() != q_basis.size()) throw MathError("cubic: wrong number of coefficients");
  Poly P = fixed;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) P = P + p_basis[i] * a[i];
  for (std::size_t j = 0; j < b.size(); ++j)
    if (!b[j].is_zero()) P = P + q_basis[j] * b[j];
  return P;
}

RingPtr CaseSpec::unknown_ring() const {
  std::vector<std::string> names;
  for (int i : symbolic) names.push_back(a_names[i]);
  std::vector<int> priority;
  for (const auto& n : symbolic_order) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw MathError("unknown_ring: '" + n + "' is not an unknown");
    priority.push_back(static_cast<int>(it - names.begin()));
  }
  return make_ring(field, names, MonomialOrder{OrderKind::grevlex, priority});
}

namespace {

std::vector<std::string> names_from(int first, int last) {
  std::vector<std::string> out;
  for (int i = first; i <= last; ++i) out.push_back("a" + std::to_string(i));
  return out;
}

std::vector<int> positions(const std::vector<std::string>& all, const std::vector<std::string>& pick) {
  std::vector<int> out;
  for (const auto& n : pick) {
    auto it = std::find(all.begin(), all.end(), n);
    if (it == all.end()) throw MathError("case_spec: unknown coefficient " + n);
    out.push_back(static_cast<int>(it - all.begin()));
  }
  return out;
}

}  // namespace

CaseSpec case_spec(CaseKind kind, FieldPtr field) {
  const int q = field->q();
  if (q != 25 && q != 49) throw MathError("case_spec: only q = 25 and q = 49 are supported");
  CaseSpec s;
  s.kind = kind;
  s.q = q;
  s.field = field;
  s.ring = xyzw_ring(field);
  const FieldCtx& F = *field;
  const FieldElement eps = pick_epsilon(F);
  const FieldElement zero = F.zero(), one = F.one();
  auto polys = [&](std::initializer_list<const char*> texts) {
    std::vector<Poly> out;
    for (const char* t : texts) out.push_back(parse_with_eps(s.ring, t, eps));
    return out;
  };
  const std::vector<FieldElement> b01{zero, one}, b01e{zero, one, -eps};
  const bool big = q == 49;
  std::vector<std::string> loop_names;
  std::vector<std::string> unknowns;

  switch (kind) {
    case CaseKind::n1i:
      s.id = "n1i";
      s.quadric = quadric(QuadricTag::N1, s.ring);
      s.a_names = names_from(1, 10);
      s.p_basis = polys({"y*x^2", "z*x^2", "y*z*x", "z^3", "y*z^2", "y^2*w", "y*z*w", "y*w^2", "z*w^2", "w^3"});
      s.b_names = {"b1", "b2"};
      s.q_basis = polys({"y^2*z", "z^2*w"});
      s.fixed = parse_poly(s.ring, "y^3");
      s.b_domains = {b01e, b01};
      if (big) {
        loop_names = {"a1", "a2", "a3"};
        s.loop_domain = {LoopCoord::unit, LoopCoord::unit, LoopCoord::any};
        s.symbolic_order = {"a6", "a5", "a7", "a8", "a4", "a9", "a10"};
      } else {
        loop_names = {"a1", "a2"};
        s.loop_domain = {LoopCoord::unit, LoopCoord::unit};
        s.symbolic_order = {"a3", "a6", "a5", "a7", "a8", "a4", "a9", "a10"};
      }
      break;
    case CaseKind::n1ii:
      s.id = "n1ii";
      s.quadric = quadric(QuadricTag::N1, s.ring);
      s.a_names = names_from(1, 8);
      s.p_basis = polys({"y*x^2", "z*x^2", "y*z*x", "y^2*w", "y*z*w", "y*w^2", "z*w^2", "w^3"});
      s.b_names = {"b1", "b2", "b3"};
      s.q_basis = polys({"y^2*z", "y*z^2", "z^2*w"});
      s.fixed = Poly(s.ring);
      s.b_domains = {b01, b01e, b01};
      loop_names = {"a1", "a2"};
      s.loop_domain = {LoopCoord::unit, LoopCoord::unit};
      s.symbolic_order = {"a3", "a4", "a5", "a6", "a7", "a8"};
      break;
    case CaseKind::n2:
      s.id = "n2";
      s.quadric = quadric(QuadricTag::N2, s.ring);
      s.a_names = names_from(1, 10);
      s.p_basis = polys({"y*x^2", "z*x^2", "(y^2-eps*z^2)*x", "y*(y^2+3*eps*z^2)", "z*(3*y^2+eps*z^2)", "y^2*w", "y*z*w",
                         "y*w^2", "z*w^2", "w^3"});
      s.b_names = {"b1", "b2"};
      s.q_basis = polys({"y*(y^2-eps*z^2)", "z^2*w"});
      s.fixed = Poly(s.ring);
      s.b_domains = {b01, b01};
      s.loop_pair_nonzero = true;
      if (big) {
        loop_names = {"a1", "a2", "a3"};
        s.loop_domain = {LoopCoord::any, LoopCoord::any, LoopCoord::any};
        s.symbolic_order = {"a4", "a5", "a6", "a7", "a8", "a9", "a10"};
      } else {
        loop_names = {"a1", "a2"};
        s.loop_domain = {LoopCoord::any, LoopCoord::any};
        s.symbolic_order = {"a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10"};
      }
      break;
    case CaseKind::deg:
      s.id = "deg";
      s.quadric = quadric(QuadricTag::DEG, s.ring);
      s.a_names = names_from(0, 9);
      s.p_basis = polys({"x^3", "x*y^2", "x*z^2", "x*w^2", "x*y*z", "x*z*w", "y^3", "z^3", "w^3", "y*z^2"});
      s.b_names = {"b1", "b2"};
      s.q_basis = polys({"z^2*w", "z*w^2"});
      s.fixed = Poly(s.ring);
      s.b_domains = {b01, b01};
      loop_names = {"a0", "a1", "a6"};
      s.loop_domain = {LoopCoord::unit, LoopCoord::any, LoopCoord::unit};
      s.symbolic_order = {"a4", "a2", "a5", "a3", "a9", "a7", "a8"};
      break;
  }
  s.id += big ? "-49" : "-25";
  s.loop = positions(s.a_names, loop_names);
  for (int i = 0; i < static_cast<int>(s.a_names.size()); ++i)
    if (std::find(s.loop.begin(), s.loop.end(), i) == s.loop.end()) s.symbolic.push_back(i);
  return s;
}

CaseSpec case_spec(std::string_view id) {
  const auto dash = id.find('-');
  if (dash == std::string_view::npos) throw MathError("unknown case id '" + std::string(id) + "'");
  const auto name = id.substr(0, dash);
  const auto qs = id.substr(dash + 1);
  CaseKind kind;
  if (name == "n1i") kind = CaseKind::n1i;
  else if (name == "n1ii") kind = CaseKind::n1ii;
  else if (name == "n2") kind = CaseKind::n2;
  else if (name == "deg") kind = CaseKind::deg;
  else throw MathError("unknown case id '" + std::string(id) + "'");
  int p;
  if (qs == "25") p = 5;
  else if (qs == "49") p = 7;
  else throw MathError("unknown case id '" + std::string(id) + "'");
  return case_spec(kind, make_field(p, 2));
}

std::vector<std::string> case_ids() {
  return {"n1i-25", "n1ii-25", "n2-25", "deg-25", "n1i-49", "n1ii-49", "n2-49", "deg-49"};
}

}  // namespace sscurve
