#include "sscurve/hasse_witt.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "sscurve/groebner.hpp"

namespace sscurve {

HWIndexSet hw_index_set(int r, const std::vector<int>& degrees) {
  if (r < 2) throw MathError("hw_index_set: r must be at least 2");
  if (static_cast<int>(degrees.size()) != r - 1) throw MathError("hw_index_set: need r-1 degrees");
  HWIndexSet idx{r, degrees, {}};
  int total = 0;
  for (int d : degrees) {
    if (d < 1) throw MathError("hw_index_set: degrees must be positive");
    total += d;
  }
  const int excess = total - (r + 1);
  if (excess < 0) return idx;  // genus 0
  // Distribute `excess` extra units over r+1 entries.
  std::vector<int> k(r + 1, -1);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r) {
      k[pos] = -1 - left;
      idx.rows.push_back(k);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      k[pos] = -1 - e;
      rec(pos + 1, left - e);
    }
  };
  rec(0, excess);
  std::sort(idx.rows.begin(), idx.rows.end());
  return idx;
}

std::vector<int> hw_entry_exponent(const HWIndexSet& idx, int i, int j, int p) {
  const auto& ki = idx.rows.at(i);
  const auto& kj = idx.rows.at(j);
  std::vector<int> e(ki.size());
  for (std::size_t t = 0; t < e.size(); ++t) e[t] = -kj[t] * p + ki[t];
  return e;
}

bool HasseWittMatrix::is_zero() const {
  for (int i = 0; i < matrix.rows(); ++i)
    for (int j = 0; j < matrix.cols(); ++j)
      if (!matrix(i, j).is_zero()) return false;
  return true;
}

namespace {

void require_coprime_inputs(const std::vector<Poly>& polys) {
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < polys.size(); ++j)
      if (i != j && polys[j].total_degree() <= polys[i].total_degree() &&
          normal_form(polys[i], {polys[j]}).is_zero())
        throw MathError("hasse-witt: an input polynomial divides another");
}

}  // namespace

HasseWittMatrix hasse_witt_matrix(const std::vector<Poly>& polys, int p) {
  if (polys.empty()) throw MathError("hasse_witt_matrix: no polynomials");
  const RingPtr& ring = polys.front().ring();
  const int r = static_cast<int>(polys.size()) + 1;
  if (ring->nvars() != r + 1) throw MathError("hasse_witt_matrix: ring must have (number of polys + 2) variables");
  if (ring->field().p() != p) throw MathError("hasse_witt_matrix: p differs from the field characteristic");
  std::vector<int> degrees;
  for (const auto& f : polys) {
    check_same_ring(polys.front(), f);
    if (f.is_zero() || !f.is_homogeneous()) throw MathError("hasse_witt_matrix: inputs must be non-zero homogeneous");
    degrees.push_back(f.total_degree());
  }
  // Every (r-2)-subset of the degrees sums to at most r.
  const int n = static_cast<int>(degrees.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != r - 2) continue;
    int s = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s += degrees[i];
    if (s > r) throw MathError("hasse_witt_matrix: degree bound violated");
  }
  require_coprime_inputs(polys);

  HasseWittMatrix out{hw_index_set(r, degrees), {}};
  const int g = out.index.genus();
  out.matrix = Matrix(&ring->field(), g, g);
  if (g == 0) return out;

  std::vector<Monomial> targets;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) targets.push_back(ring->monomial(hw_entry_exponent(out.index, i, j, p)));
  const MonomialFilter keep = [&](const Monomial& m) {
    for (const auto& t : targets)
      if (m.divides(t)) return true;
    return false;
  };
  Poly prod = Poly::constant(ring, 1);
  for (const auto& f : polys) prod = prod * f;
  const Poly h = pow_filtered(prod, p - 1, keep);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) out.matrix.set(i, j, h.coefficient(targets[i * g + j]));
  return out;
}

std::vector<std::array<int, 4>> genus4_monomials(int p) {
  const int a = p - 2, b = p - 1, c = 2 * p - 2, d = 2 * p - 1;
  return {
      {c, b, b, b}, {d, a, b, b}, {d, b, a, b}, {d, b, b, a},  //
      {a, d, b, b}, {b, c, b, b}, {b, d, a, b}, {b, d, b, a},  //
      {a, b, d, b}, {b, a, d, b}, {b, b, c, b}, {b, b, d, a},  //
      {a, b, b, d}, {b, a, b, d}, {b, b, a, d}, {b, b, b, c},
  };
}

bool is_hw_zero(const Poly& f, const Poly& g, int p) {
  check_same_ring(f, g);
  const RingPtr& ring = f.ring();
  if (ring->nvars() != 4) throw MathError("is_hw_zero: four variables expected");
  if (ring->field().p() != p) throw MathError("is_hw_zero: p differs from the field characteristic");
  if (f.is_zero() || g.is_zero() || !f.is_homogeneous() || !g.is_homogeneous() || f.total_degree() != 3 ||
      g.total_degree() != 2)
    throw MathError("is_hw_zero: expects a homogeneous cubic and quadric");
  require_coprime_inputs({g, f});
  const Poly h = pow(f * g, p - 1);
  for (const auto& e : genus4_monomials(p))
    if (!h.coefficient(ring->monomial({e[0], e[1], e[2], e[3]})).is_zero()) return false;
  return true;
}

std::vector<Poly> symbolic_hw_coefficients(const Poly& P, const Poly& Q, int p, const std::array<int, 4>& xyzw,
                                           const RingPtr& coeff_ring) {
  check_same_ring(P, Q);
  const RingPtr& ring = P.ring();
  const Ring& R = *ring;
  if (R.field().p() != p) throw MathError("symbolic_hw_coefficients: p differs from the field characteristic");
  if (coeff_ring->field_ptr() != R.field_ptr()) throw MathError("symbolic_hw_coefficients: field mismatch");

  // Lane masks selecting the projective coordinates.
  Monomial proj_mask;
  std::vector<bool> is_proj(R.nvars(), false);
  for (int v : xyzw) {
    if (v < 0 || v >= R.nvars()) throw MathError("symbolic_hw_coefficients: bad coordinate index");
    proj_mask.set_exponent(R.slot(v), 0x7fff);
    is_proj[v] = true;
  }
  auto proj_part = [&](const Monomial& m) {
    Monomial r;
    for (int i = 0; i < 4; ++i) r.w[i] = m.w[i] & proj_mask.w[i];
    for (int v : xyzw) r.deg += r.exponent(R.slot(v));
    return r;
  };
  for (const auto& t : Q.terms())
    if (proj_part(t.m) != t.m) throw MathError("symbolic_hw_coefficients: Q involves coefficient variables");

  // Slot map from the coefficient variables into coeff_ring.
  std::vector<int> coeff_slot(R.nvars(), -1);
  for (int v = 0; v < R.nvars(); ++v) {
    if (is_proj[v]) continue;
    const int w = coeff_ring->index_of(R.names()[v]);
    if (w < 0) throw MathError("symbolic_hw_coefficients: coefficient ring lacks '" + R.names()[v] + "'");
    coeff_slot[v] = coeff_ring->slot(w);
  }

  std::vector<Monomial> targets;
  for (const auto& e : genus4_monomials(p)) {
    Monomial m;
    for (int k = 0; k < 4; ++k) m.set_exponent(R.slot(xyzw[k]), e[k]);
    targets.push_back(m);
  }
  const Poly Qp = pow(Q, p - 1);
  // Projective parts of P^(p-1) that can meet a target after multiplying by Q^(p-1).
  std::vector<Monomial> needed;
  for (const auto& t : targets)
    for (const auto& s : Qp.terms())
      if (s.m.divides(t)) needed.push_back(t / s.m);
  std::sort(needed.begin(), needed.end(), [](const Monomial& a, const Monomial& b) { return cmp_lex(a, b) < 0; });
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  const MonomialFilter keep = [&](const Monomial& m) {
    const Monomial pp = proj_part(m);
    for (const auto& n : needed)
      if (pp.divides(n)) return true;
    return false;
  };
  const Poly Pp = pow_filtered(P, p - 1, keep);

  // Group P^(p-1) by projective part, moving the rest into coeff_ring.
  std::unordered_map<Monomial, std::vector<Term>, MonomialHash> groups;
  for (const auto& t : Pp.terms()) {
    Monomial a;
    for (int v = 0; v < R.nvars(); ++v) {
      if (is_proj[v]) continue;
      const int e = R.exponent(t.m, v);
      if (e) a.set_exponent(coeff_slot[v], e);
    }
    groups[proj_part(t.m)].push_back({a, t.c});
  }
  const FieldCtx& F = R.field();
  std::vector<Poly> out;
  for (const auto& t : targets) {
    std::vector<Term> acc;
    for (const auto& s : Qp.terms()) {
      if (!s.m.divides(t)) continue;
      auto it = groups.find(t / s.m);
      if (it == groups.end()) continue;
      for (const auto& term : it->second) acc.push_back({term.m, F.mul(term.c, s.c)});
    }
    out.push_back(Poly::from_terms(coeff_ring, std::move(acc)));
  }
  return out;
}

}  // namespace sscurve
