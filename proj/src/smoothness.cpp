#include "sscurve/smoothness.hpp"

#include <algorithm>
#include <functional>

#include "sscurve/groebner.hpp"

namespace sscurve {

namespace {

Poly det(const std::vector<std::vector<Poly>>& M) {
  const std::size_t n = M.size();
  if (n == 1) return M[0][0];
  const RingPtr& ring = M[0][0].ring();
  Poly acc(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (M[0][c].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(M[r][k]);
      sub.push_back(std::move(row));
    }
    const Poly term = M[0][c] * det(sub);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

void subsets(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<Poly> jacobian_minors(const std::vector<Poly>& polys, int minor_size) {
  if (polys.empty()) throw MathError("jacobian_minors: no polynomials");
  const RingPtr& ring = polys.front().ring();
  const int t = static_cast<int>(polys.size());
  const int n = ring->nvars();
  if (minor_size < 1) throw MathError("jacobian_minors: minor size must be positive");
  if (minor_size > std::min(t, n)) throw MathError("jacobian_minors: minor size exceeds the Jacobian");
  std::vector<std::vector<Poly>> J(t);
  for (int i = 0; i < t; ++i) {
    check_same_ring(polys.front(), polys[i]);
    for (int v = 0; v < n; ++v) J[i].push_back(partial_derivative(polys[i], v));
  }
  std::vector<std::vector<int>> rows, cols;
  subsets(t, minor_size, rows);
  subsets(n, minor_size, cols);
  std::vector<Poly> minors;
  for (const auto& rs : rows)
    for (const auto& cs : cols) {
      std::vector<std::vector<Poly>> M;
      for (int r : rs) {
        std::vector<Poly> row;
        for (int c : cs) row.push_back(J[r][c]);
        M.push_back(std::move(row));
      }
      Poly d = det(M);
      if (!d.is_zero()) minors.push_back(std::move(d));
    }
  std::sort(minors.begin(), minors.end(), [&](const Poly& a, const Poly& b) {
    const int c = ring->cmp(a.lead_mono(), b.lead_mono());
    if (c != 0) return c < 0;
    return a.to_string() < b.to_string();
  });
  minors.erase(std::unique(minors.begin(), minors.end()), minors.end());
  return minors;
}

Verdict determine_nonsingularity(const std::vector<Poly>& polys, const SmoothnessOptions& opts) {
  if (polys.empty()) throw MathError("determine_nonsingularity: no polynomials");
  const RingPtr& ring = polys.front().ring();
  for (const auto& f : polys) {
    check_same_ring(polys.front(), f);
    if (!f.is_homogeneous()) throw MathError("determine_nonsingularity: inputs must be homogeneous");
  }
  const int r = ring->nvars() - 1;
  int dim;
  if (opts.expected_dim && !opts.verify_dim) {
    dim = *opts.expected_dim;
  } else {
    dim = ideal_dimension(polys) - 1;
    if (opts.expected_dim && *opts.expected_dim != dim)
      throw MathError("determine_nonsingularity: expected dimension " + std::to_string(*opts.expected_dim) +
                      " but V has dimension " + std::to_string(dim));
  }
  if (dim < 0) return Verdict::nonsingular;  // empty projective variety
  const int m = r - dim;
  if (m == 0) return Verdict::nonsingular;  // V = P^r
  auto gens = jacobian_minors(polys, m);
  gens.insert(gens.end(), polys.begin(), polys.end());

  // Shared basis of <minors, polys> in the ring extended by Y (most significant).
  if (ring->nvars() >= kMaxVars) throw MathError("determine_nonsingularity: too many variables");
  std::string y = "Y";
  while (ring->index_of(y) >= 0) y += "_";
  auto names = ring->names();
  names.push_back(y);
  MonomialOrder order{ring->order().kind, {ring->nvars()}};
  for (int v : ring->order().priority) order.priority.push_back(v);
  auto ext = make_ring(ring->field_ptr(), names, order);
  std::vector<Poly> ext_gens;
  for (const auto& g : gens) ext_gens.push_back(convert(g, ext));
  const GroebnerBasis base = groebner_basis(ext_gens);
  if (base.is_unit()) return Verdict::nonsingular;
  const Poly Y = Poly::variable(ext, ring->nvars());
  for (int v = 0; v < ring->nvars(); ++v) {
    const Poly rab = Poly::constant(ext, 1) - Y * Poly::variable(ext, v);
    if (!groebner_extend(base, {rab}).is_unit()) return Verdict::singular;
  }
  return Verdict::nonsingular;
}

}  // namespace sscurve
