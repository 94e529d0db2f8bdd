#pragma once

#include <vector>

#include "sscurve/polynomial.hpp"

namespace sscurve {

/// Reduced Gröbner basis, monic, sorted by ascending leading monomial.
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> basis;

  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero(); }
  Poly reduce(const Poly& f) const;
  bool contains(const Poly& f) const { return reduce(f).is_zero(); }
};

/// Multivariate division remainder: no term of the result is divisible by a
/// leading monomial of G. Divisors are tried in the given order.
Poly normal_form(const Poly& f, const std::vector<Poly>& G);

Poly s_polynomial(const Poly& f, const Poly& g);

/// Buchberger with the normal selection strategy and the Gebauer–Möller
/// criteria. The order is the one attached to the generators' ring. Zero
/// generators are dropped; an all-zero list is rejected.
GroebnerBasis groebner_basis(const std::vector<Poly>& gens);

/// Gröbner basis of <G.basis, more>, skipping the pairs inside G.
GroebnerBasis groebner_extend(const GroebnerBasis& G, const std::vector<Poly>& more);

/// Every S-polynomial of the basis reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& G);

/// f in the radical of <gens>, via 1 in <gens, 1 - Y f> over a ring with a
/// fresh variable Y.
bool radical_membership(const Poly& f, const std::vector<Poly>& gens);

/// Krull dimension of R/I from the leading monomials; -1 for the unit ideal.
int ideal_dimension(const GroebnerBasis& G);
int ideal_dimension(const std::vector<Poly>& gens);

/// Basis change of a zero-dimensional reduced basis to the ring `target`
/// (same variables, any order).
GroebnerBasis fglm(const GroebnerBasis& G, const RingPtr& target);

enum class SolveMethod { fglm, lex_buchberger };

/// All points of K^n (K the coefficient field) where every generator vanishes,
/// in declared-variable order, sorted lexicographically by element code.
std::vector<std::vector<Code>> variety_over_Fq(const std::vector<Poly>& gens, SolveMethod method = SolveMethod::fglm);

/// Same contract by exhaustive scan of K^n.
std::vector<std::vector<Code>> variety_brute_force(const std::vector<Poly>& gens);

/// v^q - v for every ring variable.
std::vector<Poly> field_equations(const RingPtr& ring);

}  // namespace sscurve
