#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sscurve/field.hpp"

namespace sscurve {

constexpr int kMaxVars = 16;
constexpr int kMaxExponent = 32767;

/// Exponent vector packed 16 bits per storage slot into four words; slot 0 is
/// the most significant lane of w[0]. Slot order is the priority order of the
/// owning ring, so lex comparison is plain integer comparison of the words.
/// The top bit of each lane stays clear so lane-wise SWAR tests have a guard.
struct Monomial {
  std::uint64_t w[4] = {0, 0, 0, 0};
  std::uint32_t deg = 0;

  int exponent(int slot) const { return static_cast<int>((w[slot >> 2] >> (16 * (3 - (slot & 3)))) & 0xffff); }
  void set_exponent(int slot, int e);

  /// True iff every exponent of *this is <= the matching one of o.
  bool divides(const Monomial& o) const {
    constexpr std::uint64_t H = 0x8000800080008000ULL;
    return ((((o.w[0] | H) - w[0]) & H) == H) && ((((o.w[1] | H) - w[1]) & H) == H) &&
           ((((o.w[2] | H) - w[2]) & H) == H) && ((((o.w[3] | H) - w[3]) & H) == H);
  }
  bool coprime(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  /// Exact quotient; requires o to divide *this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < 4; ++i) r.w[i] = w[i] - o.w[i];
    r.deg = deg - o.deg;
    return r;
  }
  Monomial lcm(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.w[0] == b.w[0] && a.w[1] == b.w[1] && a.w[2] == b.w[2] && a.w[3] == b.w[3];
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto x : m.w) h = (h ^ x) * 0xBF58476D1CE4E5B9ULL + (h >> 29);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

enum class OrderKind { grevlex, lex };

/// Total order given by a kind and a priority list of declared variable
/// indices, most significant first.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::vector<int> priority;

  static MonomialOrder grevlex(int n);
  static MonomialOrder lex(int n);
};

inline int cmp_lex(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < 4; ++i)
    if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
  return 0;
}

inline int cmp_grevlex(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (int i = 3; i >= 0; --i) {
    const std::uint64_t x = a.w[i] ^ b.w[i];
    if (x == 0) continue;
    const int sh = __builtin_ctzll(x) & ~15;
    return ((a.w[i] >> sh) & 0xffff) > ((b.w[i] >> sh) & 0xffff) ? -1 : 1;
  }
  return 0;
}

class Ring {
 public:
  Ring(FieldPtr field, std::vector<std::string> names, MonomialOrder order);

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }

  int slot(int var) const { return slot_of_[var]; }
  int var_at(int slot) const { return var_of_[slot]; }
  /// Declared index of a variable name, or -1.
  int index_of(std::string_view name) const;

  int exponent(const Monomial& m, int var) const { return m.exponent(slot_of_[var]); }
  Monomial monomial(const std::vector<int>& exps) const;
  std::vector<int> exponents(const Monomial& m) const;
  Monomial variable(int var, int e = 1) const;

  int cmp(const Monomial& a, const Monomial& b) const {
    return order_.kind == OrderKind::lex ? cmp_lex(a, b) : cmp_grevlex(a, b);
  }
  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

  std::string format(const Monomial& m) const;
  bool same_as(const Ring& o) const;

 private:
  FieldPtr field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
  std::vector<int> slot_of_;
  std::vector<int> var_of_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(FieldPtr field, std::vector<std::string> names);
RingPtr make_ring(FieldPtr field, std::vector<std::string> names, MonomialOrder order);

struct Term {
  Monomial m;
  Code c;
};

/// Sparse polynomial; terms are kept sorted strictly descending in the ring order
/// and never carry a zero coefficient.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(const RingPtr& ring, Code c);
  static Poly constant(const RingPtr& ring, const FieldElement& c);
  static Poly variable(const RingPtr& ring, int var);
  static Poly monomial(const RingPtr& ring, const Monomial& m, Code c = 1);
  /// Sorts and merges arbitrary terms.
  static Poly from_terms(const RingPtr& ring, std::vector<Term> terms);
  /// Caller guarantees strictly descending order and non-zero coefficients.
  static Poly from_sorted(const RingPtr& ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const FieldCtx& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0); }
  const Term& lead() const { return terms_.front(); }
  const Monomial& lead_mono() const { return terms_.front().m; }
  Code lead_coeff() const { return terms_.front().c; }

  int total_degree() const;
  bool is_homogeneous() const;
  /// Largest exponent of a variable over all terms.
  int degree_in(int var) const;

  Poly operator+(const Poly& b) const;
  Poly operator-(const Poly& b) const;
  Poly operator*(const Poly& b) const;
  Poly operator-() const;
  Poly operator*(const FieldElement& s) const { return scale(s.code()); }
  Poly scale(Code s) const;
  Poly mul_term(const Monomial& m, Code c) const;
  /// *this - c*m*g in one merge pass.
  Poly sub_mul(Code c, const Monomial& m, const Poly& g) const;
  Poly monic() const;

  FieldElement coefficient(const Monomial& m) const;
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

void check_same_ring(const Poly& a, const Poly& b);

Poly pow(const Poly& f, int e);

/// Product keeping only terms whose monomial satisfies keep.
/// Valid as a truncation when keep is closed under division.
using MonomialFilter = std::function<bool(const Monomial&)>;
Poly mul_filtered(const Poly& a, const Poly& b, const MonomialFilter& keep);
Poly pow_filtered(const Poly& f, int e, const MonomialFilter& keep);

FieldElement coefficient_of(const Poly& f, const Monomial& m);

/// Binds some variables to constants; the result lives in the ring of the
/// remaining variables (same relative order). Binding every variable gives a
/// polynomial over a ring with no variables, i.e. a constant.
Poly substitute(const Poly& f, const std::map<int, FieldElement>& bindings);
/// As substitute, but the result stays in f's ring.
Poly substitute_keep(const Poly& f, const std::map<int, FieldElement>& bindings);
/// Residual ring of substitute().
RingPtr residual_ring(const RingPtr& ring, const std::vector<int>& bound_vars);

/// Value at a point given in declared-variable order.
Code evaluate(const Poly& f, const std::vector<Code>& point);

/// Moves f into another ring over the same field, matching variables by name.
Poly convert(const Poly& f, const RingPtr& target);

/// f(M v) for v the column of the four ring variables in declared order.
Poly linear_transform(const Poly& f, const Matrix& M);

Poly partial_derivative(const Poly& f, int var);

/// Text syntax: sums of products of constants, ring variables, and
/// parenthesised subexpressions with non-negative integer powers.
Poly parse_poly(const RingPtr& ring, std::string_view text);

}  // namespace sscurve
