#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sscurve {

/// Raised for malformed input or violated preconditions anywhere in the library.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Element codes are the base-p digits of the residue polynomial,
/// constant term least significant: code = c0 + c1*p + c2*p^2 + ...
using Code = std::uint16_t;

/// Value type for an element of F_{p^n}. Carries a non-owning pointer to its
/// field; the field must outlive it (rings and polynomials hold the FieldPtr).
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldCtx* ctx, Code code) : ctx_(ctx), code_(code) {}

  const FieldCtx* ctx() const { return ctx_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  FieldElement operator+(const FieldElement& b) const;
  FieldElement operator-(const FieldElement& b) const;
  FieldElement operator*(const FieldElement& b) const;
  FieldElement operator/(const FieldElement& b) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  FieldElement inv() const;
  FieldElement pow(long long e) const;

  /// Residue-polynomial coefficients, constant term first.
  std::vector<int> coeffs() const;
  std::string to_string() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.ctx_ == b.ctx_ && a.code_ == b.code_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  /// Ordering by coefficient vector (highest-degree residue coefficient most significant).
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.code_ < b.code_; }

 private:
  const FieldCtx* ctx_ = nullptr;
  Code code_ = 0;
};

/// F_p[g]/(modulus). Immutable after construction; arithmetic on raw codes goes
/// through precomputed tables, which are built from the residue-polynomial
/// reference routines (`mul_reference`, `inv_euclid`).
class FieldCtx {
 public:
  FieldCtx(int p, int n, std::vector<int> modulus);

  int p() const { return p_; }
  int n() const { return n_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  // Raw-code arithmetic (hot path).
  Code add(Code a, Code b) const { return add_[a * q_ + b]; }
  Code neg(Code a) const { return neg_[a]; }
  Code sub(Code a, Code b) const { return add_[a * q_ + neg_[b]]; }
  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Code inv(Code a) const;
  Code pow(Code a, long long e) const;
  /// a - c*b
  Code sub_mul(Code a, Code c, Code b) const { return sub(a, mul(c, b)); }

  // Residue-polynomial reference arithmetic (used to build the tables).
  Code mul_reference(Code a, Code b) const;
  Code inv_euclid(Code a) const;

  FieldElement zero() const { return {this, 0}; }
  FieldElement one() const { return {this, 1}; }
  FieldElement element(Code c) const;
  FieldElement from_int(long long v) const;
  FieldElement from_coeffs(const std::vector<int>& c) const;
  /// Class of the residue variable g.
  FieldElement generator() const { return {this, gen_}; }
  /// Some primitive element (the generator when it is primitive).
  FieldElement primitive_element() const { return {this, prim_}; }
  /// All q elements in code order (lexicographic by coefficient vector).
  std::vector<FieldElement> elements() const;
  std::vector<FieldElement> units() const;

  std::vector<int> digits(Code c) const;
  Code from_digits(const std::vector<int>& d) const;

  int multiplicative_order(Code a) const;
  /// Discrete log with respect to primitive_element(); a must be non-zero.
  int log_primitive(Code a) const { return log_[a]; }

  /// Text format: prime-field integers, "g" for the generator, e.g. "3*g+2", "g^17".
  std::string format(Code c) const;
  FieldElement parse(std::string_view text) const;

  bool same_as(const FieldCtx& o) const { return p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_; }

 private:
  int p_;
  int n_;
  int q_;
  std::vector<int> modulus_;  // monic, constant term first, size n+1
  Code gen_ = 0;
  Code prim_ = 0;
  std::vector<Code> add_;
  std::vector<Code> neg_;
  std::vector<Code> inv_;
  std::vector<int> log_;
  std::vector<Code> exp_;  // length 2(q-1) so log sums need no reduction
};

bool is_prime(long long v);

/// Exhaustive irreducibility test over F_p (trial division by all monic
/// polynomials up to half the degree).
bool is_irreducible(int p, const std::vector<int>& poly);

/// Builds F_{p^n}. Without a modulus the defaults are the Conway polynomials
/// g^2+4g+2 (p=5) and g^2+6g+3 (p=7); n=1 uses g-1 so the generator is 1.
/// Other (p,n) fall back to the first irreducible found by search, preferring
/// one whose root is primitive.
FieldPtr make_field(int p, int n, std::optional<std::vector<int>> modulus = std::nullopt);

bool is_primitive(const FieldElement& a);
bool is_square(const FieldElement& a);

/// epsilon := -g, after checking g is primitive and epsilon a non-square.
FieldElement pick_epsilon(const FieldCtx& ctx);

/// Square roots of a found by exhaustive search, in code order.
std::vector<FieldElement> square_roots(const FieldElement& a);

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldCtx* ctx, int rows, int cols);
  static Matrix identity(const FieldCtx* ctx, int n);
  static Matrix diag(const std::vector<FieldElement>& d);
  static Matrix from_ints(const FieldCtx* ctx, int rows, int cols, const std::vector<long long>& v);
  static Matrix from_elements(int rows, int cols, const std::vector<FieldElement>& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldCtx* ctx() const { return ctx_; }
  FieldElement operator()(int r, int c) const { return {ctx_, data_[r * cols_ + c]}; }
  void set(int r, int c, const FieldElement& v);

  Matrix operator*(const Matrix& b) const;
  Matrix operator*(const FieldElement& s) const;
  Matrix operator+(const Matrix& b) const;
  Matrix transpose() const;
  FieldElement det() const;
  int rank() const;
  std::optional<Matrix> inverse() const;
  /// Non-zero s with this == s*I, if any.
  std::optional<FieldElement> scalar_value() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ctx_ == b.ctx_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  std::string to_string() const;

 private:
  const FieldCtx* ctx_ = nullptr;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Code> data_;
};

}  // namespace sscurve
