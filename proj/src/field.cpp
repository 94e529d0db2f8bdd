#include "sscurve/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sscurve {

namespace {

int mod_p(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

// Polynomials over F_p as coefficient vectors, constant term first, trimmed.
using UPoly = std::vector<int>;

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly poly_mod(UPoly a, const UPoly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = [&] {
    for (int x = 1; x < p; ++x)
      if (mod_p(static_cast<long long>(x) * m.back(), p) == 1) return x;
    return 1;
  }();
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int f = mod_p(static_cast<long long>(a.back()) * lead_inv, p);
    for (int i = 0; i <= dm; ++i) a[shift + i] = mod_p(a[shift + i] - static_cast<long long>(f) * m[i], p);
    trim(a);
  }
  return a;
}

bool divides(const UPoly& d, const UPoly& a, int p) { return poly_mod(a, d, p).empty(); }

}  // namespace

bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  UPoly f(poly.begin(), poly.end());
  for (auto& c : f) c = mod_p(c, p);
  trim(f);
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // Every monic divisor of degree d <= deg/2.
  for (int d = 1; d <= deg / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      UPoly g(d + 1);
      long long t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

FieldCtx::FieldCtx(int p, int n, std::vector<int> modulus) : p_(p), n_(n), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw MathError("field characteristic " + std::to_string(p) + " is not prime");
  if (n < 1) throw MathError("extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < n; ++i) q *= p;
  if (q > 1024) throw MathError("field too large for table arithmetic (q <= 1024)");
  q_ = static_cast<int>(q);
  for (auto& c : modulus_) c = mod_p(c, p);
  if (static_cast<int>(modulus_.size()) != n + 1 || modulus_.back() != 1)
    throw MathError("modulus must be monic of degree n");
  if (!is_irreducible(p, modulus_)) throw MathError("modulus is reducible over F_p");

  // Addition and negation tables digit-wise.
  add_.resize(static_cast<size_t>(q_) * q_);
  neg_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    auto da = digits(static_cast<Code>(a));
    std::vector<int> dn(n_);
    for (int i = 0; i < n_; ++i) dn[i] = mod_p(-da[i], p_);
    neg_[a] = from_digits(dn);
    for (int b = 0; b < q_; ++b) {
      auto db = digits(static_cast<Code>(b));
      std::vector<int> ds(n_);
      for (int i = 0; i < n_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[static_cast<size_t>(a) * q_ + b] = from_digits(ds);
    }
  }
  gen_ = n_ == 1 ? from_digits({mod_p(-modulus_[0], p_)}) : static_cast<Code>(p_);

  // Locate a primitive element with the reference multiplication, then build log/exp.
  auto order_ref = [&](Code a) {
    Code x = a;
    int k = 1;
    while (x != 1) {
      x = mul_reference(x, a);
      ++k;
      if (k > q_) return -1;
    }
    return k;
  };
  prim_ = 0;
  if (gen_ != 0 && order_ref(gen_) == q_ - 1) {
    prim_ = gen_;
  } else {
    for (int a = 1; a < q_; ++a)
      if (order_ref(static_cast<Code>(a)) == q_ - 1) {
        prim_ = static_cast<Code>(a);
        break;
      }
  }
  exp_.resize(2 * static_cast<size_t>(q_ - 1) + 1);
  log_.assign(q_, -1);
  Code x = 1;
  for (int k = 0; k < q_ - 1; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x = mul_reference(x, prim_);
  }
  for (int k = q_ - 1; k < static_cast<int>(exp_.size()); ++k) exp_[k] = exp_[k - (q_ - 1)];
  inv_.assign(q_, 0);
  for (int a = 1; a < q_; ++a) inv_[a] = inv_euclid(static_cast<Code>(a));
}

std::vector<int> FieldCtx::digits(Code c) const {
  std::vector<int> d(n_);
  int v = c;
  for (int i = 0; i < n_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

Code FieldCtx::from_digits(const std::vector<int>& d) const {
  int v = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p_ + mod_p(d[i], p_);
  return static_cast<Code>(v);
}

Code FieldCtx::mul_reference(Code a, Code b) const {
  auto da = digits(a), db = digits(b);
  UPoly prod(2 * n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  auto r = poly_mod(prod, modulus_, p_);
  r.resize(n_, 0);
  return from_digits(r);
}

Code FieldCtx::inv_euclid(Code a) const {
  if (a == 0) throw MathError("inverse of zero");
  // Extended Euclid on (modulus, a): track s with s*a == r (mod modulus).
  UPoly r0 = modulus_, r1 = digits(a);
  trim(r1);
  UPoly s0{}, s1{1};
  auto inv_p = [&](int v) {
    for (int x = 1; x < p_; ++x)
      if (mod_p(static_cast<long long>(x) * v, p_) == 1) return x;
    throw MathError("no inverse mod p");
  };
  while (!r1.empty()) {
    // (quot, rem) = divmod(r0, r1)
    UPoly rem = r0, quot(std::max<int>(1, static_cast<int>(r0.size()) - static_cast<int>(r1.size()) + 1), 0);
    const int li = inv_p(r1.back());
    while (!rem.empty() && rem.size() >= r1.size()) {
      const int shift = static_cast<int>(rem.size() - r1.size());
      const int f = mod_p(static_cast<long long>(rem.back()) * li, p_);
      quot[shift] = f;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] = mod_p(rem[shift + i] - static_cast<long long>(f) * r1[i], p_);
      trim(rem);
    }
    trim(quot);
    // s2 = s0 - quot*s1
    UPoly qs(quot.size() + s1.size(), 0);
    for (size_t i = 0; i < quot.size(); ++i)
      for (size_t j = 0; j < s1.size(); ++j) qs[i + j] = (qs[i + j] + quot[i] * s1[j]) % p_;
    UPoly s2(std::max(s0.size(), qs.size()), 0);
    for (size_t i = 0; i < s2.size(); ++i)
      s2[i] = mod_p((i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0), p_);
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a non-zero constant c; inverse is s0 / c.
  const int ci = inv_p(r0[0]);
  for (auto& c : s0) c = mod_p(static_cast<long long>(c) * ci, p_);
  s0 = poly_mod(s0, modulus_, p_);
  s0.resize(n_, 0);
  return from_digits(s0);
}

Code FieldCtx::inv(Code a) const {
  if (a == 0) throw MathError("inverse of zero");
  return inv_[a];
}

Code FieldCtx::pow(Code a, long long e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw MathError("negative power of zero");
    return 0;
  }
  long long k = (static_cast<long long>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
  if (k < 0) k += q_ - 1;
  return exp_[k];
}

FieldElement FieldCtx::element(Code c) const {
  if (c >= q_) throw MathError("element code out of range");
  return {this, c};
}

FieldElement FieldCtx::from_int(long long v) const {
  return {this, static_cast<Code>(mod_p(v, p_))};
}

FieldElement FieldCtx::from_coeffs(const std::vector<int>& c) const {
  std::vector<int> d(n_, 0);
  for (size_t i = 0; i < c.size(); ++i) {
    if (static_cast<int>(i) >= n_) throw MathError("too many residue coefficients");
    d[i] = mod_p(c[i], p_);
  }
  return {this, from_digits(d)};
}

std::vector<FieldElement> FieldCtx::elements() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (int c = 0; c < q_; ++c) out.emplace_back(this, static_cast<Code>(c));
  return out;
}

std::vector<FieldElement> FieldCtx::units() const {
  std::vector<FieldElement> out;
  for (int c = 1; c < q_; ++c) out.emplace_back(this, static_cast<Code>(c));
  return out;
}

int FieldCtx::multiplicative_order(Code a) const {
  if (a == 0) throw MathError("order of zero");
  int k = 1;
  for (Code x = a; x != 1; x = mul(x, a)) ++k;
  return k;
}

std::string FieldCtx::format(Code c) const {
  auto d = digits(c);
  if (n_ == 1 || std::all_of(d.begin() + 1, d.end(), [](int v) { return v == 0; })) return std::to_string(d[0]);
  std::string out;
  for (int i = n_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

// Recursive-descent parser for field constants: sums of products of
// integers, g, powers and parentheses.
class ElementParser {
 public:
  ElementParser(const FieldCtx& f, std::string_view s) : f_(f), s_(s) {}

  FieldElement run() {
    auto v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw MathError("cannot parse field element '" + std::string(s_) + "': " + why);
  }
  long long integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }
  FieldElement expr() {
    FieldElement acc = f_.zero();
    bool first = true;
    for (;;) {
      bool negate = false;
      if (eat('-')) negate = true;
      else if (!first && !eat('+')) break;
      else if (first) eat('+');
      auto t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }
  FieldElement term() {
    auto v = power();
    while (eat('*')) v = v * power();
    return v;
  }
  FieldElement power() {
    auto b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      long long e = integer();
      b = b.pow(neg ? -e : e);
    }
    return b;
  }
  FieldElement atom() {
    skip();
    if (eat('(')) {
      auto v = expr();
      if (!eat(')')) fail("missing )");
      return v;
    }
    if (pos_ < s_.size() && s_[pos_] == 'g') {
      ++pos_;
      return f_.generator();
    }
    return f_.from_int(integer());
  }

  const FieldCtx& f_;
  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

FieldElement FieldCtx::parse(std::string_view text) const { return ElementParser(*this, text).run(); }

// FieldElement ---------------------------------------------------------------

namespace {
const FieldCtx& common(const FieldElement& a, const FieldElement& b) {
  if (a.ctx() == nullptr || b.ctx() == nullptr) throw MathError("field element without field");
  if (a.ctx() != b.ctx()) throw MathError("field mismatch");
  return *a.ctx();
}
const FieldCtx& own(const FieldElement& a) {
  if (a.ctx() == nullptr) throw MathError("field element without field");
  return *a.ctx();
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& b) const { return {ctx_, common(*this, b).add(code_, b.code_)}; }
FieldElement FieldElement::operator-(const FieldElement& b) const { return {ctx_, common(*this, b).sub(code_, b.code_)}; }
FieldElement FieldElement::operator*(const FieldElement& b) const { return {ctx_, common(*this, b).mul(code_, b.code_)}; }
FieldElement FieldElement::operator/(const FieldElement& b) const {
  const auto& f = common(*this, b);
  return {ctx_, f.mul(code_, f.inv(b.code_))};
}
FieldElement FieldElement::operator-() const { return {ctx_, own(*this).neg(code_)}; }
FieldElement FieldElement::inv() const { return {ctx_, own(*this).inv(code_)}; }
FieldElement FieldElement::pow(long long e) const { return {ctx_, own(*this).pow(code_, e)}; }
std::vector<int> FieldElement::coeffs() const { return own(*this).digits(code_); }
std::string FieldElement::to_string() const { return own(*this).format(code_); }

// Construction and square classes -------------------------------------------

FieldPtr make_field(int p, int n, std::optional<std::vector<int>> modulus) {
  if (!is_prime(p)) throw MathError("field characteristic " + std::to_string(p) + " is not prime");
  if (n < 1) throw MathError("extension degree must be >= 1");
  if (modulus) return std::make_shared<const FieldCtx>(p, n, *modulus);
  if (n == 1) return std::make_shared<const FieldCtx>(p, 1, std::vector<int>{p - 1, 1});
  if (p == 5 && n == 2) return std::make_shared<const FieldCtx>(p, n, std::vector<int>{2, 4, 1});
  if (p == 7 && n == 2) return std::make_shared<const FieldCtx>(p, n, std::vector<int>{3, 6, 1});
  // Search: first irreducible with primitive root, else first irreducible.
  long long count = 1;
  for (int i = 0; i < n; ++i) count *= p;
  std::optional<std::vector<int>> fallback;
  for (long long idx = 0; idx < count; ++idx) {
    std::vector<int> m(n + 1);
    long long t = idx;
    for (int i = 0; i < n; ++i) {
      m[i] = static_cast<int>(t % p);
      t /= p;
    }
    m[n] = 1;
    if (!is_irreducible(p, m)) continue;
    auto f = std::make_shared<const FieldCtx>(p, n, m);
    if (f->multiplicative_order(f->generator().code()) == f->q() - 1) return f;
    if (!fallback) fallback = m;
  }
  return std::make_shared<const FieldCtx>(p, n, *fallback);
}

bool is_primitive(const FieldElement& a) {
  if (a.is_zero()) throw MathError("primitivity of zero");
  const auto& f = own(a);
  return f.multiplicative_order(a.code()) == f.q() - 1;
}

bool is_square(const FieldElement& a) {
  if (a.is_zero()) throw MathError("square test of zero");
  const auto& f = own(a);
  if (f.p() == 2) return true;
  return f.pow(a.code(), (f.q() - 1) / 2) == 1;
}

FieldElement pick_epsilon(const FieldCtx& ctx) {
  auto g = ctx.generator();
  if (g.is_zero() || !is_primitive(g))
    throw MathError("field generator is not primitive; supply another modulus");
  auto eps = -g;
  if (is_square(eps)) throw MathError("epsilon is square");
  return eps;
}

std::vector<FieldElement> square_roots(const FieldElement& a) {
  std::vector<FieldElement> out;
  for (auto t : own(a).elements())
    if (t * t == a) out.push_back(t);
  return out;
}

// Matrix ---------------------------------------------------------------------

Matrix::Matrix(const FieldCtx* ctx, int rows, int cols)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {}

Matrix Matrix::identity(const FieldCtx* ctx, int n) {
  Matrix m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::diag(const std::vector<FieldElement>& d) {
  if (d.empty()) throw MathError("empty diagonal");
  Matrix m(d[0].ctx(), static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return m;
}

Matrix Matrix::from_ints(const FieldCtx* ctx, int rows, int cols, const std::vector<long long>& v) {
  if (static_cast<int>(v.size()) != rows * cols) throw MathError("matrix size mismatch");
  Matrix m(ctx, rows, cols);
  for (size_t i = 0; i < v.size(); ++i) m.data_[i] = ctx->from_int(v[i]).code();
  return m;
}

Matrix Matrix::from_elements(int rows, int cols, const std::vector<FieldElement>& v) {
  if (static_cast<int>(v.size()) != rows * cols || v.empty()) throw MathError("matrix size mismatch");
  Matrix m(v[0].ctx(), rows, cols);
  for (size_t i = 0; i < v.size(); ++i) m.set(static_cast<int>(i) / cols, static_cast<int>(i) % cols, v[i]);
  return m;
}

void Matrix::set(int r, int c, const FieldElement& v) {
  if (v.ctx() != ctx_) throw MathError("field mismatch in matrix");
  data_[r * cols_ + c] = v.code();
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_ || ctx_ != b.ctx_) throw MathError("matrix product mismatch");
  Matrix out(ctx_, rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      Code acc = 0;
      for (int k = 0; k < cols_; ++k) acc = ctx_->add(acc, ctx_->mul(data_[i * cols_ + k], b.data_[k * b.cols_ + j]));
      out.data_[i * b.cols_ + j] = acc;
    }
  return out;
}

Matrix Matrix::operator*(const FieldElement& s) const {
  Matrix out = *this;
  for (auto& v : out.data_) v = ctx_->mul(v, s.code());
  return out;
}

Matrix Matrix::operator+(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_ || ctx_ != b.ctx_) throw MathError("matrix sum mismatch");
  Matrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = ctx_->add(data_[i], b.data_[i]);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(ctx_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
  return out;
}

FieldElement Matrix::det() const {
  if (rows_ != cols_) throw MathError("determinant of non-square matrix");
  auto a = data_;
  const int n = rows_;
  Code d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return ctx_->zero();
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      d = ctx_->neg(d);
    }
    d = ctx_->mul(d, a[c * n + c]);
    const Code inv = ctx_->inv(a[c * n + c]);
    for (int r = c + 1; r < n; ++r) {
      const Code f = ctx_->mul(a[r * n + c], inv);
      if (f == 0) continue;
      for (int k = c; k < n; ++k) a[r * n + k] = ctx_->sub_mul(a[r * n + k], f, a[c * n + k]);
    }
  }
  return {ctx_, d};
}

int Matrix::rank() const {
  auto a = data_;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    int piv = -1;
    for (int r = rank; r < rows_; ++r)
      if (a[r * cols_ + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int k = 0; k < cols_; ++k) std::swap(a[piv * cols_ + k], a[rank * cols_ + k]);
    const Code inv = ctx_->inv(a[rank * cols_ + c]);
    for (int r = 0; r < rows_; ++r) {
      if (r == rank) continue;
      const Code f = ctx_->mul(a[r * cols_ + c], inv);
      if (f == 0) continue;
      for (int k = 0; k < cols_; ++k) a[r * cols_ + k] = ctx_->sub_mul(a[r * cols_ + k], f, a[rank * cols_ + k]);
    }
    ++rank;
  }
  return rank;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const int n = rows_;
  Matrix a = *this;
  Matrix inv = identity(ctx_, n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a.data_[r * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    for (int k = 0; k < n; ++k) {
      std::swap(a.data_[piv * n + k], a.data_[c * n + k]);
      std::swap(inv.data_[piv * n + k], inv.data_[c * n + k]);
    }
    const Code s = ctx_->inv(a.data_[c * n + c]);
    for (int k = 0; k < n; ++k) {
      a.data_[c * n + k] = ctx_->mul(a.data_[c * n + k], s);
      inv.data_[c * n + k] = ctx_->mul(inv.data_[c * n + k], s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const Code f = a.data_[r * n + c];
      if (f == 0) continue;
      for (int k = 0; k < n; ++k) {
        a.data_[r * n + k] = ctx_->sub_mul(a.data_[r * n + k], f, a.data_[c * n + k]);
        inv.data_[r * n + k] = ctx_->sub_mul(inv.data_[r * n + k], f, inv.data_[c * n + k]);
      }
    }
  }
  return inv;
}

std::optional<FieldElement> Matrix::scalar_value() const {
  if (rows_ != cols_ || rows_ == 0) return std::nullopt;
  const Code s = data_[0];
  if (s == 0) return std::nullopt;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (data_[i * cols_ + j] != (i == j ? s : 0)) return std::nullopt;
  return FieldElement{ctx_, s};
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << ctx_->format(data_[i * cols_ + j]);
    os << "]\n";
  }
  return os.str();
}

}  // namespace sscurve
