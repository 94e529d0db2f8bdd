#include "sscurve/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace sscurve {

namespace {

constexpr std::uint64_t kHigh = 0x8000800080008000ULL;
constexpr std::uint64_t kLow15 = 0x7FFF7FFF7FFF7FFFULL;

std::uint64_t nonzero_lanes(std::uint64_t x) { return (x + kLow15) & kHigh; }

std::uint64_t lane_max(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t ge = ((a | kHigh) - b) & kHigh;  // a_i >= b_i
  const std::uint64_t mask = (ge >> 15) * 0xFFFF;
  return (a & mask) | (b & ~mask);
}

}  // namespace

// Monomial -------------------------------------------------------------------

void Monomial::set_exponent(int slot, int e) {
  if (e < 0 || e > kMaxExponent) throw MathError("exponent out of range (0..32767)");
  const int old = exponent(slot);
  const int sh = 16 * (3 - (slot & 3));
  auto& word = w[slot >> 2];
  word = (word & ~(0xffffULL << sh)) | (static_cast<std::uint64_t>(e) << sh);
  deg = deg - old + e;
}

bool Monomial::coprime(const Monomial& o) const {
  for (int i = 0; i < 4; ++i)
    if (nonzero_lanes(w[i]) & nonzero_lanes(o.w[i])) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  std::uint64_t guard = 0;
  for (int i = 0; i < 4; ++i) {
    r.w[i] = w[i] + o.w[i];
    guard |= r.w[i];
  }
  if (guard & kHigh) throw MathError("exponent overflow (max 32767)");
  r.deg = deg + o.deg;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < 4; ++i) {
    r.w[i] = lane_max(w[i], o.w[i]);
    for (int k = 0; k < 4; ++k) r.deg += static_cast<std::uint32_t>((r.w[i] >> (16 * k)) & 0xffff);
  }
  return r;
}

// Orders and rings -------------------------------------------------------------

MonomialOrder MonomialOrder::grevlex(int n) {
  MonomialOrder o{OrderKind::grevlex, std::vector<int>(n)};
  std::iota(o.priority.begin(), o.priority.end(), 0);
  return o;
}

MonomialOrder MonomialOrder::lex(int n) {
  MonomialOrder o{OrderKind::lex, std::vector<int>(n)};
  std::iota(o.priority.begin(), o.priority.end(), 0);
  return o;
}

Ring::Ring(FieldPtr field, std::vector<std::string> names, MonomialOrder order)
    : field_(std::move(field)), names_(std::move(names)), order_(std::move(order)) {
  if (!field_) throw MathError("ring without field");
  const int n = nvars();
  if (n > kMaxVars) throw MathError("at most 16 variables are supported");
  std::set<std::string> seen;
  for (const auto& s : names_) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) throw MathError("bad variable name '" + s + "'");
    if (!seen.insert(s).second) throw MathError("duplicate variable name '" + s + "'");
  }
  if (static_cast<int>(order_.priority.size()) != n) throw MathError("order priority list has wrong length");
  slot_of_.assign(n, -1);
  var_of_.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    const int v = order_.priority[k];
    if (v < 0 || v >= n || slot_of_[v] != -1) throw MathError("order priority list is not a permutation");
    slot_of_[v] = k;
    var_of_[k] = v;
  }
}

int Ring::index_of(std::string_view name) const {
  for (int i = 0; i < nvars(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

Monomial Ring::monomial(const std::vector<int>& exps) const {
  if (static_cast<int>(exps.size()) != nvars()) throw MathError("exponent vector arity mismatch");
  Monomial m;
  for (int v = 0; v < nvars(); ++v) m.set_exponent(slot_of_[v], exps[v]);
  return m;
}

std::vector<int> Ring::exponents(const Monomial& m) const {
  std::vector<int> e(nvars());
  for (int v = 0; v < nvars(); ++v) e[v] = m.exponent(slot_of_[v]);
  return e;
}

Monomial Ring::variable(int var, int e) const {
  if (var < 0 || var >= nvars()) throw MathError("variable index out of range");
  Monomial m;
  m.set_exponent(slot_of_[var], e);
  return m;
}

std::string Ring::format(const Monomial& m) const {
  std::string out;
  for (int v = 0; v < nvars(); ++v) {
    const int e = exponent(m, v);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += names_[v];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

bool Ring::same_as(const Ring& o) const {
  return field_ == o.field_ && names_ == o.names_ && order_.kind == o.order_.kind && order_.priority == o.order_.priority;
}

RingPtr make_ring(FieldPtr field, std::vector<std::string> names) {
  auto order = MonomialOrder::grevlex(static_cast<int>(names.size()));
  return std::make_shared<const Ring>(std::move(field), std::move(names), std::move(order));
}

RingPtr make_ring(FieldPtr field, std::vector<std::string> names, MonomialOrder order) {
  return std::make_shared<const Ring>(std::move(field), std::move(names), std::move(order));
}

// Poly -----------------------------------------------------------------------

void check_same_ring(const Poly& a, const Poly& b) {
  if (!a.ring() || !b.ring()) throw MathError("polynomial without ring");
  if (a.ring() != b.ring() && !a.ring()->same_as(*b.ring())) throw MathError("ring mismatch");
}

Poly Poly::constant(const RingPtr& ring, Code c) {
  Poly p(ring);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::constant(const RingPtr& ring, const FieldElement& c) {
  if (c.ctx() != ring->field_ptr().get()) throw MathError("field mismatch");
  return constant(ring, c.code());
}

Poly Poly::variable(const RingPtr& ring, int var) { return monomial(ring, ring->variable(var), 1); }

Poly Poly::monomial(const RingPtr& ring, const Monomial& m, Code c) {
  Poly p(ring);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  const Ring& R = *ring;
  const FieldCtx& F = R.field();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return R.cmp(a.m, b.m) > 0; });
  Poly p(ring);
  p.terms_.reserve(terms.size());
  for (const auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c = F.add(p.terms_.back().c, t.c);
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    } else if (t.c != 0) {
      p.terms_.push_back(t);
    }
  }
  return p;
}

Poly Poly::from_sorted(const RingPtr& ring, std::vector<Term> terms) {
  Poly p(ring);
  p.terms_ = std::move(terms);
  return p;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max<int>(d, static_cast<int>(t.m.deg));
  return d;
}

bool Poly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.m.deg != terms_.front().m.deg) return false;
  return true;
}

int Poly::degree_in(int var) const {
  int d = 0;
  const int s = ring_->slot(var);
  for (const auto& t : terms_) d = std::max(d, t.m.exponent(s));
  return d;
}

namespace {

// Merge of two sorted term lists with b scaled by cb.
std::vector<Term> merge(const Ring& R, const std::vector<Term>& a, const std::vector<Term>& b, Code cb) {
  const FieldCtx& F = R.field();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = R.cmp(a[i].m, b[j].m);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].m, F.mul(cb, b[j].c)});
      ++j;
    } else {
      const Code s = F.add(a[i].c, F.mul(cb, b[j].c));
      if (s != 0) out.push_back({a[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].m, F.mul(cb, b[j].c)});
  return out;
}

}  // namespace

Poly Poly::operator+(const Poly& b) const {
  check_same_ring(*this, b);
  return from_sorted(ring_, merge(*ring_, terms_, b.terms_, 1));
}

Poly Poly::operator-(const Poly& b) const {
  check_same_ring(*this, b);
  return from_sorted(ring_, merge(*ring_, terms_, b.terms_, field().neg(1)));
}

Poly Poly::operator-() const { return scale(field().neg(1)); }

Poly Poly::scale(Code s) const {
  Poly p(ring_);
  if (s == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.m, field().mul(s, t.c)});
  return p;
}

Poly Poly::mul_term(const Monomial& m, Code c) const {
  Poly p(ring_);
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.m * m, field().mul(c, t.c)});
  return p;
}

Poly Poly::sub_mul(Code c, const Monomial& m, const Poly& g) const {
  const Ring& R = *ring_;
  const FieldCtx& F = R.field();
  const Code nc = F.neg(c);
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  const auto& a = terms_;
  const auto& b = g.terms_;
  std::size_t i = 0, j = 0;
  Monomial bm = j < b.size() ? b[j].m * m : Monomial{};
  while (i < a.size() && j < b.size()) {
    const int cmpv = R.cmp(a[i].m, bm);
    if (cmpv > 0) {
      out.push_back(a[i++]);
      continue;
    }
    if (cmpv < 0) {
      out.push_back({bm, F.mul(nc, b[j].c)});
    } else {
      const Code s = F.add(a[i].c, F.mul(nc, b[j].c));
      if (s != 0) out.push_back({bm, s});
      ++i;
    }
    if (++j < b.size()) bm = b[j].m * m;
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].m * m, F.mul(nc, b[j].c)});
  return from_sorted(ring_, std::move(out));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(field().inv(lead_coeff()));
}

namespace {

Poly accumulate_product(const Poly& a, const Poly& b, const MonomialFilter* keep) {
  check_same_ring(a, b);
  const FieldCtx& F = a.field();
  std::unordered_map<Monomial, Code, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      const Monomial m = s.m * t.m;
      if (keep && !(*keep)(m)) continue;
      Code& slot = acc[m];
      slot = F.add(slot, F.mul(s.c, t.c));
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, c});
  const Ring& R = *a.ring();
  std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) { return R.cmp(x.m, y.m) > 0; });
  return Poly::from_sorted(a.ring(), std::move(terms));
}

}  // namespace

Poly Poly::operator*(const Poly& b) const {
  check_same_ring(*this, b);
  if (is_zero() || b.is_zero()) return Poly(ring_);
  if (size() == 1) return b.mul_term(lead_mono(), lead_coeff());
  if (b.size() == 1) return mul_term(b.lead_mono(), b.lead_coeff());
  return accumulate_product(*this, b, nullptr);
}

FieldElement Poly::coefficient(const Monomial& m) const {
  const Ring& R = *ring_;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [&](const Term& t, const Monomial& x) { return R.cmp(t.m, x) > 0; });
  if (it != terms_.end() && it->m == m) return field().element(it->c);
  return field().zero();
}

std::string Poly::to_string() const {
  if (!ring_ || terms_.empty()) return "0";
  const FieldCtx& F = field();
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    std::string c = F.format(t.c);
    const bool composite = c.find_first_of("+g") != std::string::npos;
    if (composite) c = "(" + c + ")";
    if (t.m.deg == 0) {
      out += c;
    } else {
      if (t.c != 1) out += c + "*";
      out += ring_->format(t.m);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.ring_ != b.ring_ && !(a.ring_ && b.ring_ && a.ring_->same_as(*b.ring_))) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

// Free functions -------------------------------------------------------------

Poly pow(const Poly& f, int e) {
  if (e < 0) throw MathError("negative polynomial power");
  Poly result = Poly::constant(f.ring(), 1);
  Poly base = f;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly mul_filtered(const Poly& a, const Poly& b, const MonomialFilter& keep) {
  return accumulate_product(a, b, &keep);
}

Poly pow_filtered(const Poly& f, int e, const MonomialFilter& keep) {
  if (e < 0) throw MathError("negative polynomial power");
  Poly result = Poly::constant(f.ring(), 1);
  if (e == 0) return result;
  // Plain left-to-right products: truncation by a division-closed set commutes
  // with multiplication, and the intermediate sizes stay small.
  result = mul_filtered(result, f, keep);
  for (int k = 1; k < e; ++k) result = mul_filtered(result, f, keep);
  return result;
}

FieldElement coefficient_of(const Poly& f, const Monomial& m) { return f.coefficient(m); }

RingPtr residual_ring(const RingPtr& ring, const std::vector<int>& bound_vars) {
  std::vector<bool> bound(ring->nvars(), false);
  for (int v : bound_vars) {
    if (v < 0 || v >= ring->nvars()) throw MathError("bound variable not in ring");
    bound[v] = true;
  }
  std::vector<int> new_index(ring->nvars(), -1);
  std::vector<std::string> names;
  for (int v = 0; v < ring->nvars(); ++v)
    if (!bound[v]) {
      new_index[v] = static_cast<int>(names.size());
      names.push_back(ring->names()[v]);
    }
  MonomialOrder order{ring->order().kind, {}};
  for (int v : ring->order().priority)
    if (!bound[v]) order.priority.push_back(new_index[v]);
  return make_ring(ring->field_ptr(), std::move(names), std::move(order));
}

namespace {

// Shared kernel of substitute/substitute_keep.
Poly substitute_into(const Poly& f, const std::map<int, FieldElement>& bindings, const RingPtr& target,
                     const std::vector<int>& target_var) {
  const Ring& R = *f.ring();
  const FieldCtx& F = R.field();
  for (const auto& [v, val] : bindings) {
    if (v < 0 || v >= R.nvars()) throw MathError("bound variable not in ring");
    if (val.ctx() != &F) throw MathError("field mismatch in substitution");
  }
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Code c = t.c;
    Monomial m;
    for (int v = 0; v < R.nvars(); ++v) {
      const int e = R.exponent(t.m, v);
      if (e == 0) continue;
      auto it = bindings.find(v);
      if (it != bindings.end()) {
        c = F.mul(c, F.pow(it->second.code(), e));
      } else {
        m.set_exponent(target->slot(target_var[v]), e);
      }
    }
    if (c != 0) terms.push_back({m, c});
  }
  return Poly::from_terms(target, std::move(terms));
}

}  // namespace

Poly substitute(const Poly& f, const std::map<int, FieldElement>& bindings) {
  std::vector<int> bound;
  for (const auto& kv : bindings) bound.push_back(kv.first);
  auto target = residual_ring(f.ring(), bound);
  std::vector<int> target_var(f.ring()->nvars(), -1);
  int k = 0;
  for (int v = 0; v < f.ring()->nvars(); ++v)
    if (!bindings.count(v)) target_var[v] = k++;
  return substitute_into(f, bindings, target, target_var);
}

Poly substitute_keep(const Poly& f, const std::map<int, FieldElement>& bindings) {
  std::vector<int> ident(f.ring()->nvars());
  std::iota(ident.begin(), ident.end(), 0);
  return substitute_into(f, bindings, f.ring(), ident);
}

Code evaluate(const Poly& f, const std::vector<Code>& point) {
  const Ring& R = *f.ring();
  const FieldCtx& F = R.field();
  if (static_cast<int>(point.size()) != R.nvars()) throw MathError("evaluation point arity mismatch");
  Code acc = 0;
  for (const auto& t : f.terms()) {
    Code c = t.c;
    for (int v = 0; v < R.nvars() && c != 0; ++v) {
      const int e = R.exponent(t.m, v);
      if (e) c = F.mul(c, F.pow(point[v], e));
    }
    acc = F.add(acc, c);
  }
  return acc;
}

Poly convert(const Poly& f, const RingPtr& target) {
  const Ring& R = *f.ring();
  if (R.field_ptr() != target->field_ptr()) throw MathError("convert: field mismatch");
  std::vector<int> slot_map(R.nvars());
  for (int v = 0; v < R.nvars(); ++v) {
    const int w = target->index_of(R.names()[v]);
    slot_map[v] = w < 0 ? -1 : target->slot(w);
  }
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (int v = 0; v < R.nvars(); ++v) {
      const int e = R.exponent(t.m, v);
      if (e == 0) continue;
      if (slot_map[v] < 0) throw MathError("convert: variable '" + R.names()[v] + "' missing in target ring");
      m.set_exponent(slot_map[v], e);
    }
    terms.push_back({m, t.c});
  }
  return Poly::from_terms(target, std::move(terms));
}

Poly linear_transform(const Poly& f, const Matrix& M) {
  const RingPtr& ring = f.ring();
  const int n = ring->nvars();
  if (n != 4) throw MathError("linear_transform expects four variables");
  if (M.rows() != 4 || M.cols() != 4) throw MathError("linear_transform expects a 4x4 matrix");
  if (M.ctx() != ring->field_ptr().get()) throw MathError("linear_transform: field mismatch");
  if (M.det().is_zero()) throw MathError("linear_transform: singular matrix");
  std::vector<Poly> image;
  for (int i = 0; i < 4; ++i) {
    Poly L(ring);
    for (int j = 0; j < 4; ++j) L = L + Poly::variable(ring, j) * M(i, j);
    image.push_back(L);
  }
  // Cache powers of the image forms.
  std::vector<std::vector<Poly>> powers(4);
  for (int i = 0; i < 4; ++i) powers[i].push_back(Poly::constant(ring, 1));
  Poly result(ring);
  for (const auto& t : f.terms()) {
    Poly acc = Poly::constant(ring, t.c);
    for (int i = 0; i < 4; ++i) {
      const int e = ring->exponent(t.m, i);
      while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(powers[i].back() * image[i]);
      if (e) acc = acc * powers[i][e];
    }
    result = result + acc;
  }
  return result;
}

Poly partial_derivative(const Poly& f, int var) {
  const Ring& R = *f.ring();
  if (var < 0 || var >= R.nvars()) throw MathError("derivative variable not in ring");
  const FieldCtx& F = R.field();
  const int s = R.slot(var);
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    const int e = t.m.exponent(s);
    if (e == 0) continue;
    const Code c = F.mul(t.c, F.from_int(e).code());
    if (c == 0) continue;
    Monomial m = t.m;
    m.set_exponent(s, e - 1);
    terms.push_back({m, c});
  }
  // Lowering one exponent can reorder terms under grevlex ties; re-sort.
  return Poly::from_terms(f.ring(), std::move(terms));
}

// Parser ---------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view s) : ring_(ring), s_(s) {}

  Poly run() {
    Poly v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw MathError("cannot parse polynomial '" + std::string(s_) + "': " + why);
  }
  long long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 12) fail("integer too long");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }
  Poly expr() {
    Poly acc(ring_);
    bool first = true;
    for (;;) {
      bool negate = false;
      if (eat('-')) {
        negate = true;
      } else if (eat('+')) {
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
      if (!peek('+') && !peek('-')) break;
    }
    return acc;
  }
  Poly term() {
    Poly v = power();
    while (eat('*')) v = v * power();
    return v;
  }
  Poly power() {
    Poly b = atom();
    if (eat('^')) {
      const long long e = integer();
      if (b.is_constant() && !b.is_zero()) return Poly::constant(ring_, b.field().pow(b.lead_coeff(), e));
      if (e > 10000) fail("exponent too large");
      b = pow(b, static_cast<int>(e));
    }
    return b;
  }
  Poly atom() {
    skip();
    if (eat('(')) {
      Poly v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(ring_, ring_->field().from_int(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      const int v = ring_->index_of(name);
      if (v >= 0) return Poly::variable(ring_, v);
      if (name == "g") return Poly::constant(ring_, ring_->field().generator());
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text) { return PolyParser(ring, text).run(); }

}  // namespace sscurve
