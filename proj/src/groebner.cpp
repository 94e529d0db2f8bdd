#include "sscurve/groebner.hpp"

#include <algorithm>
#include <unordered_map>

namespace sscurve {

namespace {

// Remainder of f by the leading terms of G (all monic not required).
std::vector<Term> reduce_terms(const Ring& R, std::vector<Term> w, const std::vector<const Poly*>& G) {
  const FieldCtx& F = R.field();
  std::vector<Term> rem;
  std::vector<Term> next;
  std::size_t i = 0;
  while (i < w.size()) {
    const Poly* div = nullptr;
    for (const Poly* g : G)
      if (g->lead_mono().divides(w[i].m)) {
        div = g;
        break;
      }
    if (!div) {
      rem.push_back(w[i++]);
      continue;
    }
    const Code c = F.mul(w[i].c, F.inv(div->lead_coeff()));
    const Code nc = F.neg(c);
    const Monomial m = w[i].m / div->lead_mono();
    // next = w[i+1..] - c*m*tail(div)
    const auto& b = div->terms();
    next.clear();
    next.reserve(w.size() - i + b.size());
    std::size_t a = i + 1, j = 1;
    Monomial bm = j < b.size() ? b[j].m * m : Monomial{};
    while (a < w.size() && j < b.size()) {
      const int cmp = R.cmp(w[a].m, bm);
      if (cmp > 0) {
        next.push_back(w[a++]);
        continue;
      }
      if (cmp < 0) {
        next.push_back({bm, F.mul(nc, b[j].c)});
      } else {
        const Code s = F.add(w[a].c, F.mul(nc, b[j].c));
        if (s != 0) next.push_back({bm, s});
        ++a;
      }
      if (++j < b.size()) bm = b[j].m * m;
    }
    for (; a < w.size(); ++a) next.push_back(w[a]);
    for (; j < b.size(); ++j) next.push_back({b[j].m * m, F.mul(nc, b[j].c)});
    std::swap(w, next);
    i = 0;
  }
  return rem;
}

Poly reduce_by(const Poly& f, const std::vector<const Poly*>& G) {
  if (f.is_zero() || G.empty()) return f;
  return Poly::from_sorted(f.ring(), reduce_terms(*f.ring(), f.terms(), G));
}

struct Pair {
  int i;
  int j;
  Monomial lcm;
};

class Engine {
 public:
  explicit Engine(RingPtr ring) : ring_(std::move(ring)) {}

  // Adds a known Gröbner basis element without creating pairs among these.
  void seed(const Poly& g) {
    polys_.push_back(g.monic());
    active_.push_back(static_cast<int>(polys_.size()) - 1);
  }

  void add(const Poly& f) {
    Poly h = reduce(f);
    if (h.is_zero()) return;
    insert(h.monic());
  }

  bool unit() const { return unit_; }

  void run() {
    while (!unit_ && !pairs_.empty()) {
      // Normal strategy: smallest lcm degree, ties by the monomial order.
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const auto& a = pairs_[k].lcm;
        const auto& b = pairs_[best].lcm;
        if (a.deg < b.deg || (a.deg == b.deg && ring_->cmp(a, b) < 0)) best = k;
      }
      const Pair p = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      Poly h = reduce(s_polynomial(polys_[p.i], polys_[p.j]));
      if (!h.is_zero()) insert(h.monic());
    }
  }

  GroebnerBasis result() const {
    GroebnerBasis G{ring_, {}};
    if (unit_) {
      G.basis.push_back(Poly::constant(ring_, 1));
      return G;
    }
    std::vector<const Poly*> act;
    for (int k : active_) act.push_back(&polys_[k]);
    // Interreduce tails against the (minimal) active set.
    for (std::size_t k = 0; k < act.size(); ++k) {
      std::vector<const Poly*> others;
      for (std::size_t l = 0; l < act.size(); ++l)
        if (l != k) others.push_back(act[l]);
      const Poly& g = *act[k];
      std::vector<Term> tail(g.terms().begin() + 1, g.terms().end());
      std::vector<Term> red = reduce_terms(*ring_, std::move(tail), others);
      red.insert(red.begin(), g.lead());
      G.basis.push_back(Poly::from_sorted(ring_, std::move(red)).monic());
    }
    std::sort(G.basis.begin(), G.basis.end(),
              [&](const Poly& a, const Poly& b) { return ring_->cmp(a.lead_mono(), b.lead_mono()) < 0; });
    return G;
  }

 private:
  Poly reduce(const Poly& f) const {
    std::vector<const Poly*> act;
    act.reserve(active_.size());
    for (int k : active_) act.push_back(&polys_[k]);
    return reduce_by(f, act);
  }

  // Gebauer–Möller update with the new element h.
  void insert(Poly h) {
    if (h.is_constant()) {
      unit_ = true;
      return;
    }
    polys_.push_back(std::move(h));
    const int hn = static_cast<int>(polys_.size()) - 1;
    const Monomial lh = polys_[hn].lead_mono();

    struct Cand {
      int g;
      Monomial lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> C;
    for (int g : active_) {
      const Monomial lg = polys_[g].lead_mono();
      C.push_back({g, lh.lcm(lg), lh.coprime(lg)});
    }
    // Chain criterion among new pairs: drop (h,g1) if some other (h,g2) has a
    // strictly dividing lcm, or an equal lcm earlier in the list; prefer
    // keeping coprime pairs so the product criterion can discard the class.
    for (std::size_t a = 0; a < C.size(); ++a) {
      for (std::size_t b = 0; b < C.size(); ++b) {
        if (a == b || !C[b].keep) continue;
        if (!C[b].lcm.divides(C[a].lcm)) continue;
        if (C[b].lcm != C[a].lcm) {
          C[a].keep = false;
          break;
        }
        // Equal lcms: keep a coprime representative, else the first.
        if (C[a].coprime && !C[b].coprime) continue;
        if (C[b].coprime && !C[a].coprime) {
          C[a].keep = false;
          break;
        }
        if (b < a) {
          C[a].keep = false;
          break;
        }
      }
    }
    // Old pairs killed by the chain criterion through h.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + C.size());
    for (const auto& p : pairs_) {
      if (lh.divides(p.lcm) && lh.lcm(polys_[p.i].lead_mono()) != p.lcm &&
          lh.lcm(polys_[p.j].lead_mono()) != p.lcm)
        continue;
      kept.push_back(p);
    }
    for (const auto& c : C)
      if (c.keep && !c.coprime) kept.push_back({c.g, hn, c.lcm});
    pairs_ = std::move(kept);

    std::vector<int> act;
    for (int g : active_)
      if (!lh.divides(polys_[g].lead_mono())) act.push_back(g);
    act.push_back(hn);
    active_ = std::move(act);
  }

  RingPtr ring_;
  std::vector<Poly> polys_;
  std::vector<int> active_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
};

std::vector<Poly> nonzero_gens(const std::vector<Poly>& gens) {
  std::vector<Poly> out;
  for (const auto& g : gens) {
    if (!out.empty()) check_same_ring(out.front(), g);
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

}  // namespace

Poly GroebnerBasis::reduce(const Poly& f) const {
  std::vector<const Poly*> G;
  for (const auto& g : basis) G.push_back(&g);
  return reduce_by(f, G);
}

Poly normal_form(const Poly& f, const std::vector<Poly>& G) {
  std::vector<const Poly*> ptrs;
  for (const auto& g : G) {
    check_same_ring(f, g);
    if (!g.is_zero()) ptrs.push_back(&g);
  }
  return reduce_by(f, ptrs);
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  check_same_ring(f, g);
  const FieldCtx& F = f.field();
  const Monomial l = f.lead_mono().lcm(g.lead_mono());
  Poly a = f.mul_term(l / f.lead_mono(), F.inv(f.lead_coeff()));
  return a.sub_mul(F.inv(g.lead_coeff()), l / g.lead_mono(), g);
}

GroebnerBasis groebner_basis(const std::vector<Poly>& gens) {
  if (gens.empty()) throw MathError("groebner_basis: empty generator list");
  auto nz = nonzero_gens(gens);
  if (nz.empty()) throw MathError("groebner_basis: all generators are zero");
  const RingPtr& ring = nz.front().ring();
  // Small leading terms first tends to reduce later inputs more.
  std::sort(nz.begin(), nz.end(), [&](const Poly& a, const Poly& b) { return ring->cmp(a.lead_mono(), b.lead_mono()) < 0; });
  Engine E(ring);
  for (const auto& g : nz) {
    E.add(g);
    if (E.unit()) break;
  }
  E.run();
  return E.result();
}

GroebnerBasis groebner_extend(const GroebnerBasis& G, const std::vector<Poly>& more) {
  if (G.is_unit()) return G;
  Engine E(G.ring);
  for (const auto& g : G.basis) E.seed(g);
  for (const auto& f : more) {
    if (f.is_zero()) continue;
    check_same_ring(G.basis.front(), f);
    E.add(f);
    if (E.unit()) break;
  }
  E.run();
  return E.result();
}

bool satisfies_buchberger_criterion(const GroebnerBasis& G) {
  for (std::size_t i = 0; i < G.basis.size(); ++i)
    for (std::size_t j = i + 1; j < G.basis.size(); ++j)
      if (!G.reduce(s_polynomial(G.basis[i], G.basis[j])).is_zero()) return false;
  return true;
}

bool radical_membership(const Poly& f, const std::vector<Poly>& gens) {
  if (gens.empty()) throw MathError("radical_membership: empty ideal");
  const Ring& R = *f.ring();
  if (R.nvars() >= kMaxVars) throw MathError("radical_membership: no room for the auxiliary variable");
  std::string y = "Y";
  while (R.index_of(y) >= 0) y += "_";
  auto names = R.names();
  names.push_back(y);
  MonomialOrder order{R.order().kind, {R.nvars()}};
  for (int v : R.order().priority) order.priority.push_back(v);
  auto ext = make_ring(R.field_ptr(), names, order);
  std::vector<Poly> G;
  for (const auto& g : gens) {
    check_same_ring(f, g);
    G.push_back(convert(g, ext));
  }
  G.push_back(Poly::constant(ext, 1) - Poly::variable(ext, R.nvars()) * convert(f, ext));
  return groebner_basis(G).is_unit();
}

int ideal_dimension(const GroebnerBasis& G) {
  if (G.is_unit()) return -1;
  const int n = G.ring->nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& g : G.basis) {
    std::uint32_t s = 0;
    for (int v = 0; v < n; ++v)
      if (G.ring->exponent(g.lead_mono(), v) > 0) s |= 1u << v;
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    const int size = __builtin_popcount(S);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~S) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

int ideal_dimension(const std::vector<Poly>& gens) { return ideal_dimension(groebner_basis(gens)); }

GroebnerBasis fglm(const GroebnerBasis& G, const RingPtr& target) {
  const RingPtr& src = G.ring;
  if (src->names() != target->names() || src->field_ptr() != target->field_ptr())
    throw MathError("fglm: rings must share variables and field");
  GroebnerBasis out{target, {}};
  if (G.is_unit()) {
    out.basis.push_back(Poly::constant(target, 1));
    return out;
  }
  const FieldCtx& F = src->field();
  const int n = src->nvars();

  // Coordinates in the source quotient basis, assigned lazily.
  std::unordered_map<Monomial, int, MonomialHash> coord;
  auto to_vec = [&](const Poly& nf) {
    std::vector<std::pair<int, Code>> v;
    for (const auto& t : nf.terms()) {
      auto [it, fresh] = coord.emplace(t.m, static_cast<int>(coord.size()));
      v.push_back({it->second, t.c});
    }
    return v;
  };

  struct Row {
    int pivot;
    std::vector<Code> vec;    // dense over coord, pivot entry 1
    std::vector<Code> combo;  // over staircase indices
  };
  std::vector<Row> rows;
  std::vector<Monomial> stair_target;  // staircase monomials in the target ring
  std::vector<Monomial> leads;         // target leading monomials found so far

  std::vector<Monomial> todo{Monomial{}};
  std::vector<Poly> todo_nf{Poly::constant(src, 1)};
  while (!todo.empty()) {
    // Smallest candidate in the target order.
    std::size_t k = 0;
    for (std::size_t l = 1; l < todo.size(); ++l)
      if (target->cmp(todo[l], todo[k]) < 0) k = l;
    const Monomial m = todo[k];
    Poly nf = todo_nf[k];
    todo.erase(todo.begin() + static_cast<long>(k));
    todo_nf.erase(todo_nf.begin() + static_cast<long>(k));
    bool skip = false;
    for (const auto& l : leads)
      if (l.divides(m)) {
        skip = true;
        break;
      }
    for (const auto& s : stair_target)
      if (s == m) skip = true;
    if (skip) continue;

    // Reduce the coordinate vector of nf against the echelon rows.
    auto sparse = to_vec(nf);
    std::vector<Code> vec(coord.size(), 0);
    for (auto [i, c] : sparse) vec[i] = c;
    std::vector<Code> combo(stair_target.size() + 1, 0);
    combo.back() = 1;  // coefficient of m itself
    for (const auto& r : rows) {
      if (r.pivot >= static_cast<int>(vec.size())) continue;
      const Code f = vec[r.pivot];
      if (f == 0) continue;
      for (std::size_t i = 0; i < r.vec.size(); ++i) vec[i] = F.sub_mul(vec[i], f, r.vec[i]);
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] = F.sub_mul(combo[i], f, r.combo[i]);
    }
    int pivot = -1;
    for (std::size_t i = 0; i < vec.size(); ++i)
      if (vec[i] != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    if (pivot < 0) {
      // m + sum combo_b * b lies in the ideal.
      std::vector<Term> terms{{m, 1}};
      for (std::size_t b = 0; b < stair_target.size(); ++b)
        if (combo[b] != 0) terms.push_back({stair_target[b], combo[b]});
      out.basis.push_back(Poly::from_terms(target, std::move(terms)));
      leads.push_back(m);
      continue;
    }
    const Code inv = F.inv(vec[pivot]);
    for (auto& c : vec) c = F.mul(c, inv);
    // Existing rows reference only coordinates known at their creation; pad.
    combo.resize(stair_target.size() + 1);
    for (auto& c : combo) c = F.mul(c, inv);
    for (auto& r : rows) r.combo.resize(stair_target.size() + 1, 0);
    rows.push_back({pivot, std::move(vec), std::move(combo)});
    stair_target.push_back(m);
    for (int v = 0; v < n; ++v) {
      const Monomial mv = m * target->variable(v);
      todo.push_back(mv);
      todo_nf.push_back(G.reduce(nf * Poly::monomial(src, src->variable(v))));
    }
    // Keep rows consistent when new coordinates appear later.
    for (auto& r : rows) r.vec.resize(coord.size(), 0);
  }
  std::sort(out.basis.begin(), out.basis.end(),
            [&](const Poly& a, const Poly& b) { return target->cmp(a.lead_mono(), b.lead_mono()) < 0; });
  return out;
}

std::vector<Poly> field_equations(const RingPtr& ring) {
  std::vector<Poly> eqs;
  const int q = ring->field().q();
  for (int v = 0; v < ring->nvars(); ++v)
    eqs.push_back(Poly::monomial(ring, ring->variable(v, q)) - Poly::variable(ring, v));
  return eqs;
}

namespace {

std::vector<std::vector<Code>> back_substitute(const GroebnerBasis& lex) {
  const Ring& R = *lex.ring;
  const FieldCtx& F = R.field();
  const int n = R.nvars();
  if (lex.is_unit()) return {};
  // Bucket basis elements by their most significant variable (smallest slot).
  std::vector<std::vector<const Poly*>> by_slot(n);
  for (const auto& g : lex.basis) {
    int top = n;
    for (const auto& t : g.terms())
      for (int s = 0; s < n; ++s)
        if (t.m.exponent(s) > 0) {
          top = std::min(top, s);
          break;
        }
    if (top == n) return {};  // non-zero constant
    by_slot[top].push_back(&g);
  }
  // Partial solutions indexed by slot, filled from the last slot upwards.
  std::vector<std::vector<Code>> partial{std::vector<Code>(n, 0)};
  for (int s = n - 1; s >= 0; --s) {
    std::vector<std::vector<Code>> next;
    const int var = R.var_at(s);
    for (auto& sol : partial) {
      for (int t = 0; t < F.q(); ++t) {
        sol[var] = static_cast<Code>(t);
        bool ok = true;
        for (const Poly* g : by_slot[s])
          if (evaluate(*g, sol) != 0) {
            ok = false;
            break;
          }
        if (ok) next.push_back(sol);
      }
    }
    partial = std::move(next);
    if (partial.empty()) break;
  }
  std::sort(partial.begin(), partial.end());
  return partial;
}

}  // namespace

std::vector<std::vector<Code>> variety_over_Fq(const std::vector<Poly>& gens, SolveMethod method) {
  auto nz = nonzero_gens(gens);
  if (gens.empty()) throw MathError("variety_over_Fq: empty generator list");
  const RingPtr& ring = gens.front().ring();
  if (ring->nvars() == 0) {
    if (nz.empty()) return {std::vector<Code>{}};
    return {};
  }
  auto lex_ring = make_ring(ring->field_ptr(), ring->names(), MonomialOrder{OrderKind::lex, ring->order().priority});
  GroebnerBasis lex;
  if (method == SolveMethod::fglm) {
    // The field equations enter as NF(v^q) - v, with v^q reached by repeated
    // p-th powers reduced modulo the basis of the system alone.
    GroebnerBasis G = nz.empty() ? GroebnerBasis{ring, {}} : groebner_basis(nz);
    if (G.is_unit()) return {};
    std::vector<Poly> fe;
    const FieldCtx& F = ring->field();
    for (int v = 0; v < ring->nvars(); ++v) {
      Poly f = Poly::variable(ring, v);
      for (int k = 0; k < F.n(); ++k) f = G.reduce(pow(f, F.p()));
      fe.push_back(f - Poly::variable(ring, v));
    }
    G = G.basis.empty() ? groebner_basis(fe) : groebner_extend(G, fe);
    if (G.is_unit()) return {};
    lex = ring->order().kind == OrderKind::lex ? G : fglm(G, lex_ring);
  } else {
    auto all = nz;
    auto fe = field_equations(ring);
    all.insert(all.end(), fe.begin(), fe.end());
    std::vector<Poly> conv;
    for (const auto& f : all) conv.push_back(convert(f, lex_ring));
    lex = groebner_basis(conv);
  }
  return back_substitute(lex);
}

std::vector<std::vector<Code>> variety_brute_force(const std::vector<Poly>& gens) {
  if (gens.empty()) throw MathError("variety_brute_force: empty generator list");
  const Ring& R = *gens.front().ring();
  const int n = R.nvars();
  const int q = R.field().q();
  double space = 1;
  for (int i = 0; i < n; ++i) space *= q;
  if (space > 5e7) throw MathError("variety_brute_force: search space too large");
  std::vector<std::vector<Code>> out;
  std::vector<Code> pt(n, 0);
  for (;;) {
    bool ok = true;
    for (const auto& g : gens)
      if (evaluate(g, pt) != 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(pt);
    int i = n - 1;
    while (i >= 0 && pt[i] == q - 1) pt[i--] = 0;
    if (i < 0) break;
    ++pt[i];
  }
  return out;
}

}  // namespace sscurve
