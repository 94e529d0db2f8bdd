#include "sscurve/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "sscurve/groebner.hpp"
#include "sscurve/hasse_witt.hpp"
#include "sscurve/smoothness.hpp"

namespace sscurve {

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

bool verify_survivor(const Poly& P, const Poly& Q, int p) {
  check_same_ring(P, Q);
  if (P.is_zero() || Q.is_zero() || !P.is_homogeneous() || !Q.is_homogeneous() || P.total_degree() != 3 ||
      Q.total_degree() != 2)
    throw MathError("verify_survivor: expects a homogeneous cubic and quadric");
  if (normal_form(P, {Q}).is_zero()) return false;
  if (!is_hw_zero(P, Q, p)) return false;
  return determine_nonsingularity({Q, P}, {1}) == Verdict::nonsingular;
}

CaseEngine::CaseEngine(const CaseSpec& spec) : spec_(spec), unknowns_(spec.unknown_ring()) {
  std::vector<std::string> coeff_names;
  for (int i : spec.loop) coeff_names.push_back(spec.a_names[i]);
  for (const auto& b : spec.b_names) coeff_names.push_back(b);
  const std::size_t nparams = coeff_names.size();
  for (int i : spec.symbolic) coeff_names.push_back(spec.a_names[i]);
  auto coeff_ring = make_ring(spec.field, coeff_names);
  std::vector<std::string> all = coeff_names;
  for (const auto& v : spec.ring->names()) all.push_back(v);
  auto R = make_ring(spec.field, all);

  const Poly generic = spec.generic_cubic();
  const Poly P = convert(generic, R);
  const Poly Q = convert(spec.quadric.Q, R);
  const int base = static_cast<int>(coeff_names.size());
  const auto S = symbolic_hw_coefficients(P, Q, spec.field->p(), {base, base + 1, base + 2, base + 3}, coeff_ring);

  for (const auto& s : S) {
    std::vector<SysTerm> terms;
    for (const auto& t : s.terms()) {
      const auto e = coeff_ring->exponents(t.m);
      SysTerm st;
      st.param_exp.assign(e.begin(), e.begin() + static_cast<long>(nparams));
      st.unknown = unknowns_->monomial(std::vector<int>(e.begin() + static_cast<long>(nparams), e.end()));
      st.c = t.c;
      terms.push_back(std::move(st));
    }
    system_.push_back(std::move(terms));
  }
}

std::vector<Poly> CaseEngine::cell_system(long long cell) const {
  const FieldCtx& F = *spec_.field;
  std::vector<Code> params;
  for (const auto& v : spec_.loop_tuple(cell)) params.push_back(v.code());
  for (const auto& v : spec_.b_tuple(cell)) params.push_back(v.code());
  const int maxe = F.p();
  std::vector<std::vector<Code>> pw(params.size(), std::vector<Code>(maxe + 1, 1));
  for (std::size_t i = 0; i < params.size(); ++i)
    for (int e = 1; e <= maxe; ++e) pw[i][e] = F.mul(pw[i][e - 1], params[i]);

  std::vector<Poly> out;
  out.reserve(system_.size());
  for (const auto& sys : system_) {
    std::vector<Term> terms;
    terms.reserve(sys.size());
    for (const auto& t : sys) {
      Code c = t.c;
      for (std::size_t i = 0; i < params.size() && c != 0; ++i)
        if (t.param_exp[i]) c = F.mul(c, pw[i][t.param_exp[i]]);
      if (c != 0) terms.push_back({t.unknown, c});
    }
    out.push_back(Poly::from_terms(unknowns_, std::move(terms)));
  }
  return out;
}

std::vector<FieldElement> CaseEngine::assemble_a(long long cell, const std::vector<Code>& solution) const {
  const FieldCtx& F = *spec_.field;
  std::vector<FieldElement> a(spec_.a_names.size(), F.zero());
  const auto loop = spec_.loop_tuple(cell);
  for (std::size_t k = 0; k < spec_.loop.size(); ++k) a[spec_.loop[k]] = loop[k];
  for (std::size_t k = 0; k < spec_.symbolic.size(); ++k) a[spec_.symbolic[k]] = F.element(solution.at(k));
  return a;
}

CellResult CaseEngine::run_cell(long long cell) const {
  CellResult r;
  r.cell = cell;
  const auto b = spec_.b_tuple(cell);
  for (const auto& v : b) r.b.push_back(v.code());
  for (const auto& v : spec_.loop_tuple(cell)) r.loop.push_back(v.code());

  auto t0 = Clock::now();
  const auto sys = cell_system(cell);
  r.t_mlt = seconds_since(t0);

  t0 = Clock::now();
  const bool inconsistent =
      std::any_of(sys.begin(), sys.end(), [](const Poly& f) { return f.is_constant() && !f.is_zero(); });
  if (!inconsistent) r.solutions = variety_over_Fq(sys);
  r.t_gbslv = seconds_since(t0);

  t0 = Clock::now();
  for (const auto& sol : r.solutions) {
    const auto a = assemble_a(cell, sol);
    const Poly P = spec_.cubic(a, b);
    if (determine_nonsingularity({spec_.quadric.Q, P}, {1}) != Verdict::nonsingular) continue;
    Survivor s;
    s.cell = cell;
    s.b = r.b;
    for (const auto& v : a) s.a.push_back(v.code());
    s.cubic = P.to_string();
    r.survivors.push_back(std::move(s));
  }
  r.t_sing = seconds_since(t0);
  return r;
}

void EnumReport::add(const CellResult& r) {
  ++cells_done;
  if (!r.solutions.empty()) ++cells_with_solutions;
  solutions += static_cast<long long>(r.solutions.size());
  survivors.insert(survivors.end(), r.survivors.begin(), r.survivors.end());
  t_mlt_sum += r.t_mlt;
  t_gbslv_sum += r.t_gbslv;
  t_sing_sum += r.t_sing;
}

void EnumReport::canonicalize() {
  std::sort(survivors.begin(), survivors.end(), [](const Survivor& x, const Survivor& y) {
    if (x.cell != y.cell) return x.cell < y.cell;
    return x.a < y.a;
  });
}

namespace {

FieldPtr report_field(int p, int q) { return make_field(p, q == p ? 1 : 2); }

nlohmann::json codes_to_json(const FieldCtx& F, const std::vector<Code>& v) {
  auto arr = nlohmann::json::array();
  for (Code c : v) arr.push_back(F.format(c));
  return arr;
}

std::vector<Code> codes_from_json(const FieldCtx& F, const nlohmann::json& arr) {
  std::vector<Code> out;
  for (const auto& s : arr) out.push_back(F.parse(s.get<std::string>()).code());
  return out;
}

}  // namespace

nlohmann::json EnumReport::to_json() const {
  const auto F = report_field(p, q);
  nlohmann::json j;
  j["case"] = case_id;
  j["q"] = q;
  j["p"] = p;
  j["cells_total"] = cells_total;
  j["cells_done"] = cells_done;
  j["cells_with_solutions"] = cells_with_solutions;
  j["solutions"] = solutions;
  j["survivor_count"] = survivors.size();
  auto arr = nlohmann::json::array();
  for (const auto& s : survivors)
    arr.push_back({{"cell", s.cell}, {"b", codes_to_json(*F, s.b)}, {"a", codes_to_json(*F, s.a)}, {"cubic", s.cubic}});
  j["survivors"] = arr;
  const double n = cells_done ? static_cast<double>(cells_done) : 1.0;
  j["timings"] = {{"t_mlt_avg", t_mlt_sum / n},     {"t_gbslv_avg", t_gbslv_sum / n}, {"t_sing_avg", t_sing_sum / n},
                  {"t_total_avg", total_s / n},      {"total_s", total_s},             {"t_mlt_sum", t_mlt_sum},
                  {"t_gbslv_sum", t_gbslv_sum},      {"t_sing_sum", t_sing_sum}};
  j["filter"] = filter;
  j["sample"] = sample ? nlohmann::json(*sample) : nlohmann::json(nullptr);
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

EnumReport EnumReport::from_json(const nlohmann::json& j) {
  EnumReport r;
  r.case_id = j.at("case").get<std::string>();
  r.q = j.at("q").get<int>();
  r.p = j.at("p").get<int>();
  r.cells_total = j.at("cells_total").get<long long>();
  r.cells_done = j.at("cells_done").get<long long>();
  r.cells_with_solutions = j.at("cells_with_solutions").get<long long>();
  r.solutions = j.at("solutions").get<long long>();
  const auto F = report_field(r.p, r.q);
  for (const auto& s : j.at("survivors"))
    r.survivors.push_back({s.at("cell").get<long long>(), codes_from_json(*F, s.at("b")),
                           codes_from_json(*F, s.at("a")), s.at("cubic").get<std::string>()});
  const auto& t = j.at("timings");
  r.t_mlt_sum = t.at("t_mlt_sum").get<double>();
  r.t_gbslv_sum = t.at("t_gbslv_sum").get<double>();
  r.t_sing_sum = t.at("t_sing_sum").get<double>();
  r.total_s = t.at("total_s").get<double>();
  r.filter = j.at("filter").get<std::string>();
  if (!j.at("sample").is_null()) r.sample = j.at("sample").get<long long>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

std::string EnumReport::to_csv(const CaseSpec& spec) const {
  const FieldCtx& F = *spec.field;
  std::ostringstream os;
  os << "case,cell";
  for (const auto& n : spec.b_names) os << ',' << n;
  for (const auto& n : spec.a_names) os << ',' << n;
  os << ",cubic\n";
  for (const auto& s : survivors) {
    os << case_id << ',' << s.cell;
    for (Code c : s.b) os << ',' << F.format(c);
    for (Code c : s.a) os << ',' << F.format(c);
    os << ",\"" << s.cubic << "\"\n";
  }
  return os.str();
}

std::vector<long long> select_cells(const CaseSpec& spec, const std::string& filter) {
  const FieldCtx& F = *spec.field;
  std::vector<std::pair<int, std::vector<Code>>> b_rules, loop_rules;
  long long lo = 0, hi = spec.iterations();
  std::stringstream ss(filter);
  std::string clause;
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  while (std::getline(ss, clause, ';')) {
    clause = trim(clause);
    if (clause.empty()) continue;
    if (const auto dots = clause.find(".."); dots != std::string::npos) {
      try {
        lo = std::max(lo, std::stoll(clause.substr(0, dots)));
        hi = std::min(hi, std::stoll(clause.substr(dots + 2)));
      } catch (const std::exception&) {
        throw MathError("cell filter: bad range '" + clause + "'");
      }
      continue;
    }
    const auto eq = clause.find('=');
    if (eq == std::string::npos) throw MathError("cell filter: bad clause '" + clause + "'");
    const std::string name = trim(clause.substr(0, eq));
    std::vector<Code> values;
    std::stringstream vs(clause.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) values.push_back(F.parse(trim(v)).code());
    if (values.empty()) throw MathError("cell filter: no values for '" + name + "'");
    if (auto it = std::find(spec.b_names.begin(), spec.b_names.end(), name); it != spec.b_names.end()) {
      b_rules.push_back({static_cast<int>(it - spec.b_names.begin()), values});
      continue;
    }
    bool found = false;
    for (std::size_t k = 0; k < spec.loop.size(); ++k)
      if (spec.a_names[spec.loop[k]] == name) {
        loop_rules.push_back({static_cast<int>(k), values});
        found = true;
      }
    if (!found) throw MathError("cell filter: '" + name + "' is neither a loop coefficient nor a b coefficient");
  }
  std::vector<long long> out;
  auto admits = [](const std::vector<std::pair<int, std::vector<Code>>>& rules, const std::vector<FieldElement>& t) {
    for (const auto& [k, vals] : rules)
      if (std::find(vals.begin(), vals.end(), t[k].code()) == vals.end()) return false;
    return true;
  };
  for (long long c = lo; c < hi; ++c) {
    if (!b_rules.empty() && !admits(b_rules, spec.b_tuple(c))) continue;
    if (!loop_rules.empty() && !admits(loop_rules, spec.loop_tuple(c))) continue;
    out.push_back(c);
  }
  return out;
}

namespace {

void write_checkpoint(const std::string& path, const EnumReport& r, long long cursor) {
  nlohmann::json j{{"cursor", cursor}, {"report", r.to_json()}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw MathError("checkpoint: cannot write " + tmp);
    os << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

EnumReport run_cells(const CaseSpec& spec, const std::vector<long long>& cells, EnumReport report,
                     const EnumOptions& opts) {
  long long cursor = 0;
  if (!opts.checkpoint.empty() && std::filesystem::exists(opts.checkpoint)) {
    std::ifstream is(opts.checkpoint);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const std::exception& e) {
      throw MathError(std::string("checkpoint: unreadable: ") + e.what());
    }
    EnumReport prev;
    try {
      prev = EnumReport::from_json(j.at("report"));
      cursor = j.at("cursor").get<long long>();
    } catch (const nlohmann::json::exception& e) {
      throw MathError(std::string("checkpoint: schema mismatch: ") + e.what());
    }
    if (prev.case_id != report.case_id || prev.filter != report.filter || prev.sample != report.sample ||
        prev.seed != report.seed || prev.cells_total != report.cells_total || cursor < 0 ||
        cursor > static_cast<long long>(cells.size()))
      throw MathError("checkpoint: belongs to a different run");
    report = std::move(prev);
  }

  const CaseEngine engine(spec);
  const int jobs = std::max(1, opts.jobs);
  const long long chunk = std::max(1, opts.checkpoint_every);
  const auto total = static_cast<long long>(cells.size());
  const auto start = Clock::now();
  const double prior_s = report.total_s;
  const long long resumed = cursor;

  while (cursor < total) {
    const long long end = std::min(total, cursor + chunk);
    std::vector<CellResult> results(static_cast<std::size_t>(end - cursor));
    std::atomic<long long> next{cursor};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (long long i; (i = next.fetch_add(1)) < end;) {
        try {
          results[static_cast<std::size_t>(i - cursor)] = engine.run_cell(cells[static_cast<std::size_t>(i)]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (const auto& r : results) report.add(r);
    cursor = end;
    report.total_s = prior_s + seconds_since(start);
    if (!opts.checkpoint.empty()) write_checkpoint(opts.checkpoint, report, cursor);
    if (opts.on_progress) opts.on_progress({cursor, total, report.total_s, resumed});
  }
  report.canonicalize();
  return report;
}

EnumReport empty_report(const CaseSpec& spec, const EnumOptions& opts) {
  EnumReport r;
  r.case_id = spec.id;
  r.q = spec.q;
  r.p = spec.field->p();
  r.filter = opts.filter;
  return r;
}

}  // namespace

EnumReport enumerate_case(const CaseSpec& spec, const EnumOptions& opts) {
  const auto cells = select_cells(spec, opts.filter);
  EnumReport r = empty_report(spec, opts);
  r.cells_total = static_cast<long long>(cells.size());
  return run_cells(spec, cells, std::move(r), opts);
}

EnumReport sample_sweep(const CaseSpec& spec, long long n, std::uint64_t seed, const EnumOptions& opts) {
  auto cells = select_cells(spec, opts.filter);
  if (n < 0 || n > static_cast<long long>(cells.size()))
    throw MathError("sample_sweep: sample size exceeds the number of cells");
  std::mt19937_64 rng(seed);
  for (long long i = 0; i < n; ++i) {
    std::uniform_int_distribution<long long> pick(i, static_cast<long long>(cells.size()) - 1);
    std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(pick(rng))]);
  }
  cells.resize(static_cast<std::size_t>(n));
  std::sort(cells.begin(), cells.end());
  EnumReport r = empty_report(spec, opts);
  r.cells_total = n;
  r.sample = n;
  r.seed = seed;
  return run_cells(spec, cells, std::move(r), opts);
}

}  // namespace sscurve
