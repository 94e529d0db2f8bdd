#include "sscurve/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sscurve/curve_tools.hpp"
#include "sscurve/enumerator.hpp"
#include "sscurve/groebner.hpp"
#include "sscurve/hasse_witt.hpp"
#include "sscurve/smoothness.hpp"

namespace sscurve {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.empty()) throw MathError("bad integer '" + t + "'");
    out.push_back(v);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int hardware_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Field and ring flags shared by the polynomial subcommands.
struct PolyContext {
  int p = 0;
  int n = 1;
  std::string modulus;
  std::string vars = "x,y,z,w";
  std::string order = "grevlex";

  void add_to(CLI::App* app, bool with_order) {
    app->add_option("--p", p, "Field characteristic")->required();
    app->add_option("--n", n, "Extension degree")->capture_default_str();
    app->add_option("--modulus", modulus, "Monic modulus, constant term first, e.g. 2,4,1");
    app->add_option("--vars", vars, "Comma-separated variable names")->capture_default_str();
    if (with_order)
      app->add_option("--order", order, "Monomial order")
          ->check(CLI::IsMember({"grevlex", "lex"}))
          ->capture_default_str();
  }

  FieldPtr field() const {
    std::optional<std::vector<int>> mod;
    if (!modulus.empty()) mod = parse_int_list(modulus);
    return make_field(p, n, mod);
  }

  RingPtr ring() const {
    const auto names = split(vars, ',');
    if (names.empty()) throw MathError("--vars: no variables");
    const int nv = static_cast<int>(names.size());
    return make_ring(field(), names, order == "lex" ? MonomialOrder::lex(nv) : MonomialOrder::grevlex(nv));
  }
};

std::vector<Poly> parse_all(const RingPtr& R, const std::vector<std::string>& texts) {
  std::vector<Poly> out;
  for (const auto& t : texts) out.push_back(parse_poly(R, t));
  return out;
}

/// --q/--c for the genus-4 pair, or repeated --poly.
struct CurveInput {
  std::string q;
  std::string c;
  std::vector<std::string> polys;

  void add_to(CLI::App* app) {
    app->add_option("--q", q, "Quadric");
    app->add_option("--c", c, "Cubic");
    app->add_option("--poly", polys, "Defining polynomial (repeatable)");
  }

  std::vector<Poly> resolve(const RingPtr& R) const {
    if (!q.empty() || !c.empty()) {
      if (q.empty() || c.empty()) throw MathError("--q and --c must be given together");
      if (!polys.empty()) throw MathError("use either --q/--c or --poly");
      return {parse_poly(R, q), parse_poly(R, c)};
    }
    if (polys.empty()) throw MathError("no polynomials given");
    return parse_all(R, polys);
  }
};

nlohmann::json matrix_json(const Matrix& M) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < M.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

void print_matrix(std::ostream& out, const Matrix& M) {
  std::size_t width = 1;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) width = std::max(width, M(i, j).to_string().size());
  for (int i = 0; i < M.rows(); ++i) {
    out << "[";
    for (int j = 0; j < M.cols(); ++j) out << (j ? " " : "") << std::setw(static_cast<int>(width)) << M(i, j).to_string();
    out << "]\n";
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw MathError("cannot write " + path);
  f << text;
  if (!f) throw MathError("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MathError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Curve file: flat key=value with p, n, optional modulus and vars, Q, P.
CurvePair read_curve_file(const std::string& path) {
  PolyContext ctx;
  std::string Q, P;
  for (const auto& [k, v] : read_key_values(path)) {
    if (k == "p") ctx.p = parse_int_list(v).at(0);
    else if (k == "n") ctx.n = parse_int_list(v).at(0);
    else if (k == "modulus") ctx.modulus = v;
    else if (k == "vars") ctx.vars = v;
    else if (k == "Q" || k == "q") Q = v;
    else if (k == "P" || k == "c") P = v;
    else throw MathError("curve file: unknown key '" + k + "'");
  }
  if (ctx.p == 0 || Q.empty() || P.empty()) throw MathError("curve file: needs p, Q and P");
  const auto R = ctx.ring();
  return make_curve_pair(parse_poly(R, Q), parse_poly(R, P));
}

std::string format_solution(const FieldCtx& F, const std::vector<Code>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + F.format(s[i]);
  return out + ")";
}

std::string format_eta(double s) {
  if (!std::isfinite(s)) return "?";
  std::ostringstream o;
  const long long t = std::llround(s);
  if (t >= 3600) o << t / 3600 << "h" << std::setw(2) << std::setfill('0') << (t % 3600) / 60 << "m";
  else if (t >= 60) o << t / 60 << "m" << std::setw(2) << std::setfill('0') << t % 60 << "s";
  else o << t << "s";
  return o.str();
}

/// Config entries become "--key=value" arguments unless the key was given on
/// the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  if (config_path.empty()) return args;
  const KeyValues kv = read_key_values(config_path);
  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  std::vector<std::string> out;
  std::size_t rest = 0;
  if (!args.empty() && args[0].rfind("-", 0) != 0) {
    out.push_back(args[0]);
    rest = 1;
  } else {
    for (const auto& [k, v] : kv)
      if (k == "command") out.push_back(v);
  }
  for (const auto& [k, v] : kv)
    if (k != "command" && !given.count(k)) out.push_back("--" + k + "=" + v);
  out.insert(out.end(), args.begin() + static_cast<long>(rest), args.end());
  return out;
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw MathError("config line " + std::to_string(lineno) + ": expected key=value");
    kv.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) { return parse_key_values(read_text(path)); }

std::string format_key_values(const KeyValues& kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

void RunConfig::validate() const {
  const auto ids = case_ids();
  if (std::find(ids.begin(), ids.end(), case_id) == ids.end()) throw MathError("unknown case '" + case_id + "'");
  const int case_q = case_spec(case_id).q;
  if (p != 0 || n != 0) {
    long long q = 1;
    for (int i = 0; i < n; ++i) q *= p;
    if (p == 0 || n == 0 || q != case_q)
      throw MathError("field F_" + std::to_string(p) + "^" + std::to_string(n) + " does not match case " + case_id);
  }
  if (modulus) {
    const auto Fd = make_field(case_q == 25 ? 5 : 7, 2);
    if (*modulus != Fd->modulus()) throw MathError("enumerate runs over the default modulus " + join_ints(Fd->modulus()));
  }
  if (mode == Mode::sample && sample <= 0) throw MathError("sample mode needs a positive sample size");
  if (mode == Mode::full && (sample != 0 || seed != 0)) throw MathError("sample and seed apply only in sample mode");
  if (jobs < 0) throw MathError("jobs must be non-negative");
  if (checkpoint_every < 1) throw MathError("checkpoint-every must be positive");
}

KeyValues RunConfig::to_key_values() const {
  KeyValues kv{{"command", "enumerate"}, {"case", case_id}};
  if (p) kv.emplace_back("p", std::to_string(p));
  if (n) kv.emplace_back("n", std::to_string(n));
  if (modulus) kv.emplace_back("modulus", join_ints(*modulus));
  if (mode == Mode::sample) {
    kv.emplace_back("sample", std::to_string(sample));
    kv.emplace_back("seed", std::to_string(seed));
  }
  if (!cells.empty()) kv.emplace_back("cells", cells);
  if (jobs) kv.emplace_back("jobs", std::to_string(jobs));
  if (!checkpoint.empty()) kv.emplace_back("checkpoint", checkpoint);
  kv.emplace_back("checkpoint-every", std::to_string(checkpoint_every));
  if (!out.empty()) kv.emplace_back("out", out);
  kv.emplace_back("format", format == Format::csv ? "csv" : "json");
  return kv;
}

RunConfig RunConfig::from_key_values(const KeyValues& kv) {
  RunConfig c;
  auto num = [](const std::string& k, const std::string& v) {
    const auto xs = parse_int_list(v);
    if (xs.size() != 1) throw MathError("config: bad value for " + k);
    return xs[0];
  };
  for (const auto& [k, v] : kv) {
    if (k == "command") {
      if (v != "enumerate") throw MathError("config: not an enumerate config");
    } else if (k == "case") {
      c.case_id = v;
    } else if (k == "p") {
      c.p = num(k, v);
    } else if (k == "n") {
      c.n = num(k, v);
    } else if (k == "modulus") {
      c.modulus = parse_int_list(v);
    } else if (k == "sample") {
      c.mode = Mode::sample;
      c.sample = std::stoll(v);
    } else if (k == "seed") {
      c.seed = std::stoull(v);
    } else if (k == "cells") {
      c.cells = v;
    } else if (k == "jobs") {
      c.jobs = num(k, v);
    } else if (k == "checkpoint") {
      c.checkpoint = v;
    } else if (k == "checkpoint-every") {
      c.checkpoint_every = num(k, v);
    } else if (k == "out") {
      c.out = v;
    } else if (k == "format") {
      if (v != "json" && v != "csv") throw MathError("config: format must be json or csv");
      c.format = v == "csv" ? Format::csv : Format::json;
    } else {
      throw MathError("config: unknown key '" + k + "'");
    }
  }
  return c;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superspecial genus-4 curve toolkit", "sscurve"};
  app.require_subcommand(1);
  std::string config_unused;
  app.add_option("--config", config_unused, "Flat key=value file mirroring the flags");

  // hw
  PolyContext hw_ctx;
  CurveInput hw_in;
  bool hw_json = false;
  auto* hw = app.add_subcommand("hw", "Hasse-Witt matrix of a complete intersection");
  hw_ctx.add_to(hw, false);
  hw_in.add_to(hw);
  hw->add_flag("--json", hw_json, "Machine-readable output");

  // smooth
  PolyContext sm_ctx;
  CurveInput sm_in;
  std::optional<int> sm_dim;
  bool sm_verify = false, sm_json = false;
  auto* sm = app.add_subcommand("smooth", "Non-singularity test of a projective variety");
  sm_ctx.add_to(sm, false);
  sm_in.add_to(sm);
  sm->add_option("--dim", sm_dim, "Projective dimension, if known");
  sm->add_flag("--verify-dim", sm_verify, "Recompute the dimension and check --dim");
  sm->add_flag("--json", sm_json, "Machine-readable output");

  // solve
  PolyContext so_ctx;
  std::vector<std::string> so_polys;
  std::string so_method = "fglm";
  bool so_json = false;
  auto* so = app.add_subcommand("solve", "All F_q-rational solutions of a polynomial system");
  so_ctx.add_to(so, false);
  so->add_option("--poly", so_polys, "Generator (repeatable)")->required();
  so->add_option("--method", so_method, "Solver")->check(CLI::IsMember({"fglm", "lex", "brute"}))->capture_default_str();
  so->add_flag("--json", so_json, "Machine-readable output");

  // nf
  PolyContext nf_ctx;
  std::string nf_f;
  std::vector<std::string> nf_basis;
  bool nf_raw = false, nf_json = false;
  auto* nf = app.add_subcommand("nf", "Normal form modulo an ideal");
  nf_ctx.add_to(nf, true);
  nf->add_option("--f", nf_f, "Polynomial to reduce")->required();
  nf->add_option("--basis", nf_basis, "Ideal generator (repeatable)")->required();
  nf->add_flag("--raw", nf_raw, "Divide by the generators as given instead of their reduced Groebner basis");
  nf->add_flag("--json", nf_json, "Machine-readable output");

  // points
  std::string pt_curve;
  bool pt_json = false;
  auto* pt = app.add_subcommand("points", "Count F_q-rational points of V(Q, P) in P^3");
  pt->add_option("--curve", pt_curve, "Curve file with keys p, n, modulus, Q, P")->required();
  pt->add_flag("--json", pt_json, "Machine-readable output");

  // classify
  std::string cl_out, cl_modulus;
  auto* cl = app.add_subcommand("classify", "Table of the 21 representatives over F_25");
  cl->add_option("--out", cl_out, "CSV path (stdout if absent)");
  cl->add_option("--modulus", cl_modulus, "Modulus of F_25, constant term first");

  // mass
  int ms_genus = 0, ms_p = 0;
  std::optional<long long> ms_aut;
  bool ms_json = false;
  auto* ms = app.add_subcommand("mass", "Mass of principally polarized superspecial abelian varieties");
  ms->add_option("--genus", ms_genus, "Dimension g (1..8)")->required();
  ms->add_option("--p", ms_p, "Characteristic")->required();
  ms->add_option("--aut-order", ms_aut, "Also print the share of one class with |Aut(C)| = N");
  ms->add_flag("--json", ms_json, "Machine-readable output");

  // aut-check
  std::string ac_modulus;
  bool ac_json = false;
  auto* ac = app.add_subcommand("aut-check", "Automorphisms of x^3+y^3+w^3 = 2yw+z^2 = 0 over F_25");
  ac->add_option("--modulus", ac_modulus, "Modulus of F_25, constant term first");
  ac->add_flag("--json", ac_json, "Machine-readable output");

  // enumerate
  RunConfig rc;
  std::string en_modulus, en_format, en_save;
  std::optional<long long> en_sample;
  std::optional<std::uint64_t> en_seed;
  bool en_quiet = false;
  auto* en = app.add_subcommand("enumerate", "Sweep the cells of a reduced cubic family");
  en->add_option("--case", rc.case_id, "Case id")->required()->check(CLI::IsMember(case_ids()));
  en->add_option("--p", rc.p, "Field characteristic (checked against the case)");
  en->add_option("--n", rc.n, "Extension degree (checked against the case)");
  en->add_option("--modulus", en_modulus, "Modulus (must be the default)");
  en->add_option("--sample", en_sample, "Random sample of N cells instead of the full sweep");
  en->add_option("--seed", en_seed, "Sampling seed");
  en->add_option("--cells", rc.cells, "Cell filter, e.g. \"b1=0; a1=g^5\" or \"0..100\"");
  en->add_option("--jobs", rc.jobs, "Worker threads (default: available parallelism)");
  en->add_option("--checkpoint", rc.checkpoint, "Checkpoint file; an existing one is resumed");
  en->add_option("--checkpoint-every", rc.checkpoint_every, "Cells per checkpoint")->capture_default_str();
  en->add_option("--out", rc.out, "Report path (stdout if absent)");
  en->add_option("--format", en_format, "Report format (default: from the --out extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  en->add_option("--save-config", en_save, "Write the resolved run config and exit");
  en->add_flag("--quiet", en_quiet, "No progress lines");

  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
    if (args.empty()) {
      err << app.help();
      return kExitUsage;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (hw->parsed()) {
      const auto R = hw_ctx.ring();
      const auto polys = hw_in.resolve(R);
      const auto H = hasse_witt_matrix(polys, hw_ctx.p);
      const bool zero = H.is_zero();
      if (hw_json) {
        out << nlohmann::json{{"genus", H.index.genus()}, {"matrix", matrix_json(H.matrix)}, {"superspecial_candidate", zero}}.dump(2)
            << "\n";
      } else {
        out << "genus " << H.index.genus() << "\n";
        print_matrix(out, H.matrix);
        out << (zero ? "SUPERSPECIAL-CANDIDATE" : "NOT-SUPERSPECIAL") << "\n";
      }
      return zero ? kExitOk : kExitNegative;
    }
    if (sm->parsed()) {
      const auto R = sm_ctx.ring();
      SmoothnessOptions opts;
      opts.expected_dim = sm_dim;
      opts.verify_dim = sm_verify;
      const bool ok = determine_nonsingularity(sm_in.resolve(R), opts) == Verdict::nonsingular;
      if (sm_json) out << nlohmann::json{{"nonsingular", ok}}.dump() << "\n";
      else out << (ok ? "NONSINGULAR" : "SINGULAR") << "\n";
      return ok ? kExitOk : kExitNegative;
    }
    if (so->parsed()) {
      const auto R = so_ctx.ring();
      const auto gens = parse_all(R, so_polys);
      const auto sols = so_method == "brute"  ? variety_brute_force(gens)
                        : so_method == "lex" ? variety_over_Fq(gens, SolveMethod::lex_buchberger)
                                             : variety_over_Fq(gens, SolveMethod::fglm);
      const FieldCtx& F = R->field();
      if (so_json) {
        auto arr = nlohmann::json::array();
        for (const auto& s : sols) {
          auto row = nlohmann::json::array();
          for (Code c : s) row.push_back(F.format(c));
          arr.push_back(row);
        }
        out << nlohmann::json{{"variables", R->names()}, {"count", sols.size()}, {"solutions", arr}}.dump(2) << "\n";
      } else {
        out << "# (" << split(so_ctx.vars, ',').size() << " variables: " << so_ctx.vars << ") " << sols.size()
            << " solutions\n";
        for (const auto& s : sols) out << format_solution(F, s) << "\n";
      }
      return kExitOk;
    }
    if (nf->parsed()) {
      const auto R = nf_ctx.ring();
      const Poly f = parse_poly(R, nf_f);
      const auto gens = parse_all(R, nf_basis);
      const Poly r = nf_raw ? normal_form(f, gens) : groebner_basis(gens).reduce(f);
      if (nf_json) out << nlohmann::json{{"normal_form", r.to_string()}, {"zero", r.is_zero()}}.dump() << "\n";
      else out << r.to_string() << "\n";
      return kExitOk;
    }
    if (pt->parsed()) {
      const auto C = read_curve_file(pt_curve);
      const long long n = count_points(C);
      if (pt_json) out << nlohmann::json{{"q", C.Q.field().q()}, {"points", n}}.dump() << "\n";
      else out << n << "\n";
      return kExitOk;
    }
    if (cl->parsed()) {
      std::optional<std::vector<int>> mod;
      if (!cl_modulus.empty()) mod = parse_int_list(cl_modulus);
      const auto F = make_field(5, 2, mod);
      std::ostringstream csv;
      csv << "family,i,jk,Q,P,expected,computed,match\n";
      bool all = true;
      for (const auto& r : representatives_21(*F)) {
        const long long n = count_points(r.curve);
        const bool match = n == r.expected_points;
        all = all && match;
        csv << family_name(r) << "," << r.i << "," << r.jk << ",\"" << r.curve.Q.to_string() << "\",\""
            << r.curve.P.to_string() << "\"," << r.expected_points << "," << n << "," << (match ? "yes" : "no")
            << "\n";
      }
      if (cl_out.empty()) out << csv.str();
      else write_text(cl_out, csv.str());
      if (!all) err << "point counts differ from the expected table\n";
      return all ? kExitOk : kExitNegative;
    }
    if (ms->parsed()) {
      const Rational m = mass_formula(ms_genus, ms_p);
      if (ms_json) {
        nlohmann::json j{{"genus", ms_genus}, {"p", ms_p}, {"mass", m.str()}};
        if (ms_aut) j["share"] = static_cast<double>(mass_share(*ms_aut, m));
        out << j.dump() << "\n";
      } else {
        out << m.str() << "\n";
        if (ms_aut)
          out << "share " << std::fixed << std::setprecision(4) << static_cast<double>(mass_share(*ms_aut, m)) << "\n";
      }
      return kExitOk;
    }
    if (ac->parsed()) {
      std::optional<std::vector<int>> mod;
      if (!ac_modulus.empty()) mod = parse_int_list(ac_modulus);
      const auto F = make_field(5, 2, mod);
      const auto chk = check_s5_presentation(*F);
      const auto G = enumerate_gk(*F);
      std::set<std::string> distinct;
      for (const auto& e : G) distinct.insert(e.g.to_string());
      const bool ok = chk.ok() && distinct.size() == 720;
      if (ac_json) {
        out << nlohmann::json{{"automorphisms", chk.automorphisms}, {"involutions", chk.involutions},
                              {"commuting", chk.commuting},         {"braid", chk.braid},
                              {"gk_order", distinct.size()},        {"ok", ok}}
                   .dump(2)
            << "\n";
      } else {
        auto line = [&](const char* what, bool v) { out << (v ? "ok   " : "FAIL ") << what << "\n"; };
        line("s1..s4 preserve the curve", chk.automorphisms);
        line("s_i^2 scalar", chk.involutions);
        line("(s_i s_j)^2 scalar for |i-j| > 1", chk.commuting);
        line("(s_i s_{i+1})^3 scalar", chk.braid);
        out << (distinct.size() == 720 ? "ok   " : "FAIL ") << "|G_k| = " << distinct.size() << "\n";
      }
      return ok ? kExitOk : kExitNegative;
    }
    if (en->parsed()) {
      if (!en_modulus.empty()) rc.modulus = parse_int_list(en_modulus);
      if (en_sample) {
        rc.mode = RunConfig::Mode::sample;
        rc.sample = *en_sample;
        rc.seed = en_seed.value_or(0);
      } else if (en_seed) {
        throw MathError("--seed needs --sample");
      }
      if (!en_format.empty()) rc.format = en_format == "csv" ? RunConfig::Format::csv : RunConfig::Format::json;
      else if (rc.out.size() > 4 && rc.out.compare(rc.out.size() - 4, 4, ".csv") == 0) rc.format = RunConfig::Format::csv;
      rc.validate();
      if (!en_save.empty()) {
        write_text(en_save, format_key_values(rc.to_key_values()));
        return kExitOk;
      }
      const CaseSpec spec = case_spec(rc.case_id);
      EnumOptions opts;
      opts.filter = rc.cells;
      opts.jobs = rc.jobs ? rc.jobs : hardware_jobs();
      opts.checkpoint = rc.checkpoint;
      opts.checkpoint_every = rc.checkpoint_every;
      const auto start = std::chrono::steady_clock::now();
      if (!en_quiet) {
        opts.on_progress = [&](const Progress& pr) {
          const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          const double rate = wall > 0 ? static_cast<double>(pr.done - pr.resumed) / wall : 0.0;
          const double eta = rate > 0 ? static_cast<double>(pr.total - pr.done) / rate : INFINITY;
          err << "[" << spec.id << "] " << pr.done << "/" << pr.total << " cells  " << std::fixed
              << std::setprecision(2) << rate << " cells/s  ETA " << format_eta(eta) << "\n"
              << std::flush;
        };
      }
      const EnumReport rep = rc.mode == RunConfig::Mode::sample
                                 ? sample_sweep(spec, rc.sample, rc.seed, opts)
                                 : enumerate_case(spec, opts);
      const std::string body =
          rc.format == RunConfig::Format::csv ? rep.to_csv(spec) : rep.to_json().dump(2) + "\n";
      if (rc.out.empty()) out << body;
      else write_text(rc.out, body);
      if (!en_quiet)
        err << "[" << spec.id << "] done: " << rep.cells_done << " cells, " << rep.cells_with_solutions
            << " with solutions, " << rep.survivors.size() << " survivors, " << std::fixed << std::setprecision(1)
            << rep.total_s << "s\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace sscurve
