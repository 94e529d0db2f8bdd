#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "sscurve/enumerator.hpp"
#include "sscurve/hasse_witt.hpp"

using namespace sscurve;

namespace {

std::vector<Code> powers_of_g(const FieldCtx& F, std::initializer_list<int> exps) {
  std::vector<Code> out;
  for (int e : exps) out.push_back(F.generator().pow(e).code());
  return out;
}

}  // namespace

TEST_CASE("golden cell: split quadric, case ii, q = 25") {
  auto spec = case_spec("n1ii-25");
  const FieldCtx& F = *spec.field;
  const auto cells = select_cells(spec, "b1=0; b2=g; b3=0; a1=g^5; a2=1");
  REQUIRE(cells.size() == 1);
  CHECK(spec.b_tuple(cells[0])[1] == -pick_epsilon(F));
  CaseEngine engine(spec);
  const auto r = engine.run_cell(cells[0]);
  std::set<std::vector<Code>> got(r.solutions.begin(), r.solutions.end());
  const std::set<std::vector<Code>> want{powers_of_g(F, {9, 15, 4, 19, 14, 5}), powers_of_g(F, {21, 3, 16, 19, 14, 17})};
  CHECK(r.solutions.size() == 2);
  CHECK(got == want);
  CHECK(r.survivors.empty());
}

TEST_CASE("verify_survivor examples") {
  auto F25 = make_field(5, 2);
  auto R = xyzw_ring(F25);
  auto Q = parse_poly(R, "2*y*w+z^2");
  CHECK(verify_survivor(parse_poly(R, "x^3+y^3+w^3"), Q, 5));
  CHECK(verify_survivor(parse_poly(R, "x^3+y^3+w^3+z*w^2"), Q, 5));
  CHECK_FALSE(verify_survivor(parse_poly(R, "x*(2*y*w+z^2)"), Q, 5));
  CHECK_FALSE(verify_survivor(parse_poly(R, "x^3+y^3+w^3+x*y*z"), Q, 5));
  auto R49 = xyzw_ring(make_field(7, 2));
  CHECK_FALSE(verify_survivor(parse_poly(R49, "x^3+y^3+w^3"), parse_poly(R49, "2*y*w+z^2"), 7));
  CHECK_THROWS_AS(verify_survivor(parse_poly(R, "x^2"), Q, 5), MathError);
}

TEST_CASE("cell systems match direct coefficient extraction") {
  std::mt19937_64 rng(3);
  for (const char* id : {"n1i-25", "n2-25", "deg-25", "n1ii-49", "n2-49"}) {
    auto spec = case_spec(id);
    CaseEngine engine(spec);
    const FieldCtx& F = *spec.field;
    const int p = F.p();
    const auto M = genus4_monomials(p);
    for (int trial = 0; trial < 3; ++trial) {
      const long long cell = std::uniform_int_distribution<long long>(0, spec.iterations() - 1)(rng);
      const auto sys = engine.cell_system(cell);
      REQUIRE(sys.size() == 16);
      std::vector<Code> u(spec.symbolic.size());
      for (auto& c : u) c = static_cast<Code>(std::uniform_int_distribution<int>(0, F.q() - 1)(rng));
      const Poly P = spec.cubic(engine.assemble_a(cell, u), spec.b_tuple(cell));
      const Poly h = pow(P * spec.quadric.Q, p - 1);
      for (int k = 0; k < 16; ++k)
        CHECK_MESSAGE(evaluate(sys[k], u) == h.coefficient(spec.ring->monomial({M[k][0], M[k][1], M[k][2], M[k][3]})).code(),
                      id);
    }
  }
}

TEST_CASE("solutions round-trip and survivors re-verify") {
  auto spec = case_spec("deg-25");
  CaseEngine engine(spec);
  const auto cells = select_cells(spec, "b1=0; b2=1; a0=1; a1=0");
  REQUIRE(cells.size() == 24);
  long long survivors = 0;
  for (long long c : cells) {
    const auto r = engine.run_cell(c);
    const auto sys = engine.cell_system(c);
    for (const auto& s : r.solutions)
      for (const auto& f : sys) CHECK(evaluate(f, s) == 0);
    for (const auto& s : r.survivors) {
      std::vector<FieldElement> a, b;
      for (Code x : s.a) a.push_back(spec.field->element(x));
      for (Code x : s.b) b.push_back(spec.field->element(x));
      const Poly P = spec.cubic(a, b);
      CHECK(P.to_string() == s.cubic);
      CHECK(verify_survivor(P, spec.quadric.Q, 5));
      // Only a0, a6, a8 non-zero.
      for (std::size_t i = 0; i < a.size(); ++i) CHECK((i == 0 || i == 6 || i == 8) != a[i].is_zero());
    }
    survivors += static_cast<long long>(r.survivors.size());
  }
  CHECK(survivors == 24 * 24);
  // b1 = 1 kills every survivor in the same slice.
  EnumOptions o;
  o.filter = "b1=1; b2=1; a0=1; a1=0";
  CHECK(enumerate_case(spec, o).survivors.empty());
}

TEST_CASE("reports do not depend on scheduling") {
  auto spec = case_spec("n1ii-25");
  EnumOptions serial;
  serial.filter = "b1=0; b2=0,g; a1=1,g,g^2";
  serial.checkpoint_every = 1000;
  auto a = enumerate_case(spec, serial);
  EnumOptions par = serial;
  par.jobs = 3;
  par.checkpoint_every = 7;
  auto b = enumerate_case(spec, par);
  CHECK(a.cells_done == b.cells_done);
  CHECK(a.cells_done == 2 * 2 * 3 * 24);
  CHECK(a.solutions == b.solutions);
  CHECK(a.cells_with_solutions == b.cells_with_solutions);
  CHECK(a.to_json()["survivors"] == b.to_json()["survivors"]);
}

TEST_CASE("checkpoint resume is exact") {
  auto spec = case_spec("deg-25");
  const auto path = (std::filesystem::temp_directory_path() / "sscurve_ckpt_test.json").string();
  std::filesystem::remove(path);
  EnumOptions o;
  o.filter = "b1=0; a0=1; a1=0,1";
  o.checkpoint_every = 10;
  const auto full = enumerate_case(spec, o);

  EnumOptions interrupted = o;
  interrupted.checkpoint = path;
  int chunks = 0;
  interrupted.on_progress = [&](const Progress&) {
    if (++chunks == 3) throw std::runtime_error("stop");
  };
  CHECK_THROWS_AS(enumerate_case(spec, interrupted), std::runtime_error);
  {
    std::ifstream is(path);
    nlohmann::json j;
    is >> j;
    CHECK(j["cursor"] == 30);
  }
  EnumOptions resume = o;
  resume.checkpoint = path;
  const auto resumed = enumerate_case(spec, resume);
  CHECK(resumed.cells_done == full.cells_done);
  CHECK(resumed.solutions == full.solutions);
  CHECK(resumed.to_json()["survivors"] == full.to_json()["survivors"]);
  CHECK(resumed.survivors.size() == 2 * 24 * 24);

  EnumOptions other = o;
  other.filter = "b1=1";
  other.checkpoint = path;
  CHECK_THROWS_AS(enumerate_case(spec, other), MathError);
  std::filesystem::remove(path);
}

TEST_CASE("filters, sampling and serialization") {
  auto spec = case_spec("n1ii-25");
  EnumOptions o;
  o.filter = "a1=0";  // a1 runs over units only
  const auto empty = enumerate_case(spec, o);
  CHECK(empty.cells_total == 0);
  CHECK(empty.cells_done == 0);
  CHECK(empty.survivors.empty());
  CHECK(select_cells(spec, "10..20").size() == 10);
  CHECK_THROWS_AS(select_cells(spec, "a9=1"), MathError);
  CHECK_THROWS_AS(select_cells(spec, "nonsense"), MathError);

  const auto s1 = sample_sweep(spec, 15, 42);
  const auto s2 = sample_sweep(spec, 15, 42);
  CHECK(s1.to_json()["survivors"] == s2.to_json()["survivors"]);
  CHECK(s1.solutions == s2.solutions);
  CHECK(s1.cells_done == 15);
  CHECK(*s1.seed == 42);
  CHECK_THROWS_AS(sample_sweep(spec, spec.iterations() + 1, 1), MathError);

  auto deg = case_spec("deg-25");
  EnumOptions d;
  d.filter = "b1=0; b2=0; a0=1; a1=0; a6=1";
  const auto r = enumerate_case(deg, d);
  REQUIRE(r.survivors.size() == 24);
  const auto back = EnumReport::from_json(r.to_json());
  CHECK(back.to_json() == r.to_json());
  const auto csv = r.to_csv(deg);
  CHECK(csv.rfind("case,cell,b1,b2,a0,a1,a2,a3,a4,a5,a6,a7,a8,a9,cubic\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 25);
}
