#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sscurve/families.hpp"

namespace sscurve {

/// Genus-4 superspeciality of V(Q, P) from scratch: P not a multiple of Q,
/// Hasse-Witt matrix zero, and V(Q, P) non-singular.
bool verify_survivor(const Poly& P, const Poly& Q, int p);

struct Survivor {
  long long cell = 0;
  std::vector<Code> b;
  std::vector<Code> a;  // every a_i, in a_names order
  std::string cubic;
};

struct CellResult {
  long long cell = 0;
  std::vector<Code> b;
  std::vector<Code> loop;
  /// Values of the unknowns (declared order of unknown_ring()) with all 16 coefficients zero.
  std::vector<std::vector<Code>> solutions;
  std::vector<Survivor> survivors;
  double t_mlt = 0, t_gbslv = 0, t_sing = 0;
};

/// Per-case precomputation shared read-only by all cells: the 16 Hasse-Witt
/// coefficients as polynomials in (loop coefficients, b, unknowns).
class CaseEngine {
 public:
  explicit CaseEngine(const CaseSpec& spec);

  const CaseSpec& spec() const { return spec_; }
  const RingPtr& unknown_ring() const { return unknowns_; }

  /// The 16 coefficient polynomials for one cell, in the unknown ring.
  std::vector<Poly> cell_system(long long cell) const;
  CellResult run_cell(long long cell) const;
  /// Full a vector from a cell's loop tuple and a solution tuple.
  std::vector<FieldElement> assemble_a(long long cell, const std::vector<Code>& solution) const;

 private:
  struct SysTerm {
    std::vector<std::uint8_t> param_exp;  // loop coefficients, then b
    Monomial unknown;
    Code c;
  };
  CaseSpec spec_;
  RingPtr unknowns_;
  std::vector<std::vector<SysTerm>> system_;
};

struct EnumReport {
  std::string case_id;
  int q = 0;
  int p = 0;
  long long cells_total = 0;  // cells selected for this run
  long long cells_done = 0;
  long long cells_with_solutions = 0;
  long long solutions = 0;
  std::vector<Survivor> survivors;
  double t_mlt_sum = 0, t_gbslv_sum = 0, t_sing_sum = 0, total_s = 0;
  std::string filter;
  std::optional<long long> sample;
  std::optional<std::uint64_t> seed;

  void add(const CellResult& r);
  /// Survivors sorted by cell, then by a.
  void canonicalize();
  nlohmann::json to_json() const;
  static EnumReport from_json(const nlohmann::json& j);
  /// One row per survivor: case,cell,b...,a...,cubic
  std::string to_csv(const CaseSpec& spec) const;
};

struct Progress {
  long long done = 0;
  long long total = 0;
  double elapsed_s = 0;
  /// Cells already done when this process started (resumed checkpoint).
  long long resumed = 0;
};

struct EnumOptions {
  /// ';'-separated clauses: "name=v1,v2" restricts a loop coefficient or b to
  /// the listed field values; "i..j" keeps cell indices i <= c < j.
  std::string filter;
  int jobs = 1;
  std::string checkpoint;
  int checkpoint_every = 256;
  std::function<void(const Progress&)> on_progress;
};

/// Cell indices of the case that pass the filter, ascending.
std::vector<long long> select_cells(const CaseSpec& spec, const std::string& filter);

EnumReport enumerate_case(const CaseSpec& spec, const EnumOptions& opts = {});

/// Uniform sample of n distinct cells (after filtering), reproducible from seed.
EnumReport sample_sweep(const CaseSpec& spec, long long n, std::uint64_t seed, const EnumOptions& opts = {});

}  // namespace sscurve
