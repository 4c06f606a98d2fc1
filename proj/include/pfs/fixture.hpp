#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pfs/chi.hpp"
#include "pfs/elimination.hpp"
#include "pfs/errors.hpp"
#include "pfs/formula.hpp"
#include "pfs/jets.hpp"
#include "pfs/motive.hpp"
#include "pfs/stratification.hpp"

namespace pfs {

// Insertion-ordered so that reports are byte-stable.
using Json = nlohmann::ordered_json;

enum class FixtureKind { Formula, Stratification, Elimination, Chi, Jets };
std::string to_string(FixtureKind kind);

// [name] = [Y/H] for the cover of one stratum; counted as |Y/H(F_q)|.
struct QuotientSpec {
  std::size_t stratum = 0;
  Subgroup subgroup;
  std::string name;
};

struct BijectionSpec {
  Formula psi, phi1, phi2;
};

struct JetsSpec {
  std::vector<std::string> vars;
  std::vector<Poly> equations;
  std::uint32_t levels = 0;  // N
  std::uint32_t depth_cap = 0;
  bool geometric = false;
  std::optional<MotiveClass> smooth_class;
  std::uint32_t smooth_dim = 0;
};

// A validated fixture document. Everything referenced (groups, homs,
// conjugation domains, covers) is built and checked at load time.
struct FixtureDoc {
  int version = 1;
  FixtureKind kind = FixtureKind::Formula;
  std::string name;
  std::string sha256;  // of the document bytes
  std::vector<std::string> params;
  std::vector<std::uint32_t> fields;  // default sweep (field sizes)
  std::optional<std::vector<std::vector<Elem>>> s_points;
  std::optional<double> budget_bits;

  std::optional<Formula> formula;  // formula kind; optional reference formula for stratifications
  std::optional<BijectionSpec> bijection;
  std::optional<GaloisStratification> strat;
  std::optional<EliminationProblem> elimination;
  std::vector<QuotientSpec> quotients;
  std::optional<std::string> expected_class;
  std::optional<JetsSpec> jets;
};

// SchemaError (details list every violation found) or IoError.
FixtureDoc parse_fixture(const std::string& text, const std::string& origin = "<memory>");
FixtureDoc load_fixture(const std::string& path);

struct RunOptions {
  std::optional<std::vector<std::uint32_t>> fields;  // overrides the fixture sweep
  std::optional<double> budget_bits;
};

struct RunResult {
  Json report;
  bool pass = true;
};

// command: eval, bijection, stratify, eliminate, chi, jets. Semantic
// mismatches become failed verdicts; everything else throws.
RunResult run_fixture(const std::string& command, const FixtureDoc& doc, const RunOptions& opts = {});

Json error_json(const Error& e);
std::string sha256_hex(const std::string& bytes);

// Count table for a chi fixture: every quotient name counted by brute force
// at each admissible field and base point of the sweep.
CountTable quotient_counts(const FixtureDoc& doc, const Sweep& sweep);
std::vector<std::optional<QuotientClassData>> quotient_data(const FixtureDoc& doc);

}  // namespace pfs
