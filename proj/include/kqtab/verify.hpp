#pragma once

// Cross-checks between the tables: splitting identities, exact-sequence
// necessary conditions, t_n = w_((n+1)/2), and assorted identities.
//
// Only isomorphism classes of groups are compared; no maps are modeled. A
// passing suite shows the tables are mutually consistent, nothing more.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kqtab/abgroup.hpp"
#include "kqtab/fields.hpp"
#include "kqtab/tables.hpp"

namespace kqtab {

struct Counterexample {
  std::int64_t n = 0;
  std::string params;
  std::string expected;
  std::string actual;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  std::string details;
  std::optional<Counterexample> counterexample;  // set iff !passed
};

inline constexpr const char* kReportHeader =
    "consistency of the group tables with each other; maps are not modeled";

// Identities (a)-(e). Throws NotTwoRegular, InadmissibleQ, DegreeOutOfRange (n_max < 8).
std::vector<CheckReport> check_splittings(const FieldSpec& spec, std::int64_t q, std::int64_t n_max,
                                          const TableSet& tables = default_tables());

// Mayer-Vietoris rank sums per 8-period, exact segments of the Mayer-Vietoris,
// vertical and horizontal sequences, the n = 3 mod 8 chase window, and the
// short exact sequences around K_1 and the coWitt group.
std::vector<CheckReport> check_les(const FieldSpec& spec, std::int64_t q, std::int64_t n_max = 64,
                                   const TableSet& tables = default_tables());

CheckReport check_t_w(const std::vector<std::int64_t>& a_range, std::int64_t n_max);

// Everything above plus low-dimensional agreement, V+ = 2r KO, periodicity,
// the U/V shift and the finite-field splitting. Sorted by name.
std::vector<CheckReport> run_all(const FieldSpec& spec, std::int64_t q, std::int64_t n_max,
                                 const TableSet& tables = default_tables());

bool all_passed(const std::vector<CheckReport>& reports);
nlohmann::json reports_to_json(const std::vector<CheckReport>& reports);

// A labelled term of a long exact sequence, listed in the direction of the maps.
struct SequenceTerm {
  std::string label;
  std::int64_t degree = 0;  // the n of the row the term belongs to
  FgAb2 group;
};

// Splits a long exact sequence into pieces between which the map is forced
// to be zero: out of or into a zero group, or from a finite group into a
// torsion-free one. Pieces touching either end of the list are dropped, since
// their continuation is unknown.
std::vector<std::vector<SequenceTerm>> forced_segments(const std::vector<SequenceTerm>& seq);

// Checks every forced segment with exact_window_check (bounded).
CheckReport check_sequence(const std::string& name, const std::vector<SequenceTerm>& seq, const std::string& params);

}  // namespace kqtab
