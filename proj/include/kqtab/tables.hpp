#pragma once

// Closed-form group tables for rings of 2-integers in 2-regular totally real
// fields, the one-real-place ("barred") building blocks, topological and
// finite-field K-groups, and the endomorphism classifications.
//
// The R_F and barred tables are stored as data (RowTemplate per residue of n
// mod 8) in a TableSet. Every table function takes the TableSet it reads from,
// defaulting to the built-in one, so tests can perturb single rows.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kqtab/abgroup.hpp"
#include "kqtab/fields.hpp"

namespace kqtab {

// w_m = 2^(a + nu2(m)) for even m. Throws OddM, NonPositive.
std::uint64_t w(std::int64_t m, std::int64_t a);
// t_n = (q^((n+1)/2) - 1)_2 for odd n >= 1. Throws EvenN, NonPositive, EvenQ.
std::uint64_t t(std::int64_t n, std::int64_t q);

FgAb2 ko(std::int64_t n);  // NegativeDegree
FgAb2 ku(std::int64_t n);

enum class Base { R, C };
// (+,R): 2 ko(n); (+,C): ko(n); (-,R): ku(n); (-,C): ko(n+4).
FgAb2 kq_top(std::int64_t n, int eps, Base base);

FgAb2 k_fq(std::int64_t n, std::int64_t q);

// (Z/order)^(copies_const + copies_r * r)
struct TorsionTerm {
  std::uint64_t order = 2;
  int copies_const = 0;
  int copies_r = 0;
  friend bool operator==(const TorsionTerm&, const TorsionTerm&) = default;
};
// Z/(factor * w_(4k + offset)), k = floor(n / 8)
struct WTerm {
  int offset = 2;
  std::uint64_t factor = 1;
  friend bool operator==(const WTerm&, const WTerm&) = default;
};
// Z/(factor * t_n)
struct TTerm {
  std::uint64_t factor = 1;
  friend bool operator==(const TTerm&, const TTerm&) = default;
};

struct RowTemplate {
  int delta_rank = 0;  // extra Z summands present only at n = 0
  int rank_const = 0;
  int rank_r = 0;
  std::vector<TorsionTerm> torsion;
  std::vector<WTerm> w_terms;
  std::vector<TTerm> t_terms;
  friend bool operator==(const RowTemplate&, const RowTemplate&) = default;
};

using Column = std::array<RowTemplate, 8>;

enum class ColumnId {
  K,
  KQplus,
  KQminus,
  Vplus,
  Vminus,
  Kbar,
  KQbarPlus,
  KQbarMinus,
  VbarPlus,
  VbarMinus,
  KQfqMinus,
};
inline constexpr std::size_t kColumnCount = 11;

std::string column_name(ColumnId id);

struct TableSet {
  std::array<Column, kColumnCount> columns;

  Column& operator[](ColumnId id) { return columns[static_cast<std::size_t>(id)]; }
  const Column& operator[](ColumnId id) const { return columns[static_cast<std::size_t>(id)]; }
  friend bool operator==(const TableSet&, const TableSet&) = default;
};

const TableSet& default_tables();

struct RowParams {
  std::int64_t n = 0;
  std::int64_t r = 1;
  std::int64_t a = 2;
  std::int64_t q = 0;  // 0: no q available; rows with t-terms then throw InadmissibleQ
};

FgAb2 eval_row(const RowTemplate& row, const RowParams& p);

// Largest r the tables will expand into explicit summands.
inline constexpr std::int64_t kMaxTableR = std::int64_t{1} << 16;

FgAb2 kq_fq(std::int64_t n, int eps, std::int64_t q, const TableSet& tables = default_tables());

// R_F tables. Throw NotTwoRegular, NegativeDegree.
FgAb2 k_rf(std::int64_t n, const FieldSpec& spec, const TableSet& tables = default_tables());
FgAb2 kq_rf(std::int64_t n, int eps, const FieldSpec& spec, const TableSet& tables = default_tables());
FgAb2 v_rf(std::int64_t n, int eps, const FieldSpec& spec, const TableSet& tables = default_tables());
FgAb2 u_rf(std::int64_t n, int eps, const FieldSpec& spec, const TableSet& tables = default_tables());

// Barred tables.
FgAb2 kq_bar(std::int64_t n, int eps, std::int64_t q, const TableSet& tables = default_tables());
FgAb2 v_bar(std::int64_t n, int eps, const TableSet& tables = default_tables());
FgAb2 k_bar(std::int64_t n, std::int64_t a, const TableSet& tables = default_tables());  // n >= 1

FgAb2 witt(const FieldSpec& spec);
FgAb2 cowitt(const FieldSpec& spec);
FgAb2 w1(const FieldSpec& spec);
FgAb2 square_classes(const FieldSpec& spec);

enum class HfClass { MultiplyBy2, ImageOrder2, Zero };
enum class InvolutionClass { Identity, MinusIdentity };
std::string hf_class_name(HfClass c);
std::string involution_class_name(InvolutionClass c);

HfClass hf_class(std::int64_t n, int eps);  // DegreeOutOfRange for n < 1
HfClass fh_class(std::int64_t n);
InvolutionClass involution_class(std::int64_t n);  // DegreeOutOfRange for n < 0
int forgetful_rank_image_index(int eps);

// KQ_{-1}, KQ_0, KQ_1 of R_F.
std::map<std::int64_t, FgAb2> low_dim(const FieldSpec& spec, int eps, const TableSet& tables = default_tables());

// Row perturbations for fault injection.
enum class Mutation { AddZ2, AddZ, DoubleTorsion };
std::string mutation_name(Mutation m);
struct RowId {
  ColumnId column;
  int residue;
};
// Rows of the published tables (everything except the derived finite-field column).
std::vector<RowId> published_rows();
bool mutation_applies(const RowTemplate& row, Mutation m);
TableSet perturbed(const TableSet& base, RowId row, Mutation m);

// Query layer shared by the CLI.
enum class Theory {
  K,
  KQplus,
  KQminus,
  Vplus,
  Vminus,
  Uplus,
  Uminus,
  Witt,
  CoWitt,
  W1,
  Kbar,
  KQbarPlus,
  KQbarMinus,
  VbarPlus,
  VbarMinus,
  KO,
  KU,
  KQtopRplus,
  KQtopRminus,
  KQtopCplus,
  KQtopCminus,
  Kfq,
  KQfqPlus,
  KQfqMinus,
};

Theory parse_theory(const std::string& name);  // Parse
std::string theory_name(Theory t);
std::vector<Theory> all_theories();
bool theory_uses_q(Theory t);
bool theory_needs_regular(Theory t);

struct QueryContext {
  FieldSpec spec;
  std::optional<std::int64_t> q;
  std::int64_t n = 0;
};

struct QueryResult {
  FgAb2 group;
  std::int64_t q = 0;
  std::vector<std::string> notes;
};

// Resolves q (find_q when absent; InadmissibleQ when supplied but not
// admissible) and evaluates the table.
std::int64_t resolve_q(const FieldSpec& spec, std::optional<std::int64_t> q);
QueryResult evaluate(Theory theory, const QueryContext& ctx);

inline constexpr const char* kNoteQAdmissible =
    "q is congruence-admissible: q = +-1 mod 2^a_F and q != +-1 mod 2^(a_F+1); the Galois generation condition is not checked";
inline constexpr const char* kNoteKbarTypo =
    "K_n(Rbar_F) for n = 7 mod 8 is served as Z/w_(4k+4); the source list prints w_(4k+1), which is undefined for odd index";
inline constexpr const char* kNoteGeneric = "generic field: invariants are caller-supplied and unverified";

}  // namespace kqtab
