#include "kqtab/tables.hpp"

#include "kqtab/error.hpp"
#include "kqtab/numtheory.hpp"

namespace kqtab {

namespace {

void require_eps(int eps) {
  if (eps != 1 && eps != -1) throw Error(ErrorCode::InvalidSpec, "eps must be +1 or -1");
}

void require_nonneg(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::NegativeDegree, "degree " + std::to_string(n) + " is negative");
}

std::size_t residue(std::int64_t n) { return static_cast<std::size_t>(n % 8); }

// Row builders. Ranks and copy counts are (constant, coefficient of r).
RowTemplate zero_row() { return {}; }
RowTemplate row(int delta, int rank_const, int rank_r) { return {delta, rank_const, rank_r, {}, {}, {}}; }
RowTemplate with_z2(RowTemplate r, int c, int cr) {
  r.torsion.push_back({2, c, cr});
  return r;
}
RowTemplate with_w(RowTemplate r, int offset, std::uint64_t factor) {
  r.w_terms.push_back({offset, factor});
  return r;
}
RowTemplate with_t(RowTemplate r, std::uint64_t factor) {
  r.t_terms.push_back({factor});
  return r;
}

TableSet build_default_tables() {
  TableSet ts;
  const RowTemplate z0 = zero_row();

  ts[ColumnId::K] = {
      row(1, 0, 0),                          // dZ
      with_z2(row(0, 0, 1), 1, 0),           // Z^r + Z/2
      with_z2(z0, 0, 1),                     // (Z/2)^r
      with_w(with_z2(z0, -1, 1), 2, 2),      // (Z/2)^(r-1) + Z/2w_(4k+2)
      z0,                                    //
      row(0, 0, 1),                          // Z^r
      z0,                                    //
      with_w(z0, 4, 1),                      // Z/w_(4k+4)
  };
  ts[ColumnId::KQplus] = {
      with_z2(row(1, 0, 1), 1, 0),  // dZ + Z^r + Z/2
      with_z2(z0, 2, 1),            // (Z/2)^(r+2)
      with_z2(z0, 1, 1),            // (Z/2)^(r+1)
      with_w(z0, 2, 1),             // Z/w_(4k+2)
      row(0, 0, 1),                 // Z^r
      z0,
      z0,
      with_w(z0, 4, 1),
  };
  ts[ColumnId::KQminus] = {
      row(1, 0, 0),
      z0,
      row(0, 0, 1),
      with_w(with_z2(z0, -1, 1), 2, 2),
      with_z2(z0, 0, 1),
      with_z2(z0, 1, 0),
      row(0, 0, 1),
      with_w(z0, 4, 1),
  };
  ts[ColumnId::Vplus] = {
      row(0, 0, 2), with_z2(z0, 0, 2), with_z2(z0, 0, 2), z0, row(0, 0, 2), z0, z0, z0,
  };
  ts[ColumnId::Vminus] = {
      with_z2(row(0, 0, 1), 1, 0),
      z0,
      row(0, 0, 1),
      z0,
      row(0, 0, 1),
      with_z2(z0, 1, 0),
      with_z2(row(0, 0, 1), 1, 0),
      with_z2(z0, 1, 0),
  };
  ts[ColumnId::Kbar] = {
      z0,
      with_z2(row(0, 1, 0), 1, 0),
      with_z2(z0, 1, 0),
      with_w(z0, 2, 2),
      z0,
      row(0, 1, 0),
      z0,
      with_w(z0, 4, 1),
  };
  ts[ColumnId::KQbarPlus] = {
      with_z2(row(1, 1, 0), 1, 0),
      with_z2(z0, 3, 0),
      with_z2(z0, 2, 0),
      with_t(z0, 1),
      row(0, 1, 0),
      z0,
      z0,
      with_t(z0, 1),
  };
  ts[ColumnId::KQbarMinus] = {
      row(1, 0, 0),
      z0,
      row(0, 1, 0),
      with_t(z0, 2),
      with_z2(z0, 1, 0),
      with_z2(z0, 1, 0),
      row(0, 1, 0),
      with_t(z0, 1),
  };
  ts[ColumnId::VbarPlus] = {
      row(0, 2, 0), with_z2(z0, 2, 0), with_z2(z0, 2, 0), z0, row(0, 2, 0), z0, z0, z0,
  };
  ts[ColumnId::VbarMinus] = {
      with_z2(row(0, 1, 0), 1, 0),
      z0,
      row(0, 1, 0),
      z0,
      row(0, 1, 0),
      with_z2(z0, 1, 0),
      with_z2(row(0, 1, 0), 1, 0),
      with_z2(z0, 1, 0),
  };
  // Symplectic K-theory of F_q, from the fibre of psi^q - 1 on connective KSp
  // (psi^q acts on pi_{4j} by q^(2j)).
  ts[ColumnId::KQfqMinus] = {
      row(1, 0, 0), z0, z0, with_t(z0, 1), with_z2(z0, 1, 0), with_z2(z0, 2, 0), with_z2(z0, 1, 0), with_t(z0, 1),
  };
  return ts;
}

void require_regular(const FieldSpec& spec) {
  const auto verdict = is_two_regular(spec);
  if (!verdict.regular) {
    throw Error(ErrorCode::NotTwoRegular, format_field(spec) + " is not 2-regular: " + verdict.reason);
  }
}

RowParams field_params(std::int64_t n, const FieldSpec& spec) {
  require_nonneg(n);
  require_regular(spec);
  const std::int64_t r = real_embeddings(spec);
  if (r > kMaxTableR) throw Error(ErrorCode::BoundExceeded, "r = " + std::to_string(r) + " is too large to tabulate");
  return {n, r, a_param(spec), 0};
}

}  // namespace

std::uint64_t w(std::int64_t m, std::int64_t a) {
  if (m < 1) throw Error(ErrorCode::NonPositive, "w_m needs m >= 1");
  if (m % 2 != 0) throw Error(ErrorCode::OddM, "w_m is defined for even m only, got " + std::to_string(m));
  const unsigned e = static_cast<unsigned>(a) + nt::nu2(m);
  if (a < 2 || e > 62) throw Error(ErrorCode::BoundExceeded, "w exponent out of range");
  return std::uint64_t{1} << e;
}

std::uint64_t t(std::int64_t n, std::int64_t q) {
  if (n < 1) throw Error(ErrorCode::NonPositive, "t_n needs n >= 1");
  if (n % 2 == 0) throw Error(ErrorCode::EvenN, "t_n is defined for odd n only, got " + std::to_string(n));
  return nt::val2_q_power(q, (n + 1) / 2);
}

FgAb2 ko(std::int64_t n) {
  require_nonneg(n);
  switch (n % 8) {
    case 0:
    case 4: return FgAb2::z();
    case 1:
    case 2: return z2();
    default: return {};
  }
}

FgAb2 ku(std::int64_t n) {
  require_nonneg(n);
  return n % 2 == 0 ? FgAb2::z() : FgAb2{};
}

FgAb2 kq_top(std::int64_t n, int eps, Base base) {
  require_eps(eps);
  require_nonneg(n);
  if (eps == 1) return base == Base::R ? n_copies(2, ko(n)) : ko(n);
  return base == Base::R ? ku(n) : ko(n + 4);
}

FgAb2 k_fq(std::int64_t n, std::int64_t q) {
  require_nonneg(n);
  if (n == 0) return FgAb2::z();
  if (n % 2 == 1) return FgAb2::cyclic(nt::val2_q_power(q, (n + 1) / 2));
  return {};
}

std::string column_name(ColumnId id) {
  switch (id) {
    case ColumnId::K: return "K";
    case ColumnId::KQplus: return "KQ+";
    case ColumnId::KQminus: return "KQ-";
    case ColumnId::Vplus: return "V+";
    case ColumnId::Vminus: return "V-";
    case ColumnId::Kbar: return "Kbar";
    case ColumnId::KQbarPlus: return "KQbar+";
    case ColumnId::KQbarMinus: return "KQbar-";
    case ColumnId::VbarPlus: return "Vbar+";
    case ColumnId::VbarMinus: return "Vbar-";
    case ColumnId::KQfqMinus: return "KQFq-";
  }
  return "?";
}

const TableSet& default_tables() {
  static const TableSet tables = build_default_tables();
  return tables;
}

FgAb2 eval_row(const RowTemplate& row, const RowParams& p) {
  const std::int64_t k = p.n / 8;
  const std::int64_t rank = row.rank_const + row.rank_r * p.r + (p.n == 0 ? row.delta_rank : 0);
  if (rank < 0) throw Error(ErrorCode::InvalidSpec, "table row yields a negative rank");
  std::vector<std::uint64_t> torsion;
  for (const auto& term : row.torsion) {
    const std::int64_t copies = term.copies_const + term.copies_r * p.r;
    if (copies < 0) throw Error(ErrorCode::InvalidSpec, "table row yields a negative multiplicity");
    torsion.insert(torsion.end(), static_cast<std::size_t>(copies), term.order);
  }
  for (const auto& term : row.w_terms) torsion.push_back(term.factor * w(4 * k + term.offset, p.a));
  for (const auto& term : row.t_terms) {
    if (p.q == 0) throw Error(ErrorCode::InadmissibleQ, "this group depends on q, and none was given");
    torsion.push_back(term.factor * t(p.n, p.q));
  }
  return FgAb2(static_cast<unsigned>(rank), std::move(torsion));
}

FgAb2 kq_fq(std::int64_t n, int eps, std::int64_t q, const TableSet& tables) {
  require_eps(eps);
  require_nonneg(n);
  if (eps == 1) return complement(kq_bar(n, 1, q, tables), ko(n));
  return eval_row(tables[ColumnId::KQfqMinus][residue(n)], {n, 1, 2, q});
}

FgAb2 k_rf(std::int64_t n, const FieldSpec& spec, const TableSet& tables) {
  const auto p = field_params(n, spec);
  return eval_row(tables[ColumnId::K][residue(n)], p);
}

FgAb2 kq_rf(std::int64_t n, int eps, const FieldSpec& spec, const TableSet& tables) {
  require_eps(eps);
  const auto p = field_params(n, spec);
  return eval_row(tables[eps == 1 ? ColumnId::KQplus : ColumnId::KQminus][residue(n)], p);
}

FgAb2 v_rf(std::int64_t n, int eps, const FieldSpec& spec, const TableSet& tables) {
  require_eps(eps);
  const auto p = field_params(n, spec);
  return eval_row(tables[eps == 1 ? ColumnId::Vplus : ColumnId::Vminus][residue(n)], p);
}

FgAb2 u_rf(std::int64_t n, int eps, const FieldSpec& spec, const TableSet& tables) {
  require_eps(eps);
  if (n < 1) throw Error(ErrorCode::DegreeOutOfRange, "U_n is tabulated for n >= 1");
  return v_rf(n - 1, -eps, spec, tables);
}

FgAb2 kq_bar(std::int64_t n, int eps, std::int64_t q, const TableSet& tables) {
  require_eps(eps);
  require_nonneg(n);
  return eval_row(tables[eps == 1 ? ColumnId::KQbarPlus : ColumnId::KQbarMinus][residue(n)], {n, 1, 2, q});
}

FgAb2 v_bar(std::int64_t n, int eps, const TableSet& tables) {
  require_eps(eps);
  require_nonneg(n);
  return eval_row(tables[eps == 1 ? ColumnId::VbarPlus : ColumnId::VbarMinus][residue(n)], {n, 1, 2, 0});
}

FgAb2 k_bar(std::int64_t n, std::int64_t a, const TableSet& tables) {
  if (n < 1) throw Error(ErrorCode::DegreeOutOfRange, "K_n(Rbar_F) is tabulated for n >= 1");
  return eval_row(tables[ColumnId::Kbar][residue(n)], {n, 1, a, 0});
}

FgAb2 witt(const FieldSpec& spec) {
  const auto p = field_params(0, spec);
  return direct_sum(FgAb2::free(static_cast<unsigned>(p.r)), z2());
}

FgAb2 cowitt(const FieldSpec& spec) { return witt(spec); }

FgAb2 w1(const FieldSpec& spec) {
  require_regular(spec);
  return z2();
}

FgAb2 square_classes(const FieldSpec& spec) {
  const auto p = field_params(0, spec);
  return z2(static_cast<unsigned>(p.r + 1));
}

std::string hf_class_name(HfClass c) {
  switch (c) {
    case HfClass::MultiplyBy2: return "multiplication by 2";
    case HfClass::ImageOrder2: return "image of order 2";
    case HfClass::Zero: return "zero";
  }
  return "?";
}

std::string involution_class_name(InvolutionClass c) {
  return c == InvolutionClass::Identity ? "identity" : "minus identity";
}

HfClass hf_class(std::int64_t n, int eps) {
  require_eps(eps);
  if (n < 1) throw Error(ErrorCode::DegreeOutOfRange, "HF is classified for n >= 1");
  if (n % 4 == 3) return HfClass::MultiplyBy2;
  if (eps == 1 && (n % 8 == 1 || n % 8 == 2)) return HfClass::ImageOrder2;
  return HfClass::Zero;
}

HfClass fh_class(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::DegreeOutOfRange, "FH is classified for n >= 1");
  return n % 4 == 3 ? HfClass::MultiplyBy2 : HfClass::Zero;
}

InvolutionClass involution_class(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::DegreeOutOfRange, "the involution is classified for n >= 0");
  return (n == 0 || n % 4 == 3) ? InvolutionClass::Identity : InvolutionClass::MinusIdentity;
}

int forgetful_rank_image_index(int eps) {
  require_eps(eps);
  return eps == 1 ? 1 : 2;
}

std::map<std::int64_t, FgAb2> low_dim(const FieldSpec& spec, int eps, const TableSet& tables) {
  require_eps(eps);
  const auto p = field_params(0, spec);
  if (eps == -1) return {{-1, {}}, {0, FgAb2::z()}, {1, {}}};
  return {{-1, {}}, {0, kq_rf(0, 1, spec, tables)}, {1, z2(static_cast<unsigned>(p.r + 2))}};
}

std::string mutation_name(Mutation m) {
  switch (m) {
    case Mutation::AddZ2: return "add Z/2";
    case Mutation::AddZ: return "add Z";
    case Mutation::DoubleTorsion: return "double torsion";
  }
  return "?";
}

std::vector<RowId> published_rows() {
  std::vector<RowId> rows;
  for (auto col : {ColumnId::K, ColumnId::KQplus, ColumnId::KQminus, ColumnId::Vplus, ColumnId::Vminus, ColumnId::Kbar,
                   ColumnId::KQbarPlus, ColumnId::KQbarMinus, ColumnId::VbarPlus, ColumnId::VbarMinus}) {
    for (int i = 0; i < 8; ++i) rows.push_back({col, i});
  }
  return rows;
}

bool mutation_applies(const RowTemplate& row, Mutation m) {
  if (m != Mutation::DoubleTorsion) return true;
  return !row.torsion.empty() || !row.w_terms.empty() || !row.t_terms.empty();
}

TableSet perturbed(const TableSet& base, RowId id, Mutation m) {
  TableSet out = base;
  RowTemplate& row = out[id.column][static_cast<std::size_t>(id.residue)];
  switch (m) {
    case Mutation::AddZ2: row.torsion.push_back({2, 1, 0}); break;
    case Mutation::AddZ: row.rank_const += 1; break;
    case Mutation::DoubleTorsion:
      // Prefer terms that are nonzero for every r.
      if (!row.t_terms.empty()) {
        row.t_terms.front().factor *= 2;
      } else if (!row.w_terms.empty()) {
        row.w_terms.front().factor *= 2;
      } else if (!row.torsion.empty()) {
        auto& term = row.torsion.back();
        // Split off one copy and double it, so the total is nonzero for r >= 1.
        if (term.copies_const + term.copies_r >= 1) {
          term.copies_const -= 1;
          row.torsion.push_back({term.order * 2, 1, 0});
        } else {
          throw Error(ErrorCode::InvalidSpec, "row has no torsion to double");
        }
      } else {
        throw Error(ErrorCode::InvalidSpec, "row has no torsion to double");
      }
      break;
  }
  return out;
}

namespace {

struct TheoryEntry {
  Theory theory;
  const char* name;
};

constexpr TheoryEntry kTheories[] = {
    {Theory::K, "K"},
    {Theory::KQplus, "KQ+"},
    {Theory::KQminus, "KQ-"},
    {Theory::Vplus, "V+"},
    {Theory::Vminus, "V-"},
    {Theory::Uplus, "U+"},
    {Theory::Uminus, "U-"},
    {Theory::Witt, "W"},
    {Theory::CoWitt, "W'"},
    {Theory::W1, "W1"},
    {Theory::Kbar, "Kbar"},
    {Theory::KQbarPlus, "KQbar+"},
    {Theory::KQbarMinus, "KQbar-"},
    {Theory::VbarPlus, "Vbar+"},
    {Theory::VbarMinus, "Vbar-"},
    {Theory::KO, "KO"},
    {Theory::KU, "KU"},
    {Theory::KQtopRplus, "KQR+"},
    {Theory::KQtopRminus, "KQR-"},
    {Theory::KQtopCplus, "KQC+"},
    {Theory::KQtopCminus, "KQC-"},
    {Theory::Kfq, "KFq"},
    {Theory::KQfqPlus, "KQFq+"},
    {Theory::KQfqMinus, "KQFq-"},
};

}  // namespace

Theory parse_theory(const std::string& name) {
  for (const auto& e : kTheories) {
    if (name == e.name) return e.theory;
  }
  throw Error(ErrorCode::Parse, "unknown theory '" + name + "'");
}

std::string theory_name(Theory t) {
  for (const auto& e : kTheories) {
    if (e.theory == t) return e.name;
  }
  return "?";
}

std::vector<Theory> all_theories() {
  std::vector<Theory> out;
  for (const auto& e : kTheories) out.push_back(e.theory);
  return out;
}

bool theory_uses_q(Theory t) {
  return t == Theory::KQbarPlus || t == Theory::KQbarMinus || t == Theory::Kfq || t == Theory::KQfqPlus ||
         t == Theory::KQfqMinus;
}

bool theory_needs_regular(Theory t) {
  switch (t) {
    case Theory::K:
    case Theory::KQplus:
    case Theory::KQminus:
    case Theory::Vplus:
    case Theory::Vminus:
    case Theory::Uplus:
    case Theory::Uminus:
    case Theory::Witt:
    case Theory::CoWitt:
    case Theory::W1: return true;
    default: return false;
  }
}

std::int64_t resolve_q(const FieldSpec& spec, std::optional<std::int64_t> q) {
  if (!q) return find_q(spec);
  if (!is_admissible_q(*q, spec)) {
    throw Error(ErrorCode::InadmissibleQ, "q = " + std::to_string(*q) + " is not admissible for a_F = " +
                                              std::to_string(a_param(spec)));
  }
  return *q;
}

QueryResult evaluate(Theory theory, const QueryContext& ctx) {
  QueryResult res;
  res.q = resolve_q(ctx.spec, ctx.q);
  const std::int64_t n = ctx.n;
  if (n < 0 && !(n == -1 && (theory == Theory::KQplus || theory == Theory::KQminus))) {
    throw Error(ErrorCode::NegativeDegree, "degree " + std::to_string(n) + " is out of range for " + theory_name(theory));
  }
  const auto& spec = ctx.spec;
  switch (theory) {
    case Theory::K: res.group = k_rf(n, spec); break;
    case Theory::KQplus:
    case Theory::KQminus: {
      const int eps = theory == Theory::KQplus ? 1 : -1;
      res.group = n == -1 ? low_dim(spec, eps).at(-1) : kq_rf(n, eps, spec);
      break;
    }
    case Theory::Vplus: res.group = v_rf(n, 1, spec); break;
    case Theory::Vminus: res.group = v_rf(n, -1, spec); break;
    case Theory::Uplus: res.group = u_rf(n, 1, spec); break;
    case Theory::Uminus: res.group = u_rf(n, -1, spec); break;
    case Theory::Witt: res.group = witt(spec); break;
    case Theory::CoWitt: res.group = cowitt(spec); break;
    case Theory::W1: res.group = w1(spec); break;
    case Theory::Kbar:
      res.group = k_bar(n, a_param(spec));
      if (n % 8 == 7) res.notes.emplace_back(kNoteKbarTypo);
      break;
    case Theory::KQbarPlus: res.group = kq_bar(n, 1, res.q); break;
    case Theory::KQbarMinus: res.group = kq_bar(n, -1, res.q); break;
    case Theory::VbarPlus: res.group = v_bar(n, 1); break;
    case Theory::VbarMinus: res.group = v_bar(n, -1); break;
    case Theory::KO: res.group = ko(n); break;
    case Theory::KU: res.group = ku(n); break;
    case Theory::KQtopRplus: res.group = kq_top(n, 1, Base::R); break;
    case Theory::KQtopRminus: res.group = kq_top(n, -1, Base::R); break;
    case Theory::KQtopCplus: res.group = kq_top(n, 1, Base::C); break;
    case Theory::KQtopCminus: res.group = kq_top(n, -1, Base::C); break;
    case Theory::Kfq: res.group = k_fq(n, res.q); break;
    case Theory::KQfqPlus: res.group = kq_fq(n, 1, res.q); break;
    case Theory::KQfqMinus: res.group = kq_fq(n, -1, res.q); break;
  }
  if (theory_uses_q(theory)) res.notes.emplace_back(kNoteQAdmissible);
  if (is_generic(spec) && theory_needs_regular(theory)) res.notes.emplace_back(kNoteGeneric);
  return res;
}

}  // namespace kqtab
