// kqcalc: command-line front end to the kqtab tables and checks.
//
// Exit codes: 0 success, 1 usage or parse error, 2 domain error,
// 3 verification failure.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kqtab/abgroup.hpp"
#include "kqtab/adams.hpp"
#include "kqtab/error.hpp"
#include "kqtab/fields.hpp"
#include "kqtab/tables.hpp"
#include "kqtab/verify.hpp"

using nlohmann::json;
using namespace kqtab;

namespace {

struct Options {
  std::string theory;
  std::int64_t n = 0;
  std::int64_t n_max = 16;
  std::string field = "Q";
  std::optional<std::int64_t> q;
  std::string theories = "K,KQ+,KQ-,V+,V-";
  bool json = false;
  bool oracle = false;
  bool dump_coeffs = false;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotTwoRegular:
    case ErrorCode::InadmissibleQ:
    case ErrorCode::BoundExceeded:
    case ErrorCode::Undecided:
    case ErrorCode::NotPrimitiveRoot: return 2;
    default: return 1;
  }
}

json field_json(const FieldSpec& spec) {
  json f{{"text", format_field(spec)}, {"r", real_embeddings(spec)}, {"a_F", a_param(spec)}};
  try {
    f["two_regular"] = is_two_regular(spec).regular;
  } catch (const Error& e) {
    f["two_regular"] = nullptr;
  }
  return f;
}

json envelope(const std::string& command, const FieldSpec& spec, std::optional<std::int64_t> q) {
  json j{{"query", {{"command", command}}}, {"field", field_json(spec)}, {"notes", json::array()}};
  j["q"] = q ? json(*q) : json(nullptr);
  if (q) j["notes"].push_back(kNoteQAdmissible);
  if (is_generic(spec)) j["notes"].push_back(kNoteGeneric);
  return j;
}

void add_note(json& env, const std::string& note) {
  for (const auto& n : env["notes"]) {
    if (n == note) return;
  }
  env["notes"].push_back(note);
}

json group_json(const FgAb2& g) {
  json j = group_to_json(g);
  j["text"] = format_group(g);
  return j;
}

void print_notes(const std::vector<std::string>& notes) {
  for (const auto& n : notes) std::cout << "note: " << n << "\n";
}

int cmd_group(const Options& o) {
  const FieldSpec spec = parse_field(o.field);
  const Theory th = parse_theory(o.theory);
  const QueryResult res = evaluate(th, {spec, o.q, o.n});
  if (o.json) {
    json env = envelope("group", spec, res.q);
    env["query"]["theory"] = theory_name(th);
    env["query"]["n"] = o.n;
    env["result"] = group_json(res.group);
    for (const auto& n : res.notes) add_note(env, n);
    std::cout << env.dump(2) << "\n";
  } else {
    std::cout << format_group(res.group) << "\n";
    print_notes(res.notes);
  }
  return 0;
}

std::vector<Theory> split_theories(const std::string& list) {
  std::vector<Theory> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_theory(item));
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "no theories given");
  return out;
}

int cmd_table(const Options& o) {
  const FieldSpec spec = parse_field(o.field);
  const auto theories = split_theories(o.theories);
  if (o.n_max < 0) throw Error(ErrorCode::NegativeDegree, "n-max must be >= 0");
  std::int64_t q = resolve_q(spec, o.q);
  std::vector<std::string> notes;
  std::vector<std::vector<FgAb2>> rows;
  for (std::int64_t n = 0; n <= o.n_max; ++n) {
    std::vector<FgAb2> row;
    for (auto th : theories) {
      // Witt-type groups carry no degree.
      auto res = evaluate(th, {spec, q, n});
      for (const auto& note : res.notes) {
        if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
      }
      row.push_back(res.group);
    }
    rows.push_back(std::move(row));
  }
  if (o.json) {
    json env = envelope("table", spec, q);
    env["query"]["n_max"] = o.n_max;
    env["results"] = json::array();
    for (std::size_t n = 0; n < rows.size(); ++n) {
      json groups = json::object();
      for (std::size_t i = 0; i < theories.size(); ++i) groups[theory_name(theories[i])] = group_json(rows[n][i]);
      env["results"].push_back({{"n", n}, {"groups", groups}});
    }
    for (const auto& n : notes) add_note(env, n);
    std::cout << env.dump(2) << "\n";
    return 0;
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"n"};
  for (auto th : theories) header.push_back(theory_name(th));
  cells.push_back(header);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    std::vector<std::string> line{std::to_string(n)};
    for (const auto& g : rows[n]) line.push_back(format_group(g));
    cells.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::cout << format_field(spec) << ", r=" << real_embeddings(spec) << ", a_F=" << a_param(spec) << ", q=" << q << "\n";
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      std::cout << line[i];
      if (i + 1 < line.size()) std::cout << std::string(width[i] - line[i].size() + 2, ' ');
    }
    std::cout << "\n";
  }
  print_notes(notes);
  return 0;
}

int cmd_regular(const Options& o) {
  const FieldSpec spec = parse_field(o.field);
  const RegularityVerdict verdict = is_two_regular(spec);
  std::optional<FieldInvariants> inv;
  if (o.oracle) inv = two_regular_oracle(spec);
  if (o.json) {
    json env = envelope("regular", spec, std::nullopt);
    json result{{"two_regular", verdict.regular}, {"reason", verdict.reason}};
    if (inv) {
      result["oracle"] = {{"two_regular", inv->two_regular},
                          {"dyadic_count", inv->dyadic_count ? json(*inv->dyadic_count) : json(nullptr)},
                          {"pic_odd", tri_name(inv->pic_odd)},
                          {"units_indep_signs", tri_name(inv->units_indep_signs)},
                          {"narrow_pic_odd", tri_name(inv->narrow_pic_odd)},
                          {"reasons", inv->reasons}};
      result["agree"] = inv->two_regular == verdict.regular;
    }
    env["result"] = result;
    std::cout << env.dump(2) << "\n";
    return 0;
  }
  auto word = [](bool r) { return r ? std::string("2-regular") : std::string("not 2-regular"); };
  if (inv) {
    std::cout << word(inv->two_regular) << ": " << inv->reasons.front() << "\n";
    std::cout << "criterion: " << word(verdict.regular) << " (" << verdict.reason << ")\n";
    std::cout << "dyadic primes: " << (inv->dyadic_count ? std::to_string(*inv->dyadic_count) : "unknown") << "\n";
    std::cout << "Pic(R_F) odd: " << tri_name(inv->pic_odd) << "\n";
    std::cout << "units of independent signs: " << tri_name(inv->units_indep_signs) << "\n";
    std::cout << "narrow Pic(R_F) odd: " << tri_name(inv->narrow_pic_odd) << "\n";
    for (std::size_t i = 1; i < inv->reasons.size(); ++i) std::cout << "also: " << inv->reasons[i] << "\n";
  } else {
    std::cout << word(verdict.regular) << ": " << verdict.reason << "\n";
  }
  return 0;
}

int cmd_find_q(const Options& o) {
  const FieldSpec spec = parse_field(o.field);
  const std::int64_t q = find_q(spec);
  if (o.json) {
    json env = envelope("find-q", spec, q);
    env["result"] = {{"q", q}, {"a_F", a_param(spec)}};
    std::cout << env.dump(2) << "\n";
  } else {
    std::cout << q << " (congruence-admissible for a_F = " << a_param(spec) << ")\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const FieldSpec spec = parse_field(o.field);
  const std::int64_t q = resolve_q(spec, o.q);
  const auto reports = run_all(spec, q, o.n_max);
  const bool ok = all_passed(reports);
  if (o.json) {
    json env = envelope("verify", spec, q);
    env["query"]["n_max"] = o.n_max;
    env["results"] = reports_to_json(reports);
    env["passed"] = ok;
    add_note(env, kReportHeader);
    std::cout << env.dump(2) << "\n";
  } else {
    std::cout << format_field(spec) << ", q=" << q << ", n_max=" << o.n_max << ": " << kReportHeader << "\n";
    for (const auto& r : reports) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.details << ")\n";
      if (r.counterexample) {
        const auto& c = *r.counterexample;
        std::cout << "     n=" << c.n << " [" << c.params << "] expected " << c.expected << ", got " << c.actual << "\n";
      }
    }
    std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
  }
  return ok ? 0 : 3;
}

int cmd_adams(const Options& o) {
  if (!o.q) throw Error(ErrorCode::Parse, "adams needs --q");
  const std::int64_t q = *o.q;
  const bool odd = check_obstruction(q);
  const TruncSeries b = bracket(q, static_cast<std::size_t>(2 * q));
  const mpz_class& top = b[static_cast<std::size_t>(2 * q)];
  if (o.json) {
    json result{{"q", q}, {"degree", 2 * q}, {"coefficient", top.get_str()}, {"odd", odd},
                {"constant_term", b[0].get_str()}};
    if (o.dump_coeffs) {
      json coeffs = json::array();
      for (const auto& c : b.coeffs()) coeffs.push_back(c.get_str());
      result["coeffs"] = coeffs;
    }
    json j{{"query", {{"command", "adams"}, {"q", q}}}, {"q", q}, {"result", result}, {"notes", json::array()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "q=" << q << ": coefficient of u^" << 2 * q << " is " << top.get_str() << " ("
              << (odd ? "odd" : "even") << "), " << (odd ? "obstruction holds" : "obstruction FAILS") << "\n";
    if (o.dump_coeffs) {
      for (std::size_t i = 0; i < b.coeffs().size(); ++i) std::cout << "u^" << i << ": " << b[i].get_str() << "\n";
    }
  }
  return odd ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kqcalc: 2-primary K-groups and hermitian K-groups of rings of 2-integers"};
  app.require_subcommand(1);
  Options o;

  auto add_field = [&o](CLI::App* sub) { sub->add_option("--field", o.field, "field: Q, Q(sqrt D), Q(zeta 2^B)+, Q(zeta M)+, generic r=R a=A regular"); };
  auto add_q = [&o](CLI::App* sub) { sub->add_option("--q", o.q, "auxiliary prime (default: smallest admissible)"); };
  auto add_json = [&o](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };

  auto* group = app.add_subcommand("group", "one group");
  group->add_option("--theory", o.theory, "K, KQ+, KQ-, V+, V-, U+, U-, W, W', W1, Kbar, KQbar+-, Vbar+-, KO, KU, KQR+-, KQC+-, KFq, KQFq+-")->required();
  group->add_option("--n", o.n, "degree")->required();
  add_field(group);
  add_q(group);
  add_json(group);

  auto* table = app.add_subcommand("table", "table of several theories");
  table->add_option("--n-max", o.n_max, "largest degree");
  table->add_option("--theories", o.theories, "comma-separated theory names");
  add_field(table);
  add_q(table);
  add_json(table);

  auto* regular = app.add_subcommand("regular", "2-regularity verdict");
  regular->add_flag("--oracle", o.oracle, "also run the independent oracle (Q and quadratic fields)");
  add_field(regular);
  add_json(regular);

  auto* findq = app.add_subcommand("find-q", "smallest admissible prime");
  add_field(findq);
  add_json(findq);

  auto* verify = app.add_subcommand("verify", "run the consistency checks");
  o.n_max = 64;
  verify->add_option("--n-max", o.n_max, "largest degree (default 64)");
  add_field(verify);
  add_q(verify);
  add_json(verify);

  auto* adams = app.add_subcommand("adams", "odd coefficient of the Adams bracket");
  adams->add_option("--q", o.q, "odd q >= 3")->required();
  adams->add_flag("--dump-coeffs", o.dump_coeffs, "print every coefficient");
  add_json(adams);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (table->parsed() && table->count("--n-max") == 0) o.n_max = 16;

  try {
    if (group->parsed()) return cmd_group(o);
    if (table->parsed()) return cmd_table(o);
    if (regular->parsed()) return cmd_regular(o);
    if (findq->parsed()) return cmd_find_q(o);
    if (verify->parsed()) return cmd_verify(o);
    if (adams->parsed()) return cmd_adams(o);
  } catch (const Error& e) {
    if (o.json) std::cout << json{{"error", {{"code", error_name(e.code())}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
