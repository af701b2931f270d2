#include "kqtab/abgroup.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "kqtab/error.hpp"

namespace kqtab {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::EvenQ: return "EvenQ";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotPrimitiveRoot: return "NotPrimitiveRoot";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::NotTwoRegular: return "NotTwoRegular";
    case ErrorCode::InadmissibleQ: return "InadmissibleQ";
    case ErrorCode::NegativeDegree: return "NegativeDegree";
    case ErrorCode::OddM: return "OddM";
    case ErrorCode::EvenN: return "EvenN";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NotASummand: return "NotASummand";
    case ErrorCode::TruncationMismatch: return "TruncationMismatch";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

FgAb2::FgAb2(unsigned rank, std::vector<std::uint64_t> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  for (auto t : torsion_) {
    if (t < 2 || !std::has_single_bit(t)) {
      throw Error(ErrorCode::InvalidSpec,
                  "torsion order " + std::to_string(t) + " is not a power of two >= 2");
    }
  }
  std::sort(torsion_.begin(), torsion_.end());
}

FgAb2 FgAb2::cyclic(std::uint64_t order) {
  if (order == 1) return {};
  return FgAb2(0, {order});
}

unsigned FgAb2::torsion_log2_order() const noexcept {
  unsigned e = 0;
  for (auto t : torsion_) e += static_cast<unsigned>(std::countr_zero(t));
  return e;
}

FgAb2 direct_sum(const FgAb2& a, const FgAb2& b) {
  std::vector<std::uint64_t> t = a.torsion();
  t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  return FgAb2(a.rank() + b.rank(), std::move(t));
}

FgAb2 direct_sum(std::initializer_list<FgAb2> parts) {
  FgAb2 acc;
  for (const auto& p : parts) acc = direct_sum(acc, p);
  return acc;
}

FgAb2 n_copies(unsigned k, const FgAb2& g) {
  std::vector<std::uint64_t> t;
  t.reserve(g.torsion().size() * k);
  for (unsigned i = 0; i < k; ++i) t.insert(t.end(), g.torsion().begin(), g.torsion().end());
  return FgAb2(g.rank() * k, std::move(t));
}

FgAb2 complement(const FgAb2& whole, const FgAb2& part) {
  if (part.rank() > whole.rank()) {
    throw Error(ErrorCode::NotASummand,
                format_group(part) + " is not a summand of " + format_group(whole));
  }
  std::vector<std::uint64_t> rest = whole.torsion();
  for (auto t : part.torsion()) {
    auto it = std::find(rest.begin(), rest.end(), t);
    if (it == rest.end()) {
      throw Error(ErrorCode::NotASummand,
                  format_group(part) + " is not a summand of " + format_group(whole));
    }
    rest.erase(it);
  }
  return FgAb2(whole.rank() - part.rank(), std::move(rest));
}

bool ses_consistent(const FgAb2& a, const FgAb2& b, const FgAb2& c) {
  if (b.rank() != a.rank() + c.rank()) return false;
  // Orders are powers of two, so divisibility is comparison of exponents.
  const unsigned ea = a.torsion_log2_order();
  const unsigned eb = b.torsion_log2_order();
  const unsigned ec = c.torsion_log2_order();
  return ea <= eb && eb <= ea + ec;
}

bool exact_window_check(const ExactWindow& w) {
  if (w.groups.empty()) throw Error(ErrorCode::EmptyWindow, "exact window has no groups");

  long rank_sum = 0;
  long order_exp_sum = 0;
  bool all_finite = true;
  for (std::size_t i = 0; i < w.groups.size(); ++i) {
    const long sign = (i % 2 == 0) ? 1 : -1;
    rank_sum += sign * static_cast<long>(w.groups[i].rank());
    order_exp_sum += sign * static_cast<long>(w.groups[i].torsion_log2_order());
    all_finite = all_finite && w.groups[i].is_finite();
  }
  if (w.bounded && all_finite) return order_exp_sum == 0;
  return rank_sum == 0;
}

std::string format_group(const FgAb2& g) {
  if (g.is_zero()) return "0";
  std::vector<std::string> parts;
  if (g.rank() == 1) {
    parts.emplace_back("Z");
  } else if (g.rank() > 1) {
    parts.push_back("Z^" + std::to_string(g.rank()));
  }
  const auto& t = g.torsion();
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    const std::string cyc = "Z/" + std::to_string(t[i]);
    if (j - i == 1) {
      parts.push_back(cyc);
    } else {
      parts.push_back("(" + cyc + ")^" + std::to_string(j - i));
    }
    i = j;
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

namespace {

std::uint64_t parse_uint(const std::string& s, const std::string& context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::Parse, "bad number '" + s + "' in '" + context + "'");
  }
  return std::stoull(s);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

FgAb2 parse_group(const std::string& text) {
  const std::string all = trim(text);
  if (all == "0") return {};
  FgAb2 acc;
  std::size_t pos = 0;
  while (pos <= all.size()) {
    auto next = all.find('+', pos);
    if (next == std::string::npos) next = all.size();
    std::string term = trim(all.substr(pos, next - pos));
    pos = next + 1;
    unsigned copies = 1;
    if (!term.empty() && term.front() == '(') {
      const auto close = term.find(")^");
      if (close == std::string::npos) throw Error(ErrorCode::Parse, "bad term '" + term + "'");
      copies = static_cast<unsigned>(parse_uint(term.substr(close + 2), text));
      term = term.substr(1, close - 1);
    }
    if (term == "Z") {
      acc = direct_sum(acc, n_copies(copies, FgAb2::z()));
    } else if (term.rfind("Z^", 0) == 0) {
      acc = direct_sum(acc, n_copies(copies, FgAb2::free(static_cast<unsigned>(parse_uint(term.substr(2), text)))));
    } else if (term.rfind("Z/", 0) == 0) {
      acc = direct_sum(acc, n_copies(copies, FgAb2(0, {parse_uint(term.substr(2), text)})));
    } else {
      throw Error(ErrorCode::Parse, "bad term '" + term + "' in '" + text + "'");
    }
    if (next == all.size()) break;
  }
  return acc;
}

nlohmann::json group_to_json(const FgAb2& g) {
  return {{"rank", g.rank()}, {"torsion", g.torsion()}};
}

FgAb2 group_from_json(const nlohmann::json& j) {
  return FgAb2(j.at("rank").get<unsigned>(), j.at("torsion").get<std::vector<std::uint64_t>>());
}

}  // namespace kqtab
