#pragma once

// Finitely generated abelian groups modulo odd torsion.
//
// Every group handled by this project is Z^rank plus a finite 2-group, and a
// finite abelian 2-group is determined by the multiset of its cyclic orders.
// FgAb2 keeps that multiset sorted ascending so that structural equality is
// isomorphism.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

namespace kqtab {

class FgAb2 {
 public:
  FgAb2() = default;
  // Throws InvalidSpec unless every torsion order is a power of two >= 2.
  FgAb2(unsigned rank, std::vector<std::uint64_t> torsion);

  static FgAb2 zero() { return {}; }
  static FgAb2 free(unsigned rank) { return FgAb2(rank, {}); }
  static FgAb2 cyclic(std::uint64_t order);  // Z/order; order 1 gives 0
  static FgAb2 z() { return free(1); }

  unsigned rank() const noexcept { return rank_; }
  const std::vector<std::uint64_t>& torsion() const noexcept { return torsion_; }

  bool is_zero() const noexcept { return rank_ == 0 && torsion_.empty(); }
  bool is_finite() const noexcept { return rank_ == 0; }
  bool is_torsion_free() const noexcept { return torsion_.empty(); }

  // log2 of the order of the torsion subgroup.
  unsigned torsion_log2_order() const noexcept;

  friend bool operator==(const FgAb2&, const FgAb2&) = default;

 private:
  unsigned rank_ = 0;
  std::vector<std::uint64_t> torsion_;
};

FgAb2 direct_sum(const FgAb2& a, const FgAb2& b);
FgAb2 direct_sum(std::initializer_list<FgAb2> parts);
FgAb2 n_copies(unsigned k, const FgAb2& g);

// Removes the summands of `part` from `whole`. Throws NotASummand when `part`
// is not a sub-multiset of the cyclic decomposition of `whole`.
FgAb2 complement(const FgAb2& whole, const FgAb2& part);

// Necessary conditions for 0 -> a -> b -> c -> 0.
bool ses_consistent(const FgAb2& a, const FgAb2& b, const FgAb2& c);

struct ExactWindow {
  std::vector<FgAb2> groups;
  // Flanked by zero groups on both sides.
  bool bounded = false;
};

// Necessary conditions for exactness. Bounded finite windows: alternating
// product of orders is 1. Bounded windows with free parts, and unbounded
// windows (assumed to span one full period): alternating rank sum is 0.
// Throws EmptyWindow.
bool exact_window_check(const ExactWindow& w);

std::string format_group(const FgAb2& g);
FgAb2 parse_group(const std::string& text);  // inverse of format_group

nlohmann::json group_to_json(const FgAb2& g);
FgAb2 group_from_json(const nlohmann::json& j);

// Torsion-group shorthand used throughout the tables.
inline FgAb2 z2(unsigned copies = 1) { return n_copies(copies, FgAb2::cyclic(2)); }

}  // namespace kqtab
