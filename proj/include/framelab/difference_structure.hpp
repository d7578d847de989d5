#pragma once

// Difference multisets of generator subsets and the difference-set taxonomy:
// difference sets, bidifference sets and their divisible, relative, partial,
// Gaussian and almost specializations, and nested divisible chains.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "framelab/abelian_group.hpp"

namespace framelab {

struct DiffCounts {
  AbelianGroup group;
  std::vector<Index> subset;
  /// counts[x] = #{(a, b) : a != b, g_a - g_b = x}; counts[0] is unused and 0.
  std::vector<long> counts;

  /// Nonzero elements grouped by count value, ascending.
  std::map<long, std::vector<Index>> levels() const;
  std::vector<long> distinct_values() const;
};

/// Throws invalid_subset for duplicates or |S| < 2.
DiffCounts difference_counts(const AbelianGroup& g, std::span<const Index> subset);

/// Counts lambda on A \ {0} and mu on G \ A, with |A| = l.
struct BidifferenceParams {
  long n = 0;
  long m = 0;
  long l = 0;
  long lambda = 0;
  long mu = 0;
  std::vector<Index> relative_to;  ///< A (or H), sorted

  friend bool operator==(const BidifferenceParams&, const BidifferenceParams&) = default;
};

/// proper is false for the degenerate lambda == mu memberships of a difference set.
struct ClassMembership {
  bool holds = false;
  bool proper = false;
  std::optional<BidifferenceParams> params;

  friend bool operator==(const ClassMembership&, const ClassMembership&) = default;
};

struct NestedChain {
  std::vector<Subgroup> sets;  ///< A_0 = {0} ... A_t = G
  std::vector<long> lambdas;   ///< lambda_1 ... lambda_t
  /// No nested divisible chain with fewer layers exists.
  bool proper_divisible = false;
  /// t equals the number of distinct count values, the minimum for
  /// nested chains whose layers need not be subgroups.
  bool proper_general = false;

  std::size_t t() const noexcept { return lambdas.size(); }

  friend bool operator==(const NestedChain&, const NestedChain&) = default;
};

struct Classification {
  long n = 0;
  long m = 0;
  std::vector<long> count_values;  ///< distinct, ascending

  bool difference_set = false;
  long lambda = 0;  ///< valid when difference_set

  /// Both (lambda, mu) assignments when the counts take exactly two values.
  std::vector<BidifferenceParams> bidifference_assignments;

  ClassMembership bidifference;
  ClassMembership divisible;
  ClassMembership relative;
  ClassMembership partial;
  ClassMembership gaussian;
  ClassMembership almost;

  bool zero_in_set = false;
  bool reversible = false;
  bool regular = false;  ///< reversible and 0 not in S

  std::optional<NestedChain> nested_divisible;
  bool nested_search_complete = true;
  std::size_t nested_t_general = 0;  ///< number of distinct count values

  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(const AbelianGroup& g, std::span<const Index> subset);
Classification classify(const DiffCounts& counts);

std::vector<Index> reversal(const AbelianGroup& g, std::span<const Index> subset);

struct PdsToggle {
  std::vector<Index> subset;  ///< sorted
  long n = 0;
  long m = 0;
  long lambda = 0;
  long mu = 0;
};

/// Removes 0 from a reversible PDS containing it, or adjoins 0 to a regular
/// PDS; the result is reclassified. Throws invalid_operation when S is not a
/// reversible PDS or the reclassification disagrees with (n, m -+ 1, lambda -+ 2, mu).
PdsToggle pds_zero_toggle(const AbelianGroup& g, std::span<const Index> subset);

inline constexpr std::size_t kMaxChainNodes = 100000;

/// Minimal-t chain of subgroups {0} = A_0 < ... < A_t = G with the counts
/// constant on every layer; among minimal chains, the lexicographically
/// smallest sequence of member lists. Throws capacity when more than
/// kMaxChainNodes subgroups are explored.
std::optional<NestedChain> nested_divisible_chain(const DiffCounts& counts);
std::optional<NestedChain> nested_divisible_chain(const AbelianGroup& g, std::span<const Index> subset);

bool is_proper(const BidifferenceParams& params) noexcept;
/// Proper when adjacent lambdas differ and no shorter nested divisible chain
/// fits the same counts.
bool is_proper(const NestedChain& chain, const DiffCounts& counts);

/// Nonzero squares of Z_p as indices; empty unless g is cyclic of odd prime order.
std::vector<Index> quadratic_residues(const AbelianGroup& g);

}  // namespace framelab
