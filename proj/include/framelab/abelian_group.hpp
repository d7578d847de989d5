#pragma once

/**
 * @file abelian_group.hpp
 * @brief Finite abelian groups Z_{n1} + ... + Z_{nk} and their characters.
 *
 * Elements are coordinate tuples reduced modulo the factor orders. Every
 * element also has a dense index in [0, n); the index is the mixed-radix
 * value of the tuple with the first coordinate most significant, so index
 * order coincides with lexicographic order on tuples.
 *
 * Characters are labelled by elements: rho_x(y) = exp(2 pi i sum_j x_j y_j / n_j).
 * With N the group exponent, every character value is an N-th root of
 * unity, so the library carries an exact phase numerator k in [0, N) next
 * to the floating-point value.
 */

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace framelab {

using Index = std::uint32_t;

struct Element {
  std::vector<int> coords;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// rho_x(y) as an exact phase numerator/denominator plus its complex value.
struct CharacterValue {
  long numerator = 0;    ///< phase = numerator / denominator, in [0, 1)
  long denominator = 1;  ///< reduced; divides the group exponent
  std::complex<double> value{1.0, 0.0};
};

class AbelianGroup {
 public:
  /// Factors must be nonempty, each >= 2, with product at most 2^20.
  explicit AbelianGroup(std::vector<int> factors);

  /// Parses `Z<n1>[xZ<n2>...]`, e.g. `Z8`, `Z2xZ4`. Throws ErrorKind::parse.
  static AbelianGroup parse(std::string_view text);

  const std::vector<int>& factors() const noexcept;
  std::size_t rank() const noexcept;
  std::size_t order() const noexcept;
  long exponent() const noexcept;
  bool is_cyclic() const noexcept { return rank() == 1; }
  std::string name() const;

  Element element(Index i) const;
  Index index_of(const Element& x) const;  // throws invalid_element
  bool contains(const Element& x) const noexcept;
  std::vector<Element> elements() const;
  int coord(Index i, std::size_t j) const noexcept;

  Index identity_index() const noexcept { return 0; }
  Element identity() const;

  Index add(Index a, Index b) const noexcept;
  Index subtract(Index a, Index b) const noexcept;
  Index negate(Index a) const noexcept;
  Index multiply(Index a, long k) const noexcept;  ///< k * a
  Element add(const Element& a, const Element& b) const;
  Element negate(const Element& a) const;

  /// Order of the cyclic subgroup generated by a.
  std::size_t element_order(Index a) const noexcept;

  /// Phase numerator k in [0, N) with rho_x(y) = exp(2 pi i k / N).
  long phase(Index x, Index y) const noexcept;
  std::complex<double> root_of_unity(long k) const noexcept;
  std::complex<double> character(Index x, Index y) const noexcept {
    return root_of_unity(phase(x, y));
  }

  /// Bare integer for cyclic groups, `(a,b,...)` otherwise.
  Element parse_element(std::string_view text) const;
  std::string format(const Element& x) const;
  std::string format(Index i) const;

  /// Accepts `{...}` or a bare comma list of elements. Duplicates are kept;
  /// callers that need a set validate separately.
  std::vector<Index> parse_subset(std::string_view text) const;
  std::string format_subset(std::span<const Index> subset) const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors() == b.factors();
  }

 private:
  struct Tables;
  std::shared_ptr<const Tables> tables_;
};

std::vector<Index> to_indices(const AbelianGroup& g, std::span<const Element> elements);

CharacterValue character_eval(const AbelianGroup& g, const Element& x, const Element& y);

/// sum over xi in A of rho_z(xi).
std::complex<double> character_sum_over(const AbelianGroup& g, Index z,
                                        std::span<const Index> set);
std::complex<double> character_sum_over(const AbelianGroup& g, const Element& z,
                                        std::span<const Element> set);

/// n when x is the identity, 0 otherwise (up to rounding).
std::complex<double> full_group_sum(const AbelianGroup& g, const Element& x);

struct Subgroup {
  std::vector<Index> members;  // sorted ascending

  std::size_t order() const noexcept { return members.size(); }
  bool contains(Index i) const noexcept;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

Subgroup subgroup_generated(const AbelianGroup& g, std::span<const Index> gens);
Subgroup subgroup_generated(const AbelianGroup& g, std::span<const Element> gens);

/// True when the set contains the identity and is closed under addition.
bool is_subgroup(const AbelianGroup& g, std::span<const Index> set);

inline constexpr std::size_t kDefaultSubgroupOrderBound = 4096;
inline constexpr std::size_t kMaxSubgroupCount = 200000;

/// Every subgroup exactly once, ordered by (order, members). Throws
/// ErrorKind::capacity when the group order exceeds `max_order` or the
/// lattice is larger than kMaxSubgroupCount.
std::vector<Subgroup> all_subgroups(const AbelianGroup& g,
                                    std::size_t max_order = kDefaultSubgroupOrderBound);

/// Indices z with rho_z trivial on H. Throws invalid_subgroup if H is not one.
Subgroup annihilator(const AbelianGroup& g, const Subgroup& h);

/// One representative per isomorphism class, in invariant-factor form
/// (n1 | n2 | ...), sorted lexicographically by factor list.
std::vector<AbelianGroup> abelian_groups_of_order(std::size_t n);

/// Reads the subgroup lattice once so repeated subgroup queries are cheap.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(AbelianGroup g,
                           std::size_t max_order = kDefaultSubgroupOrderBound);

  const AbelianGroup& group() const noexcept { return group_; }
  const std::vector<Subgroup>& subgroups() const noexcept { return subgroups_; }
  const std::vector<char>& mask(std::size_t i) const { return masks_[i]; }

  /// True when subgroup `inner` is contained in subgroup `outer`.
  bool contains(std::size_t outer, std::size_t inner) const;

 private:
  AbelianGroup group_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::vector<char>> masks_;
};

}  // namespace framelab
