#pragma once

// Exhaustive enumeration of m-subsets of a group, each classified and
// angle-profiled. Subsets are visited in colex order, cut into contiguous
// blocks that worker threads take in any order; per-block results are merged
// in block order, so reports do not depend on the number of workers.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "framelab/abelian_group.hpp"
#include "framelab/difference_structure.hpp"
#include "framelab/harmonic_frame.hpp"

namespace framelab {

enum class FilterKind { none, btf, etf, class_name, angles };
enum class SearchMode { full, reduced };

struct SearchFilter {
  FilterKind kind = FilterKind::none;
  std::string class_name;            ///< for FilterKind::class_name, see class_flags()
  std::vector<double> target_angles;  ///< for FilterKind::angles, ascending
  double tolerance = 1e-7;
};

/// Parses `btf`, `etf`, `none`, `angles=a,b,...` or a class name.
SearchFilter parse_filter(const std::string& text);

struct SearchJob {
  explicit SearchJob(AbelianGroup g) : group(std::move(g)) {}

  AbelianGroup group;
  std::size_t m = 2;
  SearchFilter filter;
  SearchMode mode = SearchMode::full;
  std::size_t jobs = 1;
  std::size_t cap = 10'000'000;
  double tolerance = 1e-7;  ///< angle clustering
  std::size_t max_records = 100'000;
};

struct SearchRecord {
  std::vector<Index> subset;
  Classification classification;
  AngleProfile profile;
  Angularity angularity;
};

struct SearchReport {
  std::string group;
  std::size_t n = 0;
  std::size_t m = 0;
  SearchMode mode = SearchMode::full;
  std::size_t jobs = 1;
  std::size_t examined = 0;
  std::map<std::string, std::size_t> class_counts;      ///< over every subset examined
  std::map<std::string, std::size_t> angle_set_counts;  ///< over every subset examined
  std::size_t matched = 0;
  std::vector<SearchRecord> records;  ///< matches in colex order, at most max_records
  bool truncated = false;
  std::size_t matched_bidifference = 0;       ///< matches with a proper bidifference witness
  std::size_t matched_nested_proper = 0;      ///< matches with a proper nested divisible chain, t >= 2
  std::size_t etf_ds_disagreements = 0;       ///< ETF flag differs from difference-set flag
  std::size_t btf_without_bidifference = 0;   ///< BTFs with no bidifference witness
  double seconds = 0.0;
};

/// Names of the classes a classified subset belongs to (plus etf / btf).
std::vector<std::string> class_flags(const Classification& c, const Angularity& a);

/// Key used for angle_set_counts: angles with 9 decimals joined by ';'.
std::string angle_set_key(const AngleProfile& profile);

std::size_t binomial(std::size_t n, std::size_t k);  ///< saturates at SIZE_MAX

/// Throws capacity when the subset count exceeds job.cap and
/// invalid_parameters unless 2 <= m <= n.
SearchReport enumerate_and_classify(const SearchJob& job);

SearchReport find_btfs(const AbelianGroup& group, std::size_t m, std::size_t jobs = 1);

struct GroupMatch {
  std::string group;
  std::size_t matches = 0;
  std::size_t bidifference = 0;
  std::size_t nested_divisible_proper = 0;
};

inline constexpr std::size_t kMaxCrossGroupOrder = 64;

/// For every abelian group of order n, counts m-subsets (full mode) whose
/// angle set matches `target`. Throws invalid_parameters for n > 64.
std::vector<GroupMatch> cross_group_angle_match(std::size_t n, std::size_t m, std::vector<double> target,
                                                double tolerance = 1e-7, std::size_t jobs = 1);

}  // namespace framelab
