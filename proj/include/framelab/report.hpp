#pragma once

// JSON and CSV serialization. Every JSON document carries `schema: 1`;
// elements are plain integers for cyclic groups and coordinate arrays
// otherwise. Each to_json has a matching reader that rebuilds the value.

#include <string>
#include <vector>

#include "json.hpp"

#include "framelab/abelian_group.hpp"
#include "framelab/difference_structure.hpp"
#include "framelab/harmonic_frame.hpp"
#include "framelab/predictions.hpp"
#include "framelab/search.hpp"

namespace framelab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct FrameReport {
  std::string group;
  std::vector<Index> subset;
  std::size_t n = 0;
  std::size_t m = 0;
  AngleProfile profile;
  bool is_tight = false;
  bool is_etf = false;
  bool is_btf = false;
  double welch_bound = 0.0;
  bool real_frame = false;
  double max_tightness_deviation = 0.0;

  friend bool operator==(const FrameReport&, const FrameReport&) = default;
};

FrameReport make_frame_report(const FrameSpec& f, const AngleOptions& options = {});

Json element_to_json(const AbelianGroup& g, Index i);
Index element_from_json(const AbelianGroup& g, const Json& j);
Json subset_to_json(const AbelianGroup& g, const std::vector<Index>& subset);
std::vector<Index> subset_from_json(const AbelianGroup& g, const Json& j);

Json to_json(const AngleProfile& profile);
AngleProfile angle_profile_from_json(const Json& j);

Json to_json(const FrameReport& report);
FrameReport frame_report_from_json(const Json& j);

Json to_json(const AbelianGroup& g, const Classification& c);
Classification classification_from_json(const AbelianGroup& g, const Json& j);

Json to_json(const AnglePrediction& p);
AnglePrediction prediction_from_json(const Json& j);

Json to_json(const AbelianGroup& g, const SearchReport& report);
SearchReport search_report_from_json(const Json& j);

Json to_json(const TableCheck& check);

/// group, subset, n, m, class flags, lambda, mu, l, t, angles
std::string csv_header();
std::string csv_row(const AbelianGroup& g, const SearchRecord& record);
std::string csv_rows(const AbelianGroup& g, const SearchReport& report);

}  // namespace framelab
