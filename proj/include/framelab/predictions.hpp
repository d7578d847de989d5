#pragma once

// Closed-form angle predictions for harmonic frames generated by the
// structured sets of the taxonomy, and the formula-consistency checks for the
// tabulated parameter families.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framelab/difference_structure.hpp"
#include "framelab/symbolic.hpp"

namespace framelab {

struct PredictedAngle {
  double value = 0.0;
  QuadraticSurd square;                  ///< exact alpha^2
  std::optional<long> stated_multiplicity;
  std::optional<long> derived_multiplicity;  ///< counted over z != 0

  friend bool operator==(const PredictedAngle&, const PredictedAngle&) = default;
};

struct AnglePrediction {
  std::string tag;     ///< dds, rds, pds, gaussian, ndds, quartic
  std::string source;  ///< which formula produced the angles
  std::vector<std::pair<std::string, long>> params;
  long n = 0;
  long m = 0;
  bool applicable = true;
  std::string note;
  bool equiangular = false;
  bool biangular = false;
  /// alpha_1 then alpha_2 in the labelling of the source formula; a single
  /// entry for the equiangular branch.
  std::vector<PredictedAngle> angles;
  /// A stated multiplicity differs from the counted one.
  bool multiplicity_disagreement = false;

  std::vector<double> values() const;

  friend bool operator==(const AnglePrediction&, const AnglePrediction&) = default;
};

/// Throws invalid_parameters unless m(m-1) = lambda(l-1) + mu(n-l) and l | n.
AnglePrediction dds_angles(long n, long m, long l, long lambda, long mu);
/// Throws invalid_parameters unless m(m-1) = mu(n-l), l | n and l mu <= m.
AnglePrediction rds_angles(long n, long m, long l, long mu);
/// Throws invalid_parameters on a failed counting identity or a negative radicand.
AnglePrediction pds_angles(long n, long m, long lambda, long mu, bool zero_in_set);
/// Throws invalid_parameters when p is not an odd prime, or p = 3 mod 4 with lambda != mu.
AnglePrediction gaussian_angles(long p, long m, long lambda, long mu);

/// Full angle list from a nested divisible chain: one value per annihilator
/// layer, merged, plus the two headline angles and the biangularity verdict.
AnglePrediction ndds_angles(const NestedChain& chain, long m);

/// Quartic residue families; applicable == false outside them.
AnglePrediction quartic_family_angles(long p, bool with_zero);

using Sample = std::map<std::string, long>;

struct TableRow {
  int table = 0;
  int row = 0;
  std::string family;      ///< parameter expressions as text
  std::string conditions;  ///< condition labels and side constraints
  std::vector<std::string> variables;
  std::vector<Sample> samples;
};

struct RowInstance {
  long n = 0;
  long m = 0;
  long l = 0;
  long lambda = 0;
  long mu = 0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

struct TableCheck {
  int table = 0;
  int row = 0;
  Sample sample;
  bool skipped = false;
  std::string reason;
  RowInstance instance;
  std::vector<double> predicted;  ///< from the matching predictor, ascending
  double max_error = 0.0;
  bool passed = false;
};

inline constexpr double kTableTolerance = 1e-10;

const std::vector<TableRow>& table_rows();

/// Instantiates the row at `sample`, runs the matching predictor and compares
/// its angles with the tabulated ones at kTableTolerance. Rows whose
/// conditions fail are skipped with a reason; unknown rows throw invalid_parameters.
TableCheck table_row_check(int table, int row, const Sample& sample);

}  // namespace framelab
