#pragma once

// Harmonic frames: f_x = m^{-1/2} (rho_{g_1}(x), ..., rho_{g_m}(x)) for x in G.
// The n x m synthesis matrix is never stored; by shift invariance
// <f_x, f_y> = (1/m) sum_j rho_{g_j}(x - y), so the angle profile needs only
// the n - 1 character sums s(z) = sum_j rho_{g_j}(z), z != 0.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "framelab/abelian_group.hpp"
#include "framelab/symbolic.hpp"

namespace framelab {

class FrameSpec {
 public:
  /// Generators must be distinct, 1 <= m <= n. Throws invalid_subset.
  FrameSpec(AbelianGroup g, std::vector<Index> generators);
  static FrameSpec from_elements(AbelianGroup g, std::span<const Element> generators);

  const AbelianGroup& group() const noexcept { return group_; }
  std::span<const Index> generators() const noexcept { return generators_; }
  std::size_t dimension() const noexcept { return generators_.size(); }
  std::size_t size() const noexcept { return group_.order(); }

  /// Materializes f_x.
  std::vector<std::complex<double>> vector(Index x) const;

 private:
  AbelianGroup group_;
  std::vector<Index> generators_;
};

std::complex<double> frame_inner_product(const FrameSpec& f, Index x, Index y);

/// s(z) = sum_j rho_{g_j}(z) for every z in index order.
std::vector<std::complex<double>> generator_character_sums(const FrameSpec& f);

struct AngleEntry {
  double value = 0.0;
  std::size_t multiplicity = 0;
  std::optional<QuadraticSurd> square;  ///< exact alpha^2 when recognized

  friend bool operator==(const AngleEntry&, const AngleEntry&) = default;
};

struct AngleProfile {
  std::vector<AngleEntry> angles;  // ascending
  double tolerance = 1e-7;
  bool ambiguous = false;  ///< two clusters closer than 10 * tolerance
  std::size_t n = 0;
  std::size_t m = 0;

  std::size_t angularity() const noexcept { return angles.size(); }
  std::vector<double> values() const;
  /// sum of tau * alpha^2; equals (n - m)/m for unit-norm tight frames.
  double tight_frame_sum() const noexcept;

  friend bool operator==(const AngleProfile&, const AngleProfile&) = default;
};

struct AngleOptions {
  double tolerance = 1e-7;
  bool symbolic = false;
};

/// Groups magnitudes (each in [0, 1]) by single linkage at `tolerance`.
AngleProfile cluster_angles(std::vector<double> magnitudes, std::size_t n, std::size_t m,
                            double tolerance);

AngleProfile angle_profile(const FrameSpec& f, const AngleOptions& options = {});

struct TightnessReport {
  bool tight = false;
  double frame_bound = 0.0;  ///< n / m
  double max_deviation = 0.0;
};

/// Builds sum_x f_x f_x^* and compares it with (n/m) I entrywise at 1e-9.
TightnessReport verify_tightness(const FrameSpec& f);

/// sqrt((n - m) / (m (n - 1))). Throws domain for n < 2.
double welch_bound(std::size_t n, std::size_t m);

struct Angularity {
  std::size_t d = 0;
  bool etf = false;
  bool btf = false;
  bool tight = false;
};

inline constexpr double kEtfTolerance = 1e-7;

Angularity classify_angularity(const AngleProfile& profile, bool tight);
Angularity classify_angularity(const FrameSpec& f);

/// (tau_1, tau_2) for a unit-norm tight frame with angles alpha_1, alpha_2.
/// Throws inconsistent_angles when the result is not a pair of nonnegative
/// integers to within 1e-6.
std::pair<long, long> btf_multiplicities_from_angles(std::size_t n, std::size_t m, double alpha1,
                                                      double alpha2);

struct ModulationOperator {
  Index xi = 0;
  std::size_t dim = 0;
  std::vector<std::complex<double>> entries;  // row-major dim x dim
  double hs_norm_sq = 0.0;

  const std::complex<double>& at(std::size_t a, std::size_t b) const { return entries[a * dim + b]; }
};

/// Closed form: entry (a, b) is n/m when g_b - g_a = xi, else 0.
ModulationOperator modulation_operator(const FrameSpec& f, Index xi);
/// sum_x rho_xi(x) f_x f_x^*, evaluated directly.
ModulationOperator modulation_operator_direct(const FrameSpec& f, Index xi);

inline constexpr std::size_t kModulationCapacity = std::size_t{1} << 16;  // bound on n * m^2

struct ModulationReport {
  double max_entry_deviation = 0.0;    ///< direct sum vs closed form
  double max_hs_cross = 0.0;           ///< |<X_xi, X_eta>_HS| for xi != eta
  double max_inversion_error = 0.0;    ///< Fourier inversion of f_x f_x^*
  double max_angle_identity_error = 0.0;
  bool passed = false;
};

/// Checks all modulation identities at 1e-8. Throws capacity when n * m^2
/// exceeds kModulationCapacity.
ModulationReport verify_modulation_identities(const FrameSpec& f);

/// True when every generator character is real, i.e. 2 g_j = 0 for all j.
bool is_real_frame(const FrameSpec& f);

}  // namespace framelab
