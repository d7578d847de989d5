#include "framelab/harmonic_frame.hpp"

#include <algorithm>
#include <cmath>

#include "framelab/error.hpp"

namespace framelab {

FrameSpec::FrameSpec(AbelianGroup g, std::vector<Index> generators)
    : group_(std::move(g)), generators_(std::move(generators)) {
  if (generators_.empty()) throw Error(ErrorKind::invalid_subset, "a frame needs at least one generator");
  std::vector<char> seen(group_.order(), 0);
  for (Index x : generators_) {
    if (x >= group_.order()) throw Error(ErrorKind::invalid_element, "generator index out of range");
    if (seen[x]) throw Error(ErrorKind::invalid_subset, "duplicate generator " + group_.format(x));
    seen[x] = 1;
  }
}

FrameSpec FrameSpec::from_elements(AbelianGroup g, std::span<const Element> generators) {
  auto idx = to_indices(g, generators);
  return FrameSpec(std::move(g), std::move(idx));
}

std::vector<std::complex<double>> FrameSpec::vector(Index x) const {
  const double scale = 1.0 / std::sqrt(static_cast<double>(dimension()));
  std::vector<std::complex<double>> v;
  v.reserve(dimension());
  for (Index gj : generators_) v.push_back(scale * group_.character(gj, x));
  return v;
}

std::complex<double> frame_inner_product(const FrameSpec& f, Index x, Index y) {
  const Index z = f.group().subtract(x, y);
  return character_sum_over(f.group(), z, f.generators()) / static_cast<double>(f.dimension());
}

std::vector<std::complex<double>> generator_character_sums(const FrameSpec& f) {
  const auto& g = f.group();
  std::vector<std::complex<double>> sums(g.order());
  for (Index z = 0; z < g.order(); ++z) sums[z] = character_sum_over(g, z, f.generators());
  return sums;
}

std::vector<double> AngleProfile::values() const {
  std::vector<double> out;
  out.reserve(angles.size());
  for (const auto& a : angles) out.push_back(a.value);
  return out;
}

double AngleProfile::tight_frame_sum() const noexcept {
  double acc = 0.0;
  for (const auto& a : angles) acc += static_cast<double>(a.multiplicity) * a.value * a.value;
  return acc;
}

AngleProfile cluster_angles(std::vector<double> magnitudes, std::size_t n, std::size_t m,
                            double tolerance) {
  AngleProfile profile;
  profile.tolerance = tolerance;
  profile.n = n;
  profile.m = m;
  std::sort(magnitudes.begin(), magnitudes.end());
  std::size_t i = 0;
  while (i < magnitudes.size()) {
    std::size_t j = i + 1;
    while (j < magnitudes.size() && magnitudes[j] - magnitudes[j - 1] <= tolerance) ++j;
    double sum = 0.0;
    for (std::size_t k = i; k < j; ++k) sum += magnitudes[k];
    profile.angles.push_back({std::clamp(sum / static_cast<double>(j - i), 0.0, 1.0), j - i, {}});
    i = j;
  }
  for (std::size_t k = 1; k < profile.angles.size(); ++k) {
    if (profile.angles[k].value - profile.angles[k - 1].value < 10.0 * tolerance) profile.ambiguous = true;
  }
  return profile;
}

AngleProfile angle_profile(const FrameSpec& f, const AngleOptions& options) {
  const auto& g = f.group();
  const double inv_m = 1.0 / static_cast<double>(f.dimension());
  std::vector<double> magnitudes;
  magnitudes.reserve(g.order() - 1);
  for (Index z = 1; z < g.order(); ++z) {
    magnitudes.push_back(std::abs(character_sum_over(g, z, f.generators())) * inv_m);
  }
  auto profile = cluster_angles(std::move(magnitudes), g.order(), f.dimension(), options.tolerance);
  if (options.symbolic) {
    std::vector<double> squares;
    for (const auto& a : profile.angles) squares.push_back(a.value * a.value);
    for (auto& a : profile.angles) {
      a.square = recognize_angle_square(a.value * a.value, static_cast<long>(f.dimension()),
                                        g.exponent(), squares);
    }
  }
  return profile;
}

TightnessReport verify_tightness(const FrameSpec& f) {
  const std::size_t m = f.dimension();
  std::vector<std::complex<double>> op(m * m);
  for (Index x = 0; x < f.size(); ++x) {
    const auto v = f.vector(x);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) op[a * m + b] += v[a] * std::conj(v[b]);
  }
  TightnessReport report;
  report.frame_bound = static_cast<double>(f.size()) / static_cast<double>(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const double expected = (a == b) ? report.frame_bound : 0.0;
      report.max_deviation = std::max(report.max_deviation, std::abs(op[a * m + b] - expected));
    }
  }
  report.tight = report.max_deviation <= 1e-9;
  return report;
}

double welch_bound(std::size_t n, std::size_t m) {
  if (n < 2) throw Error(ErrorKind::domain, "Welch bound needs n >= 2");
  if (m < 1 || m > n) throw Error(ErrorKind::invalid_parameters, "Welch bound needs 1 <= m <= n");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return std::sqrt((nd - md) / (md * (nd - 1.0)));
}

Angularity classify_angularity(const AngleProfile& profile, bool tight) {
  Angularity out;
  out.d = profile.angularity();
  out.tight = tight;
  if (out.d == 1 && tight && profile.n >= 2) {
    out.etf = std::abs(profile.angles[0].value - welch_bound(profile.n, profile.m)) <= kEtfTolerance;
  }
  out.btf = out.d == 2 && tight;
  return out;
}

Angularity classify_angularity(const FrameSpec& f) {
  return classify_angularity(angle_profile(f), verify_tightness(f).tight);
}

std::pair<long, long> btf_multiplicities_from_angles(std::size_t n, std::size_t m, double alpha1,
                                                      double alpha2) {
  const double a1 = alpha1 * alpha1;
  const double a2 = alpha2 * alpha2;
  if (std::abs(a2 - a1) < 1e-12) throw Error(ErrorKind::inconsistent_angles, "the two angles coincide");
  const double w = welch_bound(n, m);
  const double tau1 = (static_cast<double>(n) - 1.0) / (a2 - a1) * (a2 - w * w);
  const double tau2 = static_cast<double>(n) - 1.0 - tau1;
  const double r1 = std::round(tau1);
  const double r2 = std::round(tau2);
  if (std::abs(tau1 - r1) > 1e-6 || std::abs(tau2 - r2) > 1e-6 || r1 < 0 || r2 < 0) {
    throw Error(ErrorKind::inconsistent_angles,
                "angles do not give integral multiplicities (tau1 = " + std::to_string(tau1) + ")");
  }
  return {static_cast<long>(r1), static_cast<long>(r2)};
}

namespace {

double hs_norm_sq(const std::vector<std::complex<double>>& entries) {
  double acc = 0.0;
  for (const auto& e : entries) acc += std::norm(e);
  return acc;
}

}  // namespace

ModulationOperator modulation_operator(const FrameSpec& f, Index xi) {
  const auto& g = f.group();
  const std::size_t m = f.dimension();
  const auto gens = f.generators();
  ModulationOperator op{xi, m, std::vector<std::complex<double>>(m * m), 0.0};
  const double value = static_cast<double>(f.size()) / static_cast<double>(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (g.subtract(gens[b], gens[a]) == xi) op.entries[a * m + b] = value;
  op.hs_norm_sq = hs_norm_sq(op.entries);
  return op;
}

ModulationOperator modulation_operator_direct(const FrameSpec& f, Index xi) {
  const auto& g = f.group();
  const std::size_t m = f.dimension();
  ModulationOperator op{xi, m, std::vector<std::complex<double>>(m * m), 0.0};
  for (Index x = 0; x < f.size(); ++x) {
    const auto v = f.vector(x);
    const auto w = g.character(xi, x);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) op.entries[a * m + b] += w * v[a] * std::conj(v[b]);
  }
  op.hs_norm_sq = hs_norm_sq(op.entries);
  return op;
}

ModulationReport verify_modulation_identities(const FrameSpec& f) {
  const std::size_t n = f.size();
  const std::size_t m = f.dimension();
  if (n * m * m > kModulationCapacity) {
    throw Error(ErrorKind::capacity, "modulation check limited to n*m^2 <= " +
                                         std::to_string(kModulationCapacity));
  }
  const auto& g = f.group();
  ModulationReport report;

  std::vector<ModulationOperator> ops;
  ops.reserve(n);
  for (Index xi = 0; xi < n; ++xi) {
    ops.push_back(modulation_operator(f, xi));
    const auto direct = modulation_operator_direct(f, xi);
    for (std::size_t k = 0; k < m * m; ++k) {
      report.max_entry_deviation =
          std::max(report.max_entry_deviation, std::abs(direct.entries[k] - ops.back().entries[k]));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::complex<double> hs{0.0, 0.0};
      for (std::size_t k = 0; k < m * m; ++k) hs += ops[i].entries[k] * std::conj(ops[j].entries[k]);
      report.max_hs_cross = std::max(report.max_hs_cross, std::abs(hs));
    }
  }

  // f_x f_x^* = (1/n) sum_xi rho_x(-xi) X_xi
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Index x = 0; x < n; ++x) {
    const auto v = f.vector(x);
    std::vector<std::complex<double>> rebuilt(m * m);
    for (Index xi = 0; xi < n; ++xi) {
      const auto w = g.character(x, g.negate(xi));
      for (std::size_t k = 0; k < m * m; ++k) rebuilt[k] += w * ops[xi].entries[k];
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const auto expected = v[a] * std::conj(v[b]);
        report.max_inversion_error =
            std::max(report.max_inversion_error, std::abs(rebuilt[a * m + b] * inv_n - expected));
      }
    }
  }

  // n^2 |<f_x, f_y>|^2 = sum_xi rho_{y-x}(xi) ||X_xi||^2
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  std::vector<std::vector<std::complex<double>>> vecs;
  vecs.reserve(n);
  for (Index x = 0; x < n; ++x) vecs.push_back(f.vector(x));
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      std::complex<double> ip{0.0, 0.0};
      for (std::size_t a = 0; a < m; ++a) ip += vecs[x][a] * std::conj(vecs[y][a]);
      const Index d = g.subtract(y, x);
      std::complex<double> rhs{0.0, 0.0};
      for (Index xi = 0; xi < n; ++xi) rhs += g.character(d, xi) * ops[xi].hs_norm_sq;
      report.max_angle_identity_error =
          std::max(report.max_angle_identity_error, std::abs(rhs - n2 * std::norm(ip)));
    }
  }

  constexpr double tol = 1e-8;
  report.passed = report.max_entry_deviation <= tol && report.max_hs_cross <= tol &&
                  report.max_inversion_error <= tol && report.max_angle_identity_error <= tol;
  return report;
}

bool is_real_frame(const FrameSpec& f) {
  const auto& g = f.group();
  return std::all_of(f.generators().begin(), f.generators().end(),
                     [&](Index x) { return g.add(x, x) == g.identity_index(); });
}

}  // namespace framelab
