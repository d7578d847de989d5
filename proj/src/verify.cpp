#include "framelab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <sstream>

#include "framelab/abelian_group.hpp"
#include "framelab/difference_structure.hpp"
#include "framelab/error.hpp"
#include "framelab/harmonic_frame.hpp"
#include "framelab/number_theory.hpp"
#include "framelab/predictions.hpp"
#include "framelab/search.hpp"

namespace framelab {

bool SuiteResult::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

using Checks = std::vector<CheckResult>;

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << args);
  return os.str();
}

double max_sorted_gap(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return INFINITY;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap;
}

std::string list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + str(v[i]);
  return out + "]";
}

FrameSpec frame_from(const VerifyOptions& o) {
  if (!o.group || !o.set) throw Error(ErrorKind::invalid_parameters, "this suite needs --group and --set");
  const auto g = AbelianGroup::parse(*o.group);
  return FrameSpec(g, g.parse_subset(*o.set));
}

Checks modulation(const VerifyOptions& o) {
  const auto f = frame_from(o);
  const auto r = verify_modulation_identities(f);
  constexpr double tol = 1e-8;
  return {
      {"closed form of X_xi matches the direct sum", r.max_entry_deviation <= tol, str("max deviation ", r.max_entry_deviation)},
      {"Hilbert-Schmidt orthogonality", r.max_hs_cross <= tol, str("max cross term ", r.max_hs_cross)},
      {"Fourier inversion of f_x f_x^*", r.max_inversion_error <= tol, str("max error ", r.max_inversion_error)},
      {"angles from modulation norms", r.max_angle_identity_error <= tol, str("max error ", r.max_angle_identity_error)},
  };
}

Checks tightness(const VerifyOptions& o) {
  const auto f = frame_from(o);
  const auto t = verify_tightness(f);
  const auto p = angle_profile(f);
  const double n = static_cast<double>(f.size());
  const double m = static_cast<double>(f.dimension());
  const double gap = std::abs(p.tight_frame_sum() - (n - m) / m);
  return {
      {"frame operator equals (n/m) I", t.tight, str("max deviation ", t.max_deviation)},
      {"sum of tau alpha^2 equals (n-m)/m", gap <= 1e-8, str("gap ", gap)},
  };
}

Checks exhaustion_order8(const VerifyOptions& o) {
  const std::vector<double> target{1.0 / 3.0, std::sqrt(5.0) / 3.0};
  const std::map<std::string, std::size_t> expected{{"Z2xZ2xZ2", 0}, {"Z2xZ4", 32}, {"Z8", 16}};
  Checks out;
  for (const auto& g : abelian_groups_of_order(8)) {
    SearchJob job(g);
    job.m = 3;
    job.jobs = o.jobs;
    job.filter.kind = FilterKind::angles;
    job.filter.target_angles = target;
    const auto r = enumerate_and_classify(job);
    const auto want = expected.at(g.name());
    out.push_back({g.name() + ": 3-subsets with angles {1/3, sqrt(5)/3}", r.matched == want,
                   str(r.matched, " of ", r.examined, ", expected ", want)});
    std::size_t nested = 0;
    std::size_t bidiff = 0;
    for (const auto& rec : r.records) {
      const auto& c = rec.classification;
      if (c.nested_divisible && c.nested_divisible->t() == 3 && c.nested_divisible->proper_divisible) ++nested;
      if (c.bidifference.holds) ++bidiff;
    }
    out.push_back({g.name() + ": every match a proper (8,3,3)-nested divisible set", nested == r.matched,
                   str(nested, " of ", r.matched)});
    out.push_back({g.name() + ": no match is a bidifference set", bidiff == 0, str(bidiff, " bidifference")});
  }
  return out;
}

Checks z6(const VerifyOptions&) {
  const AbelianGroup g({6});
  const std::vector<Index> s{0, 1, 3};
  const auto c = classify(g, s);
  const auto& d = c.divisible;
  const bool params_ok = d.proper && d.params && d.params->n == 6 && d.params->m == 3 && d.params->l == 2 &&
                         d.params->lambda == 2 && d.params->mu == 1 &&
                         d.params->relative_to == std::vector<Index>{0, 3};
  const auto profile = angle_profile(FrameSpec(g, s));
  const auto pred = dds_angles(6, 3, 2, 2, 1);
  const double gap = max_sorted_gap(profile.values(), pred.values());

  Checks out{{"{0,1,3} is a (6,3,2,2,1) divisible difference set relative to {0,3}", params_ok, ""},
             {"angles match the divisible prediction", gap <= 1e-10,
              str("measured ", list(profile.values()), ", gap ", gap)}};
  const bool mult_ok = profile.angles.size() == 2 && profile.angles[0].multiplicity == 3 &&
                       profile.angles[1].multiplicity == 2;
  out.push_back({"counted multiplicities 3 (1/3) and 2 (1/sqrt 3)", mult_ok, ""});
  if (profile.angles.size() == 2) {
    const auto [t1, t2] = btf_multiplicities_from_angles(6, 3, profile.angles[0].value, profile.angles[1].value);
    out.push_back({"multiplicities agree with the biangular counting formula",
                   t1 == static_cast<long>(profile.angles[0].multiplicity) &&
                       t2 == static_cast<long>(profile.angles[1].multiplicity),
                   str("formula gives ", t1, ", ", t2)});
  }
  std::string stated;
  for (const auto& a : pred.angles) {
    stated += str(" alpha=", a.value, " stated ", a.stated_multiplicity.value_or(-1), " counted ",
                  a.derived_multiplicity.value_or(-1), ";");
  }
  out.push_back({"stated tau_1 = n/l differs from the count and is flagged", pred.multiplicity_disagreement, stated});
  return out;
}

Checks z9(const VerifyOptions&) {
  const AbelianGroup g({9});
  const std::vector<Index> s{0, 1, 3, 4};
  const auto c = classify(g, s);
  const std::vector<Index> a{0, 1, 3, 6, 8};
  const BidifferenceParams* witness = nullptr;
  for (const auto& p : c.bidifference_assignments) {
    if (p.lambda == 2 && p.mu == 1 && p.relative_to == a) witness = &p;
  }
  const auto profile = angle_profile(FrameSpec(g, s));
  const bool stated = std::any_of(c.bidifference_assignments.begin(), c.bidifference_assignments.end(),
                                  [](const BidifferenceParams& p) {
                                    return p.n == 9 && p.m == 4 && p.l == 4 && p.lambda == 2 && p.mu == 1;
                                  });
  return {
      {"{0,1,3,4} is a bidifference set with lambda 2 on A = {0,1,3,6,8}, mu 1 off A", witness != nullptr,
       witness ? str("(", witness->n, ",", witness->m, ",", witness->l, ",", witness->lambda, ",", witness->mu, ")")
               : std::string()},
      {"the frame is 4-angular", profile.angularity() == 4, str("angles ", list(profile.values()))},
      {"parameters are literally (9,4,4,2,1)", stated,
       "|A| = 5 and m(m-1) = lambda(l-1) + mu(n-l) holds only for l = 5 (12 = 2*4 + 1*4); l = 4 gives 11"},
  };
}

Checks etf_ds(const VerifyOptions& o) {
  Checks out;
  for (std::size_t n = 2; n <= o.max_order; ++n) {
    for (const auto& g : abelian_groups_of_order(n)) {
      std::size_t examined = 0;
      std::size_t disagreements = 0;
      std::size_t etfs = 0;
      for (std::size_t m = 2; m <= n; ++m) {
        SearchJob job(g);
        job.m = m;
        job.jobs = o.jobs;
        job.max_records = 0;
        const auto r = enumerate_and_classify(job);
        examined += r.examined;
        disagreements += r.etf_ds_disagreements;
        if (auto it = r.class_counts.find("etf"); it != r.class_counts.end()) etfs += it->second;
      }
      out.push_back({g.name() + ": ETF exactly at difference sets", disagreements == 0,
                     str(examined, " subsets, ", etfs, " ETFs, ", disagreements, " disagreements")});
    }
  }
  return out;
}

Checks paley(const VerifyOptions&) {
  Checks out;
  for (long p : {13L, 17L, 29L, 37L, 41L}) {
    const auto r = paley_pds(p);
    const auto& pp = r.classification.partial;
    const bool ok = pp.proper && pp.params && pp.params->m == (p - 1) / 2 && pp.params->lambda == (p - 5) / 4 &&
                    pp.params->mu == (p - 1) / 4;
    out.push_back({str("p=", p, ": squares form a (p,(p-1)/2,(p-5)/4,(p-1)/4) partial difference set"), ok, ""});
    const auto profile = angle_profile(FrameSpec(r.group, r.subset));
    const double sp = std::sqrt(static_cast<double>(p));
    const double gap = max_sorted_gap(profile.values(), {1.0 / (sp + 1.0), 1.0 / (sp - 1.0)});
    out.push_back({str("p=", p, ": angles 1/(sqrt p +- 1)"), gap <= 1e-9, str("gap ", gap)});
  }
  for (long p : {7L, 11L, 19L, 23L}) {
    const auto r = paley_pds(p);
    const bool ds = r.classification.difference_set && r.classification.lambda == (p - 3) / 4;
    out.push_back({str("p=", p, ": squares form a (p,(p-1)/2,(p-3)/4) difference set"), ds, ""});
    const auto a = classify_angularity(FrameSpec(r.group, r.subset));
    out.push_back({str("p=", p, ": the frame is an ETF"), a.etf, ""});
  }
  return out;
}

Checks gauss(const VerifyOptions&) {
  Checks out;
  double worst_full = 0.0;
  std::map<std::string, double> worst_half;
  for (long p = 3; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    for (long a = 1; a < p; ++a) {
      worst_full = std::max(worst_full, std::abs(gauss_sum(a, p) - gauss_sum_closed_form(a, p)));
      const std::string key = str("p = ", p % 4, " mod 4, (a/p) = ", legendre(a, p));
      worst_half[key] = std::max(worst_half[key], std::abs(half_gauss_sum(a, p) - half_gauss_sum_closed_form(a, p)));
    }
  }
  out.push_back({"quadratic Gauss sums match the closed form, odd p <= 97", worst_full <= 1e-9,
                 str("max error ", worst_full)});
  for (const auto& [key, err] : worst_half) {
    out.push_back({"half Gauss sums, " + key, err <= 1e-9, str("max error ", err)});
  }
  out.push_back({"all four half-sum cases covered", worst_half.size() == 4, ""});
  return out;
}

Checks quartic(const VerifyOptions&) {
  Checks out;
  for (long p : {13L, 29L, 37L, 53L, 61L}) {
    QuarticSet q;
    try {
      q = quartic_gaussian_ds(p, false);
    } catch (const Error& e) {
      out.push_back({str("p=", p, ": structural checks"), false, e.what()});
      continue;
    }
    out.push_back({str("p=", p, ": lambda + mu = (p-5)/8, -1 in 4R4, -2 in 8R4"), q.lambda + q.mu == (p - 5) / 8,
                   str("lambda ", q.lambda, ", mu ", q.mu)});
    const auto& c = q.classification;
    const bool gaussian = c.difference_set || c.gaussian.holds;
    out.push_back({str("p=", p, ": R4 is a Gaussian difference set"), gaussian, ""});
    const auto profile = angle_profile(FrameSpec(AbelianGroup({static_cast<int>(p)}), q.subset));
    const auto pred = gaussian_angles(p, (p - 1) / 4, q.lambda, q.mu);
    const double gap = max_sorted_gap(profile.values(), pred.values());
    out.push_back({str("p=", p, ": angles match the Gaussian prediction"), gap <= 1e-8,
                   str("measured ", list(profile.values()), ", gap ", gap)});
    if (q.lambda != q.mu) {
      const bool mult = profile.angles.size() == 2 &&
                        std::all_of(profile.angles.begin(), profile.angles.end(), [&](const AngleEntry& e) {
                          return static_cast<long>(e.multiplicity) == (p - 1) / 2;
                        });
      out.push_back({str("p=", p, ": each angle has multiplicity (p-1)/2"), mult, ""});
    }
  }

  const auto c37 = quartic_special_cases(37);
  const auto q37 = quartic_gaussian_ds(37, false);
  out.push_back({"p=37 = 4*3^2+1: R4 is a (37,9,2) difference set",
                 c37.a_ds && c37.consistent && q37.classification.difference_set && q37.subset.size() == 9 &&
                     q37.classification.lambda == 2,
                 ""});

  const auto c29 = quartic_special_cases(29);
  const auto q29 = quartic_gaussian_ds(29, false);
  const auto counts = difference_counts(AbelianGroup({29}), q29.subset);
  const auto levels = counts.levels();
  const bool almost = c29.a_almost && c29.consistent && q29.classification.almost.proper &&
                      q29.subset.size() == 7 && levels.count(1) && levels.at(1).size() == 14;
  out.push_back({"p=29 = 25+4: R4 is a (29,7,1,14) almost difference set", almost, ""});
  const auto profile = angle_profile(FrameSpec(AbelianGroup({29}), q29.subset));
  const double s29 = std::sqrt(29.0);
  const std::vector<double> stated{std::sqrt(88 - 8 * s29) / 28, std::sqrt(88 + 8 * s29) / 28};
  const double gap = max_sorted_gap(profile.values(), stated);
  out.push_back({"p=29: angles (1/28) sqrt(88 +- 8 sqrt 29)", gap <= 1e-8,
                 str("measured ", list(profile.values()), ", gap ", gap)});
  return out;
}

Checks tables(const VerifyOptions&) {
  Checks out;
  for (const auto& row : table_rows()) {
    std::size_t passed = 0;
    std::string detail;
    for (const auto& sample : row.samples) {
      const auto check = table_row_check(row.table, row.row, sample);
      if (check.passed) ++passed;
      std::string s;
      for (const auto& [k, v] : sample) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
      detail += str(" {", s, "}: ", check.skipped ? "skipped (" + check.reason + ")" : (check.passed ? "ok" : "FAIL"),
                    ", err ", check.max_error, ";");
    }
    out.push_back({str("table ", row.table, " row ", row.row, ": at least two instances agree"),
                   passed >= 2 && passed == row.samples.size(), detail});
  }
  return out;
}

const std::map<std::string, std::function<Checks(const VerifyOptions&)>>& suites() {
  static const std::map<std::string, std::function<Checks(const VerifyOptions&)>> table{
      {"modulation", modulation}, {"tightness", tightness}, {"exhaustion-order8", exhaustion_order8},
      {"z6", z6},                 {"z9", z9},               {"etf-ds", etf_ds},
      {"paley", paley},           {"gauss", gauss},         {"quartic", quartic},
      {"tables", tables},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_verify_suite(const std::string& name, const VerifyOptions& options) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw Error(ErrorKind::invalid_parameters, "unknown verify suite '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r{name, it->second(options), 0.0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace framelab
