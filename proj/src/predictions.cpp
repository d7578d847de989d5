#include "framelab/predictions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "framelab/error.hpp"
#include "framelab/harmonic_frame.hpp"
#include "framelab/number_theory.hpp"

namespace framelab {

std::vector<double> AnglePrediction::values() const {
  std::vector<double> out;
  for (const auto& a : angles) out.push_back(a.value);
  return out;
}

namespace {

PredictedAngle angle_from_square(const QuadraticSurd& sq) {
  const double v = sq.value();
  if (v < -1e-12) throw Error(ErrorKind::invalid_parameters, "negative angle square " + sq.to_string());
  return PredictedAngle{std::sqrt(std::max(v, 0.0)), sq, std::nullopt, std::nullopt};
}

PredictedAngle rational_angle(long num, long den) {
  return angle_from_square(QuadraticSurd{Rational(num, den), Rational(0), 1});
}

void fill_derived_from_prop(AnglePrediction& p) {
  if (p.angles.size() != 2) return;
  try {
    auto [t1, t2] = btf_multiplicities_from_angles(static_cast<std::size_t>(p.n), static_cast<std::size_t>(p.m),
                                                   p.angles[0].value, p.angles[1].value);
    p.angles[0].derived_multiplicity = t1;
    p.angles[1].derived_multiplicity = t2;
  } catch (const Error&) {
    // The parameters need not come from an existing set.
  }
}

void flag_disagreement(AnglePrediction& p) {
  for (const auto& a : p.angles) {
    if (a.stated_multiplicity && a.derived_multiplicity && *a.stated_multiplicity != *a.derived_multiplicity) {
      p.multiplicity_disagreement = true;
    }
  }
}

AnglePrediction equiangular(std::string tag, std::string source, long n, long m, long lambda) {
  AnglePrediction p;
  p.tag = std::move(tag);
  p.source = std::move(source);
  p.n = n;
  p.m = m;
  p.equiangular = true;
  auto a = rational_angle(m - lambda, m * m);
  a.stated_multiplicity = n - 1;
  a.derived_multiplicity = n - 1;
  p.angles.push_back(a);
  return p;
}

AnglePrediction divisible_like(std::string tag, long n, long m, long l, long lambda, long mu) {
  if (lambda == mu) {
    auto p = equiangular(tag, "difference set: equiangular at the Welch bound", n, m, lambda);
    p.params = {{"n", n}, {"m", m}, {"l", l}, {"lambda", lambda}, {"mu", mu}};
    return p;
  }
  AnglePrediction p;
  p.tag = std::move(tag);
  p.source = "divisible difference set angles over the annihilator of H";
  p.params = {{"n", n}, {"m", m}, {"l", l}, {"lambda", lambda}, {"mu", mu}};
  p.n = n;
  p.m = m;
  p.biangular = true;
  auto a1 = rational_angle(m - lambda + l * (lambda - mu), m * m);
  auto a2 = rational_angle(m - lambda, m * m);
  // Stated: tau_1 = n/l, tau_2 = n - n/l - 1. Counted over z != 0:
  // Ann(H) \ {0} carries alpha_1 and the rest alpha_2.
  a1.stated_multiplicity = n / l;
  a2.stated_multiplicity = n - n / l - 1;
  a1.derived_multiplicity = n / l - 1;
  a2.derived_multiplicity = n - n / l;
  p.angles = {a1, a2};
  flag_disagreement(p);
  if (p.multiplicity_disagreement) {
    p.note = "stated multiplicities count the trivial character of Ann(H); counted values exclude it";
  }
  return p;
}

bool is_pos(long x) { return x > 0; }

}  // namespace

AnglePrediction dds_angles(long n, long m, long l, long lambda, long mu) {
  if (!is_pos(n) || !is_pos(m) || !is_pos(l) || m > n || l > n || n % l != 0 || lambda < 0 || mu < 0) {
    throw Error(ErrorKind::invalid_parameters, "divisible difference set parameters out of range");
  }
  if (m * (m - 1) != lambda * (l - 1) + mu * (n - l)) {
    throw Error(ErrorKind::invalid_parameters, "m(m-1) != lambda(l-1) + mu(n-l)");
  }
  return divisible_like("dds", n, m, l, lambda, mu);
}

AnglePrediction rds_angles(long n, long m, long l, long mu) {
  if (!is_pos(n) || !is_pos(m) || !is_pos(l) || m > n || l > n || n % l != 0 || mu < 0) {
    throw Error(ErrorKind::invalid_parameters, "relative difference set parameters out of range");
  }
  if (m * (m - 1) != mu * (n - l)) throw Error(ErrorKind::invalid_parameters, "m(m-1) != mu(n-l)");
  if (l * mu > m) throw Error(ErrorKind::invalid_parameters, "l*mu exceeds m");
  if (l == 1) {
    auto p = equiangular("rds", "relative difference set with trivial H: equiangular", n, m, mu);
    p.params = {{"n", n}, {"m", m}, {"l", l}, {"mu", mu}};
    return p;
  }
  auto p = divisible_like("rds", n, m, l, 0, mu);
  p.source = "relative difference set angles sqrt(m - l mu)/m and 1/sqrt(m)";
  p.params = {{"n", n}, {"m", m}, {"l", l}, {"mu", mu}};
  return p;
}

AnglePrediction pds_angles(long n, long m, long lambda, long mu, bool zero_in_set) {
  if (!is_pos(n) || !is_pos(m) || m > n || lambda < 0 || mu < 0) {
    throw Error(ErrorKind::invalid_parameters, "partial difference set parameters out of range");
  }
  const long rhs = zero_in_set ? lambda * (m - 1) + mu * (n - m) : lambda * m + mu * (n - m - 1);
  if (m * (m - 1) != rhs) throw Error(ErrorKind::invalid_parameters, "partial difference set counting identity fails");
  if (lambda == mu) {
    auto p = equiangular("pds", "difference set: equiangular at the Welch bound", n, m, lambda);
    p.params = {{"n", n}, {"m", m}, {"lambda", lambda}, {"mu", mu}, {"zero_in_set", zero_in_set}};
    return p;
  }
  const long gamma = zero_in_set ? m - lambda : m - mu;
  const long diff = lambda - mu;
  const long disc = diff * diff + 4 * gamma;
  if (disc < 0) throw Error(ErrorKind::invalid_parameters, "negative inner radicand");
  AnglePrediction p;
  p.tag = "pds";
  p.source = zero_in_set ? "partial difference set angles with 0 in S" : "partial difference set angles with 0 not in S";
  p.params = {{"n", n}, {"m", m}, {"lambda", lambda}, {"mu", mu}, {"zero_in_set", zero_in_set}};
  p.n = n;
  p.m = m;
  p.biangular = true;
  // alpha^2 = (2 gamma + diff^2 +- diff sqrt(disc)) / (2 m^2)
  const Rational denom(2 * m * m);
  for (long sign : {-1L, 1L}) {
    const auto sq = QuadraticSurd::make(Rational(2 * gamma + diff * diff) / denom, Rational(sign * diff) / denom, disc);
    p.angles.push_back(angle_from_square(sq));
  }
  std::sort(p.angles.begin(), p.angles.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  fill_derived_from_prop(p);
  return p;
}

AnglePrediction gaussian_angles(long p, long m, long lambda, long mu) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::invalid_parameters, "Gaussian sets live in Z_p for an odd prime p");
  if (!is_pos(m) || m >= p || lambda < 0 || mu < 0) {
    throw Error(ErrorKind::invalid_parameters, "Gaussian parameters out of range");
  }
  if (2 * m * (m - 1) != (lambda + mu) * (p - 1)) {
    throw Error(ErrorKind::invalid_parameters, "m(m-1) != (lambda + mu)(p-1)/2");
  }
  if (lambda == mu) {
    auto out = equiangular("gaussian", "difference set: equiangular at the Welch bound", p, m, lambda);
    out.params = {{"p", p}, {"m", m}, {"lambda", lambda}, {"mu", mu}};
    return out;
  }
  if (p % 4 == 3) throw Error(ErrorKind::invalid_parameters, "p = 3 mod 4 forces lambda = mu");
  AnglePrediction out;
  out.tag = "gaussian";
  out.source = "Gaussian set angles from the half Gauss sum (1 +- sqrt(p))/2";
  out.params = {{"p", p}, {"m", m}, {"lambda", lambda}, {"mu", mu}};
  out.n = p;
  out.m = m;
  out.biangular = true;
  // alpha^2 = (m - lambda + (lambda - mu)(1 +- sqrt p)/2) / m^2
  const Rational m2(m * m);
  const Rational base = (Rational(m - lambda) + Rational(lambda - mu, 2)) / m2;
  for (long sign : {1L, -1L}) {
    auto a = angle_from_square(QuadraticSurd::make(base, Rational(sign * (lambda - mu), 2) / m2, p));
    a.stated_multiplicity = (p - 1) / 2;
    out.angles.push_back(a);
  }
  fill_derived_from_prop(out);
  flag_disagreement(out);
  return out;
}

AnglePrediction ndds_angles(const NestedChain& chain, long m) {
  const std::size_t t = chain.t();
  if (t < 1 || chain.sets.size() != t + 1) throw Error(ErrorKind::invalid_parameters, "malformed nested chain");
  const long n = static_cast<long>(chain.sets.back().order());
  if (t == 1) {
    auto p = equiangular("ndds", "single-layer chain is a difference set", n, m, chain.lambdas[0]);
    p.params = {{"n", n}, {"m", m}, {"t", 1}};
    return p;
  }
  const auto& lam = chain.lambdas;  // lam[j - 1] is lambda_j
  auto size = [&](std::size_t j) { return static_cast<long>(chain.sets[j].order()); };

  AnglePrediction p;
  p.tag = "ndds";
  p.source = "nested divisible chain: one angle per annihilator layer";
  p.params = {{"n", n}, {"m", m}, {"t", static_cast<long>(t)}};
  p.n = n;
  p.m = m;

  std::size_t s = 0;
  for (std::size_t j = 1; j < t; ++j) {
    if (lam[j - 1] != lam[j]) {
      s = j;
      break;
    }
  }
  if (s == 0) {
    auto e = equiangular("ndds", "all layers share one count: difference set", n, m, lam[0]);
    e.params = p.params;
    return e;
  }

  // m^2 |<f_x, f_y>|^2 = m - lambda_1 + sum_{j=1}^{r} (lambda_j - lambda_{j+1}) |A_j|
  // for z = y - x in Ann(A_r) \ Ann(A_{r+1}), which has n/|A_r| - n/|A_{r+1}| elements.
  std::map<long, long> layer_counts;
  long y = m - lam[0];
  for (std::size_t r = 0; r < t; ++r) {
    if (r > 0) y += (lam[r - 1] - lam[r]) * size(r);
    layer_counts[y] += n / size(r) - n / size(r + 1);
  }

  const long y1 = m - lam[0];
  const long y2 = y1 + (lam[s - 1] - lam[s]) * size(s);
  auto make = [&](long yy) {
    auto a = rational_angle(yy, m * m);
    a.derived_multiplicity = layer_counts.count(yy) ? layer_counts[yy] : 0;
    return a;
  };
  p.angles = {make(y1), make(y2)};

  bool biangular = true;
  for (std::size_t r = s + 1; r <= t - 1; ++r) {
    long with_s = 0;
    long without_s = 0;
    for (std::size_t j = s; j <= r; ++j) {
      const long term = (lam[j - 1] - lam[j]) * size(j);
      with_s += term;
      if (j > s) without_s += term;
    }
    if (with_s != 0 && without_s != 0) biangular = false;
  }
  p.biangular = biangular;
  if (!biangular) {
    for (const auto& [yy, count] : layer_counts) {
      if (yy != y1 && yy != y2) p.angles.push_back(make(yy));
    }
    p.note = "layer sums leave more than two distinct angles";
  }
  return p;
}

namespace {

std::optional<long> four_a_squared(long value) {
  if (value <= 0 || value % 4 != 0) return std::nullopt;
  const long sq = value / 4;
  const auto a = static_cast<long>(std::llround(std::sqrt(static_cast<double>(sq))));
  if (a * a == sq) return a;
  return std::nullopt;
}

}  // namespace

AnglePrediction quartic_family_angles(long p, bool with_zero) {
  AnglePrediction out;
  out.tag = "quartic";
  out.params = {{"p", p}, {"with_zero", with_zero}};
  out.n = p;
  if (p < 5 || !is_prime(p) || p % 8 != 5) {
    out.applicable = false;
    out.note = "p must be a prime = 5 mod 8";
    return out;
  }
  out.m = with_zero ? (p + 3) / 4 : (p - 1) / 4;
  auto is_odd = [](std::optional<long> a) { return a && *a % 2 == 1; };

  if (!with_zero && is_odd(four_a_squared(p - 1))) {
    auto e = equiangular("quartic", "p = 4a^2 + 1, a odd: R4 is a difference set", p, out.m, (p - 5) / 16);
    e.params = out.params;
    return e;
  }
  if (with_zero && is_odd(four_a_squared(p - 9))) {
    auto e = equiangular("quartic", "p = 4a^2 + 9, a odd: R4 with 0 is a difference set", p, out.m, (p + 3) / 16);
    e.params = out.params;
    return e;
  }

  long offset = 0;
  Rational denom;
  if (!with_zero && (four_a_squared(p - 9) || four_a_squared(p - 25))) {
    out.source = four_a_squared(p - 9) ? "p = 9 + 4a^2: R4 angles (1/(p-1)) sqrt(3p+1 +- 8 sqrt p)"
                                       : "p = 25 + 4a^2: R4 angles (1/(p-1)) sqrt(3p+1 +- 8 sqrt p)";
    offset = 1;
    denom = Rational((p - 1) * (p - 1));
  } else if (with_zero && (four_a_squared(p - 1) || four_a_squared(p - 49))) {
    out.source = four_a_squared(p - 1) ? "p = 1 + 4a^2: R4 with 0 angles (1/(p+3)) sqrt(3p+9 +- 8 sqrt p)"
                                       : "p = 49 + 4a^2: R4 with 0 angles (1/(p+3)) sqrt(3p+9 +- 8 sqrt p)";
    offset = 9;
    denom = Rational((p + 3) * (p + 3));
  } else {
    out.applicable = false;
    out.note = "p is in none of the quartic families";
    return out;
  }
  out.biangular = true;
  for (long sign : {-1L, 1L}) {
    auto a = angle_from_square(QuadraticSurd::make(Rational(3 * p + offset) / denom, Rational(8 * sign) / denom, p));
    a.stated_multiplicity = (p - 1) / 2;
    out.angles.push_back(a);
  }
  fill_derived_from_prop(out);
  flag_disagreement(out);
  return out;
}

// ---------------------------------------------------------------------------
// Tabulated families

namespace {

long ipow(long base, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

bool is_prime_power(long q) {
  if (q < 2) return false;
  long p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

bool is_mersenne_prime(long p) {
  if (!is_prime(p)) return false;
  const long next = p + 1;
  return (next & (next - 1)) == 0;
}

// Minimum of p_j^{a_j} + 1 over the prime-power factorization of c.
long min_prime_power_plus_one(long c) {
  long best = -1;
  for (long p = 2; p * p <= c; ++p) {
    if (c % p) continue;
    long pw = 1;
    while (c % p == 0) {
      c /= p;
      pw *= p;
    }
    best = best < 0 ? pw + 1 : std::min(best, pw + 1);
  }
  if (c > 1) best = best < 0 ? c + 1 : std::min(best, c + 1);
  return best;
}

struct Skip {
  std::string reason;
};

long exact_div(long a, long b) {
  if (b == 0 || a % b != 0) throw Skip{"parameters are not integral"};
  return a / b;
}

long get(const Sample& s, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end()) throw Error(ErrorKind::invalid_parameters, "sample is missing variable " + key);
  return it->second;
}

void require(bool ok, const char* reason) {
  if (!ok) throw Skip{reason};
}

struct RowDef {
  TableRow info;
  std::function<RowInstance(const Sample&)> instantiate;  // throws Skip when conditions fail
};

double sq(double x) { return std::sqrt(x); }

std::vector<RowDef> build_rows() {
  std::vector<RowDef> rows;
  auto add = [&](int table, int row, std::string family, std::string cond, std::vector<std::string> vars,
                 std::vector<Sample> samples, std::function<RowInstance(const Sample&)> fn) {
    rows.push_back({TableRow{table, row, std::move(family), std::move(cond), std::move(vars), std::move(samples)},
                    std::move(fn)});
  };

  // Divisible difference sets: (n, m, l, lambda, mu).
  add(2, 1, "(p^2(p+1), p(p+1), p^2, p, p+1)", "(ii)", {"p"}, {{{"p", 3}}, {{"p", 7}}}, [](const Sample& s) {
    const long p = get(s, "p");
    require(is_mersenne_prime(p), "p is not a Mersenne prime");
    return RowInstance{p * p * (p + 1), p * (p + 1), p * p, p, p + 1, 0.0, 1.0 / (p + 1)};
  });
  add(2, 2, "(p^2(p+1), p(2p-1), p^2, p(p-1), 3(p-1))", "(ii)", {"p"}, {{{"p", 7}}, {{"p", 31}}},
      [](const Sample& s) {
        const long p = get(s, "p");
        require(is_mersenne_prime(p), "p is not a Mersenne prime");
        return RowInstance{p * p * (p + 1), p * (2 * p - 1), p * p, p * (p - 1), 3 * (p - 1),
                           double(p - 2) / (2 * p - 1), 1.0 / (2 * p - 1)};
      });
  add(2, 3, "(4a, a+2, a, a-2, 2)", "a > 1 odd", {"a"}, {{{"a", 3}}, {{"a", 5}}}, [](const Sample& s) {
    const long a = get(s, "a");
    require(a > 1 && a % 2 == 1, "a must be odd and > 1");
    return RowInstance{4 * a, a + 2, a, a - 2, 2, double(a - 2) / (a + 2), 2.0 / (a + 2)};
  });
  add(2, 4, "(2q, q, 2, q-1, (q-1)/2)", "(iii), q = 1 mod 4", {"q"}, {{{"q", 5}}, {{"q", 9}}, {{"q", 13}}},
      [](const Sample& s) {
        const long q = get(s, "q");
        require(is_prime_power(q) && q % 4 == 1, "q must be a prime power = 1 mod 4");
        return RowInstance{2 * q, q, 2, q - 1, (q - 1) / 2, 1.0 / sq(double(q)), 1.0 / q};
      });
  add(2, 5, "(4*3^(2a), 2(3^(2a)-3^a), 3^(2a), d, d+1), d = 3^(2a) - 2*3^a", "a >= 1", {"a"},
      {{{"a", 1}}, {{"a", 2}}}, [](const Sample& s) {
        const long a = get(s, "a");
        require(a >= 1, "a must be positive");
        const long t = ipow(3, a);
        const long d = t * t - 2 * t;
        return RowInstance{4 * t * t, 2 * (t * t - t), t * t, d, d + 1, 0.0, 1.0 / (2.0 * (t - 1))};
      });
  add(2, 6,
      "(4wu^2, d, w, d - 4u^2 v + 4u^2 v(v-1)/(w-1), d - wu^2), d = 2wu^2 + wu - 2uv, e = 2wu + w - 2v",
      "(iv), (v) assumed given", {"u", "w", "v"},
      {{{"u", 1}, {"w", 7}, {"v", 3}}, {{"u", 1}, {"w", 13}, {"v", 4}}, {{"u", 2}, {"w", 7}, {"v", 3}}},
      [](const Sample& s) {
        const long u = get(s, "u");
        const long w = get(s, "w");
        const long v = get(s, "v");
        require(u >= 1 && w > 1 && v >= 1 && v < w, "need u >= 1 and 1 <= v < w");
        const long k = exact_div(v * (v - 1), w - 1);
        const long d = 2 * w * u * u + w * u - 2 * u * v;
        const long e = 2 * w * u + w - 2 * v;
        return RowInstance{4 * w * u * u, d, w, d - 4 * u * u * v + 4 * u * u * k, d - w * u * u,
                           double(std::abs(w - 2 * v)) / e, sq(4.0 * v * (w - v) / (w - 1)) / e};
      });
  add(2, 7, "(e q^(2b-a), e B, q^a, d B, e B / q), B = q^(2b-a-1), d = (q^(a-1)-1)/(q-1), e = (q^a-1)/(q-1)",
      "(iii), (vi) assumed given, a <= b", {"q", "a", "b"},
      {{{"q", 2}, {"a", 2}, {"b", 2}}, {{"q", 3}, {"a", 2}, {"b", 3}}}, [](const Sample& s) {
        const long q = get(s, "q");
        const long a = get(s, "a");
        const long b = get(s, "b");
        require(is_prime_power(q) && a >= 1 && a <= b, "need a prime power q and 1 <= a <= b");
        const long beta = ipow(q, 2 * b - a - 1);
        const long d = (ipow(q, a - 1) - 1) / (q - 1);
        const long e = (ipow(q, a) - 1) / (q - 1);
        return RowInstance{e * ipow(q, 2 * b - a), e * beta, ipow(q, a), d * beta, exact_div(e * beta, q), 0.0,
                           std::pow(double(q), double(a - b)) / e};
      });

  // Relative difference sets: (n, m, l, mu), lambda = 0.
  add(3, 1, "(p^(a+b), p^b, p^a, p^(b-a))", "(i), a <= b", {"p", "a", "b"},
      {{{"p", 2}, {"a", 1}, {"b", 1}}, {{"p", 3}, {"a", 1}, {"b", 2}}}, [](const Sample& s) {
        const long p = get(s, "p");
        const long a = get(s, "a");
        const long b = get(s, "b");
        require(is_prime(p) && a >= 1 && a <= b, "need a prime p and 1 <= a <= b");
        return RowInstance{ipow(p, a + b), ipow(p, b), ipow(p, a), 0, ipow(p, b - a), 0.0,
                           std::pow(double(p), -double(b) / 2.0)};
      });
  add(3, 2, "(8u^2, 4u^2, 2, 2u^2)", "(iv) assumed given", {"u"}, {{{"u", 1}}, {{"u", 2}}}, [](const Sample& s) {
    const long u = get(s, "u");
    require(u >= 1, "u must be positive");
    return RowInstance{8 * u * u, 4 * u * u, 2, 0, 2 * u * u, 0.0, 1.0 / (2.0 * u)};
  });
  add(3, 3, "(16u^2, 8u^2, 2, 4u^2)", "(iv) assumed given", {"u"}, {{{"u", 1}}, {{"u", 2}}}, [](const Sample& s) {
    const long u = get(s, "u");
    require(u >= 1, "u must be positive");
    return RowInstance{16 * u * u, 8 * u * u, 2, 0, 4 * u * u, 0.0, sq(2.0) / (4.0 * u)};
  });
  add(3, 4, "((q^(a+1)-1)/d, q^a, (q-1)/d, d q^(a-1))", "(iii), d | q-1", {"q", "a", "d"},
      {{{"q", 3}, {"a", 1}, {"d", 1}}, {{"q", 5}, {"a", 1}, {"d", 2}}, {{"q", 4}, {"a", 2}, {"d", 1}}},
      [](const Sample& s) {
        const long q = get(s, "q");
        const long a = get(s, "a");
        const long d = get(s, "d");
        require(is_prime_power(q) && a >= 1 && d >= 1 && (q - 1) % d == 0, "need a prime power q, a >= 1, d | q-1");
        return RowInstance{exact_div(ipow(q, a + 1) - 1, d), ipow(q, a), (q - 1) / d, 0, d * ipow(q, a - 1),
                           std::pow(double(q), -double(a + 1) / 2.0), std::pow(double(q), -double(a) / 2.0)};
      });
  add(3, 5, "((q^(a+1)-1)/d, q^a, 2, d q^(a-1)), d = (q-1)/2", "(iii), q and a even", {"q", "a"},
      {{{"q", 2}, {"a", 2}}, {{"q", 4}, {"a", 2}}}, [](const Sample& s) {
        const long q = get(s, "q");
        const long a = get(s, "a");
        require(is_prime_power(q) && q % 2 == 0 && a >= 2 && a % 2 == 0, "need q and a even");
        // d = (q-1)/2 is a half-integer here; divide by it exactly.
        return RowInstance{exact_div(2 * (ipow(q, a + 1) - 1), q - 1), ipow(q, a), 2, 0,
                           exact_div((q - 1) * ipow(q, a - 1), 2), std::pow(double(q), -double(a + 1) / 2.0),
                           std::pow(double(q), -double(a) / 2.0)};
      });

  // Regular partial difference sets: (n, m, lambda, mu), 0 not in S.
  add(4, 1, "(q, (q-1)/2, (q-5)/4, (q-1)/4)", "(iii), q = 1 mod 4", {"q"}, {{{"q", 5}}, {{"q", 9}}, {{"q", 13}}},
      [](const Sample& s) {
        const long q = get(s, "q");
        require(is_prime_power(q) && q % 4 == 1, "q must be a prime power = 1 mod 4");
        const double r = sq(double(q));
        return RowInstance{q, (q - 1) / 2, 0, (q - 5) / 4, (q - 1) / 4, 1.0 / (r + 1.0), 1.0 / (r - 1.0)};
      });
  add(4, 2, "(a^2, 2(a-1), a-2, 2)", "a > 1", {"a"}, {{{"a", 3}}, {{"a", 5}}}, [](const Sample& s) {
    const long a = get(s, "a");
    require(a > 1, "a must exceed 1");
    return RowInstance{a * a, 2 * (a - 1), 0, a - 2, 2, double(a - 2) / (2.0 * (a - 1)), 1.0 / (a - 1)};
  });
  add(4, 3, "(a^2, 3(a-1), a, 6)", "a > 1", {"a"}, {{{"a", 4}}, {{"a", 5}}}, [](const Sample& s) {
    const long a = get(s, "a");
    require(a > 1, "a must exceed 1");
    return RowInstance{a * a, 3 * (a - 1), 0, a, 6, std::abs(double(a - 3)) / (3.0 * (a - 1)), 1.0 / (a - 1)};
  });
  add(4, 4, "(c^2, b(c-1), c + b^2 - 3b, b^2 - b)", "(vii), b <= min p_j^a_j + 1", {"c", "b"},
      {{{"c", 5}, {"b", 2}}, {{"c", 9}, {"b", 3}}, {{"c", 15}, {"b", 3}}}, [](const Sample& s) {
        const long c = get(s, "c");
        const long b = get(s, "b");
        require(c >= 2 && b >= 1 && b <= min_prime_power_plus_one(c), "b exceeds min p_j^a_j + 1");
        return RowInstance{c * c, b * (c - 1), 0, c + b * b - 3 * b, b * b - b,
                           double(std::abs(c - b)) / (double(b) * (c - 1)), 1.0 / (c - 1)};
      });
  add(4, 5, "(d, (d-1)/2, (d-5)/4, (d-1)/4), d = 9 p^(4a)", "(i), p odd", {"p", "a"},
      {{{"p", 3}, {"a", 1}}, {{"p", 5}, {"a", 1}}}, [](const Sample& s) {
        const long p = get(s, "p");
        const long a = get(s, "a");
        require(is_prime(p) && p % 2 == 1 && a >= 1, "need an odd prime p and a >= 1");
        const long d = 9 * ipow(p, 4 * a);
        const double r = sq(double(d));
        return RowInstance{d, (d - 1) / 2, 0, (d - 5) / 4, (d - 1) / 4, 1.0 / (r + 1.0), 1.0 / (r - 1.0)};
      });
  add(4, 6, "(d^2, e(d+1), -d + e^2 + 3e, e^2 + e), d = 3p^(2a), e = (d-3)/2", "(i), p odd", {"p", "a"},
      {{{"p", 3}, {"a", 1}}, {{"p", 5}, {"a", 1}}}, [](const Sample& s) {
        const long p = get(s, "p");
        const long a = get(s, "a");
        require(is_prime(p) && p % 2 == 1 && a >= 1, "need an odd prime p and a >= 1");
        const long d = 3 * ipow(p, 2 * a);
        const long e = (d - 3) / 2;
        return RowInstance{d * d, e * (d + 1), 0, -d + e * e + 3 * e, e * e + e, 1.0 / (d + 1.0),
                           double(d - e) / (double(e) * (d + 1))};
      });
  add(4, 7, "(2^(3a), B e, 2^(a-1) + B(d-1), B d), B = 2^(2a-1) - 2^(a-1), d = 2^(a-1) - 1, e = 2^a - 1", "a >= 1",
      {"a"}, {{{"a", 2}}, {{"a", 3}}}, [](const Sample& s) {
        const long a = get(s, "a");
        require(a >= 1, "a must be positive");
        const long beta = ipow(2, 2 * a - 1) - ipow(2, a - 1);
        const long d = ipow(2, a - 1) - 1;
        const long e = ipow(2, a) - 1;
        return RowInstance{ipow(2, 3 * a), beta * e, 0, ipow(2, a - 1) + beta * (d - 1), beta * d,
                           1.0 / (double(e) * e), 1.0 / e};
      });
  add(4, 8, "(4^(2a), (4^a + 1) d, e^2 - 3e - 2, d e), d = 4^(a-1) - 1, e = 4^(a-1)", "a > 1 odd", {"a"},
      {{{"a", 3}}, {{"a", 5}}}, [](const Sample& s) {
        const long a = get(s, "a");
        require(a > 1 && a % 2 == 1, "a must be odd and > 1");
        const long d = ipow(4, a - 1) - 1;
        const long e = ipow(4, a - 1);
        const long f = ipow(4, a) + 1;
        return RowInstance{ipow(4, 2 * a), f * d, 0, e * e - 3 * e - 2, d * e, 1.0 / f,
                           double(3 * e + 1) / (double(d) * f)};
      });
  return rows;
}

const std::vector<RowDef>& row_defs() {
  static const std::vector<RowDef> rows = build_rows();
  return rows;
}

}  // namespace

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = [] {
    std::vector<TableRow> out;
    for (const auto& r : row_defs()) out.push_back(r.info);
    return out;
  }();
  return rows;
}

TableCheck table_row_check(int table, int row, const Sample& sample) {
  const auto& defs = row_defs();
  auto it = std::find_if(defs.begin(), defs.end(),
                         [&](const RowDef& d) { return d.info.table == table && d.info.row == row; });
  if (it == defs.end()) {
    throw Error(ErrorKind::invalid_parameters,
                "no table row " + std::to_string(table) + "." + std::to_string(row));
  }
  TableCheck check;
  check.table = table;
  check.row = row;
  check.sample = sample;
  try {
    check.instance = it->instantiate(sample);
  } catch (const Skip& s) {
    check.skipped = true;
    check.reason = s.reason;
    return check;
  }
  const auto& r = check.instance;
  try {
    AnglePrediction p;
    if (table == 2) {
      p = dds_angles(r.n, r.m, r.l, r.lambda, r.mu);
    } else if (table == 3) {
      p = rds_angles(r.n, r.m, r.l, r.mu);
    } else {
      p = pds_angles(r.n, r.m, r.lambda, r.mu, false);
    }
    check.predicted = p.values();
  } catch (const Error& e) {
    check.reason = std::string("predictor rejected the parameters: ") + e.what();
    return check;
  }
  std::sort(check.predicted.begin(), check.predicted.end());
  std::vector<double> expected{r.alpha1, r.alpha2};
  std::sort(expected.begin(), expected.end());
  if (check.predicted.size() != 2) {
    check.reason = "predictor returned " + std::to_string(check.predicted.size()) + " angle(s)";
    return check;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    check.max_error = std::max(check.max_error, std::abs(check.predicted[i] - expected[i]));
  }
  check.passed = check.max_error <= kTableTolerance;
  if (!check.passed) check.reason = "angles differ from the tabulated values";
  return check;
}

}  // namespace framelab
