#include "framelab/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "framelab/error.hpp"

namespace framelab {

namespace {

void require_odd_prime(long p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::domain, std::to_string(p) + " is not an odd prime");
}

long reduce_mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

std::complex<double> unit_root(long k, long p) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduce_mod(k, p)) / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

std::optional<long> half_root_of(long value) {
  // a >= 1 with 4 a^2 = value
  if (value <= 0 || value % 4 != 0) return std::nullopt;
  const long sq = value / 4;
  const auto a = static_cast<long>(std::llround(std::sqrt(static_cast<double>(sq))));
  if (a * a == sq) return a;
  return std::nullopt;
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

long mod_pow(long base, long exp, long mod) {
  long long result = 1 % mod;
  long long b = reduce_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<long>(result);
}

int legendre(long a, long p) {
  require_odd_prime(p);
  if (reduce_mod(a, p) == 0) throw Error(ErrorKind::domain, "Legendre symbol undefined for a = 0 mod p");
  return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int quartic_symbol(long a, long p) {
  require_odd_prime(p);
  if (p % 4 != 1) throw Error(ErrorKind::domain, "quartic symbol needs p = 1 mod 4");
  if (legendre(a, p) != 1) throw Error(ErrorKind::domain, "quartic symbol restricted to quadratic residues");
  return mod_pow(a, (p - 1) / 4, p) == 1 ? 1 : -1;
}

std::vector<long> power_residues(long p, int s) {
  require_odd_prime(p);
  if (s < 1) throw Error(ErrorKind::domain, "residue power must be positive");
  std::set<long> out;
  for (long x = 1; x < p; ++x) out.insert(mod_pow(x, s, p));
  return {out.begin(), out.end()};
}

std::complex<double> gauss_sum(long a, long p) {
  require_odd_prime(p);
  std::complex<double> acc{0.0, 0.0};
  for (long x = 0; x < p; ++x) acc += unit_root(reduce_mod(a, p) * (x * x % p) % p, p);
  return acc;
}

std::complex<double> gauss_sum_closed_form(long a, long p) {
  const double root = std::sqrt(static_cast<double>(p)) * legendre(a, p);
  return p % 4 == 1 ? std::complex<double>{root, 0.0} : std::complex<double>{0.0, root};
}

std::complex<double> half_gauss_sum(long a, long p) {
  std::complex<double> acc{1.0, 0.0};
  for (long j : power_residues(p, 2)) acc += unit_root(reduce_mod(a, p) * j % p, p);
  return acc;
}

std::complex<double> half_gauss_sum_closed_form(long a, long p) {
  return (1.0 + gauss_sum_closed_form(a, p)) / 2.0;
}

ResidueSet paley_pds(long p) {
  require_odd_prime(p);
  AbelianGroup g({static_cast<int>(p)});
  auto qr = quadratic_residues(g);
  auto cls = classify(g, qr);
  return ResidueSet{std::move(g), std::move(qr), std::move(cls)};
}

QuarticCosets quartic_coset_decomposition(long p) {
  require_odd_prime(p);
  if (p % 4 != 1) throw Error(ErrorKind::domain, "quartic cosets need p = 1 mod 4");
  QuarticCosets out;
  out.p = p;
  out.multiplier = 2;
  if (legendre(2, p) == 1) {
    out.multiplier = 3;
    while (legendre(out.multiplier, p) == 1) ++out.multiplier;
  }
  const auto r4 = power_residues(p, 4);
  long factor = 1;
  for (auto& coset : out.cosets) {
    for (long x : r4) coset.push_back(factor * x % p);
    std::sort(coset.begin(), coset.end());
    factor = factor * out.multiplier % p;
  }
  return out;
}

QuarticSet quartic_gaussian_ds(long p, bool with_zero) {
  require_odd_prime(p);
  if (p % 8 != 5) throw Error(ErrorKind::domain, "quartic construction needs p = 8q + 5");
  const long q = (p - 5) / 8;
  const auto cosets = quartic_coset_decomposition(p);
  const auto& r4 = cosets.cosets[0];

  auto contains = [](const std::vector<long>& v, long x) { return std::binary_search(v.begin(), v.end(), x); };
  if (!contains(cosets.cosets[2], p - 1)) throw Error(ErrorKind::invalid_operation, "-1 is not in 4R4");
  if (!contains(cosets.cosets[3], p - 2)) throw Error(ErrorKind::invalid_operation, "-2 is not in 8R4");

  AbelianGroup g({static_cast<int>(p)});
  QuarticSet out;
  out.p = p;
  out.with_zero = with_zero;

  std::vector<Index> base(r4.begin(), r4.end());
  const auto base_counts = difference_counts(g, base);
  const auto r2 = power_residues(p, 2);
  const long lambda = base_counts.counts[static_cast<std::size_t>(r2.front())];
  const long mu = base_counts.counts[static_cast<std::size_t>(cosets.multiplier)];
  if (lambda + mu != q) throw Error(ErrorKind::invalid_operation, "lambda + mu differs from q");

  out.d_sizes.assign(static_cast<std::size_t>(p), 0);
  for (long x = 1; x < p; ++x) {
    const long x4 = mod_pow(x, 4, p);
    for (long y = 1; y < p; ++y) ++out.d_sizes[static_cast<std::size_t>(reduce_mod(x4 - mod_pow(y, 4, p), p))];
  }
  for (const auto& coset : cosets.cosets) {
    for (long a : coset) {
      if (out.d_sizes[static_cast<std::size_t>(a)] != out.d_sizes[static_cast<std::size_t>(coset.front())]) {
        throw Error(ErrorKind::invalid_operation, "|D(a)| is not constant on a quartic coset");
      }
    }
  }

  out.subset = base;
  if (with_zero) out.subset.insert(out.subset.begin(), 0);
  const auto counts = with_zero ? difference_counts(g, out.subset) : base_counts;
  out.lambda = lambda + (with_zero ? 1 : 0);
  out.mu = mu;
  for (long x = 1; x < p; ++x) {
    const long expected = contains(r2, x) ? out.lambda : out.mu;
    if (counts.counts[static_cast<std::size_t>(x)] != expected) {
      throw Error(ErrorKind::invalid_operation, "difference counts are not constant on R2 and its complement");
    }
  }
  out.classification = classify(counts);
  return out;
}

QuarticCases quartic_special_cases(long p) {
  require_odd_prime(p);
  if (p % 4 != 1) throw Error(ErrorKind::domain, "quartic special cases need p = 1 mod 4");
  QuarticCases out;
  out.p = p;
  auto odd = [](std::optional<long> a) { return a && *a % 2 == 1 ? a : std::nullopt; };
  out.a_ds = odd(half_root_of(p - 1));
  out.a_ds_zero = odd(half_root_of(p - 9));
  out.a_almost = half_root_of(p - 9);
  if (!out.a_almost) out.a_almost = half_root_of(p - 25);
  out.a_almost_zero = half_root_of(p - 1);
  if (!out.a_almost_zero) out.a_almost_zero = half_root_of(p - 49);

  if (p % 8 != 5) {
    if (out.a_ds || out.a_ds_zero || out.a_almost || out.a_almost_zero) {
      out.notes.push_back("p is not 5 mod 8; representations recorded without verification");
    }
    return out;
  }
  const auto plain = quartic_gaussian_ds(p, false);
  const auto zero = quartic_gaussian_ds(p, true);
  auto check = [&](bool claim, bool holds, const std::string& what) {
    if (!claim) return;
    out.notes.push_back(what + (holds ? " confirmed" : " NOT confirmed"));
    out.consistent = out.consistent && holds;
  };
  check(out.a_ds.has_value(), plain.classification.difference_set && plain.lambda == (p - 5) / 16,
        "R4 is a (p,(p-1)/4,(p-5)/16) difference set:");
  check(out.a_ds_zero.has_value(), zero.classification.difference_set && zero.lambda == (p + 3) / 16,
        "R4 with 0 is a (p,(p+3)/4,(p+3)/16) difference set:");
  check(out.a_almost.has_value(), plain.classification.almost.holds, "R4 is an almost difference set:");
  check(out.a_almost_zero.has_value(), zero.classification.almost.holds,
        "R4 with 0 is an almost difference set:");
  return out;
}

}  // namespace framelab
