#include "framelab/symbolic.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "framelab/error.hpp"

namespace framelab {

namespace {

__extension__ typedef __int128 i128;

Rational reduce(i128 n, i128 d) {
  if (d == 0) throw Error(ErrorKind::domain, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n;
  i128 b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
  if (n > lim || -n > lim || d > lim) throw Error(ErrorKind::capacity, "rational overflow");
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (d == 0) throw Error(ErrorKind::domain, "rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorKind::domain, "division by zero");
  return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t squarefree_part(std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::domain, "squarefree part of a nonpositive integer");
  std::int64_t out = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return out * n;
}

QuadraticSurd QuadraticSurd::make(Rational a, Rational b, std::int64_t radicand) {
  if (radicand < 0) throw Error(ErrorKind::domain, "negative radicand");
  if (radicand == 0 || b.is_zero()) return {a, Rational(0), 1};
  const std::int64_t s = squarefree_part(radicand);
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(radicand / s))));
  if (root * root * s != radicand) throw Error(ErrorKind::domain, "squarefree decomposition failed");
  const Rational coeff = b * Rational(root);
  if (s == 1) return {a + coeff, Rational(0), 1};
  return {a, coeff, s};
}

double QuadraticSurd::value() const noexcept {
  return rational.value() + radical_coeff.value() * std::sqrt(static_cast<double>(radicand));
}

std::string QuadraticSurd::to_string() const {
  if (is_rational()) return rational.to_string();
  // Write over a common denominator: (p + q*sqrt(s))/d.
  const std::int64_t d = std::lcm(rational.den(), radical_coeff.den());
  const std::int64_t p = rational.num() * (d / rational.den());
  const std::int64_t q = radical_coeff.num() * (d / radical_coeff.den());
  std::string out;
  if (p != 0) out = std::to_string(p);
  if (q < 0) {
    out += "-";
  } else if (p != 0) {
    out += "+";
  }
  const std::int64_t aq = q < 0 ? -q : q;
  if (aq != 1) out += std::to_string(aq) + "*";
  out += "sqrt(" + std::to_string(radicand) + ")";
  if (d == 1) return out;
  return "(" + out + ")/" + std::to_string(d);
}

QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.is_rational()) return {a.rational + b.rational, b.radical_coeff, b.radicand};
  if (b.is_rational()) return {a.rational + b.rational, a.radical_coeff, a.radicand};
  if (a.radicand != b.radicand) throw Error(ErrorKind::domain, "adding surds with different radicands");
  return QuadraticSurd::make(a.rational + b.rational, a.radical_coeff + b.radical_coeff, a.radicand);
}

QuadraticSurd operator*(const Rational& r, const QuadraticSurd& a) {
  return QuadraticSurd::make(r * a.rational, r * a.radical_coeff, a.radicand);
}

namespace {

// Squarefree s > 1 whose field discriminant divides N.
std::vector<std::int64_t> admissible_radicands(long exponent) {
  std::vector<std::int64_t> out;
  for (std::int64_t s = 2; s <= exponent; ++s) {
    if (exponent % s != 0 || squarefree_part(s) != s) continue;
    const std::int64_t disc = (s % 4 == 1) ? s : 4 * s;
    if (exponent % disc == 0) out.push_back(s);
  }
  return out;
}

}  // namespace

std::optional<QuadraticSurd> recognize_angle_square(double alpha_sq, long m, long exponent,
                                                    std::span<const double> peer_squares,
                                                    double tol) {
  if (m < 1 || !std::isfinite(alpha_sq)) return std::nullopt;
  const double m2 = static_cast<double>(m) * static_cast<double>(m);
  const double y = alpha_sq * m2;
  const double scaled_tol = tol * std::max(1.0, m2);

  const double rounded = std::round(y);
  if (std::abs(y - rounded) <= scaled_tol) {
    return QuadraticSurd{Rational(static_cast<std::int64_t>(rounded), static_cast<std::int64_t>(m) * m),
                         Rational(0), 1};
  }

  auto peer_present = [&](double target) {
    for (double p : peer_squares) {
      if (std::abs(p * m2 - target) <= 1e3 * scaled_tol) return true;
    }
    return false;
  };

  for (std::int64_t s : admissible_radicands(exponent)) {
    const double root = std::sqrt(static_cast<double>(s));
    const auto b_max = static_cast<std::int64_t>(m2 / root) + 1;
    for (std::int64_t b = 1; b <= b_max; ++b) {
      for (std::int64_t sign : {1, -1}) {
        const double bs = static_cast<double>(sign * b) * root;
        const double a = std::round(2.0 * y - bs);
        if (std::abs(2.0 * y - a - bs) > 2.0 * scaled_tol) continue;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t bi = sign * b;
        // Integrality in the ring of integers of Q(sqrt(s)).
        const bool ok = (s % 4 == 1) ? ((ai - bi) % 2 == 0) : (ai % 2 == 0 && bi % 2 == 0);
        if (!ok) continue;
        const double conj = (a - bs) / 2.0;
        if (conj < -scaled_tol || !peer_present(conj)) continue;
        const Rational denom(2 * static_cast<std::int64_t>(m) * m);
        return QuadraticSurd::make(Rational(ai) / denom, Rational(bi) / denom, s);
      }
    }
  }
  return std::nullopt;
}

}  // namespace framelab
