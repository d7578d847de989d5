#pragma once

// Exact rationals and real quadratic surds a + b*sqrt(s), used to state
// angle squares in closed form next to their floating-point values.

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace framelab {

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const noexcept { return num_ == 0; }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// rational + radical_coeff * sqrt(radicand), radicand squarefree and > 1,
/// or radical_coeff == 0 and radicand == 1 for a plain rational.
struct QuadraticSurd {
  Rational rational;
  Rational radical_coeff;
  std::int64_t radicand = 1;

  /// Normalizes: pulls square factors out of the radicand and folds perfect squares.
  static QuadraticSurd make(Rational a, Rational b, std::int64_t radicand);

  double value() const noexcept;
  bool is_rational() const noexcept { return radical_coeff.is_zero(); }
  QuadraticSurd conjugate() const { return {rational, -radical_coeff, radicand}; }
  std::string to_string() const;

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b);
QuadraticSurd operator*(const Rational& r, const QuadraticSurd& a);

std::int64_t squarefree_part(std::int64_t n);

/// Recognizes alpha^2 for a harmonic frame of dimension m over a group of
/// exponent N. m^2 alpha^2 is then a real algebraic integer of Q(zeta_N); this
/// looks for it in Z or in the ring of integers of a real quadratic subfield
/// Q(sqrt(s)) with disc(s) | N. A quadratic candidate is only accepted when its
/// Galois conjugate also appears among `peer_squares` (the other alpha^2 values
/// of the same frame). Returns nullopt when nothing fits.
std::optional<QuadraticSurd> recognize_angle_square(double alpha_sq, long m, long exponent,
                                                    std::span<const double> peer_squares,
                                                    double tol = 1e-9);

}  // namespace framelab
