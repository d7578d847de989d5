#pragma once

// Residues over prime fields: Legendre and quartic symbols, quadratic Gauss
// sums, and the residue-class difference sets in Z_p.

#include <array>
#include <complex>
#include <optional>
#include <cstdint>
#include <string>
#include <vector>

#include "framelab/difference_structure.hpp"

namespace framelab {

bool is_prime(long n);
long mod_pow(long base, long exp, long mod);

/// a^((p-1)/2) mod p as +1 / -1. Throws domain for p not an odd prime or a = 0 mod p.
int legendre(long a, long p);

/// a^((p-1)/4) mod p as +1 / -1 for a in R^2, p = 1 mod 4. Throws domain otherwise.
int quartic_symbol(long a, long p);

/// s-th power residues of Z_p^*, ascending.
std::vector<long> power_residues(long p, int s);

/// sum over x in Z_p of exp(2 pi i a x^2 / p), evaluated numerically.
std::complex<double> gauss_sum(long a, long p);
/// (a/p) sqrt(p) for p = 1 mod 4, (a/p) sqrt(p) i for p = 3 mod 4.
std::complex<double> gauss_sum_closed_form(long a, long p);

/// sum over j in R^2 with 0 of exp(2 pi i a j / p), evaluated numerically.
std::complex<double> half_gauss_sum(long a, long p);
/// (1 +- sqrt(p))/2 or (1 +- sqrt(p) i)/2 with the sign of (a/p).
std::complex<double> half_gauss_sum_closed_form(long a, long p);

struct ResidueSet {
  AbelianGroup group;
  std::vector<Index> subset;
  Classification classification;
};

/// Quadratic residues of Z_p with their verified classification.
ResidueSet paley_pds(long p);

struct QuarticCosets {
  long p = 0;
  long multiplier = 0;                   ///< a with cosets R4, aR4, a^2 R4, a^3 R4
  std::array<std::vector<long>, 4> cosets;  ///< each ascending
};

/// Throws domain unless p is a prime = 1 mod 4.
QuarticCosets quartic_coset_decomposition(long p);

struct QuarticSet {
  long p = 0;
  bool with_zero = false;
  std::vector<Index> subset;
  long lambda = 0;  ///< count on R^2
  long mu = 0;      ///< count on the non-residues
  Classification classification;
  std::vector<long> d_sizes;  ///< |D(a)| for a = 0 .. p-1, D(a) = {(x, y) in Z_p^* x Z_p^* : x^4 - y^4 = a}
};

/// R^4 (or R^4 with 0) for a prime p = 8q + 5 with lambda, mu from the counts.
/// Throws domain when p is not of that form, and invalid_operation when a
/// structural check fails (lambda + mu = q, count constancy on R^2 and its
/// complement, |D(a)| constant on quartic cosets, -1 in 4R4, -2 in 8R4).
QuarticSet quartic_gaussian_ds(long p, bool with_zero);

struct QuarticCases {
  long p = 0;
  std::optional<long> a_ds;           ///< p = 4a^2 + 1, a odd: R4 difference set
  std::optional<long> a_ds_zero;      ///< p = 4a^2 + 9, a odd: R4 with 0 difference set
  std::optional<long> a_almost;       ///< p = 9 + 4a^2 or 25 + 4a^2: R4 almost difference set
  std::optional<long> a_almost_zero;  ///< p = 1 + 4a^2 or 49 + 4a^2: R4 with 0 almost
  bool consistent = true;             ///< each implied class confirmed by counting
  std::vector<std::string> notes;
};

QuarticCases quartic_special_cases(long p);

}  // namespace framelab
