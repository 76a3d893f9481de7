#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "birat/errors.hpp"

namespace birat {

using Int = boost::multiprecision::cpp_int;
// Canonical form is maintained by the backend: gcd(|num|, den) = 1, den > 0.
using Rational = boost::multiprecision::cpp_rational;

// Builds num/den in canonical form; rejects den == 0.
Rational make_rational(const Int& num, const Int& den);

// Parses "num/den", "num" or a decimal-free integer string. Throws ParseError.
Rational parse_rational(const std::string& text);

// Canonical text form: integers render as "n", everything else as "num/den".
std::string rational_to_string(const Rational& value);

bool is_integer(const Rational& value);

int sign_of(const Rational& value);

// Floor of the square root of a nonnegative integer.
Int floor_sqrt(const Int& value);

// Square-free decomposition n = square_part^2 * prod(block^e) where the
// blocks are square-free and pairwise coprime. Blocks need not be prime:
// small primes are split off by trial division and the remaining cofactor is
// certified square-free by primality and perfect-square tests (any cofactor
// below B^3 that is neither is a product of two distinct large primes).
// Throws RadicandTooLarge when the cofactor cannot be certified.
struct SquarefreeDecomp {
  std::map<Int, int> blocks;
  Int square_part = 1;
};
SquarefreeDecomp squarefree_decompose(const Int& n);

// n = square_part^2 * kernel with kernel square-free. Requires n >= 1 and a
// certifiable decomposition.
Int squarefree_kernel(const Int& n, Int& square_part);

// Kernel and square part of a product of decompositions. Blocks are refined
// by pairwise gcds so exponent parities are computed over a coprime basis.
void kernel_of_decompositions(const std::vector<SquarefreeDecomp>& parts, Int& kernel,
                              Int& square_part);

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

// True when no nonempty subset of gens has a perfect-square product.
bool generators_independent(const std::vector<Int>& gens);

}  // namespace birat
