#include "birat/rational.hpp"

#include <boost/multiprecision/detail/default_ops.hpp>
#include <cstdint>
#include <map>
#include <vector>

namespace birat {

Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) fail(Errc::ZeroDenominator, "denominator must be nonzero");
  if (den < 0) return Rational(-num, -den);
  return Rational(num, den);
}

Rational parse_rational(const std::string& text) {
  auto trim = [](const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    return s.substr(a, b - a + 1);
  };
  std::string t = trim(text);
  if (t.empty()) fail(Errc::ParseError, "empty rational literal");
  try {
    size_t slash = t.find('/');
    if (slash == std::string::npos) return Rational(Int(t));
    Int num(trim(t.substr(0, slash)));
    Int den(trim(t.substr(slash + 1)));
    return make_rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad rational literal: " + text);
  }
}

std::string rational_to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

bool is_integer(const Rational& value) { return denominator(value) == 1; }

int sign_of(const Rational& value) { return value.sign(); }

Int floor_sqrt(const Int& value) {
  if (value < 0) fail(Errc::NegativeRadicand, "floor_sqrt of negative integer");
  return boost::multiprecision::sqrt(value);
}

namespace {

constexpr std::uint64_t kSmallPrimeBound = 1u << 20;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return std::uint64_t((unsigned __int128)(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

SquarefreeDecomp squarefree_decompose(const Int& n) {
  if (n < 1) fail(Errc::NegativeRadicand, "decomposition of nonpositive integer");
  SquarefreeDecomp out;
  if (n == 1) return out;
  if (n > Int("18446744073709551615"))
    fail(Errc::RadicandTooLarge, "magnitude above 2^64: " + n.str());
  std::uint64_t rest = static_cast<std::uint64_t>(n);

  auto record = [&](const Int& block, int e) {
    out.blocks[block] += e;
  };
  for (std::uint64_t p : {2ull, 3ull}) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) record(Int(p), e);
  }
  std::uint64_t p = 5;
  while (p <= kSmallPrimeBound && p <= rest / p) {
    for (std::uint64_t q : {p, p + 2}) {
      int e = 0;
      while (rest % q == 0) {
        rest /= q;
        ++e;
      }
      if (e) record(Int(q), e);
    }
    p += 6;
  }
  if (rest == 1) return out;
  // rest has no prime factor <= min(B, sqrt(rest))
  if (rest <= kSmallPrimeBound * kSmallPrimeBound || is_prime_u64(rest)) {
    // either rest is prime, or all its prime factors exceed... for
    // rest <= B^2 the trial loop reached sqrt(rest), so rest is prime.
    record(Int(rest), 1);
    return out;
  }
  std::uint64_t root = static_cast<std::uint64_t>(floor_sqrt(Int(rest)));
  if (root * root == rest) {
    // perfect square: contributes only to the square part
    out.square_part *= root;
    return out;
  }
  // Not prime, not square, and every prime factor exceeds B: below B^3 the
  // only remaining shape is a product of two distinct large primes, which is
  // square-free.
  if (Int(rest) < Int(kSmallPrimeBound) * Int(kSmallPrimeBound) * Int(kSmallPrimeBound)) {
    record(Int(rest), 1);
    return out;
  }
  fail(Errc::RadicandTooLarge, "cofactor cannot be certified square-free: " + Int(rest).str());
}

namespace {

// Refines block maps to a pairwise-coprime basis by repeated gcd splitting.
std::map<Int, int> refine_blocks(std::map<Int, int> merged) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = merged.begin(); it != merged.end() && !changed; ++it) {
      auto jt = it;
      for (++jt; jt != merged.end() && !changed; ++jt) {
        Int g = boost::multiprecision::gcd(it->first, jt->first);
        if (g == 1) continue;
        Int a = it->first / g;
        Int b = jt->first / g;
        int ea = it->second, eb = jt->second;
        merged.erase(jt);
        merged.erase(it);
        if (a != 1) merged[a] += ea;
        if (b != 1) merged[b] += eb;
        merged[g] += ea + eb;
        changed = true;
      }
    }
  }
  return merged;
}

}  // namespace

void kernel_of_decompositions(const std::vector<SquarefreeDecomp>& parts, Int& kernel,
                              Int& square_part) {
  std::map<Int, int> merged;
  square_part = 1;
  for (const auto& part : parts) {
    square_part *= part.square_part;
    for (const auto& [b, e] : part.blocks) merged[b] += e;
  }
  merged = refine_blocks(merged);
  kernel = 1;
  for (const auto& [b, e] : merged) {
    if (e % 2 == 1) kernel *= b;
    for (int i = 0; i < e / 2; ++i) square_part *= b;
  }
}

Int squarefree_kernel(const Int& n, Int& square_part) {
  Int kernel;
  kernel_of_decompositions({squarefree_decompose(n)}, kernel, square_part);
  return kernel;
}

bool generators_independent(const std::vector<Int>& gens) {
  size_t m = gens.size();
  if (m > 20) return false;  // beyond desk scale
  std::vector<SquarefreeDecomp> decomps;
  decomps.reserve(m);
  for (const auto& g : gens) {
    if (g < 2) return false;
    Int sq;
    if (squarefree_kernel(g, sq) != g) return false;  // not square-free
    decomps.push_back(squarefree_decompose(g));
  }
  for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
    std::vector<SquarefreeDecomp> chosen;
    for (size_t i = 0; i < m; ++i)
      if (mask & (size_t(1) << i)) chosen.push_back(decomps[i]);
    Int kernel, sq;
    kernel_of_decompositions(chosen, kernel, sq);
    if (kernel == 1) return false;
  }
  return true;
}

}  // namespace birat
