#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "birat/tower.hpp"

namespace birat {

using Exps = std::vector<int>;

// Graded lexicographic order, higher-degree terms first; ties broken by the
// exponent of the earlier variable. Leading term is *first* in iteration.
struct GrlexGreater {
  bool operator()(const Exps& a, const Exps& b) const;
};

// Sparse multivariate polynomial over TowerElem coefficients. No stored zero
// coefficients; exponent vectors always match the variable arity.
class MultiPoly {
public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly zero(std::vector<std::string> vars);
  static MultiPoly constant(std::vector<std::string> vars, const TowerElem& c);
  static MultiPoly variable(std::vector<std::string> vars, const std::string& name);
  static MultiPoly monomial(std::vector<std::string> vars, Exps exps, const TowerElem& c);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exps, TowerElem, GrlexGreater>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(size_t var_index) const;
  bool is_homogeneous() const;

  void add_term(const Exps& exps, const TowerElem& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(const TowerElem& c) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Substitutes values[i] for variable i; values share one variable list.
  MultiPoly substitute(const std::vector<MultiPoly>& values) const;

  // Substitutes var i -> nums[i]/den, clearing denominators homogeneously:
  // the result is sum over terms c * prod nums^e * den^(deg - |e|) where deg
  // is this polynomial's total degree; the implied denominator is den^deg.
  MultiPoly substitute_fraction(const std::vector<MultiPoly>& nums, const MultiPoly& den) const;

  TowerElem evaluate(const std::vector<TowerElem>& point) const;

  // Exact division; nullopt when the divisor does not divide exactly.
  std::optional<MultiPoly> divided_by(const MultiPoly& divisor) const;

  // Rewrites var^2 -> replacement until the degree in var is <= 1.
  MultiPoly reduce_square(size_t var_index, const MultiPoly& replacement) const;

  MultiPoly derivative(size_t var_index) const;

  // Dense ascending coefficient list in the single variable var_index;
  // requires all other exponents to be zero.
  std::vector<TowerElem> univariate_coeffs(size_t var_index) const;
  static MultiPoly from_univariate(std::vector<std::string> vars, size_t var_index,
                                   const std::vector<TowerElem>& coeffs);

  std::string to_string() const;

private:
  std::vector<std::string> vars_;
  std::map<Exps, TowerElem, GrlexGreater> terms_;
};

MultiPoly poly_pow(const MultiPoly& base, unsigned exponent);

// Divides out the rational content (gcd of all coefficient components) and
// the common monomial factor from a tuple of polynomials, in place.
void remove_common_content(std::vector<MultiPoly>& polys);

// x^2+y^2+z^2 = 1 rewriting: z^2 -> 1 - x^2 - y^2, unique normal form with
// z-degree <= 1. Variables must be exactly {x, y, z}.
MultiPoly reduce_mod_sphere(const MultiPoly& p);

// Quadric model in P^3: w^2 -> x^2 + y^2 + z^2. Variables {w, x, y, z}.
MultiPoly reduce_mod_quadric(const MultiPoly& p);

}  // namespace birat
