#pragma once

#include <optional>
#include <string>
#include <vector>

#include "birat/polynomial.hpp"

namespace birat {

// Quotient of polynomials over Q with a continuity-extension evaluation
// protocol at denominator zeros.
struct RegFunction {
  MultiPoly num;
  MultiPoly den;

  size_t arity() const { return num.vars().size(); }
};

RegFunction make_reg_function(MultiPoly num, MultiPoly den);

struct RegulousResult {
  enum class Kind { Value, NotContinuous, Undetermined } kind = Kind::Undetermined;
  Rational value;               // Kind::Value
  bool pencil_certified = false;  // extension across a denominator zero
  // NotContinuous witness: two directions with conflicting limits; an
  // infinite limit is flagged by v2_infinite.
  std::vector<Rational> dir1, dir2;
  Rational v1, v2;
  bool v2_infinite = false;
};

// Evaluates f at a rational point. At a denominator zero, restricts f to
// pencil_size rational lines through the point and compares the exact
// univariate limits; agreement is reported as a pencil-certified Value (not
// a proof of continuity), disagreement yields the witnessing directions.
RegulousResult eval_regulous(const RegFunction& f, const std::vector<Rational>& point,
                             int pencil_size = 10);

struct KRegulousResult {
  bool passed = true;
  int checked_up_to = 0;  // passed orders 0..checked_up_to
  int fail_order = -1;
  std::vector<Rational> fail_dir;
};

// Checks that the order-j Taylor data of the line restrictions at the point
// is consistent with a single homogeneous degree-j form in the direction,
// for j = 0..k; reports the first inconsistent order otherwise.
KRegulousResult k_regulous_check(const RegFunction& f, const std::vector<Rational>& point, int k,
                                 int pencil_size = 10);

// true iff eval_regulous returns Value(0).
bool zero_membership(const RegFunction& f, const std::vector<Rational>& point,
                     int pencil_size = 10);

// The paper's examples. "cartan_canopy", "horn_splitter" and "k_family(k)"
// are regulous functions; "cartan_surface" and "horned_surface" are the
// umbrella surface polynomials packaged as RegFunction with denominator 1.
RegFunction builtin_regulous(const std::string& name);

// Default pencil of rational directions for the given arity.
std::vector<std::vector<Rational>> default_pencil(size_t arity, int pencil_size);

}  // namespace birat
