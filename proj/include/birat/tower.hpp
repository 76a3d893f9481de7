#pragma once

#include <memory>
#include <vector>

#include "birat/rational.hpp"

namespace birat {

// Generator list of a quadratic tower Q(sqrt(g_1), ..., sqrt(g_m)).
// The g_i are square-free positive integers, multiplicatively independent
// modulo squares. Contexts are immutable; adjoining extends by prefix, so
// generator indices never change and elements of a prefix context embed
// into any extension without coefficient reshuffling.
class TowerCtx {
public:
  TowerCtx();

  size_t size() const { return gens_->size(); }
  const std::vector<Int>& gens() const { return *gens_; }

  bool same_as(const TowerCtx& other) const;
  bool is_prefix_of(const TowerCtx& other) const;

  TowerCtx extended(const Int& new_gen) const;

  // Validates square-freeness and independence (used when contexts come from JSON).
  static TowerCtx from_generators(const std::vector<Int>& gens);

  // Prefix of an already-valid context; skips revalidation.
  TowerCtx prefix(size_t count) const;

private:
  explicit TowerCtx(std::shared_ptr<const std::vector<Int>> gens);
  std::shared_ptr<const std::vector<Int>> gens_;
};

// Element sum_{S subset of {1..m}} coeffs[S] * sqrt(prod_{i in S} g_i),
// coefficients indexed by subset bitmask. Zero iff every coefficient is zero.
class TowerElem {
public:
  TowerElem();  // zero over the trivial context
  TowerElem(const Rational& value);
  TowerElem(int value);
  TowerElem(const TowerCtx& ctx, std::vector<Rational> coeffs);

  const TowerCtx& ctx() const { return ctx_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Requires is_rational().
  const Rational& rational_value() const;

  TowerElem operator-() const;
  TowerElem& operator+=(const TowerElem& rhs);
  TowerElem& operator-=(const TowerElem& rhs);
  TowerElem& operator*=(const TowerElem& rhs);
  TowerElem& operator/=(const TowerElem& rhs);

  friend TowerElem operator+(TowerElem lhs, const TowerElem& rhs) { return lhs += rhs; }
  friend TowerElem operator-(TowerElem lhs, const TowerElem& rhs) { return lhs -= rhs; }
  friend TowerElem operator*(TowerElem lhs, const TowerElem& rhs) { return lhs *= rhs; }
  friend TowerElem operator/(TowerElem lhs, const TowerElem& rhs) { return lhs /= rhs; }

  TowerElem inverse() const;

  friend bool operator==(const TowerElem& a, const TowerElem& b);
  friend bool operator!=(const TowerElem& a, const TowerElem& b) { return !(a == b); }

private:
  void demote();  // shrink to the shortest prefix context actually used

  TowerCtx ctx_;
  std::vector<Rational> coeffs_;
};

// Exact sign: 0 iff all coefficients vanish, otherwise decided by interval
// refinement over rational enclosures of each subset radical.
int sign(const TowerElem& value);

struct AdjoinResult {
  TowerCtx ctx;    // possibly the input context
  TowerElem root;  // root * root == d, root > 0
};

// Adjoins sqrt(d) for a positive rational d. Detects radicands already
// representable over ctx via square-free kernels of subset products.
AdjoinResult adjoin_sqrt(const TowerCtx& ctx, const Rational& d);

// Rational lower/upper bounds with |hi - lo| <= 2^-frac_bits; used by sign
// and by the Dehn grid check.
void enclose(const TowerElem& value, unsigned frac_bits, Rational& lo, Rational& hi);

TowerElem pow(const TowerElem& base, unsigned exponent);

// Re-expresses elements over the sub-context of generators they actually
// use. Values are unchanged (pure re-indexing of subset masks); arithmetic
// over the compact context is correspondingly cheaper. Elements must live in
// prefix-compatible contexts of one master context.
class TowerRebase {
public:
  void mark(const TowerElem& e);
  void finalize();
  const TowerCtx& target() const { return target_; }
  TowerElem apply(const TowerElem& e) const;

private:
  TowerCtx master_;
  size_t used_mask_ = 0;
  bool finalized_ = false;
  std::vector<int> index_map_;  // old generator index -> new index or -1
  TowerCtx target_;
};

}  // namespace birat
