#include "birat/tower.hpp"

#include <algorithm>
#include <utility>

namespace birat {

namespace {

const std::shared_ptr<const std::vector<Int>>& trivial_gens() {
  static const auto empty = std::make_shared<const std::vector<Int>>();
  return empty;
}

size_t mask_count(size_t gens) { return size_t(1) << gens; }

}  // namespace

TowerCtx::TowerCtx() : gens_(trivial_gens()) {}

TowerCtx::TowerCtx(std::shared_ptr<const std::vector<Int>> gens) : gens_(std::move(gens)) {}

bool TowerCtx::same_as(const TowerCtx& other) const {
  return gens_ == other.gens_ || *gens_ == *other.gens_;
}

bool TowerCtx::is_prefix_of(const TowerCtx& other) const {
  if (gens_->size() > other.gens_->size()) return false;
  return std::equal(gens_->begin(), gens_->end(), other.gens_->begin());
}

TowerCtx TowerCtx::extended(const Int& new_gen) const {
  auto next = std::make_shared<std::vector<Int>>(*gens_);
  next->push_back(new_gen);
  return TowerCtx(std::move(next));
}

TowerCtx TowerCtx::from_generators(const std::vector<Int>& gens) {
  if (!generators_independent(gens))
    fail(Errc::ContextMismatch, "generators are not independent square-free integers");
  return TowerCtx(std::make_shared<const std::vector<Int>>(gens));
}

TowerCtx TowerCtx::prefix(size_t count) const {
  if (count == 0) return TowerCtx();
  if (count >= size()) return *this;
  auto sub = std::make_shared<std::vector<Int>>(gens_->begin(), gens_->begin() + count);
  return TowerCtx(std::move(sub));
}

TowerElem::TowerElem() : ctx_(), coeffs_(1, Rational(0)) {}

TowerElem::TowerElem(const Rational& value) : ctx_(), coeffs_(1, value) {}

TowerElem::TowerElem(int value) : ctx_(), coeffs_(1, Rational(value)) {}

TowerElem::TowerElem(const TowerCtx& ctx, std::vector<Rational> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != mask_count(ctx_.size()))
    fail(Errc::ContextMismatch, "coefficient vector size does not match context");
  demote();
}

bool TowerElem::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool TowerElem::is_rational() const { return coeffs_.size() == 1; }

const Rational& TowerElem::rational_value() const {
  if (!is_rational()) fail(Errc::NonRationalInput, "tower element is not rational");
  return coeffs_[0];
}

void TowerElem::demote() {
  size_t used = 0;  // number of leading generators actually referenced
  for (size_t mask = 0; mask < coeffs_.size(); ++mask) {
    if (coeffs_[mask] == 0) continue;
    size_t top = 0;
    for (size_t bit = 0; bit < ctx_.size(); ++bit)
      if (mask & (size_t(1) << bit)) top = bit + 1;
    used = std::max(used, top);
  }
  if (used == ctx_.size()) return;
  TowerCtx shrunk = ctx_.prefix(used);
  coeffs_.resize(mask_count(used));
  ctx_ = shrunk;
}

namespace {

// Aligns both elements over the larger context. Contexts must be
// prefix-compatible, which is the only relation adjoin_sqrt ever creates.
void align(const TowerElem& a, const TowerElem& b, TowerCtx& ctx, std::vector<Rational>& ca,
           std::vector<Rational>& cb) {
  const TowerCtx& bigger = a.ctx().size() >= b.ctx().size() ? a.ctx() : b.ctx();
  const TowerCtx& smaller = a.ctx().size() >= b.ctx().size() ? b.ctx() : a.ctx();
  if (!smaller.is_prefix_of(bigger))
    fail(Errc::ContextMismatch, "tower contexts are not prefix-compatible");
  ctx = bigger;
  ca = a.coeffs();
  cb = b.coeffs();
  ca.resize(mask_count(ctx.size()), Rational(0));
  cb.resize(mask_count(ctx.size()), Rational(0));
}

std::vector<Int> subset_products(const TowerCtx& ctx) {
  std::vector<Int> prods(mask_count(ctx.size()), Int(1));
  for (size_t mask = 1; mask < prods.size(); ++mask) {
    size_t low = mask & (~mask + 1);
    size_t idx = 0;
    while ((size_t(1) << idx) != low) ++idx;
    prods[mask] = prods[mask ^ low] * ctx.gens()[idx];
  }
  return prods;
}

}  // namespace

TowerElem TowerElem::operator-() const {
  TowerElem out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

TowerElem& TowerElem::operator+=(const TowerElem& rhs) {
  TowerCtx ctx;
  std::vector<Rational> ca, cb;
  align(*this, rhs, ctx, ca, cb);
  for (size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  ctx_ = ctx;
  coeffs_ = std::move(ca);
  demote();
  return *this;
}

TowerElem& TowerElem::operator-=(const TowerElem& rhs) {
  TowerCtx ctx;
  std::vector<Rational> ca, cb;
  align(*this, rhs, ctx, ca, cb);
  for (size_t i = 0; i < ca.size(); ++i) ca[i] -= cb[i];
  ctx_ = ctx;
  coeffs_ = std::move(ca);
  demote();
  return *this;
}

TowerElem& TowerElem::operator*=(const TowerElem& rhs) {
  // Fast path: rational scalar on either side.
  if (rhs.is_rational()) {
    const Rational& r = rhs.coeffs_[0];
    for (auto& c : coeffs_) c *= r;
    demote();
    return *this;
  }
  if (is_rational()) {
    Rational r = coeffs_[0];
    *this = rhs;
    for (auto& c : coeffs_) c *= r;
    demote();
    return *this;
  }
  TowerCtx ctx;
  std::vector<Rational> ca, cb;
  align(*this, rhs, ctx, ca, cb);
  auto prods = subset_products(ctx);
  std::vector<Rational> out(ca.size(), Rational(0));
  for (size_t s = 0; s < ca.size(); ++s) {
    if (ca[s] == 0) continue;
    for (size_t t = 0; t < cb.size(); ++t) {
      if (cb[t] == 0) continue;
      // sqrt(P_s) * sqrt(P_t) = P_{s&t} * sqrt(P_{s^t})
      out[s ^ t] += ca[s] * cb[t] * Rational(prods[s & t]);
    }
  }
  ctx_ = ctx;
  coeffs_ = std::move(out);
  demote();
  return *this;
}

TowerElem TowerElem::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero tower element");
  if (is_rational()) return TowerElem(Rational(1) / coeffs_[0]);
  // Split on the top generator: a = b + c*sqrt(g_m); then
  // a^{-1} = (b - c*sqrt(g_m)) / (b^2 - c^2 g_m), the norm living one level down.
  size_t m = ctx_.size();
  size_t half = mask_count(m - 1);
  TowerCtx sub = ctx_.prefix(m - 1);
  std::vector<Rational> lo(coeffs_.begin(), coeffs_.begin() + half);
  std::vector<Rational> hi(coeffs_.begin() + half, coeffs_.end());
  TowerElem b(sub, std::move(lo));
  TowerElem c(sub, std::move(hi));
  TowerElem norm = b * b - c * c * TowerElem(Rational(ctx_.gens().back()));
  // norm == 0 would force sqrt(g_m) into the subtower, impossible by independence.
  TowerElem inv_norm = norm.inverse();
  TowerElem nb = b * inv_norm;
  TowerElem nc = -(c * inv_norm);
  TowerCtx ctx;
  std::vector<Rational> cb2, cc2;
  align(nb, nc, ctx, cb2, cc2);
  // Reassemble over the full context.
  std::vector<Rational> out(mask_count(m), Rational(0));
  cb2.resize(half, Rational(0));
  cc2.resize(half, Rational(0));
  for (size_t i = 0; i < half; ++i) {
    out[i] = cb2[i];
    out[i + half] = cc2[i];
  }
  return TowerElem(ctx_, std::move(out));
}

TowerElem& TowerElem::operator/=(const TowerElem& rhs) { return *this *= rhs.inverse(); }

bool operator==(const TowerElem& a, const TowerElem& b) {
  TowerElem diff = a - b;
  return diff.is_zero();
}

void enclose(const TowerElem& value, unsigned frac_bits, Rational& lo, Rational& hi) {
  const auto& coeffs = value.coeffs();
  auto prods = subset_products(value.ctx());
  Int scale = Int(1) << frac_bits;
  lo = 0;
  hi = 0;
  for (size_t mask = 0; mask < coeffs.size(); ++mask) {
    if (coeffs[mask] == 0) continue;
    if (mask == 0) {
      lo += coeffs[0];
      hi += coeffs[0];
      continue;
    }
    Int s = floor_sqrt(prods[mask] * scale * scale);
    Rational rlo(s, scale), rhi(s + 1, scale);
    if (coeffs[mask] > 0) {
      lo += coeffs[mask] * rlo;
      hi += coeffs[mask] * rhi;
    } else {
      lo += coeffs[mask] * rhi;
      hi += coeffs[mask] * rlo;
    }
  }
}

int sign(const TowerElem& value) {
  if (value.is_zero()) return 0;
  if (value.is_rational()) return sign_of(value.rational_value());
  unsigned bits = 64;
  for (int round = 0; round < 64; ++round) {
    Rational lo, hi;
    enclose(value, bits, lo, hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    bits *= 2;
  }
  fail(Errc::SignRefinementFailed, "interval refinement exceeded 64 rounds");
}

AdjoinResult adjoin_sqrt(const TowerCtx& ctx, const Rational& d) {
  if (d <= 0) fail(Errc::NegativeRadicand, "adjoin_sqrt requires a positive rational");
  const Int& num = numerator(d);
  const Int& den = denominator(d);
  // sqrt(d) = sqrt(num*den) / den; numerator and denominator are decomposed
  // separately so only their individual magnitudes are bounded by 2^64.
  Int square_part, kernel;
  kernel_of_decompositions({squarefree_decompose(num), squarefree_decompose(den)}, kernel,
                           square_part);

  // Match kernel against square-free kernels of subset products of the generators.
  size_t m = ctx.size();
  std::vector<SquarefreeDecomp> gen_decomps;
  gen_decomps.reserve(m);
  for (const auto& g : ctx.gens()) gen_decomps.push_back(squarefree_decompose(g));
  for (size_t mask = 0; mask < mask_count(m); ++mask) {
    std::vector<SquarefreeDecomp> chosen;
    for (size_t i = 0; i < m; ++i)
      if (mask & (size_t(1) << i)) chosen.push_back(gen_decomps[i]);
    Int sub_kernel, sub_square;
    kernel_of_decompositions(chosen, sub_kernel, sub_square);
    if (sub_kernel == kernel) {
      std::vector<Rational> coeffs(mask_count(m), Rational(0));
      coeffs[mask] = Rational(square_part, den * sub_square);
      return {ctx, TowerElem(ctx, std::move(coeffs))};
    }
  }
  TowerCtx next = ctx.extended(kernel);
  std::vector<Rational> coeffs(mask_count(m + 1), Rational(0));
  coeffs[size_t(1) << m] = Rational(square_part, den);
  return {next, TowerElem(next, std::move(coeffs))};
}

TowerElem pow(const TowerElem& base, unsigned exponent) {
  TowerElem acc(1);
  TowerElem cur = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) acc *= cur;
    cur *= cur;
    e >>= 1;
  }
  return acc;
}

void TowerRebase::mark(const TowerElem& e) {
  if (finalized_) fail(Errc::ContextMismatch, "rebase already finalized");
  if (e.ctx().size() > master_.size()) {
    if (!master_.is_prefix_of(e.ctx()))
      fail(Errc::ContextMismatch, "rebase contexts are not prefix-compatible");
    master_ = e.ctx();
  } else if (!e.ctx().is_prefix_of(master_)) {
    fail(Errc::ContextMismatch, "rebase contexts are not prefix-compatible");
  }
  for (size_t mask = 0; mask < e.coeffs().size(); ++mask)
    if (!(e.coeffs()[mask] == 0)) used_mask_ |= mask;
}

void TowerRebase::finalize() {
  if (finalized_) return;
  finalized_ = true;
  index_map_.assign(master_.size(), -1);
  std::vector<Int> gens;
  for (size_t i = 0; i < master_.size(); ++i)
    if (used_mask_ & (size_t(1) << i)) {
      index_map_[i] = int(gens.size());
      gens.push_back(master_.gens()[i]);
    }
  target_ = gens.empty() ? TowerCtx() : TowerCtx::from_generators(gens);
}

TowerElem TowerRebase::apply(const TowerElem& e) const {
  if (!finalized_) fail(Errc::ContextMismatch, "rebase not finalized");
  std::vector<Rational> coeffs(size_t(1) << target_.size(), Rational(0));
  for (size_t mask = 0; mask < e.coeffs().size(); ++mask) {
    if (e.coeffs()[mask] == 0) continue;
    size_t new_mask = 0;
    for (size_t i = 0; i < master_.size(); ++i)
      if (mask & (size_t(1) << i)) {
        if (index_map_[i] < 0) fail(Errc::ContextMismatch, "unmarked generator in rebase");
        new_mask |= size_t(1) << index_map_[i];
      }
    coeffs[new_mask] = e.coeffs()[mask];
  }
  return TowerElem(target_, std::move(coeffs));
}

}  // namespace birat
