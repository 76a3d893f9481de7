#include "birat/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace birat {

bool GrlexGreater::operator()(const Exps& a, const Exps& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return a > b;  // lexicographic on exponents, earlier variable dominates
}

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::zero(std::vector<std::string> vars) { return MultiPoly(std::move(vars)); }

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const TowerElem& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Exps(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, const std::string& name) {
  MultiPoly p(std::move(vars));
  auto it = std::find(p.vars_.begin(), p.vars_.end(), name);
  if (it == p.vars_.end()) fail(Errc::UnknownName, "unknown variable " + name);
  Exps e(p.vars_.size(), 0);
  e[size_t(it - p.vars_.begin())] = 1;
  p.add_term(e, TowerElem(1));
  return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Exps exps, const TowerElem& c) {
  MultiPoly p(std::move(vars));
  p.add_term(exps, c);
  return p;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const Exps& lead = terms_.begin()->first;  // grlex leading term has max degree
  return std::accumulate(lead.begin(), lead.end(), 0);
}

int MultiPoly::degree_in(size_t var_index) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var_index]);
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = total_degree();
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
  return true;
}

void MultiPoly::add_term(const Exps& exps, const TowerElem& c) {
  if (exps.size() != vars_.size()) fail(Errc::ParseError, "exponent arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (vars_ != rhs.vars_) {
    if (vars_.empty() && terms_.empty())
      vars_ = rhs.vars_;  // adopt from a default-constructed zero
    else if (rhs.vars_.empty() && rhs.terms_.empty())
      return *this;
    else
      fail(Errc::ParseError, "variable list mismatch");
  }
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_) fail(Errc::ParseError, "variable list mismatch");
  MultiPoly out(a.vars_);
  Exps e(a.vars_.size(), 0);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly MultiPoly::scaled(const TowerElem& c) const {
  MultiPoly out(vars_);
  if (c.is_zero()) return out;
  for (const auto& [e, t] : terms_) out.terms_.emplace(e, t * c);
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!(ia->second == ib->second)) return false;
  }
  return true;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& values) const {
  if (values.size() != vars_.size()) fail(Errc::ParseError, "substitution arity mismatch");
  std::vector<std::string> out_vars = values.empty() ? vars_ : values[0].vars();
  MultiPoly out(out_vars);
  // memoized powers per variable
  std::vector<std::vector<MultiPoly>> powers(values.size());
  auto power = [&](size_t i, int e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(out_vars, TowerElem(1)));
    while (int(cache.size()) <= e) cache.push_back(cache.back() * values[i]);
    return cache[size_t(e)];
  };
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(out_vars, c);
    for (size_t i = 0; i < values.size(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::substitute_fraction(const std::vector<MultiPoly>& nums,
                                         const MultiPoly& den) const {
  if (nums.size() != vars_.size()) fail(Errc::ParseError, "substitution arity mismatch");
  int deg = total_degree();
  if (deg < 0) return MultiPoly(nums.empty() ? vars_ : nums[0].vars());
  std::vector<std::string> out_vars = nums.empty() ? vars_ : nums[0].vars();
  MultiPoly out(out_vars);
  std::vector<std::vector<MultiPoly>> powers(nums.size() + 1);
  auto power = [&](size_t i, const MultiPoly& base, int e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(out_vars, TowerElem(1)));
    while (int(cache.size()) <= e) cache.push_back(cache.back() * base);
    return cache[size_t(e)];
  };
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(out_vars, c);
    int used = 0;
    for (size_t i = 0; i < nums.size(); ++i)
      if (e[i] > 0) {
        term = term * power(i, nums[i], e[i]);
        used += e[i];
      }
    term = term * power(nums.size(), den, deg - used);
    out += term;
  }
  return out;
}

TowerElem MultiPoly::evaluate(const std::vector<TowerElem>& point) const {
  if (point.size() != vars_.size()) fail(Errc::ParseError, "evaluation arity mismatch");
  std::vector<std::vector<TowerElem>> powers(point.size());
  auto power = [&](size_t i, int e) -> const TowerElem& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(TowerElem(1));
    while (int(cache.size()) <= e) cache.push_back(cache.back() * point[i]);
    return cache[size_t(e)];
  };
  TowerElem acc(0);
  for (const auto& [e, c] : terms_) {
    TowerElem term = c;
    for (size_t i = 0; i < point.size(); ++i)
      if (e[i] > 0) term *= power(i, e[i]);
    acc += term;
  }
  return acc;
}

std::optional<MultiPoly> MultiPoly::divided_by(const MultiPoly& divisor) const {
  if (divisor.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  if (vars_ != divisor.vars_) fail(Errc::ParseError, "variable list mismatch");
  MultiPoly rem = *this;
  MultiPoly quot(vars_);
  const auto& dlead = *divisor.terms_.begin();
  while (!rem.terms_.empty()) {
    const auto& rlead = *rem.terms_.begin();
    Exps qe(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
      qe[i] = rlead.first[i] - dlead.first[i];
      if (qe[i] < 0) return std::nullopt;
    }
    TowerElem qc = rlead.second / dlead.second;
    MultiPoly t = MultiPoly::monomial(vars_, qe, qc);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

MultiPoly MultiPoly::reduce_square(size_t var_index, const MultiPoly& replacement) const {
  int top = degree_in(var_index);
  if (top <= 1) return *this;
  // Horner in the reduced variable: collect layer coefficients C_e and fold
  // from the top, rewriting var^2 -> replacement once per step.
  std::vector<MultiPoly> layers(size_t(top) + 1, MultiPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exps base = e;
    int k = base[var_index];
    base[var_index] = 0;
    layers[size_t(k)].add_term(base, c);
  }
  MultiPoly acc = layers[size_t(top)];
  for (int e = top - 1; e >= 0; --e) {
    // acc = acc * var with var^2 -> replacement, then + C_e
    MultiPoly lin(vars_), cst(vars_);
    for (const auto& [ex, c] : acc.terms()) {
      if (ex[var_index] >= 1) {
        Exps down = ex;
        down[var_index] -= 1;
        lin.add_term(down, c);  // coefficient of var
      } else {
        cst.add_term(ex, c);
      }
    }
    // (lin*var + cst)*var = lin*replacement + cst*var
    MultiPoly shifted(vars_);
    for (const auto& [ex, c] : cst.terms()) {
      Exps up = ex;
      up[var_index] += 1;
      shifted.add_term(up, c);
    }
    acc = lin * replacement + shifted + layers[size_t(e)];
  }
  return acc;
}

MultiPoly MultiPoly::derivative(size_t var_index) const {
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var_index] == 0) continue;
    Exps d = e;
    d[var_index] -= 1;
    out.add_term(d, c * TowerElem(e[var_index]));
  }
  return out;
}

std::vector<TowerElem> MultiPoly::univariate_coeffs(size_t var_index) const {
  std::vector<TowerElem> coeffs(size_t(std::max(degree_in(var_index), -1) + 1), TowerElem(0));
  if (terms_.empty()) return coeffs;
  for (const auto& [e, c] : terms_) {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (i != var_index && e[i] != 0)
        fail(Errc::ParseError, "polynomial is not univariate in the requested variable");
    coeffs[size_t(e[var_index])] = c;
  }
  return coeffs;
}

MultiPoly MultiPoly::from_univariate(std::vector<std::string> vars, size_t var_index,
                                     const std::vector<TowerElem>& coeffs) {
  MultiPoly p(std::move(vars));
  for (size_t d = 0; d < coeffs.size(); ++d) {
    Exps e(p.vars_.size(), 0);
    e[var_index] = int(d);
    p.add_term(e, coeffs[d]);
  }
  return p;
}

namespace {

std::string coeff_to_string(const TowerElem& c) {
  if (c.is_rational()) return rational_to_string(c.rational_value());
  std::ostringstream os;
  os << "(";
  bool first = true;
  const auto& gens = c.ctx().gens();
  for (size_t mask = 0; mask < c.coeffs().size(); ++mask) {
    const Rational& r = c.coeffs()[mask];
    if (r == 0) continue;
    if (!first) os << (r > 0 ? " + " : " - ");
    Rational a = (!first && r < 0) ? Rational(-r) : r;
    first = false;
    if (mask == 0) {
      os << rational_to_string(a);
      continue;
    }
    if (a != 1) os << rational_to_string(a) << "*";
    Int prod = 1;
    for (size_t i = 0; i < gens.size(); ++i)
      if (mask & (size_t(1) << i)) prod *= gens[i];
    os << "sqrt(" << prod.str() << ")";
  }
  os << ")";
  return os.str();
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string cs = coeff_to_string(c);
    bool negative = !cs.empty() && cs[0] == '-';
    if (first) {
      first = false;
      if (negative) {
        os << "-";
        cs = cs.substr(1);
      }
    } else {
      os << (negative ? " - " : " + ");
      if (negative) cs = cs.substr(1);
    }
    bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
    bool coeff_is_one = cs == "1";
    if (!coeff_is_one || !has_var) os << cs;
    bool printed = !coeff_is_one || !has_var;
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

MultiPoly poly_pow(const MultiPoly& base, unsigned exponent) {
  MultiPoly acc = MultiPoly::constant(base.vars(), TowerElem(1));
  MultiPoly cur = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) acc = acc * cur;
    cur = cur * cur;
    e >>= 1;
  }
  return acc;
}

void remove_common_content(std::vector<MultiPoly>& polys) {
  if (polys.empty()) return;
  // Rational content only: gcd of all coefficient components across the
  // tuple. Common monomial or polynomial factors are deliberately kept so
  // that proportionality factors of compositions stay observable.
  Int num_gcd = 0, den_lcm = 1;
  bool any = false;
  for (const auto& p : polys) {
    for (const auto& [e, c] : p.terms()) {
      any = true;
      for (const auto& r : c.coeffs()) {
        if (r == 0) continue;
        num_gcd = boost::multiprecision::gcd(num_gcd, numerator(r));
        den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, denominator(r)) * denominator(r);
      }
    }
  }
  if (!any) return;
  Rational content(num_gcd, den_lcm);
  if (content == 0 || content == 1) return;
  TowerElem inv_content(Rational(1) / content);
  for (auto& p : polys) p = p.scaled(inv_content);
}

namespace {

MultiPoly reduce_named_square(const MultiPoly& p, const std::string& var,
                              const MultiPoly& replacement) {
  auto it = std::find(p.vars().begin(), p.vars().end(), var);
  if (it == p.vars().end()) fail(Errc::ParseError, "missing variable " + var);
  return p.reduce_square(size_t(it - p.vars().begin()), replacement);
}

}  // namespace

MultiPoly reduce_mod_sphere(const MultiPoly& p) {
  if (p.vars() != std::vector<std::string>{"x", "y", "z"})
    fail(Errc::ParseError, "reduce_mod_sphere expects variables x,y,z");
  MultiPoly x = MultiPoly::variable(p.vars(), "x");
  MultiPoly y = MultiPoly::variable(p.vars(), "y");
  MultiPoly one = MultiPoly::constant(p.vars(), TowerElem(1));
  return reduce_named_square(p, "z", one - x * x - y * y);
}

MultiPoly reduce_mod_quadric(const MultiPoly& p) {
  if (p.vars() != std::vector<std::string>{"w", "x", "y", "z"})
    fail(Errc::ParseError, "reduce_mod_quadric expects variables w,x,y,z");
  MultiPoly x = MultiPoly::variable(p.vars(), "x");
  MultiPoly y = MultiPoly::variable(p.vars(), "y");
  MultiPoly z = MultiPoly::variable(p.vars(), "z");
  return reduce_named_square(p, "w", x * x + y * y + z * z);
}

}  // namespace birat
