#include "birat/regulous.hpp"

#include <algorithm>
#include <functional>

namespace birat {

namespace {

// Rational coefficient vectors of a univariate restriction, ascending in t.
using Series = std::vector<Rational>;

void trim(Series& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Restriction of a polynomial to the line point + t*dir as dense rational
// coefficients in t.
Series restrict_line(const MultiPoly& p, const std::vector<Rational>& point,
                     const std::vector<Rational>& dir) {
  std::vector<std::string> tv = {"t"};
  std::vector<MultiPoly> values;
  MultiPoly tpoly = MultiPoly::variable(tv, "t");
  for (size_t i = 0; i < point.size(); ++i)
    values.push_back(MultiPoly::constant(tv, TowerElem(point[i])) +
                     tpoly.scaled(TowerElem(dir[i])));
  MultiPoly uni = p.substitute(values);
  Series out;
  for (const auto& c : uni.univariate_coeffs(0)) {
    if (!c.is_rational()) fail(Errc::NonRationalInput, "restriction has irrational coefficients");
    out.push_back(c.rational_value());
  }
  trim(out);
  return out;
}

struct LineLimit {
  enum class Kind { Finite, Infinite, Indeterminate } kind;
  // Taylor coefficients of the reduced restriction at t = 0 (c0 is the limit).
  Series taylor;
};

// Exact limit data of num/den restricted to a line: cancel the common
// t-power; an infinite limit shows up as reduced denominator vanishing at 0.
LineLimit line_limit(const Series& num, const Series& den, int orders) {
  if (den.empty()) {
    if (num.empty()) return {LineLimit::Kind::Indeterminate, {}};
    return {LineLimit::Kind::Infinite, {}};
  }
  size_t vn = 0, vd = 0;
  while (vn < num.size() && num[vn] == 0) ++vn;
  while (vd < den.size() && den[vd] == 0) ++vd;
  if (num.empty()) vn = vd;  // 0/den: cancel to 0/unit
  size_t cancel = std::min(vn, vd);
  Series n(num.begin() + std::min(cancel, num.size()), num.end());
  Series d(den.begin() + std::min(cancel, den.size()), den.end());
  if (d.empty() || d[0] == 0) {
    if (n.empty() || n[0] == 0) return {LineLimit::Kind::Indeterminate, {}};
    return {LineLimit::Kind::Infinite, {}};
  }
  // Taylor coefficients of n/d up to the requested order via series division.
  Series out(size_t(orders) + 1, Rational(0));
  for (size_t j = 0; j < out.size(); ++j) {
    Rational acc = j < n.size() ? n[j] : Rational(0);
    for (size_t i = 1; i <= j && i < d.size(); ++i) acc -= d[i] * out[j - i];
    out[j] = acc / d[0];
  }
  return {LineLimit::Kind::Finite, out};
}

// Monomial exponent list of total degree j in `arity` variables.
std::vector<Exps> homogeneous_exponents(size_t arity, int j) {
  std::vector<Exps> out;
  Exps cur(arity, 0);
  // lexicographic enumeration by recursion
  std::function<void(size_t, int)> rec = [&](size_t pos, int left) {
    if (pos + 1 == arity) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  if (arity == 0) return out;
  rec(0, j);
  return out;
}

// Checks whether the samples (direction, value) fit a single homogeneous
// degree-j form; returns the first inconsistent direction otherwise.
std::optional<size_t> fit_homogeneous_form(const std::vector<std::vector<Rational>>& dirs,
                                           const std::vector<Rational>& values, int j) {
  auto exps = homogeneous_exponents(dirs[0].size(), j);
  size_t cols = exps.size();
  // Build rows lazily; Gaussian elimination over Q with full verification.
  std::vector<std::vector<Rational>> rows;
  for (size_t r = 0; r < dirs.size(); ++r) {
    std::vector<Rational> row;
    for (const auto& e : exps) {
      Rational m(1);
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[size_t(i)]; ++k) m *= dirs[r][i];
      row.push_back(m);
    }
    row.push_back(values[r]);
    rows.push_back(std::move(row));
  }
  // elimination
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
  for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational factor = rows[r][col] / rows[rank][col];
      for (size_t c = col; c <= cols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  // Inconsistency: a zero row with nonzero rhs. Map back to a witness
  // direction: the first original direction whose equation fails under the
  // particular solution.
  bool inconsistent = false;
  for (size_t r = rank; r < rows.size(); ++r)
    if (rows[r][cols] != 0) inconsistent = true;
  if (!inconsistent) return std::nullopt;
  // particular solution from the pivot rows
  std::vector<Rational> h(cols, Rational(0));
  for (size_t r = 0; r < rank; ++r) h[pivot_cols[r]] = rows[r][cols] / rows[r][pivot_cols[r]];
  for (size_t r = 0; r < dirs.size(); ++r) {
    Rational acc(0);
    for (size_t c = 0; c < cols; ++c) {
      Rational m(1);
      for (size_t i = 0; i < exps[c].size(); ++i)
        for (int k = 0; k < exps[c][i]; ++k) m *= dirs[r][i];
      acc += h[c] * m;
    }
    if (acc != values[r]) return r;
  }
  return dirs.size() - 1;  // unreachable fallback
}

}  // namespace

RegFunction make_reg_function(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) fail(Errc::DenominatorZero, "denominator is identically zero");
  if (num.vars() != den.vars()) fail(Errc::ParseError, "variable list mismatch");
  for (const auto& [e, c] : num.terms())
    if (!c.is_rational()) fail(Errc::NonRationalInput, "regulous coefficients must be rational");
  for (const auto& [e, c] : den.terms())
    if (!c.is_rational()) fail(Errc::NonRationalInput, "regulous coefficients must be rational");
  // strip common polynomial content cheaply: rational content only
  std::vector<MultiPoly> pair = {num, den};
  remove_common_content(pair);
  return RegFunction{pair[0], pair[1]};
}

std::vector<std::vector<Rational>> default_pencil(size_t arity, int pencil_size) {
  // directions with 1 in one slot and q elsewhere, q from a fixed list
  static const std::vector<Rational> qs = {
      Rational(0),     Rational(1),      Rational(-1),    Rational(1, 2), Rational(-1, 2),
      Rational(2),     Rational(-2),     Rational(1, 3),  Rational(-1, 3), Rational(3),
      Rational(-3),    Rational(2, 3),   Rational(-2, 3), Rational(3, 2), Rational(-3, 2),
      Rational(1, 4),  Rational(-1, 4),  Rational(4),     Rational(-4),   Rational(1, 5),
      Rational(-1, 5), Rational(5),      Rational(-5),    Rational(2, 5), Rational(-2, 5)};
  std::vector<std::vector<Rational>> dirs;
  for (const auto& q : qs) {
    for (size_t slot = 0; slot < arity; ++slot) {
      std::vector<Rational> d(arity, q);
      d[slot] = 1;
      // skip projective duplicates (all-ones appears once per q = 1)
      bool dup = false;
      for (const auto& seen : dirs) {
        bool minors_vanish = true;
        for (size_t i = 0; i < arity && minors_vanish; ++i)
          for (size_t j = i + 1; j < arity && minors_vanish; ++j)
            if (seen[i] * d[j] - seen[j] * d[i] != 0) minors_vanish = false;
        if (minors_vanish) dup = true;
      }
      if (!dup) dirs.push_back(std::move(d));
      if (int(dirs.size()) >= pencil_size) return dirs;
    }
  }
  return dirs;
}

RegulousResult eval_regulous(const RegFunction& f, const std::vector<Rational>& point,
                             int pencil_size) {
  if (pencil_size < 2) fail(Errc::ParseError, "pencil size must be at least 2");
  if (point.size() != f.arity()) fail(Errc::ParseError, "point arity mismatch");
  std::vector<TowerElem> tp;
  for (const auto& c : point) tp.emplace_back(c);
  TowerElem den_val = f.den.evaluate(tp);

  RegulousResult res;
  if (!den_val.is_zero()) {
    res.kind = RegulousResult::Kind::Value;
    res.value = (f.num.evaluate(tp) / den_val).rational_value();
    return res;
  }

  auto dirs = default_pencil(f.arity(), pencil_size);
  std::optional<size_t> first_finite;
  std::vector<std::optional<Rational>> limits(dirs.size());
  size_t indeterminate_count = 0;
  for (size_t i = 0; i < dirs.size(); ++i) {
    Series num = restrict_line(f.num, point, dirs[i]);
    Series den = restrict_line(f.den, point, dirs[i]);
    LineLimit lim = line_limit(num, den, 0);
    switch (lim.kind) {
      case LineLimit::Kind::Finite:
        limits[i] = lim.taylor[0];
        if (!first_finite) first_finite = i;
        break;
      case LineLimit::Kind::Infinite: {
        res.kind = RegulousResult::Kind::NotContinuous;
        res.dir1 = first_finite ? dirs[*first_finite] : dirs[i];
        if (first_finite) res.v1 = *limits[*first_finite];
        res.dir2 = dirs[i];
        res.v2_infinite = true;
        return res;
      }
      case LineLimit::Kind::Indeterminate:
        ++indeterminate_count;
        break;
    }
  }
  if (indeterminate_count == dirs.size()) {
    res.kind = RegulousResult::Kind::Undetermined;
    return res;
  }
  // all computed limits must agree
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (!limits[i]) continue;
    if (*limits[i] != *limits[*first_finite]) {
      res.kind = RegulousResult::Kind::NotContinuous;
      res.dir1 = dirs[*first_finite];
      res.v1 = *limits[*first_finite];
      res.dir2 = dirs[i];
      res.v2 = *limits[i];
      return res;
    }
  }
  res.kind = RegulousResult::Kind::Value;
  res.value = *limits[*first_finite];
  res.pencil_certified = true;
  return res;
}

KRegulousResult k_regulous_check(const RegFunction& f, const std::vector<Rational>& point, int k,
                                 int pencil_size) {
  if (k < 0) fail(Errc::ParseError, "order must be nonnegative");
  if (point.size() != f.arity()) fail(Errc::ParseError, "point arity mismatch");
  auto dirs = default_pencil(f.arity(), pencil_size);

  KRegulousResult res;
  std::vector<Series> taylor(dirs.size());
  for (size_t i = 0; i < dirs.size(); ++i) {
    Series num = restrict_line(f.num, point, dirs[i]);
    Series den = restrict_line(f.den, point, dirs[i]);
    LineLimit lim = line_limit(num, den, k);
    if (lim.kind != LineLimit::Kind::Finite) {
      res.passed = false;
      res.fail_order = 0;
      res.fail_dir = dirs[i];
      return res;
    }
    taylor[i] = lim.taylor;
  }

  for (int j = 0; j <= k; ++j) {
    std::vector<Rational> values;
    for (const auto& t : taylor) values.push_back(t[size_t(j)]);
    auto bad = fit_homogeneous_form(dirs, values, j);
    if (bad) {
      res.passed = false;
      res.fail_order = j;
      res.fail_dir = dirs[*bad];
      return res;
    }
    res.checked_up_to = j;
  }
  return res;
}

bool zero_membership(const RegFunction& f, const std::vector<Rational>& point, int pencil_size) {
  RegulousResult r = eval_regulous(f, point, pencil_size);
  return r.kind == RegulousResult::Kind::Value && r.value == 0;
}

RegFunction builtin_regulous(const std::string& name) {
  std::vector<std::string> xy = {"x", "y"};
  std::vector<std::string> xyz = {"x", "y", "z"};
  auto X2 = MultiPoly::variable(xy, "x");
  auto Y2 = MultiPoly::variable(xy, "y");
  auto X = MultiPoly::variable(xyz, "x");
  auto Y = MultiPoly::variable(xyz, "y");
  auto Z = MultiPoly::variable(xyz, "z");

  if (name == "cartan_canopy")
    return make_reg_function(X2 * X2 * X2, X2 * X2 + Y2 * Y2);
  if (name == "cartan_surface")
    return RegFunction{Z * (X * X + Y * Y) - X * X * X,
                       MultiPoly::constant(xyz, TowerElem(1))};
  if (name == "horned_surface") {
    MultiPoly horn = X * X + Y * Y * ((Y - Z * Z) * (Y - Z * Z) + Y * Z * Z * Z);
    return RegFunction{horn, MultiPoly::constant(xyz, TowerElem(1))};
  }
  if (name == "horn_splitter") {
    MultiPoly horn = X * X + Y * Y * ((Y - Z * Z) * (Y - Z * Z) + Y * Z * Z * Z);
    MultiPoly den = X * X + poly_pow(Y, 4) + Y * Y * poly_pow(Z, 4);
    return make_reg_function(Z * Z * horn, den);
  }
  if (name.rfind("k_family(", 0) == 0 && name.back() == ')') {
    int k = -1;
    try {
      k = std::stoi(name.substr(9, name.size() - 10));
    } catch (const std::exception&) {
      fail(Errc::UnknownName, "k_family needs a natural k");
    }
    if (k < 0) fail(Errc::UnknownName, "k_family needs a natural k");
    return make_reg_function(poly_pow(X2, unsigned(3 + k)), X2 * X2 + Y2 * Y2);
  }
  fail(Errc::UnknownName, "unknown regulous builtin " + name);
}

}  // namespace birat
