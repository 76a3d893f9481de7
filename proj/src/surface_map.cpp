#include "birat/surface_map.hpp"

#include <algorithm>
#include <numeric>

namespace birat {

namespace {

struct Group {
  size_t begin;
  size_t end;
  bool projective;
};

std::vector<Group> target_groups(Surface s) {
  switch (s) {
    case Surface::Sphere: return {{0, 3, false}};
    case Surface::Quadric: return {{0, 4, true}};
    case Surface::P2: return {{0, 3, true}};
    case Surface::P1xP1: return {{0, 2, true}, {2, 4, true}};
    case Surface::A2: return {{0, 2, false}};
    case Surface::BlowupChart: return {{0, 2, false}, {2, 4, true}};
  }
  fail(Errc::SurfaceMismatch, "unknown surface");
}

// Degree bookkeeping for scale invariance of maps out of projective sources.
// For P2/Quadric all variables scale together; for P1xP1 the two factor pairs
// scale independently; for BlowupChart only (u,v) scales.
std::vector<std::vector<size_t>> source_scaling_groups(Surface s) {
  switch (s) {
    case Surface::Quadric: return {{0, 1, 2, 3}};
    case Surface::P2: return {{0, 1, 2}};
    case Surface::P1xP1: return {{0, 1}, {2, 3}};
    case Surface::BlowupChart: return {{2, 3}};
    case Surface::Sphere:
    case Surface::A2: return {};
  }
  fail(Errc::SurfaceMismatch, "unknown surface");
}

int degree_in_set(const MultiPoly& p, const std::vector<size_t>& vars, bool& homogeneous) {
  homogeneous = true;
  int deg = -1;
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (size_t v : vars) d += e[v];
    if (deg == -1)
      deg = d;
    else if (d != deg)
      homogeneous = false;
  }
  return deg;
}

}  // namespace

const char* surface_name(Surface s) {
  switch (s) {
    case Surface::Sphere: return "Sphere";
    case Surface::Quadric: return "Quadric";
    case Surface::P2: return "P2";
    case Surface::P1xP1: return "P1xP1";
    case Surface::A2: return "A2";
    case Surface::BlowupChart: return "BlowupChart";
  }
  return "?";
}

Surface surface_from_name(const std::string& name) {
  for (Surface s : {Surface::Sphere, Surface::Quadric, Surface::P2, Surface::P1xP1, Surface::A2,
                    Surface::BlowupChart})
    if (name == surface_name(s)) return s;
  fail(Errc::UnknownName, "unknown surface " + name);
}

std::vector<std::string> surface_vars(Surface s) {
  switch (s) {
    case Surface::Sphere: return {"x", "y", "z"};
    case Surface::Quadric: return {"w", "x", "y", "z"};
    case Surface::P2: return {"x", "y", "z"};
    case Surface::P1xP1: return {"x0", "x1", "y0", "y1"};
    case Surface::A2: return {"x", "y"};
    case Surface::BlowupChart: return {"x", "y", "u", "v"};
  }
  fail(Errc::SurfaceMismatch, "unknown surface");
}

size_t surface_point_arity(Surface s) { return surface_vars(s).size(); }

bool surface_is_projective(Surface s) {
  for (const auto& g : target_groups(s))
    if (!g.projective) return false;
  return true;
}

RationalMap identity_map(Surface s) {
  RationalMap m;
  m.source = m.target = s;
  auto vars = surface_vars(s);
  for (const auto& v : vars) m.nums.push_back(MultiPoly::variable(vars, v));
  if (!surface_is_projective(s))
    m.dens.assign(m.nums.size(), MultiPoly::constant(vars, TowerElem(1)));
  return m;
}

void validate_map(const RationalMap& f) {
  auto vars = surface_vars(f.source);
  auto groups = target_groups(f.target);
  size_t arity = surface_point_arity(f.target);
  if (f.nums.size() != arity) fail(Errc::SurfaceMismatch, "coordinate count mismatch");
  if (!f.dens.empty() && f.dens.size() != arity)
    fail(Errc::SurfaceMismatch, "denominator count mismatch");
  bool needs_dens = !surface_is_projective(f.target);
  if (needs_dens && f.dens.empty())
    fail(Errc::SurfaceMismatch, "affine target requires denominators");
  for (const auto& p : f.nums)
    if (p.vars() != vars) fail(Errc::SurfaceMismatch, "coordinate variables mismatch");
  for (const auto& p : f.dens)
    if (p.vars() != vars) fail(Errc::SurfaceMismatch, "denominator variables mismatch");

  for (const auto& g : groups) {
    bool any_nonzero = false;
    for (size_t i = g.begin; i < g.end; ++i) {
      if (!f.nums[i].is_zero()) any_nonzero = true;
      if (!f.dens.empty() && !g.projective && f.dens[i].is_zero())
        fail(Errc::SurfaceMismatch, "identically zero denominator");
    }
    if (!any_nonzero) fail(Errc::SurfaceMismatch, "identically zero coordinate group");
  }

  // Scale invariance in the source's projective variables.
  for (const auto& scaling : source_scaling_groups(f.source)) {
    for (const auto& g : groups) {
      int group_deg = -2;
      for (size_t i = g.begin; i < g.end; ++i) {
        bool hom_num = true, hom_den = true;
        int dn = degree_in_set(f.nums[i], scaling, hom_num);
        int dd = f.dens.empty() ? 0 : degree_in_set(f.dens[i], scaling, hom_den);
        if (f.dens.empty()) dd = 0;
        if (!hom_num || !hom_den)
          fail(Errc::SurfaceMismatch, "coordinate not homogeneous in projective source variables");
        if (f.nums[i].is_zero()) continue;
        if (g.projective) {
          if (group_deg == -2)
            group_deg = dn;
          else if (dn != group_deg)
            fail(Errc::SurfaceMismatch, "projective group has mixed degrees");
          if (!f.dens.empty() && dd != 0)
            fail(Errc::SurfaceMismatch, "projective group coordinates must have trivial denominators");
        } else {
          if (dn != dd)
            fail(Errc::SurfaceMismatch, "affine coordinate is not scale-invariant");
        }
      }
    }
  }
}

SurfacePoint make_surface_point(Surface s, std::vector<TowerElem> coords) {
  if (coords.size() != surface_point_arity(s)) fail(Errc::InvalidPoint, "point arity mismatch");
  switch (s) {
    case Surface::Sphere: {
      TowerElem n = coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2];
      if (!(n == TowerElem(1))) fail(Errc::InvalidPoint, "not on the unit sphere");
      break;
    }
    case Surface::Quadric: {
      // Ambient P^3 model: tuples need not lie on the quadric (the printed
      // maps substitute formally), only be nonzero.
      bool all_zero = std::all_of(coords.begin(), coords.end(),
                                  [](const TowerElem& c) { return c.is_zero(); });
      if (all_zero) fail(Errc::InvalidPoint, "zero tuple");
      break;
    }
    case Surface::P2: {
      bool all_zero = std::all_of(coords.begin(), coords.end(),
                                  [](const TowerElem& c) { return c.is_zero(); });
      if (all_zero) fail(Errc::InvalidPoint, "zero tuple");
      break;
    }
    case Surface::P1xP1: {
      if (coords[0].is_zero() && coords[1].is_zero()) fail(Errc::InvalidPoint, "zero first factor");
      if (coords[2].is_zero() && coords[3].is_zero())
        fail(Errc::InvalidPoint, "zero second factor");
      break;
    }
    case Surface::A2: break;
    case Surface::BlowupChart: {
      if (coords[2].is_zero() && coords[3].is_zero()) fail(Errc::InvalidPoint, "zero direction");
      if (!(coords[2] * coords[1] - coords[3] * coords[0]).is_zero())
        fail(Errc::InvalidPoint, "incidence u*y = v*x violated");
      break;
    }
  }
  return SurfacePoint{s, std::move(coords)};
}

bool points_equal(const SurfacePoint& a, const SurfacePoint& b) {
  if (a.surface != b.surface) return false;
  for (const auto& g : target_groups(a.surface)) {
    if (g.projective) {
      for (size_t i = g.begin; i < g.end; ++i)
        for (size_t j = i + 1; j < g.end; ++j)
          if (!(a.coords[i] * b.coords[j] - a.coords[j] * b.coords[i]).is_zero()) return false;
    } else {
      for (size_t i = g.begin; i < g.end; ++i)
        if (!(a.coords[i] == b.coords[i])) return false;
    }
  }
  return true;
}

SurfacePoint evaluate(const RationalMap& f, const SurfacePoint& p) {
  if (p.surface != f.source) fail(Errc::SurfaceMismatch, "point is not on the source surface");
  std::vector<TowerElem> out(f.nums.size(), TowerElem(0));
  for (const auto& g : target_groups(f.target)) {
    if (g.projective) {
      size_t first_nonzero = g.end;
      for (size_t i = g.begin; i < g.end; ++i) {
        out[i] = f.nums[i].evaluate(p.coords);
        if (first_nonzero == g.end && !out[i].is_zero()) first_nonzero = i;
      }
      if (first_nonzero == g.end)
        fail(Errc::Indeterminate, "base point: all coordinates of a group vanish");
      TowerElem scale = out[first_nonzero].inverse();
      for (size_t i = g.begin; i < g.end; ++i) out[i] *= scale;
    } else {
      for (size_t i = g.begin; i < g.end; ++i) {
        TowerElem den = f.dens[i].evaluate(p.coords);
        if (den.is_zero()) fail(Errc::DenominatorZero, "affine denominator vanishes");
        out[i] = f.nums[i].evaluate(p.coords) / den;
      }
    }
  }
  return make_surface_point(f.target, std::move(out));
}

namespace {

// Substitution var_i -> p_i / q with one shared denominator q, except that
// coordinates exactly divisible by q are cancelled up front. Cancelled
// variables do not consume denominator powers: a twisting map's level
// coordinate z*D(z)/D(z) substitutes as plain z, which keeps the power
// tables small. Clearing for the remaining variables uses their combined
// degree, as in ordinary homogenization.
class FractionSubst {
public:
  FractionSubst(std::vector<MultiPoly> nums, const MultiPoly& den)
      : nums_(std::move(nums)),
        den_(den),
        out_vars_(nums_.empty() ? den.vars() : nums_[0].vars()) {
    MultiPoly one = MultiPoly::constant(out_vars_, TowerElem(1));
    cancelled_.assign(nums_.size(), false);
    den_trivial_ = den_ == one;
    for (size_t i = 0; i < nums_.size() && !den_trivial_; ++i) {
      if (auto q = nums_[i].divided_by(den_)) {
        nums_[i] = *q;
        cancelled_[i] = true;
      }
    }
    num_tables_.resize(nums_.size());
  }

  // Combined degree in the non-cancelled variables; the implied denominator
  // of substitute(p) is den_power(clearing_degree(p)).
  int clearing_degree(const MultiPoly& p) const {
    if (den_trivial_) return 0;
    int top = 0;
    for (const auto& [e, c] : p.terms()) {
      int d = 0;
      for (size_t i = 0; i < nums_.size(); ++i)
        if (!cancelled_[i]) d += e[i];
      top = std::max(top, d);
    }
    return top;
  }

  MultiPoly substitute(const MultiPoly& p) {
    int top = clearing_degree(p);
    MultiPoly out(out_vars_);
    for (const auto& [e, c] : p.terms()) {
      MultiPoly term = MultiPoly::constant(out_vars_, c);
      int used = 0;
      for (size_t i = 0; i < nums_.size(); ++i) {
        if (e[i] > 0) term = term * num_power(i, e[i]);
        if (!cancelled_[i]) used += e[i];
      }
      if (top - used > 0) term = term * den_power(top - used);
      out += term;
    }
    return out;
  }

  const MultiPoly& den_power(int e) {
    if (den_table_.empty()) den_table_.push_back(MultiPoly::constant(out_vars_, TowerElem(1)));
    while (int(den_table_.size()) <= e) den_table_.push_back(den_table_.back() * den_);
    return den_table_[size_t(e)];
  }

private:
  const MultiPoly& num_power(size_t i, int e) {
    auto& table = num_tables_[i];
    if (table.empty()) table.push_back(MultiPoly::constant(out_vars_, TowerElem(1)));
    while (int(table.size()) <= e) table.push_back(table.back() * nums_[i]);
    return table[size_t(e)];
  }

  std::vector<MultiPoly> nums_;
  MultiPoly den_;
  std::vector<std::string> out_vars_;
  std::vector<bool> cancelled_;
  bool den_trivial_ = false;
  std::vector<std::vector<MultiPoly>> num_tables_;
  std::vector<MultiPoly> den_table_;
};

// Scales the whole map by one integer so every coefficient component is
// integral; the map is unchanged (projective groups scale freely, affine
// num/den pairs scale together, and equal denominators stay equal). Keeps
// bignum arithmetic in the composition integral.
void integerize(RationalMap& m) {
  Int den_lcm = 1;
  auto absorb = [&](const MultiPoly& p) {
    for (const auto& [e, c] : p.terms())
      for (const auto& r : c.coeffs()) {
        if (r == 0) continue;
        den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, denominator(r)) * denominator(r);
      }
  };
  for (const auto& p : m.nums) absorb(p);
  for (const auto& p : m.dens) absorb(p);
  if (den_lcm == 1) return;
  TowerElem s{Rational(den_lcm)};
  for (auto& p : m.nums) p = p.scaled(s);
  for (auto& p : m.dens) p = p.scaled(s);
}

// Common-denominator form of an affine-representation map.
void common_denominator(const RationalMap& f, std::vector<MultiPoly>& nums, MultiPoly& den) {
  nums = f.nums;
  if (f.dens.empty()) {
    den = MultiPoly::constant(surface_vars(f.source), TowerElem(1));
    return;
  }
  bool all_same = true;
  for (size_t i = 1; i < f.dens.size(); ++i)
    if (!(f.dens[i] == f.dens[0])) all_same = false;
  if (all_same) {
    den = f.dens[0];
    return;
  }
  den = MultiPoly::constant(surface_vars(f.source), TowerElem(1));
  for (const auto& d : f.dens) den = den * d;
  for (size_t i = 0; i < nums.size(); ++i)
    for (size_t j = 0; j < f.dens.size(); ++j)
      if (j != i) nums[i] = nums[i] * f.dens[j];
}

}  // namespace

RationalMap compose(const RationalMap& g_in, const RationalMap& f_in) {
  if (f_in.target != g_in.source) fail(Errc::SurfaceMismatch, "composition surface mismatch");
  RationalMap f = f_in;
  RationalMap g = g_in;
  integerize(f);
  integerize(g);
  RationalMap out;
  out.source = f.source;
  out.target = g.target;
  auto ggroups = target_groups(g.target);

  if (!f.affine()) {
    // Projective tuple substitution.
    for (const auto& p : g.nums) out.nums.push_back(p.substitute(f.nums));
    if (!g.dens.empty())
      for (const auto& p : g.dens) out.dens.push_back(p.substitute(f.nums));
    if (!surface_is_projective(g.target) && out.dens.empty())
      out.dens.assign(out.nums.size(), MultiPoly::constant(surface_vars(f.source), TowerElem(1)));
  } else {
    std::vector<MultiPoly> nums;
    MultiPoly den;
    common_denominator(f, nums, den);
    FractionSubst subst(std::move(nums), den);
    MultiPoly one = MultiPoly::constant(surface_vars(f.source), TowerElem(1));
    std::vector<MultiPoly> rnums(g.nums.size(), one);
    std::vector<MultiPoly> rdens(g.nums.size(), one);
    // cache the substituted shared denominator
    bool same_gden = !g.dens.empty();
    for (size_t i = 1; same_gden && i < g.dens.size(); ++i)
      if (!(g.dens[i] == g.dens[0])) same_gden = false;
    MultiPoly shared_sd;
    if (same_gden) shared_sd = subst.substitute(g.dens[0]);

    for (const auto& grp : ggroups) {
      if (grp.projective) {
        // common implied denominator: the maximal clearing degree of the group
        int top = 0;
        std::vector<int> degs;
        for (size_t i = grp.begin; i < grp.end; ++i) {
          degs.push_back(subst.clearing_degree(g.nums[i]));
          top = std::max(top, degs.back());
        }
        for (size_t i = grp.begin; i < grp.end; ++i) {
          int defect = top - degs[i - grp.begin];
          rnums[i] = subst.substitute(g.nums[i]);
          if (defect > 0) rnums[i] = rnums[i] * subst.den_power(defect);
        }
      } else {
        for (size_t i = grp.begin; i < grp.end; ++i) {
          MultiPoly sn = subst.substitute(g.nums[i]);
          MultiPoly sd = g.dens.empty() ? one
                         : same_gden    ? shared_sd
                                        : subst.substitute(g.dens[i]);
          int dn = subst.clearing_degree(g.nums[i]);
          int dd = g.dens.empty() ? 0 : subst.clearing_degree(g.dens[i]);
          // ratio = sn * den^dd / (sd * den^dn)
          rnums[i] = dd > 0 ? sn * subst.den_power(dd) : sn;
          rdens[i] = dn > 0 ? sd * subst.den_power(dn) : sd;
        }
      }
    }
    out.nums = std::move(rnums);
    if (surface_is_projective(g.target))
      out.dens.clear();
    else
      out.dens = std::move(rdens);
  }

  // Content removal per target group.
  for (const auto& grp : ggroups) {
    if (grp.projective) {
      std::vector<MultiPoly> group(out.nums.begin() + grp.begin, out.nums.begin() + grp.end);
      remove_common_content(group);
      std::copy(group.begin(), group.end(), out.nums.begin() + grp.begin);
    } else if (!out.dens.empty()) {
      for (size_t i = grp.begin; i < grp.end; ++i) {
        std::vector<MultiPoly> pair = {out.nums[i], out.dens[i]};
        remove_common_content(pair);
        out.nums[i] = pair[0];
        out.dens[i] = pair[1];
      }
    }
  }
  validate_map(out);
  return out;
}

MultiPoly reduce_mod_source(Surface source, const MultiPoly& p) {
  switch (source) {
    case Surface::Sphere: return reduce_mod_sphere(p);
    case Surface::Quadric: return reduce_mod_quadric(p);
    default: return p;
  }
}

std::vector<SurfacePoint> sample_points(Surface s, size_t count) {
  // deterministic small-height rational parameters
  static const std::vector<Rational> params = [] {
    std::vector<Rational> out;
    out.emplace_back(0);
    for (int den = 1; den <= 4; ++den)
      for (int num = 1; num <= 5; ++num) {
        if (std::gcd(num, den) != 1) continue;
        out.emplace_back(num, den);
        out.emplace_back(-num, den);
      }
    return out;
  }();
  std::vector<SurfacePoint> pts;
  auto push = [&](std::vector<TowerElem> coords) {
    if (pts.size() < count) pts.push_back(make_surface_point(s, std::move(coords)));
  };
  switch (s) {
    case Surface::P2:
      for (const auto& a : params)
        for (const auto& b : params) {
          if (pts.size() >= count) return pts;
          push({TowerElem(1), TowerElem(a), TowerElem(b)});
        }
      break;
    case Surface::A2:
      for (const auto& a : params)
        for (const auto& b : params) {
          if (pts.size() >= count) return pts;
          push({TowerElem(a), TowerElem(b)});
        }
      break;
    case Surface::P1xP1:
      for (const auto& a : params)
        for (const auto& b : params) {
          if (pts.size() >= count) return pts;
          push({TowerElem(1), TowerElem(a), TowerElem(1), TowerElem(b)});
        }
      break;
    case Surface::Sphere:
    case Surface::Quadric:
      for (const auto& a : params)
        for (const auto& b : params) {
          if (pts.size() >= count) return pts;
          // inverse stereographic image of [a:b:1]
          TowerElem x(a), y(b);
          TowerElem w = x * x + y * y + TowerElem(1);
          if (s == Surface::Sphere) {
            push({TowerElem(2) * x / w, TowerElem(2) * y / w,
                  (x * x + y * y - TowerElem(1)) / w});
          } else {
            push({w, TowerElem(2) * x, TowerElem(2) * y, x * x + y * y - TowerElem(1)});
          }
        }
      break;
    case Surface::BlowupChart:
      for (const auto& a : params)
        for (const auto& t : params) {
          if (pts.size() >= count) return pts;
          push({TowerElem(a), TowerElem(a) * TowerElem(t), TowerElem(1), TowerElem(t)});
        }
      break;
  }
  return pts;
}

MapsEqualResult maps_equal(const RationalMap& f, const RationalMap& g) {
  if (f.source != g.source || f.target != g.target)
    fail(Errc::SurfaceMismatch, "maps have different source or target");
  auto groups = target_groups(f.target);
  auto reduce = [&](const MultiPoly& p) { return reduce_mod_source(f.source, p); };

  bool equal = true;
  for (const auto& grp : groups) {
    if (grp.projective) {
      for (size_t i = grp.begin; i < grp.end && equal; ++i)
        for (size_t j = i + 1; j < grp.end && equal; ++j) {
          MultiPoly minor = f.nums[i] * g.nums[j] - f.nums[j] * g.nums[i];
          if (!reduce(minor).is_zero()) equal = false;
        }
    } else {
      auto den_f = [&](size_t i) {
        return f.dens.empty() ? MultiPoly::constant(f.nums[i].vars(), TowerElem(1)) : f.dens[i];
      };
      auto den_g = [&](size_t i) {
        return g.dens.empty() ? MultiPoly::constant(g.nums[i].vars(), TowerElem(1)) : g.dens[i];
      };
      for (size_t i = grp.begin; i < grp.end && equal; ++i) {
        MultiPoly diff = f.nums[i] * den_g(i) - g.nums[i] * den_f(i);
        if (!reduce(diff).is_zero()) equal = false;
      }
    }
    if (!equal) break;
  }

  MapsEqualResult res;
  res.equal = equal;
  if (!equal) {
    for (const auto& p : sample_points(f.source, 200)) {
      try {
        SurfacePoint a = evaluate(f, p);
        SurfacePoint b = evaluate(g, p);
        if (!points_equal(a, b)) {
          res.witness = p;
          break;
        }
      } catch (const Error&) {
        continue;  // base point or vanishing denominator: try the next sample
      }
    }
    return res;
  }

  // Proportionality factor per group: f_i = factor * g_i (or swapped).
  for (const auto& grp : groups) {
    if (!grp.projective) {
      res.factors.push_back(MultiPoly::constant(surface_vars(f.source), TowerElem(1)));
      continue;
    }
    std::optional<MultiPoly> factor;
    bool on_rhs = false;
    for (int side = 0; side < 2 && !factor; ++side) {
      const auto& top = side == 0 ? f : g;
      const auto& bot = side == 0 ? g : f;
      for (size_t i = grp.begin; i < grp.end && !factor; ++i) {
        MultiPoly bi = reduce(bot.nums[i]);
        if (bi.is_zero()) continue;
        auto q = reduce(top.nums[i]).divided_by(bi);
        if (!q) continue;
        bool ok = true;
        for (size_t j = grp.begin; j < grp.end && ok; ++j) {
          MultiPoly check = reduce(top.nums[j] - *q * bot.nums[j]);
          if (!check.is_zero()) ok = false;
        }
        if (ok) {
          factor = *q;
          on_rhs = side == 1;
        }
      }
    }
    if (factor) {
      res.factors.push_back(*factor);
      res.factor_on_rhs = res.factor_on_rhs || on_rhs;
    } else {
      res.factors.clear();
      break;  // minors-certified equality without a polynomial factor
    }
  }
  return res;
}

}  // namespace birat
