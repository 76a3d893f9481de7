#include "birat/twist.hpp"

#include <algorithm>
#include <numeric>

namespace birat {

namespace {

const std::vector<std::string> zvar = {"z"};

using Vec3 = std::array<TowerElem, 3>;

Vec3 to_vec(const SpherePoint& p) { return {p.x, p.y, p.z}; }

TowerElem dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Rotation ratio in the frame's (x,y)-plane carrying A to B; both must share
// the frame level with |level| < 1.
std::pair<TowerElem, TowerElem> rotation_ratio(const Rotation3& frame, const SpherePoint& A,
                                               const SpherePoint& B) {
  SpherePoint a = frame.apply(A);
  SpherePoint b = frame.apply(B);
  TowerElem r2 = a.x * a.x + a.y * a.y;
  if (r2.is_zero()) fail(Errc::SearchExhausted, "rotation ratio at a pole");
  return {(b.x * a.x + b.y * a.y) / r2, (b.y * a.x - b.x * a.y) / r2};
}

}  // namespace

TwistingMap twisting_map(const CircleMap& f, const Rotation3& frame) {
  auto vars = surface_vars(Surface::Sphere);
  std::vector<MultiPoly> coords;
  for (const auto& name : vars) coords.push_back(MultiPoly::variable(vars, name));

  // frame-aligned coordinates: (X,Y,Z) = frame * (x,y,z)
  std::vector<MultiPoly> aligned(3, MultiPoly::zero(vars));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) aligned[size_t(i)] += coords[size_t(j)].scaled(frame.at(i, j));

  // profile numerators and denominator evaluated at the level polynomial Z
  MultiPoly N1 = f.num1().substitute({aligned[2]});
  MultiPoly N2 = f.num2().substitute({aligned[2]});
  MultiPoly D = f.den().substitute({aligned[2]});

  MultiPoly tx = N1 * aligned[0] - N2 * aligned[1];
  MultiPoly ty = N2 * aligned[0] + N1 * aligned[1];
  MultiPoly tz = aligned[2] * D;

  // back through the frame: out = frame^T * (tx,ty,tz)
  TwistingMap t{f, frame, RationalMap{}};
  t.realized.source = t.realized.target = Surface::Sphere;
  for (int i = 0; i < 3; ++i) {
    MultiPoly out = tx.scaled(frame.at(0, i)) + ty.scaled(frame.at(1, i)) + tz.scaled(frame.at(2, i));
    t.realized.nums.push_back(out);
    t.realized.dens.push_back(D);
  }
  validate_map(t.realized);

  // Sphere-image certificate: N1^2 + N2^2 = D^2 identically makes
  // sum(nums^2) - den^2 = D(Z)^2 * (x^2+y^2+z^2 - 1) because the frame is
  // exactly orthogonal, so the identity reduces to 0 modulo the sphere
  // relation. The univariate check here is the whole certificate.
  MultiPoly circle_cert = f.num1() * f.num1() + f.num2() * f.num2() - f.den() * f.den();
  if (!circle_cert.is_zero())
    fail(Errc::InvalidPoint, "twisting map does not preserve the sphere");
  return t;
}

TwistingMap twist_inverse(const TwistingMap& t) {
  return twisting_map(t.profile.conjugate(), t.frame);
}

namespace {

void mark_poly(TowerRebase& rb, const MultiPoly& p) {
  for (const auto& [e, c] : p.terms()) rb.mark(c);
}

MultiPoly rebase_poly(const TowerRebase& rb, const MultiPoly& p) {
  MultiPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, rb.apply(c));
  return out;
}

}  // namespace

MapsEqualResult certify_twist_pair_identity(const TwistingMap& g, const TwistingMap& f) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(g.frame.at(i, j) == f.frame.at(i, j)))
        fail(Errc::SurfaceMismatch, "twisting maps have different frames");
  TwistingMap ag = twisting_map(g.profile, Rotation3::identity());
  TwistingMap af = twisting_map(f.profile, Rotation3::identity());
  RationalMap round = compose(ag.realized, af.realized);
  return maps_equal(round, identity_map(Surface::Sphere));
}

TwistingMap compact_twist(const TwistingMap& t) {
  TowerRebase rb;
  mark_poly(rb, t.profile.pn());
  mark_poly(rb, t.profile.pd());
  rb.mark(t.profile.post().first);
  rb.mark(t.profile.post().second);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rb.mark(t.frame.at(i, j));
  for (const auto& p : t.realized.nums) mark_poly(rb, p);
  for (const auto& p : t.realized.dens) mark_poly(rb, p);
  rb.finalize();

  // Re-index every part; the values (and hence the map and its certificate)
  // are unchanged.
  TwistingMap out{CircleMap(rebase_poly(rb, t.profile.pn()), rebase_poly(rb, t.profile.pd()),
                            {rb.apply(t.profile.post().first), rb.apply(t.profile.post().second)}),
                  t.frame, t.realized};
  std::array<TowerElem, 9> fm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) fm[size_t(i * 3 + j)] = rb.apply(t.frame.at(i, j));
  out.frame = Rotation3(std::move(fm));
  for (auto& p : out.realized.nums) p = rebase_poly(rb, p);
  for (auto& p : out.realized.dens) p = rebase_poly(rb, p);
  return out;
}

SpherePoint apply_twists(const std::vector<TwistingMap>& twists, const SpherePoint& p) {
  SurfacePoint cur = make_surface_point(Surface::Sphere, {p.x, p.y, p.z});
  for (const auto& t : twists) cur = evaluate(t.realized, cur);
  return SpherePoint(cur.coords[0], cur.coords[1], cur.coords[2]);
}

namespace {

// Enumeration of Cayley axis candidates in deterministic height order.
// Height h contributes parameter values num/den with max(|num|, den) == h.
class AxisEnumerator {
public:
  explicit AxisEnumerator(int height_cap, long max_candidates)
      : cap_(height_cap), budget_(max_candidates) {}

  // Calls fn(rotation) until it returns true; false when exhausted.
  template <typename Fn>
  bool search(Fn&& fn) {
    long used = 0;
    for (int h = 0; h <= cap_; ++h) {
      auto level = params_up_to(h);
      for (const Rational& a : level)
        for (const Rational& b : level)
          for (const Rational& c : level) {
            if (height(a) != h && height(b) != h && height(c) != h && !(h == 0)) continue;
            if (++used > budget_) return false;
            if (fn(cayley_rotation(a, b, c))) return true;
          }
    }
    return false;
  }

private:
  static int height(const Rational& r) {
    Int n = numerator(r) < 0 ? Int(-numerator(r)) : numerator(r);
    Int d = denominator(r);
    Int m = n > d ? n : d;
    return int(m);
  }

  std::vector<Rational> params_up_to(int h) const {
    std::vector<Rational> out;
    out.emplace_back(0);
    for (int den = 1; den <= h; ++den)
      for (int num = 1; num <= h; ++num) {
        if (std::gcd(num, den) != 1) continue;
        if (std::max(num, den) > h) continue;
        out.emplace_back(num, den);
        out.emplace_back(-num, den);
      }
    return out;
  }

  int cap_;
  long budget_;
};

struct SolverState {
  std::vector<SpherePoint> positions;  // current location of each marked point
  std::vector<SpherePoint> targets;
  std::vector<TwistingMap> twists;
  TowerCtx ctx;
  SolveOptions options;
};

TowerElem level_of(const Rotation3& frame, const SpherePoint& p) {
  return frame.at(2, 0) * p.x + frame.at(2, 1) * p.y + frame.at(2, 2) * p.z;
}

bool unit_level(const TowerElem& lvl) {
  TowerElem t = TowerElem(1) - lvl * lvl;
  return t.is_zero();
}

// One twisting map about the frame axis carrying `mover` to `dest` (same
// frame level) while pinning every point in `pins`.
void emit_twist(SolverState& st, const Rotation3& frame, const SpherePoint& mover,
                const SpherePoint& dest, const std::vector<const SpherePoint*>& pins) {
  auto ratio = rotation_ratio(frame, mover, dest);
  if (ratio.first == TowerElem(1) && ratio.second.is_zero()) return;  // nothing to do
  std::vector<CircleNode> nodes;
  nodes.push_back({level_of(frame, mover), ratio.first, ratio.second});
  for (const SpherePoint* o : pins) {
    TowerElem lvl = level_of(frame, *o);
    if (unit_level(lvl)) continue;  // at a pole of the axis: fixed automatically
    bool seen = false;
    for (const auto& n : nodes)
      if (n.z == lvl) seen = true;
    if (!seen) nodes.push_back({lvl, TowerElem(1), TowerElem(0)});
  }
  CircleMap profile = interpolate_circle(nodes);
  st.twists.push_back(twisting_map(profile, frame));
}

std::vector<const SpherePoint*> pins_except(const SolverState& st, size_t mover) {
  std::vector<const SpherePoint*> pins;
  for (size_t i = 0; i < st.positions.size(); ++i)
    if (i != mover) pins.push_back(&st.positions[i]);
  return pins;
}

bool distinct_from_all(const TowerElem& lvl, const Rotation3& frame,
                       const std::vector<const SpherePoint*>& pins) {
  for (const SpherePoint* o : pins)
    if (lvl == level_of(frame, *o)) return false;
  return true;
}

// Standard stage: move point `idx` from its current position to its target
// with at most two twists, pinning everything else.
void run_stage(SolverState& st, size_t idx) {
  const SpherePoint M = st.positions[idx];
  const SpherePoint T = st.targets[idx];
  if (M == T) return;
  auto pins = pins_except(st, idx);
  AxisEnumerator axes(st.options.height_cap, st.options.max_candidates);

  // Fast path: a single twist when some admissible axis levels M and T equally.
  {
    int examined = 0;
    bool found = axes.search([&](const Rotation3& W) {
      if (++examined > 64) return true;  // abandon the fast path quickly
      TowerElem a = level_of(W, M);
      if (!(a == level_of(W, T))) return false;
      if (unit_level(a)) return false;
      if (!distinct_from_all(a, W, pins)) return false;
      emit_twist(st, W, M, T, pins);
      st.positions[idx] = T;
      return true;
    });
    if (found && st.positions[idx] == T) return;
  }

  bool found = axes.search([&](const Rotation3& W) {
    Rotation3 V = W.cycled();  // row 2 of V is row 1 of W; V maps v to e_z
    TowerElem a = level_of(W, M);
    TowerElem b = level_of(V, T);
    // feasibility a^2 + b^2 < 1 and level distinctness for both twists
    TowerElem margin = TowerElem(1) - a * a - b * b;
    if (sign(margin) <= 0) return false;
    if (!distinct_from_all(a, W, pins)) return false;
    if (!distinct_from_all(b, V, pins)) return false;

    TowerElem s;
    try {
      auto adj = adjoin_sqrt(st.ctx, margin.rational_value());
      st.ctx = adj.ctx;
      s = adj.root;
    } catch (const Error& e) {
      // an uncertifiable radicand just disqualifies this axis pair
      if (e.code() == Errc::RadicandTooLarge) return false;
      throw;
    }
    // u = row2(W), v = row1(W), u x v = -row0(W)
    Vec3 u = {W.at(2, 0), W.at(2, 1), W.at(2, 2)};
    Vec3 v = {W.at(1, 0), W.at(1, 1), W.at(1, 2)};
    Vec3 w0 = {W.at(0, 0), W.at(0, 1), W.at(0, 2)};
    SpherePoint R(u[0] * a + v[0] * b - w0[0] * s, u[1] * a + v[1] * b - w0[1] * s,
                  u[2] * a + v[2] * b - w0[2] * s);
    emit_twist(st, W, M, R, pins);
    st.positions[idx] = R;
    emit_twist(st, V, R, T, pins);
    st.positions[idx] = T;
    return true;
  });
  if (!found) fail(Errc::SearchExhausted, "no admissible axis pair within the height cap");
}

// Cycle breaker: park the first member at an intermediate point C chosen on
// the intersection of its own level circle (axis u) and the target's level
// circle for the closing axis w, process the remaining members, then close
// with a single twist about w.
void run_cycle(SolverState& st, const std::vector<size_t>& cycle) {
  size_t r1 = cycle[0];
  const SpherePoint start = st.positions[r1];
  const SpherePoint goal = st.targets[r1];
  auto pins_now = pins_except(st, r1);

  // Final-time pin set: cycle members at their targets, everything else at
  // its current position.
  std::vector<SpherePoint> others_final;
  for (size_t i = 0; i < st.positions.size(); ++i) {
    if (i == r1) continue;
    bool in_cycle = std::find(cycle.begin(), cycle.end(), i) != cycle.end();
    others_final.push_back(in_cycle ? st.targets[i] : st.positions[i]);
  }

  struct Park {
    Rotation3 w_frame;
    Rotation3 u_frame;
    SpherePoint c;
    TowerCtx ctx;
  };
  std::optional<Park> park;

  AxisEnumerator outer(st.options.height_cap, st.options.max_candidates);
  bool found = outer.search([&](const Rotation3& Wf) {
    TowerElem beta = level_of(Wf, goal);
    if (unit_level(beta)) return false;
    // the closing twist must pin everything at final time
    for (const auto& o : others_final)
      if (beta == level_of(Wf, o)) return false;

    AxisEnumerator inner(st.options.height_cap, 4000);
    return inner.search([&](const Rotation3& W1) {
      TowerElem alpha = level_of(W1, start);
      if (unit_level(alpha)) return false;
      if (!distinct_from_all(alpha, W1, pins_now)) return false;
      Vec3 u = {W1.at(2, 0), W1.at(2, 1), W1.at(2, 2)};
      Vec3 w = {Wf.at(2, 0), Wf.at(2, 1), Wf.at(2, 2)};
      TowerElem g = TowerElem(1) - dot(u, w) * dot(u, w);
      if (g.is_zero()) return false;  // parallel axes
      // solve u.C = alpha, w.C = beta on the sphere
      TowerElem uw = dot(u, w);
      TowerElem lambda = (alpha - beta * uw) / g;
      TowerElem mu = (beta - alpha * uw) / g;
      TowerElem disc = (TowerElem(1) - (lambda * lambda + mu * mu + TowerElem(2) * lambda * mu * uw)) / g;
      int ds = sign(disc);
      if (ds < 0) return false;
      TowerCtx ctx = st.ctx;
      TowerElem nu(0);
      if (ds > 0) {
        try {
          auto adj = adjoin_sqrt(ctx, disc.rational_value());
          ctx = adj.ctx;
          nu = adj.root;
        } catch (const Error& e) {
          if (e.code() == Errc::RadicandTooLarge) return false;
          throw;
        }
      }
      Vec3 cross = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                    u[0] * w[1] - u[1] * w[0]};
      SpherePoint C(lambda * u[0] + mu * w[0] + nu * cross[0],
                    lambda * u[1] + mu * w[1] + nu * cross[1],
                    lambda * u[2] + mu * w[2] + nu * cross[2]);
      // C must avoid every current position and every target of the cycle
      for (const auto& p : st.positions)
        if (C == p) return false;
      for (const auto& q : st.targets)
        if (C == q) return false;
      park = Park{Wf, W1, C, ctx};
      return true;
    });
  });
  if (!found || !park) fail(Errc::SearchExhausted, "no parking configuration for the cycle");

  st.ctx = park->ctx;
  // park r1 at C with a single twist
  emit_twist(st, park->u_frame, start, park->c, pins_now);
  st.positions[r1] = park->c;

  // process the remaining members in cycle order
  for (size_t i = 1; i < cycle.size(); ++i) run_stage(st, cycle[i]);

  // close: C -> goal about the prepared axis
  auto pins_final = pins_except(st, r1);
  emit_twist(st, park->w_frame, park->c, goal, pins_final);
  st.positions[r1] = goal;
}

}  // namespace

SolveResult transitivity_solve(const std::vector<SpherePoint>& P, const std::vector<SpherePoint>& Q,
                               const SolveOptions& options) {
  size_t n = P.size();
  if (n == 0 || Q.size() != n) fail(Errc::DuplicateInput, "need equal nonempty tuples");
  for (size_t i = 0; i < n; ++i) {
    if (!P[i].rational() || !Q[i].rational())
      fail(Errc::NonRationalInput, "solver inputs must have rational coordinates");
    for (size_t j = i + 1; j < n; ++j) {
      if (P[i] == P[j]) fail(Errc::DuplicateInput, "duplicate source point");
      if (Q[i] == Q[j]) fail(Errc::DuplicateInput, "duplicate target point");
    }
  }

  SolverState st{P, Q, {}, TowerCtx(), options};

  // Dependency: r must be placed before s whenever P_r == Q_s (the start of r
  // blocks the target of s). Fixed points never move and impose nothing.
  std::vector<bool> fixed(n, false);
  for (size_t i = 0; i < n; ++i) fixed[i] = P[i] == Q[i];
  std::vector<int> succ(n, -1), pred(n, -1);
  for (size_t r = 0; r < n; ++r) {
    if (fixed[r]) continue;
    for (size_t s = 0; s < n; ++s) {
      if (s == r || fixed[s]) continue;
      if (P[r] == Q[s]) {
        succ[r] = int(s);  // r precedes s
        pred[s] = int(r);
      }
    }
  }

  std::vector<bool> done(n, false);
  for (size_t i = 0; i < n; ++i)
    if (fixed[i]) done[i] = true;

  // Path components first: start from nodes with no predecessor.
  for (size_t i = 0; i < n; ++i) {
    if (done[i] || pred[i] != -1) continue;
    for (int cur = int(i); cur != -1 && !done[size_t(cur)]; cur = succ[size_t(cur)]) {
      run_stage(st, size_t(cur));
      done[size_t(cur)] = true;
    }
  }
  // Remaining components are cycles.
  for (size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<size_t> cycle;
    for (int cur = int(i); cycle.empty() || size_t(cur) != i; cur = succ[size_t(cur)])
      cycle.push_back(size_t(cur));
    run_cycle(st, cycle);
    for (size_t s : cycle) done[s] = true;
  }

  // Postcondition: every point landed exactly on its target.
  for (size_t i = 0; i < n; ++i)
    if (!(st.positions[i] == st.targets[i]))
      fail(Errc::SearchExhausted, "solver postcondition violated");
  if (st.twists.size() > 2 * n) fail(Errc::SearchExhausted, "twist budget exceeded");

  return SolveResult{std::move(st.twists), st.ctx};
}

TwistingMap dehn_twist_map(const std::vector<TowerElem>& fixed_levels, const Rational& eps,
                           const Rational& tol) {
  if (!(eps > 0 && eps < 1)) fail(Errc::InvalidEps, "eps must lie in (0,1)");
  if (tol <= 0) fail(Errc::ToleranceUnreachable, "tolerance must be positive");
  std::vector<TowerElem> levels;
  for (const auto& lvl : fixed_levels) {
    if (sign(TowerElem(1) - lvl * lvl) <= 0)
      fail(Errc::InvalidEps, "fixed level outside (-1,1)");
    if (sign(lvl * lvl - TowerElem(eps * eps)) <= 0)
      fail(Errc::InvalidEps, "fixed level inside [-eps, eps]");
    bool seen = false;
    for (const auto& other : levels)
      if (other == lvl) seen = true;
    if (!seen) levels.push_back(lvl);
  }
  if (levels.size() + 1 > 64) fail(Errc::ToleranceUnreachable, "degree cap exceeded");

  // Base profile: kappa * prod(z - z_i) / z. The simple pole at 0 realizes
  // the full loop through the antipode; the numerator roots pin the levels.
  MultiPoly zp = MultiPoly::variable(zvar, "z");
  MultiPoly B = MultiPoly::constant(zvar, TowerElem(1));
  for (const auto& lvl : levels) B = B * (zp - MultiPoly::constant(zvar, lvl));

  // Exact grid maximum of |B(z)/z| outside [-2 eps, 2 eps].
  Rational two_eps = 2 * eps;
  TowerElem max_sq(0);
  int grid_points = 0;
  for (int j = 0; j < 1000; ++j) {
    Rational zg = Rational(-1) + Rational(2 * j, 999);
    if (abs(zg) <= two_eps) continue;
    ++grid_points;
    TowerElem val = B.evaluate({TowerElem(zg)}) / TowerElem(zg);
    TowerElem sq = val * val;
    if (sign(sq - max_sq) > 0) max_sq = sq;
  }
  // kappa^2 * max_sq <= (tol/2)^2. A rational upper bound on max_sq suffices
  // (levels may be tower elements).
  Rational kappa(1);
  if (sign(max_sq) > 0) {
    Rational lo, hi;
    enclose(max_sq, 64, lo, hi);
    Rational bound = tol * tol / (4 * hi);
    // kappa = floor_sqrt(bn*bd)/bd satisfies kappa^2 <= bn/bd = bound
    Int bn = numerator(bound), bd = denominator(bound);
    kappa = Rational(floor_sqrt(bn * bd), bd);
    if (kappa == 0) kappa = bound;  // bound itself works when below 1
  }

  CircleMap profile(B.scaled(TowerElem(kappa)), zp, {TowerElem(1), TowerElem(0)});
  if (winding_number(profile) < 0)
    profile = CircleMap(B.scaled(TowerElem(-kappa)), zp, {TowerElem(1), TowerElem(0)});
  if (winding_number(profile) != 1)
    fail(Errc::ToleranceUnreachable, "winding certificate failed");

  // exact fixed-level and grid checks
  for (const auto& lvl : levels) {
    auto v = profile.at(lvl);
    if (!(v.first == TowerElem(1) && v.second.is_zero()))
      fail(Errc::ToleranceUnreachable, "fixed level not pinned exactly");
  }
  Rational tol_sq = tol * tol;
  for (int j = 0; j < 1000; ++j) {
    Rational zg = Rational(-1) + Rational(2 * j, 999);
    if (abs(zg) <= two_eps) continue;
    auto v = profile.at(TowerElem(zg));
    TowerElem dist_sq =
        (v.first - TowerElem(1)) * (v.first - TowerElem(1)) + v.second * v.second;
    if (sign(dist_sq - TowerElem(tol_sq)) > 0)
      fail(Errc::ToleranceUnreachable, "grid deviation above tolerance");
  }
  (void)grid_points;

  return twisting_map(profile, Rotation3::identity());
}

}  // namespace birat
