#include "birat/circle_map.hpp"

#include <algorithm>

namespace birat {

namespace {

const std::vector<std::string> zvar = {"z"};

using UniPoly = std::vector<TowerElem>;  // dense, ascending degree

void trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UniPoly& p) { return int(p.size()) - 1; }

TowerElem eval(const UniPoly& p, const TowerElem& x) {
  TowerElem acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

UniPoly derivative(const UniPoly& p) {
  UniPoly out;
  for (size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * TowerElem(int(i)));
  return out;
}

// Remainder of a by b (field coefficients).
UniPoly remainder(UniPoly a, const UniPoly& b) {
  trim(a);
  while (deg(a) >= deg(b) && !a.empty()) {
    TowerElem q = a.back() / b.back();
    size_t shift = size_t(deg(a) - deg(b));
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

void make_monic(UniPoly& p) {
  trim(p);
  if (p.empty()) return;
  TowerElem inv = p.back().inverse();
  for (auto& c : p) c *= inv;
}

// Scale so the leading coefficient has absolute value 1; the scaling factor
// is positive, which is what the Sturm property tolerates.
void normalize_positive(UniPoly& p) {
  trim(p);
  if (p.empty()) return;
  int s = sign(p.back());
  TowerElem scale = (s > 0 ? p.back() : -p.back()).inverse();
  for (auto& c : p) c *= scale;
}

int sign_at(const UniPoly& p, const Rational& x) { return sign(eval(p, TowerElem(x))); }

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  UniPoly a = p;
  trim(a);
  if (a.empty()) return chain;
  chain.push_back(a);
  UniPoly b = derivative(a);
  trim(b);
  while (!b.empty()) {
    chain.push_back(b);
    UniPoly r = remainder(chain[chain.size() - 2], b);
    for (auto& c : r) c = -c;
    normalize_positive(r);
    b = r;
  }
  return chain;
}

int variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

std::vector<TowerElem> univariate_gcd(std::vector<TowerElem> a, std::vector<TowerElem> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = remainder(a, b);
    make_monic(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  if (a.empty()) a.push_back(TowerElem(0));
  return a;
}

int sturm_root_count(const std::vector<TowerElem>& poly, const Rational& a, const Rational& b) {
  UniPoly p = poly;
  trim(p);
  if (p.empty() || deg(p) == 0) return 0;
  // square-free part
  UniPoly g = univariate_gcd(p, derivative(p));
  if (deg(g) > 0) {
    // divide p by g exactly
    UniPoly q;
    UniPoly r = p;
    q.assign(size_t(deg(p) - deg(g) + 1), TowerElem(0));
    while (deg(r) >= deg(g) && !r.empty()) {
      TowerElem c = r.back() / g.back();
      size_t shift = size_t(deg(r) - deg(g));
      q[shift] = c;
      for (size_t i = 0; i < g.size(); ++i) r[i + shift] -= c * g[i];
      trim(r);
    }
    p = q;
    trim(p);
  }
  auto chain = sturm_chain(p);
  return variations(chain, a) - variations(chain, b);
}

CircleMap::CircleMap()
    : pn_(MultiPoly::zero(zvar)),
      pd_(MultiPoly::constant(zvar, TowerElem(1))),
      post_{TowerElem(1), TowerElem(0)} {}

CircleMap::CircleMap(MultiPoly p, std::pair<TowerElem, TowerElem> post)
    : CircleMap(std::move(p), MultiPoly::constant(zvar, TowerElem(1)), std::move(post)) {}

CircleMap::CircleMap(MultiPoly pn, MultiPoly pd, std::pair<TowerElem, TowerElem> post)
    : pn_(std::move(pn)), pd_(std::move(pd)), post_(std::move(post)) {
  if (pn_.vars() != zvar || pd_.vars() != zvar)
    fail(Errc::ParseError, "circle profile must be univariate in z");
  if (pd_.is_zero()) fail(Errc::DivisionByZero, "circle profile denominator is zero");
  if (!(post_.first * post_.first + post_.second * post_.second == TowerElem(1)))
    fail(Errc::TargetNotOnCircle, "post-rotation is not on the unit circle");
  // reduce to coprime form so that pn^2 + pd^2 has no real roots
  UniPoly a = pn_.univariate_coeffs(0);
  UniPoly b = pd_.univariate_coeffs(0);
  UniPoly g = univariate_gcd(a, b);
  if (deg(g) > 0) {
    auto qa = pn_.divided_by(MultiPoly::from_univariate(zvar, 0, g));
    auto qb = pd_.divided_by(MultiPoly::from_univariate(zvar, 0, g));
    if (qa && qb) {
      pn_ = *qa;
      pd_ = *qb;
    }
  }
  // normalize the pair to primitive form (integral coefficient components,
  // positive leading denominator coefficient); scaling both parts by the same
  // positive rational leaves the profile unchanged and keeps downstream
  // arithmetic integral
  {
    std::vector<MultiPoly> pair = {pn_, pd_};
    remove_common_content(pair);
    Int den_lcm = 1;
    for (const auto& p : pair)
      for (const auto& [e, c] : p.terms())
        for (const auto& r : c.coeffs()) {
          if (r == 0) continue;
          den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, denominator(r)) * denominator(r);
        }
    TowerElem scale{Rational(den_lcm)};
    pn_ = pair[0].scaled(scale);
    pd_ = pair[1].scaled(scale);
    int lead_sign = sign(pd_.univariate_coeffs(0).back());
    if (lead_sign < 0) {
      pn_ = pn_.scaled(TowerElem(-1));
      pd_ = pd_.scaled(TowerElem(-1));
    }
  }
}

CircleMap CircleMap::constant(const TowerElem& c1, const TowerElem& c2) {
  return CircleMap(MultiPoly::zero(zvar), {c1, c2});
}

MultiPoly CircleMap::num1() const {
  MultiPoly d2 = pd_ * pd_, n2 = pn_ * pn_;
  return (d2 - n2).scaled(post_.first) - (pn_ * pd_).scaled(TowerElem(2) * post_.second);
}

MultiPoly CircleMap::num2() const {
  MultiPoly d2 = pd_ * pd_, n2 = pn_ * pn_;
  return (d2 - n2).scaled(post_.second) + (pn_ * pd_).scaled(TowerElem(2) * post_.first);
}

MultiPoly CircleMap::den() const { return pd_ * pd_ + pn_ * pn_; }

std::pair<TowerElem, TowerElem> CircleMap::at(const TowerElem& z) const {
  TowerElem n = pn_.evaluate({z});
  TowerElem d = pd_.evaluate({z});
  TowerElem q = d * d + n * n;
  if (q.is_zero()) fail(Errc::DenominatorZero, "circle profile undefined at this level");
  TowerElem h1 = (d * d - n * n) / q;
  TowerElem h2 = TowerElem(2) * n * d / q;
  return {post_.first * h1 - post_.second * h2, post_.second * h1 + post_.first * h2};
}

CircleMap CircleMap::conjugate() const {
  return CircleMap(-pn_, pd_, {post_.first, -post_.second});
}

CircleMap circle_mul(const CircleMap& a, const CircleMap& b) {
  // tan half-angle addition: t = (t_a + t_b) / (1 - t_a t_b)
  MultiPoly pn = a.pn_ * b.pd_ + b.pn_ * a.pd_;
  MultiPoly pd = a.pd_ * b.pd_ - a.pn_ * b.pn_;
  std::pair<TowerElem, TowerElem> post = {
      a.post_.first * b.post_.first - a.post_.second * b.post_.second,
      a.post_.first * b.post_.second + a.post_.second * b.post_.first};
  if (pd.is_zero()) {
    // t_a t_b == 1 identically: the product is the constant rotation by
    // post_a * post_b * (-1, 0)... handled via the flipped constant form.
    return CircleMap(MultiPoly::zero(zvar), {-post.first, -post.second});
  }
  return CircleMap(std::move(pn), std::move(pd), std::move(post));
}

CircleMap interpolate_circle(const std::vector<CircleNode>& nodes) {
  if (nodes.empty()) fail(Errc::DuplicateNodes, "need at least one node");
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i].rho1 * nodes[i].rho1 + nodes[i].rho2 * nodes[i].rho2 == TowerElem(1)))
      fail(Errc::TargetNotOnCircle, "target is not exactly on the unit circle");
    if (sign(TowerElem(1) - nodes[i].z) <= 0 || sign(nodes[i].z + TowerElem(1)) <= 0)
      fail(Errc::NodeOutOfRange, "interpolation level must lie in (-1,1)");
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i].z == nodes[j].z) fail(Errc::DuplicateNodes, "duplicate interpolation level");
  }

  // Choose a post-rotation c so that no rotated target conj(c)*rho equals
  // (-1,0), i.e. no rho equals -c. Preference order: identity, then the flip,
  // then small rational circle points.
  std::vector<std::pair<TowerElem, TowerElem>> candidates;
  candidates.push_back({TowerElem(1), TowerElem(0)});
  candidates.push_back({TowerElem(-1), TowerElem(0)});
  for (const Rational& q : {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2),
                            Rational(-2), Rational(1, 3), Rational(-1, 3), Rational(3), Rational(-3)}) {
    Rational s = 1 + q * q;
    candidates.push_back({TowerElem((1 - q * q) / s), TowerElem(2 * q / s)});
  }
  const std::pair<TowerElem, TowerElem>* post = nullptr;
  for (const auto& c : candidates) {
    bool ok = true;
    for (const auto& n : nodes)
      if (n.rho1 == -c.first && n.rho2 == -c.second) ok = false;
    if (ok) {
      post = &c;
      break;
    }
  }
  if (!post) fail(Errc::SearchExhausted, "no post-rotation avoids the antipode");

  // Half-angle parameters of the rotated targets.
  std::vector<TowerElem> ts;
  for (const auto& n : nodes) {
    // conj(c) * rho
    TowerElem r1 = post->first * n.rho1 + post->second * n.rho2;
    TowerElem r2 = post->first * n.rho2 - post->second * n.rho1;
    ts.push_back(r2 / (TowerElem(1) + r1));
  }

  // Lagrange interpolation over the tower field.
  MultiPoly p = MultiPoly::zero(zvar);
  MultiPoly zpoly = MultiPoly::variable(zvar, "z");
  for (size_t j = 0; j < nodes.size(); ++j) {
    MultiPoly basis = MultiPoly::constant(zvar, TowerElem(1));
    TowerElem denom(1);
    for (size_t k = 0; k < nodes.size(); ++k) {
      if (k == j) continue;
      basis = basis * (zpoly - MultiPoly::constant(zvar, nodes[k].z));
      denom *= nodes[j].z - nodes[k].z;
    }
    p += basis.scaled(ts[j] / denom);
  }

  CircleMap f(p, *post);
  for (const auto& n : nodes) {
    auto v = f.at(n.z);
    if (!(v.first == n.rho1 && v.second == n.rho2))
      fail(Errc::TargetNotOnCircle, "interpolation postcondition failed");
  }
  return f;
}

int winding_number(const CircleMap& f) {
  UniPoly pn = f.pn().univariate_coeffs(0);
  UniPoly pd = f.pd().univariate_coeffs(0);
  trim(pn);
  trim(pd);
  int total = 0;

  // Interior crossings of the marked point happen exactly at the real poles
  // of the parameter fraction; the side signs decide the direction.
  // Poles exactly at the endpoints contribute 0 by convention; strip the
  // (z -+ 1) factors from the locator copy so isolation endpoints are clean.
  UniPoly pd_loc = pd;
  for (const Rational& r : {Rational(1), Rational(-1)}) {
    while (deg(pd_loc) >= 1 && sign(eval(pd_loc, TowerElem(r))) == 0) {
      // synthetic division by (z - r)
      UniPoly q(pd_loc.size() - 1, TowerElem(0));
      TowerElem carry(0);
      for (size_t i = pd_loc.size(); i-- > 1;) {
        carry = pd_loc[i] + carry * TowerElem(r);
        q[i - 1] = carry;
      }
      pd_loc = q;
      trim(pd_loc);
    }
  }
  if (deg(pd_loc) >= 1) {
    struct Box {
      Rational lo, hi;
      int roots;
    };
    std::vector<Box> queue;
    {
      int k = sturm_root_count(pd_loc, Rational(-1), Rational(1));
      if (k > 0) queue.push_back({Rational(-1), Rational(1), k});
    }
    while (!queue.empty()) {
      Box box = queue.back();
      queue.pop_back();
      if (box.roots == 1) {
        // side signs need pn and pd nonzero at the box ends and pn without
        // roots inside
        bool ends_clear = sign_at(pd, box.lo) != 0 && sign_at(pd, box.hi) != 0 &&
                          sign_at(pn, box.lo) != 0 && sign_at(pn, box.hi) != 0;
        bool pn_clear = ends_clear && sturm_root_count(pn, box.lo, box.hi) == 0;
        if (pn_clear) {
          int sl = sign_at(pn, box.lo) * sign_at(pd, box.lo);
          int sr = sign_at(pn, box.hi) * sign_at(pd, box.hi);
          if (sl > 0 && sr < 0) total += 1;
          if (sl < 0 && sr > 0) total -= 1;
          continue;
        }
      }
      // split at a point avoiding the locator's roots
      Rational mid;
      bool found = false;
      for (int j = 1; j <= 6 && !found; ++j) {
        mid = box.lo + (box.hi - box.lo) * Rational(j, 7);
        if (sign_at(pd_loc, mid) != 0 && sign_at(pn, mid) != 0) found = true;
      }
      if (!found) fail(Errc::SignRefinementFailed, "could not split pole interval");
      int left = sturm_root_count(pd_loc, box.lo, mid);
      int right = box.roots - left;
      if (left > 0) queue.push_back({box.lo, mid, left});
      if (right > 0) queue.push_back({mid, box.hi, right});
    }
  }

  // Closure through the shorter arc between the endpoint values.
  TowerElem d0 = eval(pd, TowerElem(Rational(-1)));
  TowerElem d1 = eval(pd, TowerElem(Rational(1)));
  if (!d0.is_zero() && !d1.is_zero()) {
    TowerElem t0 = eval(pn, TowerElem(Rational(-1))) / d0;
    TowerElem t1 = eval(pn, TowerElem(Rational(1))) / d1;
    if (sign(TowerElem(1) + t0 * t1) < 0) total += sign(t1);
  }
  return total;
}

}  // namespace birat
