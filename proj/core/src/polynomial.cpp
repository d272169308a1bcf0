#include "stratoflow/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace stratoflow {

double Poly::eval(double x) const {
  double acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Poly Poly::derivative() const {
  Poly d;
  if (c.size() <= 1) {
    d.c = {0.0};
    return d;
  }
  d.c.resize(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

double Poly::max_abs_coeff() const {
  double m = 0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

void Poly::trim(double rel_tol) {
  double m = max_abs_coeff();
  double floor_val = m * rel_tol;
  while (c.size() > 1 && std::abs(c.back()) <= floor_val) c.pop_back();
  if (c.empty()) c = {0.0};
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Poly poly_scale(const Poly& a, double s) {
  Poly r = a;
  for (double& v : r.c) v *= s;
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Poly poly_rem(const Poly& a, const Poly& b) {
  Poly r = a;
  r.trim();
  Poly d = b;
  d.trim();
  while (r.degree() >= d.degree() && !(r.degree() == 0 && r.c[0] == 0.0)) {
    double q = r.c.back() / d.c.back();
    int shift = r.degree() - d.degree();
    for (std::size_t i = 0; i < d.c.size(); ++i) r.c[i + shift] -= q * d.c[i];
    r.c.pop_back();
    if (r.c.empty()) {
      r.c = {0.0};
      break;
    }
  }
  r.trim();
  return r;
}

namespace {

bool is_zero_poly(const Poly& p) { return p.degree() == 0 && p.c[0] == 0.0; }

Poly normalized(Poly p) {
  double m = p.max_abs_coeff();
  if (m > 0)
    for (double& v : p.c) v /= m;
  return p;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  Poly p0 = normalized(p);
  p0.trim();
  chain.push_back(p0);
  Poly p1 = normalized(p0.derivative());
  p1.trim();
  if (is_zero_poly(p1)) return chain;
  chain.push_back(p1);
  while (true) {
    Poly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (is_zero_poly(r)) break;
    for (double& v : r.c) v = -v;
    chain.push_back(normalized(r));
    if (chain.back().degree() == 0) break;
  }
  return chain;
}

int sign_of(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

int sign_changes(const std::vector<Poly>& chain, double x) {
  int changes = 0, prev = 0;
  for (const Poly& p : chain) {
    double v = p.eval(x);
    int s = sign_of(v, 0.0);
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

}  // namespace

Poly square_free_part(const Poly& p) {
  // gcd(p, p') by the euclidean chain; the last nonzero remainder is the gcd
  Poly a = normalized(p);
  a.trim();
  Poly b = normalized(a.derivative());
  b.trim();
  if (is_zero_poly(b)) return a;
  while (true) {
    Poly r = poly_rem(a, b);
    if (is_zero_poly(r) || r.degree() == 0) {
      if (r.degree() == 0 && std::abs(r.c[0]) > 1e-10) return normalized(p);  // coprime
      break;
    }
    a = b;
    b = normalized(r);
  }
  // divide p by gcd = b via synthetic division (quotient only)
  Poly g = b;
  g.trim();
  Poly q;
  Poly r = normalized(p);
  r.trim();
  q.c.assign(std::max<std::size_t>(1, r.c.size() - g.c.size() + 1), 0.0);
  while (r.degree() >= g.degree() && !is_zero_poly(r)) {
    double qc = r.c.back() / g.c.back();
    int shift = r.degree() - g.degree();
    q.c[shift] = qc;
    for (std::size_t i = 0; i < g.c.size(); ++i) r.c[i + shift] -= qc * g.c[i];
    r.c.pop_back();
    if (r.c.empty()) break;
  }
  q.trim();
  return is_zero_poly(q) ? normalized(p) : q;
}

int count_real_roots(const Poly& p, double lo, double hi) {
  Poly sf = square_free_part(p);
  if (sf.degree() == 0) return 0;
  auto chain = sturm_chain(sf);
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

RootIsolationResult isolate_real_roots(const Poly& p, double lo, double hi) {
  RootIsolationResult out;
  Poly sf = square_free_part(p);
  sf.trim();
  if (sf.degree() == 0) return out;
  auto chain = sturm_chain(sf);
  Poly dsf = sf.derivative();

  struct Interval {
    double a, b;
    int count;
  };
  std::vector<Interval> stack;
  int total = sign_changes(chain, lo) - sign_changes(chain, hi);
  if (total <= 0) return out;
  stack.push_back({lo, hi, total});

  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    if (iv.count == 0) continue;
    double width = iv.b - iv.a;
    if (iv.count == 1 && width < 1e-9 * std::max(1.0, std::abs(iv.b))) {
      // Newton polish from the midpoint
      double x = 0.5 * (iv.a + iv.b);
      for (int it = 0; it < 60; ++it) {
        double f = sf.eval(x);
        double d = dsf.eval(x);
        if (d == 0.0) break;
        double step = f / d;
        x -= step;
        if (!(x >= iv.a - width && x <= iv.b + width)) {
          x = 0.5 * (iv.a + iv.b);
          break;
        }
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
      }
      double cond = std::abs(dsf.eval(x));
      if (cond < 1e-7 * sf.max_abs_coeff()) out.precision_warning = true;
      out.roots.push_back(x);
      continue;
    }
    double mid = 0.5 * (iv.a + iv.b);
    // nudge off a root of the chain
    if (sf.eval(mid) == 0.0) mid += width * 1e-9;
    int left = sign_changes(chain, iv.a) - sign_changes(chain, mid);
    stack.push_back({iv.a, mid, left});
    stack.push_back({mid, iv.b, iv.count - left});
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace stratoflow
