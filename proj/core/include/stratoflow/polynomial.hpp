#pragma once

#include <vector>

namespace stratoflow {

// dense univariate polynomial, c[i] x^i
struct Poly {
  std::vector<double> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  double eval(double x) const;
  Poly derivative() const;
  void trim(double rel_tol = 1e-13);
  double max_abs_coeff() const;
};

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
Poly poly_add(const Poly& a, const Poly& b);
// euclidean remainder a mod b (b nonzero after trim)
Poly poly_rem(const Poly& a, const Poly& b);
// square-free part p / gcd(p, p') (numerical gcd with relative tolerance)
Poly square_free_part(const Poly& p);

struct RootIsolationResult {
  std::vector<double> roots;     // ascending, interior of (lo, hi)
  bool precision_warning = false;  // some root poorly conditioned
};

// Sturm chain of the square-free part + bisection, then Newton polish.
RootIsolationResult isolate_real_roots(const Poly& p, double lo, double hi);

// number of distinct real roots in (lo, hi]
int count_real_roots(const Poly& p, double lo, double hi);

}  // namespace stratoflow
