#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "stratoflow/errors.hpp"

namespace stratoflow {

struct Idx3 {
  int n1 = 0, n2 = 0, n3 = 0;

  friend Idx3 operator+(Idx3 a, Idx3 b) { return {a.n1 + b.n1, a.n2 + b.n2, a.n3 + b.n3}; }
  friend Idx3 operator-(Idx3 a, Idx3 b) { return {a.n1 - b.n1, a.n2 - b.n2, a.n3 - b.n3}; }
  friend Idx3 operator-(Idx3 a) { return {-a.n1, -a.n2, -a.n3}; }
  friend bool operator==(Idx3 a, Idx3 b) = default;

  bool is_zero() const { return n1 == 0 && n2 == 0 && n3 == 0; }
  bool horizontal_zero() const { return n1 == 0 && n2 == 0; }
  int sup_norm() const { return std::max({std::abs(n1), std::abs(n2), std::abs(n3)}); }
  std::string str() const {
    return "(" + std::to_string(n1) + "," + std::to_string(n2) + "," + std::to_string(n3) + ")";
  }
};

struct Vec3 {
  double x1 = 0, x2 = 0, x3 = 0;
  double norm2() const { return x1 * x1 + x2 * x2 + x3 * x3; }
  double norm() const { return std::sqrt(norm2()); }
  double h_norm2() const { return x1 * x1 + x2 * x2; }
  double h_norm() const { return std::sqrt(h_norm2()); }
};

// Torus \prod_i [0, 2 pi a_i] discretized with N_i collocation points per
// direction. Spectral storage covers |n_i| <= N_i/2; check frequencies are
// n_i / a_i. Fourier convention: u = sum_n u_n e^{i nch . x}, d_j <-> i nch_j.
struct TorusSpec {
  double a1 = 1.0, a2 = 1.0, a3 = 1.0;
  int N1 = 8, N2 = 8, N3 = 8;

  void validate() const {
    if (!(a1 > 0) || !(a2 > 0) || !(a3 > 0))
      throw ValidationError("TorusSpec: periods a_i must be positive");
    for (int N : {N1, N2, N3})
      if (N < 4 || N % 2 != 0)
        throw ValidationError("TorusSpec: grid sizes N_i must be even and >= 4");
  }

  Vec3 check(Idx3 n) const { return {n.n1 / a1, n.n2 / a2, n.n3 / a3}; }

  int half(int axis) const { return axis == 0 ? N1 / 2 : (axis == 1 ? N2 / 2 : N3 / 2); }
  // cube side of the coefficient storage per direction
  int dim(int axis) const { return 2 * half(axis) + 1; }
  std::size_t modes() const {
    return static_cast<std::size_t>(dim(0)) * dim(1) * dim(2);
  }
  bool in_range(Idx3 n) const {
    return std::abs(n.n1) <= half(0) && std::abs(n.n2) <= half(1) && std::abs(n.n3) <= half(2);
  }
  bool on_nyquist(Idx3 n) const {
    return std::abs(n.n1) == half(0) || std::abs(n.n2) == half(1) || std::abs(n.n3) == half(2);
  }
  // 2/3-rule band: |n_i| <= floor(N_i/3)
  int dealias_limit(int axis) const {
    return (axis == 0 ? N1 : (axis == 1 ? N2 : N3)) / 3;
  }
  bool in_dealias_band(Idx3 n) const {
    return std::abs(n.n1) <= dealias_limit(0) && std::abs(n.n2) <= dealias_limit(1) &&
           std::abs(n.n3) <= dealias_limit(2);
  }

  std::size_t flat(Idx3 n) const {
    return (static_cast<std::size_t>(n.n3 + half(2)) * dim(1) + (n.n2 + half(1))) * dim(0) +
           (n.n1 + half(0));
  }

  friend bool operator==(const TorusSpec& a, const TorusSpec& b) {
    return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.N1 == b.N1 && a.N2 == b.N2 &&
           a.N3 == b.N3;
  }
};

// Visit every stored frequency (n1 fastest, matching file order).
template <typename F>
void for_each_mode(const TorusSpec& t, F&& f) {
  for (int n3 = -t.half(2); n3 <= t.half(2); ++n3)
    for (int n2 = -t.half(1); n2 <= t.half(1); ++n2)
      for (int n1 = -t.half(0); n1 <= t.half(0); ++n1) f(Idx3{n1, n2, n3});
}

}  // namespace stratoflow
