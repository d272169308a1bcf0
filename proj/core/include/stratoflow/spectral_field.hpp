#pragma once

#include <array>
#include <complex>
#include <vector>

#include "stratoflow/torus.hpp"

namespace stratoflow {

using cplx = std::complex<double>;
using C4 = std::array<cplx, 4>;

inline C4 operator+(const C4& a, const C4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline C4 operator-(const C4& a, const C4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline C4 operator*(cplx s, const C4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }
// C^4 inner product, linear in the first argument
inline cplx cdot(const C4& a, const C4& b) {
  cplx s = 0;
  for (int i = 0; i < 4; ++i) s += a[i] * std::conj(b[i]);
  return s;
}
inline double cnorm2(const C4& a) {
  double s = 0;
  for (int i = 0; i < 4; ++i) s += std::norm(a[i]);
  return s;
}

// Scalar spectral field on the stored cube |n_i| <= N_i/2.
class SpectralScalar {
 public:
  SpectralScalar() = default;
  explicit SpectralScalar(const TorusSpec& t) : torus_(t), a_(t.modes(), cplx(0)) {}

  const TorusSpec& torus() const { return torus_; }
  cplx& at(Idx3 n) { return a_[torus_.flat(n)]; }
  const cplx& at(Idx3 n) const { return a_[torus_.flat(n)]; }

  void enforce_hermitian();
  double l2() const;  // coefficient little-l2 norm

  std::vector<cplx>& raw() { return a_; }
  const std::vector<cplx>& raw() const { return a_; }

 private:
  TorusSpec torus_;
  std::vector<cplx> a_;
};

// The unknown V = (v1, v2, v3, theta): one complex 4-tuple per stored
// frequency, Hermitian (the physical field is real), zero global average.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const TorusSpec& t) : torus_(t), a_(4 * t.modes(), cplx(0)) {}

  const TorusSpec& torus() const { return torus_; }

  cplx& at(int c, Idx3 n) { return a_[static_cast<std::size_t>(c) * torus_.modes() + torus_.flat(n)]; }
  const cplx& at(int c, Idx3 n) const {
    return a_[static_cast<std::size_t>(c) * torus_.modes() + torus_.flat(n)];
  }

  C4 coeff(Idx3 n) const { return {at(0, n), at(1, n), at(2, n), at(3, n)}; }
  void set_coeff(Idx3 n, const C4& v) {
    for (int c = 0; c < 4; ++c) at(c, n) = v[c];
  }
  void add_coeff(Idx3 n, const C4& v) {
    for (int c = 0; c < 4; ++c) at(c, n) += v[c];
  }

  // coeff(-n) := conj(coeff(n)) averaged symmetrically; pins n=0 and Nyquist
  void enforce_hermitian();
  void pin_zero_mode() { set_coeff({0, 0, 0}, C4{}); }
  void pin_nyquist();
  void zero_horizontal_average();  // wipe every n_h = 0 coefficient

  double hermitian_defect() const;          // max |coeff(-n) - conj(coeff(n))|
  double horizontal_average_mass() const;   // l2 mass on n_h = 0 modes
  double l2() const;                        // coefficient little-l2 over 4 components

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  std::vector<cplx>& raw() { return a_; }
  const std::vector<cplx>& raw() const { return a_; }

 private:
  TorusSpec torus_;
  std::vector<cplx> a_;
};

inline void SpectralScalar::enforce_hermitian() {
  for_each_mode(torus_, [&](Idx3 n) {
    if (n.n3 > 0 || (n.n3 == 0 && (n.n2 > 0 || (n.n2 == 0 && n.n1 > 0)))) {
      cplx v = 0.5 * (at(n) + std::conj(at(-n)));
      at(n) = v;
      at(-n) = std::conj(v);
    }
  });
  at({0, 0, 0}) = 0;
}

inline double SpectralScalar::l2() const {
  double s = 0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

inline void SpectralField::enforce_hermitian() {
  for_each_mode(torus_, [&](Idx3 n) {
    if (n.n3 > 0 || (n.n3 == 0 && (n.n2 > 0 || (n.n2 == 0 && n.n1 > 0)))) {
      for (int c = 0; c < 4; ++c) {
        cplx v = 0.5 * (at(c, n) + std::conj(at(c, -n)));
        at(c, n) = v;
        at(c, -n) = std::conj(v);
      }
    }
  });
  pin_zero_mode();
  pin_nyquist();
}

inline void SpectralField::pin_nyquist() {
  for_each_mode(torus_, [&](Idx3 n) {
    if (torus_.on_nyquist(n)) set_coeff(n, C4{});
  });
}

inline void SpectralField::zero_horizontal_average() {
  for (int n3 = -torus_.half(2); n3 <= torus_.half(2); ++n3) set_coeff({0, 0, n3}, C4{});
}

inline double SpectralField::hermitian_defect() const {
  double worst = 0;
  for_each_mode(torus_, [&](Idx3 n) {
    for (int c = 0; c < 4; ++c)
      worst = std::max(worst, std::abs(at(c, n) - std::conj(at(c, -n))));
  });
  return worst;
}

inline double SpectralField::horizontal_average_mass() const {
  double s = 0;
  for (int n3 = -torus_.half(2); n3 <= torus_.half(2); ++n3) s += cnorm2(coeff({0, 0, n3}));
  return std::sqrt(s);
}

inline double SpectralField::l2() const {
  double s = 0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

inline SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}
inline SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}
inline SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : a_) v *= s;
  return *this;
}

}  // namespace stratoflow
