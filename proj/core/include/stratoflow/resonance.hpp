#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratoflow/spectral_field.hpp"
#include "stratoflow/wave_basis.hpp"

namespace stratoflow {

enum class ModeLabel : int { Kernel = 0, Plus = 1, Minus = -1 };

inline char label_char(ModeLabel l) {
  return l == ModeLabel::Kernel ? '0' : (l == ModeLabel::Plus ? '+' : '-');
}

// omega(n) = |nch_h| / |nch|, zero at n = 0 and on the degenerate set n_h = 0
double mode_omega(const TorusSpec& t, Idx3 n);

// omega^a(k) + omega^b(m) - omega^c(n); ConstraintError unless k + m = n
double omega_sum(const TorusSpec& t, Idx3 k, Idx3 m, Idx3 n, ModeLabel a, ModeLabel b,
                 ModeLabel c);

struct TriadRecord {
  Idx3 k, m, n;
  ModeLabel a, b, c;
  double omega_sum = 0.0;
  std::string set_class;  // R0..R3 for kernel-output triads, "osc" for c = +-
};

// exact a_i^2 as rationals (num/den), for the exact decision procedure
struct RationalSquares {
  std::int64_t a1_num = 1, a1_den = 1;
  std::int64_t a2_num = 1, a2_den = 1;
  std::int64_t a3_num = 1, a3_den = 1;

  bool operator==(const RationalSquares&) const = default;
};

struct ResonanceOptions {
  bool exact = false;
  double tolerance = 1e-12;  // absolute, on omega_sum
  std::optional<RationalSquares> rational_squares;
};

// exact decision of omega^a(k) + omega^b(m) - omega^c(n) = 0 with rational a_i^2
bool omega_sum_is_zero_exact(const RationalSquares& sq, Idx3 k, Idx3 m, Idx3 n, ModeLabel a,
                             ModeLabel b, ModeLabel c);

// all triads with |k|inf, |m|inf <= N (zero frequencies excluded, oscillating
// labels suppressed at degenerate frequencies) whose eigenvalue sum vanishes
std::vector<TriadRecord> enumerate_resonant_triads(const TorusSpec& t, int N,
                                                   const ResonanceOptions& opts = {});

std::string triads_to_csv(const std::vector<TriadRecord>& triads);

// C^{a,b,c}_{k,m,n} = sum_j e^{a,j}(k) mch_j (e^b(m)|e^c(n));
// DegenerateError if any of k_h, m_h, n_h vanishes
cplx coefficient_C(const TorusSpec& t, Idx3 k, Idx3 m, Idx3 n, ModeLabel a, ModeLabel b,
                   ModeLabel c);

// cleared-denominator C^{+-,0} on the unit lattice: the expanded product
// -(1/2) C = (k1 k3 m1 + k2 k3 m2 - |k_h|^2 m3)(m2 m3 n1 - m1 m3 n2), n = k+m;
// exactly antisymmetric in (k, m) as an integer polynomial identity
std::int64_t coefficient_C_pm0_integer(Idx3 k, Idx3 m);

// beta(m_h, n3): the four-term cancellation bracket (horizontal 2-vector);
// requires even n3
std::array<cplx, 2> beta_value(const WaveFrame& frame, const SpectralField& U,
                               std::array<int, 2> m_h, int n3);

// defect of the displayed degree-8 identity (RHS - LHS); zero exactly on the
// oscillating resonance set
double resonance_polynomial(Idx3 k, Idx3 m, const TorusSpec& t);
// magnitude scale of the identity's terms, for relative zero tests
double resonance_polynomial_scale(Idx3 k, Idx3 m, const TorusSpec& t);

struct LeadingTerms {
  double P0 = 0.0;  // coefficient of a3^8 (degree-0 in the vertical variables)
  double P8 = 0.0;  // degree-8 vertical part evaluated with a3 = 1
};
LeadingTerms leading_terms(Idx3 k, Idx3 m, double a1, double a2);

struct A3RootResult {
  std::vector<double> roots;  // positive a3 with polynomial(k, m, (a1,a2,a3)) = 0
  bool precision_warning = false;
};
// requires k_h, m_h, (k+m)_h nonzero (else DomainError: P0 = 0)
A3RootResult a3_resonant_roots(Idx3 k, Idx3 m, double a1, double a2, double a3_max = 100.0);

struct NonResonanceCertificate {
  TorusSpec torus;
  int N = 0;
  double margin = 0.0;
  std::string method;  // "floating" | "exact"
  TriadRecord worst;   // argmin |omega_sum|

  std::string to_json() const;
  // recompute the margin of the recorded worst triad; false if it dropped
  bool validate() const;
};

// scans purely oscillating triads (labels in {+,-}^3) with k_h, m_h, n_h all
// nonzero up to |.|inf <= N; ResonantDomainError (naming triads) when a
// resonance is found
NonResonanceCertificate certify_nonresonant(const TorusSpec& t, int N,
                                            const ResonanceOptions& opts = {});

}  // namespace stratoflow
