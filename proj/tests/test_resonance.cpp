#include <cmath>
#include <set>

#include "doctest.h"
#include "stratoflow/resonance.hpp"
#include "test_util.hpp"

using namespace stratoflow;
using namespace stratoflow::testutil;

namespace {
const TorusSpec kUnit{1.0, 1.0, 1.0, 8, 8, 8};
}

TEST_CASE("omega_sum closed-form values and constraint") {
  Idx3 k{1, 0, 1}, m{-1, 0, 1}, n{0, 0, 2};
  CHECK(omega_sum(kUnit, k, m, n, ModeLabel::Plus, ModeLabel::Minus, ModeLabel::Kernel) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(omega_sum(kUnit, k, m, n, ModeLabel::Plus, ModeLabel::Plus, ModeLabel::Kernel) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(omega_sum(kUnit, k, m, n, ModeLabel::Kernel, ModeLabel::Kernel, ModeLabel::Kernel) ==
        0.0);
  CHECK_THROWS_AS((void)omega_sum(kUnit, k, m, {0, 0, 3}, ModeLabel::Kernel, ModeLabel::Kernel,
                                  ModeLabel::Kernel),
                  ConstraintError);
}

TEST_CASE("enumeration: R0 is unconstrained, R1 empty, R3 has the closed form") {
  ResonanceOptions opts;
  auto triads = enumerate_resonant_triads(kUnit, 2, opts);

  std::size_t r0 = 0, r1 = 0;
  for (const auto& tr : triads) {
    if (tr.set_class == "R0") ++r0;
    if (tr.set_class == "R1") ++r1;
  }
  // every convolution triad appears in R0
  std::size_t expected = 0;
  for (int k3 = -2; k3 <= 2; ++k3)
    for (int k2 = -2; k2 <= 2; ++k2)
      for (int k1 = -2; k1 <= 2; ++k1)
        for (int m3 = -2; m3 <= 2; ++m3)
          for (int m2 = -2; m2 <= 2; ++m2)
            for (int m1 = -2; m1 <= 2; ++m1) {
              Idx3 k{k1, k2, k3}, m{m1, m2, m3};
              if (k.is_zero() || m.is_zero() || (k + m).is_zero()) continue;
              ++expected;
            }
  CHECK(r0 == expected);
  CHECK(r1 == 0);  // omega(k) + omega(m) = 0 forces degenerate frequencies

  // R3 with n_h = 0: exactly the m_3 = +-k_3, k_h = -m_h families
  auto triads4 = enumerate_resonant_triads(kUnit, 3, opts);
  std::set<std::array<int, 6>> found;
  for (const auto& tr : triads4) {
    if (tr.set_class != "R3" || !tr.n.horizontal_zero()) continue;
    CHECK(tr.k.n1 == -tr.m.n1);
    CHECK(tr.k.n2 == -tr.m.n2);
    CHECK((tr.k.n3 == tr.m.n3 || tr.k.n3 == -tr.m.n3));
    found.insert({tr.k.n1, tr.k.n2, tr.k.n3, tr.m.n1, tr.m.n2, tr.m.n3});
  }
  // converse: every closed-form pair is present
  for (int k3 = -3; k3 <= 3; ++k3)
    for (int k2 = -3; k2 <= 3; ++k2)
      for (int k1 = -3; k1 <= 3; ++k1) {
        Idx3 k{k1, k2, k3};
        if (k.horizontal_zero()) continue;
        for (int s : {1, -1}) {
          Idx3 m{-k1, -k2, s * k3};
          if ((k + m).is_zero()) continue;
          CHECK(found.count({k.n1, k.n2, k.n3, m.n1, m.n2, m.n3}) == 1);
        }
      }
}

TEST_CASE("exact enumeration agrees with floating on a rational torus") {
  TorusSpec t{1.0, 1.0, 0.5, 8, 8, 8};  // a3^2 = 1/4
  ResonanceOptions fl;
  fl.tolerance = 1e-12;
  ResonanceOptions ex;
  ex.exact = true;
  ex.rational_squares = RationalSquares{1, 1, 1, 1, 1, 4};
  auto a = enumerate_resonant_triads(t, 2, fl);
  auto b = enumerate_resonant_triads(t, 2, ex);
  auto key = [](const TriadRecord& tr) {
    return std::array<int, 9>{tr.k.n1, tr.k.n2, tr.k.n3, tr.m.n1, tr.m.n2,
                              tr.m.n3, (int)tr.a,  (int)tr.b, (int)tr.c};
  };
  std::set<std::array<int, 9>> sa, sb;
  for (const auto& tr : a) sa.insert(key(tr));
  for (const auto& tr : b) sb.insert(key(tr));
  CHECK(sa == sb);

  ResonanceOptions bad;
  bad.exact = true;
  CHECK_THROWS_AS((void)enumerate_resonant_triads(t, 1, bad), ExactnessError);
}

TEST_CASE("coefficient C: spec values, antisymmetry, normalization link") {
  // every monomial carries k3 or m3
  CHECK(coefficient_C_pm0_integer({1, 0, 0}, {0, 1, 0}) == 0);
  CHECK(std::abs(coefficient_C(kUnit, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, ModeLabel::Plus,
                               ModeLabel::Minus, ModeLabel::Kernel)) < 1e-15);

  CHECK(coefficient_C_pm0_integer({1, 0, 1}, {0, 1, 1}) == 2);
  CHECK(coefficient_C_pm0_integer({0, 1, 1}, {1, 0, 1}) == -2);

  // exhaustive exact antisymmetry over the admissible (resonant) pairs
  // k3^2 |m_h|^2 = m3^2 |k_h|^2 on a reduced box (the acceptance suite runs
  // the full |k|inf, |m|inf <= 6 sweep)
  int admissible = 0;
  for (int k1 = -3; k1 <= 3; ++k1)
    for (int k2 = -3; k2 <= 3; ++k2)
      for (int k3 = -3; k3 <= 3; ++k3)
        for (int m1 = -3; m1 <= 3; ++m1)
          for (int m2 = -3; m2 <= 3; ++m2)
            for (int m3 = -3; m3 <= 3; ++m3) {
              Idx3 k{k1, k2, k3}, m{m1, m2, m3};
              long long kh2 = k1 * k1 + k2 * k2, mh2 = m1 * m1 + m2 * m2;
              if (static_cast<long long>(k3) * k3 * mh2 != static_cast<long long>(m3) * m3 * kh2)
                continue;
              ++admissible;
              REQUIRE(coefficient_C_pm0_integer(k, m) + coefficient_C_pm0_integer(m, k) == 0);
            }
  CHECK(admissible > 1000);

  // C^{-,+,0} = C^{+,-,0}, real, proportional to the integer form
  Rng rng(17, "cnorm");
  for (int trial = 0; trial < 200; ++trial) {
    Idx3 k{rng.uniform_int(-4, 4), rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};
    Idx3 m{rng.uniform_int(-4, 4), rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};
    Idx3 n = k + m;
    if (k.horizontal_zero() || m.horizontal_zero() || n.horizontal_zero()) continue;
    cplx cpm = coefficient_C(kUnit, k, m, n, ModeLabel::Plus, ModeLabel::Minus, ModeLabel::Kernel);
    cplx cmp = coefficient_C(kUnit, k, m, n, ModeLabel::Minus, ModeLabel::Plus, ModeLabel::Kernel);
    CHECK(std::abs(cpm - cmp) < 1e-13);
    CHECK(std::abs(cpm.imag()) < 1e-13);
    Vec3 ck = kUnit.check(k), cm = kUnit.check(m), cn = kUnit.check(n);
    double D = ck.h_norm() * ck.norm() * cm.h_norm() * cm.norm() * cn.h_norm();
    double expect = -static_cast<double>(coefficient_C_pm0_integer(k, m)) / (4.0 * D);
    CHECK(cpm.real() == doctest::Approx(expect).epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)coefficient_C(kUnit, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}, ModeLabel::Plus,
                                      ModeLabel::Minus, ModeLabel::Kernel),
                  DegenerateError);
}

TEST_CASE("beta vanishes: zero field, structured modes, random fields") {
  WaveFrame frame(kUnit);
  SpectralField zero(kUnit);
  auto bz = beta_value(frame, zero, {1, 1}, 2);
  CHECK(std::abs(bz[0]) + std::abs(bz[1]) == 0.0);

  // single e+ mode at (m_h, n3/2) plus its Hermitian partner
  {
    SpectralField U(kUnit);
    Idx3 p{1, 2, 1};
    FrameEntry fe = build_frame(kUnit, p);
    U.set_coeff(p, cplx(0.7, -0.2) * fe.ep);
    U.enforce_hermitian();
    auto b = beta_value(frame, U, {1, 2}, 2);
    CHECK(std::abs(b[0]) + std::abs(b[1]) < 1e-14);
  }

  // mixed content at both (m_h, n3/2) and (-m_h, n3/2): the A^h, A^3 sign
  // relations make the four terms cancel pairwise
  {
    SpectralField U(kUnit);
    Idx3 p{1, 2, 1}, q{-1, -2, 1};
    FrameEntry fp = build_frame(kUnit, p), fq = build_frame(kUnit, q);
    U.set_coeff(p, cplx(0.3, 0.4) * fp.ep + cplx(-1.1, 0.2) * fp.em);
    U.set_coeff(q, cplx(0.9, -0.5) * fq.ep + cplx(0.1, 0.8) * fq.em);
    U.enforce_hermitian();
    auto b = beta_value(frame, U, {1, 2}, 2);
    CHECK(std::abs(b[0]) + std::abs(b[1]) < 1e-14);
  }

  Rng rng(23, "beta");
  for (int trial = 0; trial < 50; ++trial) {
    SpectralField U = random_solenoidal(kUnit, rng);
    double u2 = U.l2() * U.l2();
    double worst = 0;
    for (int n3 = -4; n3 <= 4; n3 += 2)
      for (int h1 = -3; h1 <= 3; ++h1)
        for (int h2 = -3; h2 <= 3; ++h2) {
          auto b = beta_value(frame, U, {h1, h2}, n3);
          worst = std::max(worst, std::abs(b[0]) + std::abs(b[1]));
        }
    CHECK(worst < 1e-12 * u2);
  }
}

TEST_CASE("resonance polynomial: leading terms and eigenvalue-sum equivalence") {
  // P0 = 0 whenever a horizontal part vanishes
  CHECK(leading_terms({0, 0, 2}, {1, 1, 1}, 1.0, 1.0).P0 == 0.0);
  // P0 = -3 |k_h|^4 |m_h|^4 |n_h|^4 on the unit lattice
  Idx3 k{1, 0, 1}, m{0, 1, 1};
  LeadingTerms lt = leading_terms(k, m, 1.0, 1.0);
  CHECK(lt.P0 == doctest::Approx(-3.0 * 1.0 * 1.0 * std::pow(2.0, 2)).epsilon(1e-14));
  // P8 matches the displayed homogeneous sum (unit lattice, direct expansion)
  {
    auto H = [](Idx3 f) { return double(f.n1) * f.n1 + double(f.n2) * f.n2; };
    auto V = [](Idx3 f) { return double(f.n3) * f.n3; };
    Idx3 n = k + m;
    double p8 = V(m) * V(m) * V(n) * V(n) * H(k) * H(k) +
                V(k) * V(k) * V(n) * V(n) * H(m) * H(m) +
                V(k) * V(k) * V(m) * V(m) * H(n) * H(n) -
                2 * H(k) * H(m) * V(k) * V(m) * V(n) * V(n) -
                2 * H(k) * H(n) * V(k) * V(n) * V(m) * V(m) -
                2 * H(m) * H(n) * V(m) * V(n) * V(k) * V(k);
    CHECK(lt.P8 == doctest::Approx(p8).epsilon(1e-14));
  }

  // zero-set equivalence on random triads (mix of generic and constructed)
  Rng rng(31, "poly");
  int resonant_seen = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    Idx3 kk{rng.uniform_int(-5, 5), rng.uniform_int(-5, 5), rng.uniform_int(-5, 5)};
    Idx3 mm{rng.uniform_int(-5, 5), rng.uniform_int(-5, 5), rng.uniform_int(-5, 5)};
    Idx3 nn = kk + mm;
    if (kk.horizontal_zero() || mm.horizontal_zero() || nn.horizontal_zero()) continue;
    TorusSpec t{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), 8, 8, 8};
    double minsum = 1e300;
    for (ModeLabel a : {ModeLabel::Plus, ModeLabel::Minus})
      for (ModeLabel b : {ModeLabel::Plus, ModeLabel::Minus})
        for (ModeLabel c : {ModeLabel::Plus, ModeLabel::Minus})
          minsum = std::min(minsum, std::abs(omega_sum(t, kk, mm, nn, a, b, c)));
    double rel = std::abs(resonance_polynomial(kk, mm, t)) / resonance_polynomial_scale(kk, mm, t);
    if (minsum < 1e-9) {
      CHECK(rel < 1e-9);
      ++resonant_seen;
    }
    if (minsum > 0.1) CHECK(rel > 1e-9);
  }

  // constructed resonances via the root finder feed the positive branch
  for (int trial = 0; trial < 40; ++trial) {
    Idx3 kk{rng.uniform_int(-4, 4), rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};
    Idx3 mm{rng.uniform_int(-4, 4), rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};
    Idx3 nn = kk + mm;
    if (kk.horizontal_zero() || mm.horizontal_zero() || nn.horizontal_zero()) continue;
    A3RootResult rr = a3_resonant_roots(kk, mm, 1.0, 1.0, 20.0);
    for (double a3 : rr.roots) {
      TorusSpec t{1.0, 1.0, a3, 8, 8, 8};
      double scale = resonance_polynomial_scale(kk, mm, t);
      CHECK(std::abs(resonance_polynomial(kk, mm, t)) < 1e-8 * scale);
      double minsum = 1e300;
      for (ModeLabel a : {ModeLabel::Plus, ModeLabel::Minus})
        for (ModeLabel b : {ModeLabel::Plus, ModeLabel::Minus})
          for (ModeLabel c : {ModeLabel::Plus, ModeLabel::Minus})
            minsum = std::min(minsum, std::abs(omega_sum(t, kk, mm, nn, a, b, c)));
      CHECK(minsum < 1e-7);  // polynomial roots verify against the radical form
      ++resonant_seen;
    }
  }
  CHECK(resonant_seen > 0);
}

TEST_CASE("a3 root isolation: precondition, residuals, count") {
  CHECK_THROWS_AS((void)a3_resonant_roots({0, 0, 1}, {1, 1, 0}, 1.0, 1.0), DomainError);

  Rng rng(41, "roots");
  int with_roots = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Idx3 k{rng.uniform_int(-4, 4), rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};
    Idx3 m{rng.uniform_int(-4, 4), rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};
    Idx3 n = k + m;
    if (k.horizontal_zero() || m.horizontal_zero() || n.horizontal_zero()) continue;
    A3RootResult rr = a3_resonant_roots(k, m, 1.0, 1.0, 50.0);
    CHECK(rr.roots.size() <= 8);
    if (!rr.roots.empty()) ++with_roots;
    for (double a3 : rr.roots) {
      TorusSpec t{1.0, 1.0, a3, 8, 8, 8};
      CHECK(std::abs(resonance_polynomial(k, m, t)) <
            1e-8 * resonance_polynomial_scale(k, m, t));
    }
  }
  CHECK(with_roots > 0);
}

TEST_CASE("non-resonance certification") {
  // N = 1 on the unit torus: no purely oscillating resonance
  NonResonanceCertificate c1 = certify_nonresonant(kUnit, 1);
  CHECK(c1.margin > 0);
  CHECK(c1.validate());
  CHECK(c1.to_json().find("\"margin\"") != std::string::npos);

  // a constructed root (verified against the radical form) fails, naming a triad
  Rng rng(53, "cert");
  bool tested_resonant = false;
  for (int trial = 0; trial < 300 && !tested_resonant; ++trial) {
    Idx3 k{rng.uniform_int(-3, 3), rng.uniform_int(-3, 3), rng.uniform_int(-3, 3)};
    Idx3 m{rng.uniform_int(-3, 3), rng.uniform_int(-3, 3), rng.uniform_int(-3, 3)};
    Idx3 n = k + m;
    if (k.horizontal_zero() || m.horizontal_zero() || n.horizontal_zero()) continue;
    if (k.sup_norm() > 3 || m.sup_norm() > 3) continue;
    for (double a3 : a3_resonant_roots(k, m, 1.0, 1.0, 10.0).roots) {
      TorusSpec t{1.0, 1.0, a3, 8, 8, 8};
      double minsum = 1e300;
      for (ModeLabel a : {ModeLabel::Plus, ModeLabel::Minus})
        for (ModeLabel b : {ModeLabel::Plus, ModeLabel::Minus})
          for (ModeLabel c : {ModeLabel::Plus, ModeLabel::Minus})
            minsum = std::min(minsum, std::abs(omega_sum(t, k, m, n, a, b, c)));
      if (minsum > 1e-13) continue;  // spurious polynomial root, skip
      CHECK_THROWS_AS((void)certify_nonresonant(t, 3), ResonantDomainError);
      tested_resonant = true;
      break;
    }
  }
  CHECK(tested_resonant);

  // rejection-sampled a3 away from all roots certifies with positive margin
  std::vector<double> all_roots;
  for (int k1 = -2; k1 <= 2; ++k1)
    for (int k3 = -2; k3 <= 2; ++k3)
      for (int m2 = -2; m2 <= 2; ++m2)
        for (int m3 = -2; m3 <= 2; ++m3) {
          Idx3 k{k1, 1, k3}, m{1, m2, m3};
          Idx3 n = k + m;
          if (k.horizontal_zero() || m.horizontal_zero() || n.horizontal_zero()) continue;
          for (double r : a3_resonant_roots(k, m, 1.0, 1.0, 4.0).roots) all_roots.push_back(r);
        }
  double pick = 0;
  for (int trial = 0; trial < 200; ++trial) {
    double cand = rng.uniform(0.5, 2.0);
    double dist = 1e300;
    for (double r : all_roots) dist = std::min(dist, std::abs(cand - r));
    if (dist > 1e-3) {
      pick = cand;
      break;
    }
  }
  REQUIRE(pick > 0);
  NonResonanceCertificate c2 = certify_nonresonant({1.0, 1.0, pick, 8, 8, 8}, 2);
  CHECK(c2.margin > 0);
}
