#include "stratoflow/resonance.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stratoflow/errors.hpp"
#include "stratoflow/polynomial.hpp"

namespace stratoflow {

using BigRat = boost::multiprecision::cpp_rational;

double mode_omega(const TorusSpec& t, Idx3 n) {
  if (n.is_zero() || n.horizontal_zero()) return 0.0;
  Vec3 ck = t.check(n);
  return ck.h_norm() / ck.norm();
}

double omega_sum(const TorusSpec& t, Idx3 k, Idx3 m, Idx3 n, ModeLabel a, ModeLabel b,
                 ModeLabel c) {
  if (!(k + m == n)) throw ConstraintError("omega_sum: k + m != n");
  return static_cast<int>(a) * mode_omega(t, k) + static_cast<int>(b) * mode_omega(t, m) -
         static_cast<int>(c) * mode_omega(t, n);
}

namespace {

BigRat omega_sq_rational(const RationalSquares& sq, Idx3 n) {
  if (n.is_zero() || n.horizontal_zero()) return BigRat(0);
  // nch_i^2 = n_i^2 / a_i^2
  BigRat k1 = BigRat(n.n1 * n.n1) * BigRat(sq.a1_den, sq.a1_num);
  BigRat k2 = BigRat(n.n2 * n.n2) * BigRat(sq.a2_den, sq.a2_num);
  BigRat k3 = BigRat(n.n3 * n.n3) * BigRat(sq.a3_den, sq.a3_num);
  return (k1 + k2) / (k1 + k2 + k3);
}

// decide sum_i sigma_i sqrt(r_i) = 0, r_i > 0 rational
bool radical_sum_is_zero(std::vector<std::pair<int, BigRat>> terms) {
  if (terms.empty()) return true;
  if (terms.size() == 1) return false;
  if (terms.size() == 2) {
    return terms[0].first != terms[1].first && terms[0].second == terms[1].second;
  }
  // three terms: sigma1 sqrt(r1) + sigma2 sqrt(r2) = -sigma3 sqrt(r3)
  auto [s1, r1] = terms[0];
  auto [s2, r2] = terms[1];
  auto [s3, r3] = terms[2];
  // sign feasibility of the outer equation
  int lhs_sign;  // sign of sigma1 sqrt(r1) + sigma2 sqrt(r2)
  if (s1 == s2) {
    lhs_sign = s1;
  } else {
    lhs_sign = r1 == r2 ? 0 : (r1 > r2 ? s1 : s2);
  }
  int rhs_sign = -s3;
  if (lhs_sign == 0) return false;  // rhs has |sqrt(r3)| > 0
  if (lhs_sign != rhs_sign) return false;
  // magnitudes: r1 + r2 + 2 sigma1 sigma2 sqrt(r1 r2) = r3
  BigRat d = r3 - r1 - r2;
  int want = s1 * s2;
  int dsign = d == 0 ? 0 : (d > 0 ? 1 : -1);
  if (dsign == 0) return false;  // would need r1 r2 = 0
  if (dsign != want) return false;
  return 4 * r1 * r2 == d * d;
}

}  // namespace

bool omega_sum_is_zero_exact(const RationalSquares& sq, Idx3 k, Idx3 m, Idx3 n, ModeLabel a,
                             ModeLabel b, ModeLabel c) {
  if (!(k + m == n)) throw ConstraintError("omega_sum_is_zero_exact: k + m != n");
  std::vector<std::pair<int, BigRat>> terms;
  auto push = [&](ModeLabel l, Idx3 f, int outer_sign) {
    if (l == ModeLabel::Kernel) return;
    BigRat r = omega_sq_rational(sq, f);
    if (r == 0) return;
    terms.push_back({outer_sign * static_cast<int>(l), r});
  };
  push(a, k, +1);
  push(b, m, +1);
  push(c, n, -1);
  return radical_sum_is_zero(std::move(terms));
}

namespace {

const ModeLabel kLabels[3] = {ModeLabel::Kernel, ModeLabel::Plus, ModeLabel::Minus};

std::string classify(ModeLabel a, ModeLabel b, ModeLabel c) {
  using L = ModeLabel;
  if (c != L::Kernel) return "osc";
  if (a == L::Kernel && b == L::Kernel) return "R0";
  if (a != L::Kernel && b != L::Kernel) return a == b ? "R1" : "R3";
  return "R2";
}

bool labels_admissible(Idx3 f, ModeLabel l) {
  // oscillating labels only exist away from the degenerate set
  return l == ModeLabel::Kernel || !f.horizontal_zero();
}

}  // namespace

std::vector<TriadRecord> enumerate_resonant_triads(const TorusSpec& t, int N,
                                                   const ResonanceOptions& opts) {
  if (N < 1) throw ValidationError("enumerate_resonant_triads: N >= 1 required");
  if (opts.exact && !opts.rational_squares)
    throw ExactnessError(
        "exact resonance enumeration requires rational a_i^2 "
        "(provide ResonanceOptions::rational_squares or use floating mode)");
  std::vector<TriadRecord> out;
  for (int k3 = -N; k3 <= N; ++k3)
    for (int k2 = -N; k2 <= N; ++k2)
      for (int k1 = -N; k1 <= N; ++k1) {
        Idx3 k{k1, k2, k3};
        if (k.is_zero()) continue;
        for (int m3 = -N; m3 <= N; ++m3)
          for (int m2 = -N; m2 <= N; ++m2)
            for (int m1 = -N; m1 <= N; ++m1) {
              Idx3 m{m1, m2, m3};
              if (m.is_zero()) continue;
              Idx3 n = k + m;
              if (n.is_zero()) continue;
              for (ModeLabel a : kLabels) {
                if (!labels_admissible(k, a)) continue;
                for (ModeLabel b : kLabels) {
                  if (!labels_admissible(m, b)) continue;
                  for (ModeLabel c : kLabels) {
                    if (!labels_admissible(n, c)) continue;
                    double s = omega_sum(t, k, m, n, a, b, c);
                    bool zero = opts.exact
                                    ? omega_sum_is_zero_exact(*opts.rational_squares, k, m, n,
                                                              a, b, c)
                                    : std::abs(s) < opts.tolerance;
                    if (zero) out.push_back({k, m, n, a, b, c, s, classify(a, b, c)});
                  }
                }
              }
            }
      }
  return out;
}

std::string triads_to_csv(const std::vector<TriadRecord>& triads) {
  std::ostringstream os;
  os << "k1,k2,k3,m1,m2,m3,a,b,c,omega_sum,set_class\n";
  char buf[64];
  for (const TriadRecord& tr : triads) {
    std::snprintf(buf, sizeof buf, "%.17g", tr.omega_sum);
    os << tr.k.n1 << ',' << tr.k.n2 << ',' << tr.k.n3 << ',' << tr.m.n1 << ',' << tr.m.n2 << ','
       << tr.m.n3 << ',' << label_char(tr.a) << ',' << label_char(tr.b) << ','
       << label_char(tr.c) << ',' << buf << ',' << tr.set_class << '\n';
  }
  return os.str();
}

namespace {

C4 label_vector(const TorusSpec& t, Idx3 n, ModeLabel l) {
  FrameEntry fe = build_frame(t, n);
  if (fe.degenerate) throw DegenerateError("coefficient_C: degenerate frequency " + n.str());
  switch (l) {
    case ModeLabel::Kernel: return fe.e0;
    case ModeLabel::Plus: return fe.ep;
    default: return fe.em;
  }
}

}  // namespace

cplx coefficient_C(const TorusSpec& t, Idx3 k, Idx3 m, Idx3 n, ModeLabel a, ModeLabel b,
                   ModeLabel c) {
  if (!(k + m == n)) throw ConstraintError("coefficient_C: k + m != n");
  C4 ea = label_vector(t, k, a);
  C4 eb = label_vector(t, m, b);
  C4 ec = label_vector(t, n, c);
  Vec3 mc = t.check(m);
  cplx adv = ea[0] * mc.x1 + ea[1] * mc.x2 + ea[2] * mc.x3;
  return adv * cdot(eb, ec);
}

std::int64_t coefficient_C_pm0_integer(Idx3 k, Idx3 m) {
  Idx3 n = k + m;
  std::int64_t f1 = static_cast<std::int64_t>(k.n1) * k.n3 * m.n1 +
                    static_cast<std::int64_t>(k.n2) * k.n3 * m.n2 -
                    (static_cast<std::int64_t>(k.n1) * k.n1 +
                     static_cast<std::int64_t>(k.n2) * k.n2) *
                        m.n3;
  std::int64_t f2 = static_cast<std::int64_t>(m.n2) * m.n3 * n.n1 -
                    static_cast<std::int64_t>(m.n1) * m.n3 * n.n2;
  return -2 * f1 * f2;
}

std::array<cplx, 2> beta_value(const WaveFrame& frame, const SpectralField& U,
                               std::array<int, 2> m_h, int n3) {
  if (n3 % 2 != 0) throw ConstraintError("beta_value: n3 must be even");
  const TorusSpec& t = frame.torus();
  Idx3 p{m_h[0], m_h[1], n3 / 2};    // (m_h, n3/2)
  Idx3 q{-m_h[0], -m_h[1], n3 / 2};  // (-m_h, n3/2)
  if (!t.in_range(p) || !t.in_range(q)) return {cplx(0), cplx(0)};
  if (p.horizontal_zero()) return {cplx(0), cplx(0)};

  const FrameEntry& fp = frame.at(p);
  const FrameEntry& fq = frame.at(q);
  cplx up_p = cdot(U.coeff(p), fp.ep), um_p = cdot(U.coeff(p), fp.em);
  cplx up_q = cdot(U.coeff(q), fq.ep), um_q = cdot(U.coeff(q), fq.em);

  std::array<cplx, 2> beta{cplx(0), cplx(0)};
  auto add_term = [&](cplx scal3, const C4& evec3, cplx scalh, const C4& evech) {
    cplx third = scal3 * evec3[2];
    beta[0] += third * (scalh * evech[0]);
    beta[1] += third * (scalh * evech[1]);
  };
  // U^{+,3}(-m_h) U^{-,h}(m_h) + U^{-,3}(-m_h) U^{+,h}(m_h)
  add_term(up_q, fq.ep, um_p, fp.em);
  add_term(um_q, fq.em, up_p, fp.ep);
  // + U^{+,3}(m_h) U^{-,h}(-m_h) + U^{-,3}(m_h) U^{+,h}(-m_h)
  add_term(up_p, fp.ep, um_q, fq.em);
  add_term(um_p, fp.em, up_q, fq.ep);

  double half_n3 = 0.5 * n3;
  return {half_n3 * beta[0], half_n3 * beta[1]};
}

namespace {

// the identity's six products as polynomials in t = 1/a3^2
struct IdentityTerms {
  // A_f(t) = H_f + v_f t with H = |fch_h|^2, v = f3^2
  std::array<double, 5> poly;   // RHS - LHS, coefficients of t^d
  double scale = 0;             // sum of |each product| at the evaluation point
};

std::array<double, 5> mul5(const std::array<double, 5>& a, const std::array<double, 5>& b) {
  std::array<double, 5> r{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; i + j < 5; ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::array<double, 5> lin(double h, double v) { return {h, v, 0, 0, 0}; }

IdentityTerms identity_in_t(Idx3 k, Idx3 m, double a1, double a2, double t_eval) {
  Idx3 n = k + m;
  auto hpart = [&](Idx3 f) {
    double c1 = f.n1 / a1, c2 = f.n2 / a2;
    return c1 * c1 + c2 * c2;
  };
  double Hk = hpart(k), Hm = hpart(m), Hn = hpart(n);
  double vk = static_cast<double>(k.n3) * k.n3;
  double vm = static_cast<double>(m.n3) * m.n3;
  double vn = static_cast<double>(n.n3) * n.n3;

  auto Ak = lin(Hk, vk), Am = lin(Hm, vm), An = lin(Hn, vn);
  auto Ak2 = mul5(Ak, Ak), Am2 = mul5(Am, Am), An2 = mul5(An, An);

  std::array<std::array<double, 5>, 6> prods = {
      mul5(lin(Hk * Hk, 0), mul5(Am2, An2)),        // |k_h|^4 |m|^4 |n|^4
      mul5(lin(Hm * Hm, 0), mul5(Ak2, An2)),        // |m_h|^4 |k|^4 |n|^4
      mul5(lin(Hn * Hn, 0), mul5(Ak2, Am2)),        // |n_h|^4 |k|^4 |m|^4
      mul5(lin(-2 * Hk * Hn, 0), mul5(mul5(Ak, An), Am2)),
      mul5(lin(-2 * Hm * Hn, 0), mul5(mul5(Am, An), Ak2)),
      mul5(lin(-2 * Hk * Hm, 0), mul5(mul5(Ak, Am), An2)),  // the LHS, negated
  };
  IdentityTerms out;
  out.poly = {};
  for (int p = 0; p < 6; ++p) {
    double val = 0, tp = 1;
    for (int d = 0; d < 5; ++d) {
      out.poly[d] += prods[p][d];
      val += prods[p][d] * tp;
      tp *= t_eval;
    }
    out.scale += std::abs(val);
  }
  return out;
}

}  // namespace

double resonance_polynomial(Idx3 k, Idx3 m, const TorusSpec& t) {
  double te = 1.0 / (t.a3 * t.a3);
  IdentityTerms it = identity_in_t(k, m, t.a1, t.a2, te);
  double val = 0, tp = 1;
  for (int d = 0; d < 5; ++d) {
    val += it.poly[d] * tp;
    tp *= te;
  }
  return val;
}

double resonance_polynomial_scale(Idx3 k, Idx3 m, const TorusSpec& t) {
  double te = 1.0 / (t.a3 * t.a3);
  return identity_in_t(k, m, t.a1, t.a2, te).scale;
}

LeadingTerms leading_terms(Idx3 k, Idx3 m, double a1, double a2) {
  IdentityTerms it = identity_in_t(k, m, a1, a2, 0.0);
  return {it.poly[0], it.poly[4]};
}

A3RootResult a3_resonant_roots(Idx3 k, Idx3 m, double a1, double a2, double a3_max) {
  Idx3 n = k + m;
  if (k.horizontal_zero() || m.horizontal_zero() || n.horizontal_zero())
    throw DomainError("a3_resonant_roots: P0 = 0 (a horizontal part vanishes)");
  IdentityTerms it = identity_in_t(k, m, a1, a2, 0.0);
  // roots in u = a3^2: R(u) = sum_d poly[d] u^{4-d}
  Poly R;
  R.c.assign(5, 0.0);
  for (int d = 0; d < 5; ++d) R.c[4 - d] = it.poly[d];
  R.trim();
  A3RootResult out;
  if (R.degree() == 0) return out;
  RootIsolationResult iso = isolate_real_roots(R, 1e-12, a3_max * a3_max);
  out.precision_warning = iso.precision_warning;
  for (double u : iso.roots)
    if (u > 0) out.roots.push_back(std::sqrt(u));
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

std::string NonResonanceCertificate::to_json() const {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "{\"torus\": [" << num(torus.a1) << ", " << num(torus.a2) << ", " << num(torus.a3)
     << "], \"grid\": [" << torus.N1 << ", " << torus.N2 << ", " << torus.N3 << "], \"N\": " << N
     << ", \"margin\": " << num(margin) << ", \"method\": \"" << method << "\""
     << ", \"worst_triad\": {\"k\": [" << worst.k.n1 << ", " << worst.k.n2 << ", " << worst.k.n3
     << "], \"m\": [" << worst.m.n1 << ", " << worst.m.n2 << ", " << worst.m.n3
     << "], \"labels\": \"" << label_char(worst.a) << label_char(worst.b) << label_char(worst.c)
     << "\"}}";
  return os.str();
}

bool NonResonanceCertificate::validate() const {
  double s = std::abs(omega_sum(torus, worst.k, worst.m, worst.n, worst.a, worst.b, worst.c));
  return s >= margin * (1.0 - 1e-12);
}

NonResonanceCertificate certify_nonresonant(const TorusSpec& t, int N,
                                            const ResonanceOptions& opts) {
  if (opts.exact && !opts.rational_squares)
    throw ExactnessError("certify_nonresonant: exact mode requires rational a_i^2");
  NonResonanceCertificate cert;
  cert.torus = t;
  cert.N = N;
  cert.method = opts.exact ? "exact" : "floating";
  cert.margin = 1e300;
  std::vector<TriadRecord> offenders;
  const ModeLabel osc[2] = {ModeLabel::Plus, ModeLabel::Minus};
  for (int k3 = -N; k3 <= N; ++k3)
    for (int k2 = -N; k2 <= N; ++k2)
      for (int k1 = -N; k1 <= N; ++k1) {
        Idx3 k{k1, k2, k3};
        if (k.horizontal_zero()) continue;
        for (int m3 = -N; m3 <= N; ++m3)
          for (int m2 = -N; m2 <= N; ++m2)
            for (int m1 = -N; m1 <= N; ++m1) {
              Idx3 m{m1, m2, m3};
              if (m.horizontal_zero()) continue;
              Idx3 n = k + m;
              if (n.horizontal_zero()) continue;
              // a = + suffices: negating all labels negates the sum
              for (ModeLabel b : osc)
                for (ModeLabel c : osc) {
                  TriadRecord tr{k, m, n, ModeLabel::Plus, b, c, 0.0, "osc"};
                  tr.omega_sum = omega_sum(t, k, m, n, tr.a, b, c);
                  bool zero = opts.exact ? omega_sum_is_zero_exact(*opts.rational_squares, k, m,
                                                                   n, tr.a, b, c)
                                         : std::abs(tr.omega_sum) < opts.tolerance;
                  if (zero && offenders.size() < 8) offenders.push_back(tr);
                  if (std::abs(tr.omega_sum) < cert.margin) {
                    cert.margin = std::abs(tr.omega_sum);
                    cert.worst = tr;
                  }
                }
            }
      }
  if (!offenders.empty() || cert.margin <= 0.0) {
    std::ostringstream os;
    os << "resonant torus (a = " << t.a1 << ", " << t.a2 << ", " << t.a3 << ", N = " << N
       << "): ";
    if (offenders.empty()) offenders.push_back(cert.worst);
    for (const TriadRecord& tr : offenders)
      os << "[k=" << tr.k.str() << " m=" << tr.m.str() << " labels=" << label_char(tr.a)
         << label_char(tr.b) << label_char(tr.c) << " sum=" << tr.omega_sum << "] ";
    throw ResonantDomainError(os.str());
  }
  return cert;
}

}  // namespace stratoflow
