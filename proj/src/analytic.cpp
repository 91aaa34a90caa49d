#include "lossblockade/analytic.hpp"

#include <cmath>

#include "lossblockade/error.hpp"

namespace lossblockade {

cplx AmplitudeSet::amplitude(int m, int n) const {
  switch (m * 4 + n) {
    case 0:
      return C00;
    case 1:
      return C01;
    case 4:
      return C10;
    case 2:
      return C02;
    case 5:
      return C11;
    case 8:
      return C20;
    case 3:
      return C03;
    case 6:
      return C12;
    case 9:
      return C21;
    case 12:
      return C30;
    default:
      return {};
  }
}

namespace {

void require_nonsingular(cplx value, double floor, const char* name) {
  if (std::abs(value) < floor)
    throw SingularParameter(name, std::string("closed-form amplitudes are singular: |") + name + "| = " +
                                      std::to_string(std::abs(value)));
}

}  // namespace

AmplitudeSet steady_amplitudes(const SystemParams& p) {
  p.validate();
  const cplx i(0.0, 1.0);
  const double J = p.J;
  const double J2 = J * J;
  const double Om = p.omega_drive;
  const cplx drive = Om * std::polar(1.0, p.drive_phase);
  const double s2 = std::sqrt(2.0);
  const double s6 = std::sqrt(6.0);

  AmplitudeSet a;
  a.weak_drive_warning = Om > 0.1 * p.gamma1_prime();
  a.D1 = p.delta - i * p.gamma1_prime() / 2.0;
  a.D2 = p.delta - i * p.gamma2_prime() / 2.0;
  a.D3 = a.D1 + p.chi;
  a.D4 = a.D1 + 2.0 * p.chi;
  a.D5 = 2.0 * a.D3 + a.D2;
  a.D6 = a.D1 + 2.0 * a.D2;

  const auto &D1 = a.D1, &D2 = a.D2, &D3 = a.D3, &D4 = a.D4, &D5 = a.D5, &D6 = a.D6;
  a.eta1 = D1 * D2 - J2;
  a.xi1 = D1 * D3 + D2 * D3 - J2;
  a.eta2 = 2.0 * a.xi1 * D2 - 2.0 * J2 * D3;
  a.eta3 = J2 - D2 * D6;
  a.xi2 = J2 - 4.0 * D2 * D4 - D4 * D5;
  a.mu = J2 * a.xi2 - J2 * D2 * D6 + D2 * D4 * D5 * D6;

  const double scale = std::max({std::abs(p.delta), std::abs(p.chi), J, p.gamma1_prime(), p.gamma2_prime(), 1e-300});
  require_nonsingular(a.eta1, 1e-12 * scale * scale, "eta1");
  require_nonsingular(a.eta2, 1e-12 * scale * scale * scale, "eta2");
  require_nonsingular(a.mu, 1e-12 * scale * scale * scale * scale, "mu");

  const cplx e12 = a.eta1 * a.eta2;
  const cplx e12mu = e12 * a.mu;
  const cplx d2sq = D2 * D2;
  const cplx drive2 = drive * drive;
  const cplx drive3 = drive2 * drive;

  a.C01 = J * drive / a.eta1;
  a.C10 = -drive * D2 / a.eta1;
  a.C02 = s2 * drive2 * J2 * (D3 + D2) / e12;
  a.C20 = s2 * drive2 * d2sq * (D1 + D2) / e12;
  a.C11 = -2.0 * drive2 * D2 * J * (D3 + D2) / e12;

  const cplx bracket = a.xi2 * (D2 + D3) - 2.0 * d2sq * (D1 + D2);
  a.C03 = -s6 * J2 * J * drive3 * bracket / (3.0 * e12mu);
  a.C12 = s2 * J2 * drive3 * D2 * bracket / e12mu;
  a.C30 = s6 * drive3 * (d2sq * (4.0 * J2 * D2 + D5 * a.eta3) * (D1 + D2) - 2.0 * J2 * d2sq * D6 * (D2 + D3)) / (3.0 * e12mu);
  a.C21 = -s2 * J * drive3 * (d2sq * a.eta3 * (D1 + D2) - 2.0 * d2sq * D4 * D6 * (D2 + D3)) / e12mu;
  return a;
}

AnalyticObservables analytic_observables(const AmplitudeSet& amps) {
  AnalyticObservables o;
  for (int N = 0; N <= 3; ++N) {
    for (int m = 0; m <= N; ++m) {
      const double P = amps.probability(m, N - m);
      o.N1 += m * P;
      o.N2 += (N - m) * P;
    }
  }
  if (!(o.N1 >= 1e-30)) throw UndefinedCorrelation("N1 = " + std::to_string(o.N1) + " is too small for correlation functions");
  const double P20 = amps.probability(2, 0);
  o.g2 = (2.0 * P20 + 6.0 * amps.probability(3, 0) + 2.0 * amps.probability(2, 1)) / (o.N1 * o.N1);
  o.g2_approx = 4.0 * std::norm(amps.eta1) * std::norm(amps.D1 + amps.D2) / std::norm(amps.eta2);
  o.g3 = 6.0 * amps.probability(3, 0) / (o.N1 * o.N1 * o.N1);
  return o;
}

}  // namespace lossblockade
