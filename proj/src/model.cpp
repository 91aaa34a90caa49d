#include "lossblockade/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lossblockade/error.hpp"

namespace lossblockade {

namespace {

void require_nonnegative(double value, const char* name) {
  if (!std::isfinite(value)) throw InvalidArgument(std::string(name) + " must be finite");
  if (value < 0.0) throw InvalidArgument(std::string(name) + " must be >= 0, got " + std::to_string(value));
}

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0)
    throw InvalidArgument(std::string(name) + " must be > 0, got " + std::to_string(value));
}

double* field(SystemParams& p, std::string_view key) {
  if (key == "omega_c") return &p.omega_c;
  if (key == "delta") return &p.delta;
  if (key == "chi") return &p.chi;
  if (key == "J") return &p.J;
  if (key == "gamma_1") return &p.gamma_1;
  if (key == "gamma_ex") return &p.gamma_ex;
  if (key == "gamma_2") return &p.gamma_2;
  if (key == "gamma_tip") return &p.gamma_tip;
  if (key == "omega_drive") return &p.omega_drive;
  if (key == "drive_phase") return &p.drive_phase;
  return nullptr;
}

}  // namespace

void SystemParams::validate() const {
  require_nonnegative(gamma_1, "gamma_1");
  require_nonnegative(gamma_ex, "gamma_ex");
  require_nonnegative(gamma_2, "gamma_2");
  require_nonnegative(gamma_tip, "gamma_tip");
  require_nonnegative(J, "J");
  require_nonnegative(omega_drive, "omega_drive");
  for (double v : {omega_c, delta, chi, drive_phase}) {
    if (!std::isfinite(v)) throw InvalidArgument("parameters must be finite");
  }
}

void SystemParams::validate_lossy() const {
  validate();
  require_positive(gamma1_prime(), "gamma1'");
  require_positive(gamma2_prime(), "gamma2'");
}

double SystemParams::rate_scale() const {
  return std::max({std::abs(omega_c), std::abs(delta), std::abs(chi), J, gamma1_prime(), gamma2_prime(), omega_drive,
                   1e-300});
}

std::string_view to_string(UnitSystem u) { return u == UnitSystem::SI ? "si" : "normalized"; }

UnitSystem unit_system_from_string(std::string_view s) {
  if (s == "si" || s == "SI") return UnitSystem::SI;
  if (s == "normalized") return UnitSystem::Normalized;
  throw InvalidArgument("unknown unit_system '" + std::string(s) + "' (expected si or normalized)");
}

nlohmann::json to_json(const SystemParams& p) {
  return {{"unit_system", std::string(to_string(p.unit_system))},
          {"omega_c", p.omega_c},
          {"delta", p.delta},
          {"chi", p.chi},
          {"J", p.J},
          {"gamma_1", p.gamma_1},
          {"gamma_ex", p.gamma_ex},
          {"gamma_2", p.gamma_2},
          {"gamma_tip", p.gamma_tip},
          {"omega_drive", p.omega_drive},
          {"drive_phase", p.drive_phase}};
}

SystemParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("parameter block must be a JSON object");
  SystemParams p;
  for (const auto& [key, value] : j.items()) {
    if (key == "unit_system") {
      p.unit_system = unit_system_from_string(value.get<std::string>());
      continue;
    }
    double* slot = field(p, key);
    if (!slot) throw InvalidArgument("unknown parameter '" + key + "'");
    if (!value.is_number()) throw InvalidArgument("parameter '" + key + "' must be a number");
    *slot = value.get<double>();
  }
  p.validate();
  return p;
}

void set_param(SystemParams& p, std::string_view key, double value) {
  double* slot = field(p, key);
  if (!slot) throw InvalidArgument("unknown parameter '" + std::string(key) + "'");
  *slot = value;
}

DerivedRates derived_rates(const SystemParams& p) {
  DerivedRates r;
  r.gamma1_prime = p.gamma1_prime();
  r.gamma2_prime = p.gamma2_prime();
  r.Gamma = (r.gamma1_prime + r.gamma2_prime) / 4.0;
  r.beta = (r.gamma2_prime - r.gamma1_prime) / 4.0;
  return r;
}

namespace si {
double angular_frequency(double wavelength) {
  require_positive(wavelength, "wavelength");
  return 2.0 * std::numbers::pi * speed_of_light / wavelength;
}
}  // namespace si

double kerr_coefficient(double wavelength, double chi3_over_eps_r2, double v_eff) {
  require_positive(v_eff, "V_eff");
  require_nonnegative(chi3_over_eps_r2, "chi3/eps_r^2");
  const double omega = si::angular_frequency(wavelength);
  return 3.0 * si::hbar * omega * omega * chi3_over_eps_r2 / (4.0 * si::vacuum_permittivity * v_eff);
}

double drive_amplitude(double p_in, double gamma_ex, double wavelength) {
  require_nonnegative(p_in, "P_in");
  require_nonnegative(gamma_ex, "gamma_ex");
  const double omega_l = si::angular_frequency(wavelength);
  return std::sqrt(gamma_ex * p_in / (si::hbar * omega_l));
}

double loss_rate_from_quality(double omega, double quality, LinewidthConvention convention) {
  require_positive(omega, "omega");
  require_positive(quality, "Q");
  return (convention == LinewidthConvention::HalfWidth ? 2.0 : 1.0) * omega / quality;
}

double device_gamma1_prime(const DeviceSpec& d) {
  return loss_rate_from_quality(si::angular_frequency(d.wavelength), d.quality, d.convention);
}

SystemParams normalized_from_device(const DeviceSpec& d) {
  if (d.ex_fraction < 0.0 || d.ex_fraction > 1.0) throw InvalidArgument("ex_fraction must lie in [0, 1]");
  const double g1p = device_gamma1_prime(d);
  const double gamma_ex = d.ex_fraction * g1p;
  SystemParams p;
  p.unit_system = UnitSystem::Normalized;
  p.chi = kerr_coefficient(d.wavelength, d.chi3_over_eps_r2, d.v_eff) / g1p;
  p.omega_drive = drive_amplitude(d.p_in, gamma_ex, d.wavelength) / g1p;
  p.gamma_ex = d.ex_fraction;
  p.gamma_1 = 1.0 - d.ex_fraction;
  p.J = d.J_ratio;
  p.gamma_2 = d.gamma2_ratio;
  p.gamma_tip = d.gamma_tip_ratio;
  p.validate();
  return p;
}

ComplexOperator build_hamiltonian(const SystemParams& p, const BasisPtr& basis, HamiltonianVariant variant) {
  p.validate();
  if (!basis) throw InvalidArgument("build_hamiltonian requires a basis");

  const auto a1 = mode_operator(basis, Mode::One, LadderKind::Annihilate);
  const auto a2 = mode_operator(basis, Mode::Two, LadderKind::Annihilate);
  const auto n1 = mode_operator(basis, Mode::One, LadderKind::Number);
  const auto n2 = mode_operator(basis, Mode::Two, LadderKind::Number);

  const bool rotating = variant == HamiltonianVariant::RotatingDriven || variant == HamiltonianVariant::EffectiveNonHermitian;
  const double frequency = rotating ? p.delta : p.omega_c;

  Eigen::MatrixXcd h = frequency * (n1.data() + n2.data());

  // Kerr term chi a1^dag a1^dag a1 a1 is diagonal: chi m (m - 1).
  const auto& states = basis->states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double m = states[i].m;
    h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += p.chi * m * (m - 1.0);
  }

  const Eigen::MatrixXcd hop = a1.data().adjoint() * a2.data();
  h += p.J * (hop + hop.adjoint());

  if (rotating) {
    const cplx drive = p.omega_drive * std::polar(1.0, p.drive_phase);
    const Eigen::MatrixXcd a1_dag = a1.data().adjoint();
    h += drive * a1_dag + std::conj(drive) * a1.data();
  }

  if (variant == HamiltonianVariant::EffectiveNonHermitian || variant == HamiltonianVariant::ExcitationConservingNonHermitian) {
    h -= cplx(0.0, 0.5) * (p.gamma1_prime() * n1.data() + p.gamma2_prime() * n2.data());
  }
  return {basis, std::move(h)};
}

}  // namespace lossblockade
