#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lossblockade/hilbert.hpp"

namespace lossblockade {

enum class UnitSystem { SI, Normalized };

/// Rates of the driven Kerr/linear resonator pair, hbar = 1.
///
/// In SI mode every rate is in rad/s; in normalized mode rates are in units of
/// the total Kerr-resonator loss gamma1' = gamma_1 + gamma_ex.
struct SystemParams {
  double omega_c = 0.0;      ///< resonance frequency (0 in a rotating frame)
  double delta = 0.0;        ///< drive detuning omega_c - omega_l
  double chi = 0.0;          ///< Kerr shift
  double J = 0.0;            ///< inter-resonator coupling
  double gamma_1 = 0.5;      ///< intrinsic loss of the Kerr resonator
  double gamma_ex = 0.5;     ///< fiber-taper coupling loss
  double gamma_2 = 0.1;      ///< intrinsic loss of the linear resonator
  double gamma_tip = 0.0;    ///< nanotip-induced loss on the linear resonator
  double omega_drive = 0.0;  ///< drive amplitude Omega
  double drive_phase = 0.0;  ///< drive phase; the drive term is Omega (e^{i phi} a1^dag + h.c.)
  UnitSystem unit_system = UnitSystem::Normalized;

  double gamma1_prime() const { return gamma_1 + gamma_ex; }
  double gamma2_prime() const { return gamma_2 + gamma_tip; }

  /// Throws InvalidArgument if a rate, J or Omega is negative or not finite.
  void validate() const;
  /// validate() plus strictly positive total losses (needed for a unique steady state).
  void validate_lossy() const;

  /// Largest rate magnitude; used to scale absolute tolerances.
  double rate_scale() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

nlohmann::json to_json(const SystemParams& p);
/// Unknown keys are rejected; missing keys keep their defaults.
SystemParams params_from_json(const nlohmann::json& j);

std::string_view to_string(UnitSystem u);
UnitSystem unit_system_from_string(std::string_view s);

/// Sets one field by name (used for key=value overrides).
void set_param(SystemParams& p, std::string_view key, double value);

struct DerivedRates {
  double gamma1_prime = 0.0;
  double gamma2_prime = 0.0;
  double Gamma = 0.0;  ///< (gamma1' + gamma2') / 4
  double beta = 0.0;   ///< (gamma2' - gamma1') / 4
};

DerivedRates derived_rates(const SystemParams& p);

namespace si {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double speed_of_light = 299792458.0;    // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

double angular_frequency(double wavelength);
}  // namespace si

/// chi = 3 hbar omega_c^2 (chi3/eps_r^2) / (4 eps_0 V_eff), omega_c = 2 pi c / lambda.
double kerr_coefficient(double wavelength, double chi3_over_eps_r2, double v_eff);

/// Omega = sqrt(gamma_ex P_in / (hbar omega_l)).
double drive_amplitude(double p_in, double gamma_ex, double wavelength);

/// How a quality factor maps to the total loss rate: full width gamma = omega/Q,
/// half width gamma = 2 omega/Q.
enum class LinewidthConvention { FullWidth, HalfWidth };

double loss_rate_from_quality(double omega, double quality, LinewidthConvention convention);

/// Device description in SI units; couplings and the extra losses are given
/// as multiples of gamma1'.
struct DeviceSpec {
  double wavelength = 1550e-9;
  double quality = 2e9;
  double v_eff = 100e-18;
  double chi3_over_eps_r2 = 2e-17;
  double p_in = 4e-15;
  double ex_fraction = 0.5;  ///< gamma_ex / gamma1'
  double J_ratio = 2.0;
  double gamma2_ratio = 0.1;
  double gamma_tip_ratio = 0.0;
  LinewidthConvention convention = LinewidthConvention::HalfWidth;
};

/// Total loss gamma1' in rad/s for a device.
double device_gamma1_prime(const DeviceSpec& d);

/// SI device -> parameters in units of gamma1' (rotating frame, zero detuning).
SystemParams normalized_from_device(const DeviceSpec& d);

enum class HamiltonianVariant {
  Isolated,                          ///< undriven lab frame, Hermitian
  RotatingDriven,                    ///< rotating frame with drive, Hermitian
  EffectiveNonHermitian,             ///< RotatingDriven - i sum gamma_j'/2 n_j
  ExcitationConservingNonHermitian,  ///< Isolated - i sum gamma_j'/2 n_j
};

ComplexOperator build_hamiltonian(const SystemParams& p, const BasisPtr& basis, HamiltonianVariant variant);

}  // namespace lossblockade
