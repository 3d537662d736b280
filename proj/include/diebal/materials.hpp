#pragma once

#include <span>
#include <string>
#include <vector>

namespace diebal::materials {

/// Hansel-Spittel flow stress coefficients, temperature in degrees Celsius.
///
///   sigma = A e^(m1 T) T^m9 eps^m2 e^(m4/eps) (1+eps)^(m5 T) e^(m7 eps) rate^m3 rate^(m8 T)
struct HanselSpittelCoefficients {
  double A = 0.0;  // MPa
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  double m5 = 0.0;
  double m7 = 0.0;
  double m8 = 0.0;
  double m9 = 0.0;

  /// EN AW-6063-O coefficients.
  static HanselSpittelCoefficients aa6063_o();
};

/// Flow stress in MPa. Throws DomainError for nonpositive strain or strain
/// rate, nonpositive temperature when m9 != 0, or A <= 0.
double hansel_spittel_stress(double temperature_c, double strain, double strain_rate,
                             const HanselSpittelCoefficients& c);

/// Levanov friction shear traction, MPa:
///   f = m * sigma / sqrt(3) * (1 - exp(-1.25 * sigma_n / sigma))
/// Requires 0 <= m <= 1, flow_stress > 0 and normal_pressure >= 0 (DomainError).
double levanov_friction(double friction_factor, double flow_stress, double normal_pressure);

struct Breakpoint {
  double temperature = 0.0;  // degC
  double value = 0.0;
};

/// Temperature-dependent property given by breakpoints, linear in between and
/// clamped to the end values outside the tabulated range.
class PropertyTable {
 public:
  PropertyTable(std::string name, std::string unit, std::vector<Breakpoint> breakpoints);

  const std::string& name() const { return name_; }
  const std::string& unit() const { return unit_; }
  std::span<const Breakpoint> breakpoints() const { return breakpoints_; }

  double operator()(double temperature_c) const;

 private:
  std::string name_;
  std::string unit_;
  std::vector<Breakpoint> breakpoints_;
};

double interpolate_property(const PropertyTable& t, double temperature_c);

// AISI H-13 die steel.
inline constexpr double kH13PoissonRatio = 0.3;
// Aluminium/steel contact heat exchange, W/(m^2 K).
inline constexpr double kContactHeatTransfer = 30000.0;

/// Shipped tables: AISI H-13 steel (young_modulus, yield_stress, density,
/// thermal_conductivity, specific_heat) and EN AW-6063-O (density,
/// young_modulus, thermal_conductivity, specific_heat, thermal_expansion,
/// poisson_ratio). Names are "<material>.<property>", e.g. "h13.young_modulus".
const std::vector<PropertyTable>& default_property_tables();

/// Looks up a table by name in `tables`; throws std::out_of_range when absent.
const PropertyTable& find_table(std::span<const PropertyTable> tables, std::string_view name);

}  // namespace diebal::materials
