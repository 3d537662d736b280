#include "diebal/materials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "diebal/error.hpp"

namespace diebal::materials {

HanselSpittelCoefficients HanselSpittelCoefficients::aa6063_o() {
  HanselSpittelCoefficients c;
  c.A = 265.0;
  c.m1 = -0.00458;
  c.m2 = -0.12712;
  c.m3 = 0.12;
  c.m4 = -0.0161;
  c.m5 = 0.00026;
  c.m7 = 0.0;
  c.m8 = 0.0;
  c.m9 = 0.0;
  return c;
}

double hansel_spittel_stress(double temperature_c, double strain, double strain_rate,
                             const HanselSpittelCoefficients& c) {
  if (!(c.A > 0.0)) throw DomainError("Hansel-Spittel A must be positive");
  if (!(strain > 0.0)) throw DomainError(fmt::format("strain must be positive, got {}", strain));
  if (!(strain_rate > 0.0)) {
    throw DomainError(fmt::format("strain rate must be positive, got {}", strain_rate));
  }
  if (c.m9 != 0.0 && !(temperature_c > 0.0)) {
    throw DomainError("temperature must be positive when m9 is nonzero");
  }
  const double T = temperature_c;
  const double e = strain;
  // Factor by factor: a zero exponent contributes exactly 1, so all-zero
  // exponents return A unchanged.
  return c.A * std::exp(c.m1 * T) * (c.m9 != 0.0 ? std::pow(T, c.m9) : 1.0) * std::pow(e, c.m2) *
         std::exp(c.m4 / e) * std::pow(1.0 + e, c.m5 * T) * std::exp(c.m7 * e) *
         std::pow(strain_rate, c.m3) * std::pow(strain_rate, c.m8 * T);
}

double levanov_friction(double friction_factor, double flow_stress, double normal_pressure) {
  if (!(friction_factor >= 0.0 && friction_factor <= 1.0)) {
    throw DomainError(fmt::format("friction factor must lie in [0, 1], got {}", friction_factor));
  }
  if (!(flow_stress > 0.0)) throw DomainError("flow stress must be positive");
  if (!(normal_pressure >= 0.0)) throw DomainError("normal pressure must be nonnegative");
  return friction_factor * flow_stress / std::sqrt(3.0) *
         -std::expm1(-1.25 * normal_pressure / flow_stress);
}

PropertyTable::PropertyTable(std::string name, std::string unit,
                             std::vector<Breakpoint> breakpoints)
    : name_(std::move(name)), unit_(std::move(unit)), breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) {
    throw ValidationError(fmt::format("property table '{}' needs at least 2 breakpoints", name_));
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto& b = breakpoints_[i];
    if (!std::isfinite(b.temperature) || !std::isfinite(b.value)) {
      throw ValidationError(fmt::format("property table '{}': breakpoint {} not finite", name_, i));
    }
    if (i > 0 && !(b.temperature > breakpoints_[i - 1].temperature)) {
      throw ValidationError(
          fmt::format("property table '{}': temperatures must be strictly increasing", name_));
    }
  }
}

double PropertyTable::operator()(double temperature_c) const {
  const auto& bp = breakpoints_;
  if (temperature_c <= bp.front().temperature) return bp.front().value;
  if (temperature_c >= bp.back().temperature) return bp.back().value;
  const auto hi = std::upper_bound(bp.begin(), bp.end(), temperature_c,
                                   [](double t, const Breakpoint& b) { return t < b.temperature; });
  const auto lo = hi - 1;
  const double s = (temperature_c - lo->temperature) / (hi->temperature - lo->temperature);
  return lo->value + s * (hi->value - lo->value);
}

double interpolate_property(const PropertyTable& t, double temperature_c) {
  return t(temperature_c);
}

const std::vector<PropertyTable>& default_property_tables() {
  static const std::vector<PropertyTable> tables = {
      {"h13.young_modulus", "MPa", {{20, 210000}, {300, 187000}, {600, 160000}}},
      {"h13.yield_stress", "MPa", {{20, 1500}, {300, 1300}, {500, 1100}, {570, 1020}}},
      {"h13.density", "kg/m3", {{20, 7716}, {100, 7692}, {200, 7660}, {800, 7459}}},
      {"h13.thermal_conductivity", "W/(m K)", {{20, 22}, {300, 29}, {600, 31}, {900, 32}}},
      {"h13.specific_heat", "J/(kg K)", {{20, 375}, {200, 551}, {500, 630}, {700, 975}, {800, 793}}},
      {"aa6063.density", "kg/m3", {{20, 2699}, {500, 2586}}},
      {"aa6063.young_modulus", "MPa", {{20, 70600}, {500, 46000}}},
      {"aa6063.thermal_conductivity", "W/(m K)", {{20, 205}, {500, 247}}},
      {"aa6063.specific_heat", "J/(kg K)", {{20, 904}, {500, 1026}}},
      {"aa6063.thermal_expansion", "1/K", {{20, 2.26e-5}, {500, 2.78e-5}}},
      {"aa6063.poisson_ratio", "", {{20, 0.33}, {500, 0.36}}},
  };
  return tables;
}

const PropertyTable& find_table(std::span<const PropertyTable> tables, std::string_view name) {
  for (const auto& t : tables) {
    if (t.name() == name) return t;
  }
  throw std::out_of_range(fmt::format("no property table named '{}'", name));
}

}  // namespace diebal::materials
