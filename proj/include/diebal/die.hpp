#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diebal/geometry.hpp"

namespace diebal {

struct Port {
  std::string id;
  Polygon geometry;
  /// Port depth (bridge height), mm. Recorded only; the balancing models do not use it.
  std::optional<double> depth;
  ProfileZone profile_zone;

  friend bool operator==(const Port&, const Port&) = default;
};

using Cavity = std::vector<Port>;

/// A porthole die. The balancing formulas were derived for dies with four
/// cavities of four ports each; other layouts load fine but are flagged by
/// `layout_warnings`.
struct DieDesign {
  std::string name;
  Point2 centre;
  std::optional<double> container_diameter;  // mm
  std::optional<double> max_pressure;
  std::vector<Cavity> cavities;

  std::size_t port_count() const;
  const Port* find_port(std::string_view id) const;

  friend bool operator==(const DieDesign&, const DieDesign&) = default;
};

/// Checks die-level invariants: unique port ids, positive depths and press data.
/// Throws ValidationError.
void validate(const DieDesign& die);

/// True for the 4 cavity x 4 port layout the default models were fitted on.
bool is_standard_layout(const DieDesign& die);

/// Human-readable notes about layout issues; empty for a standard layout.
std::vector<std::string> layout_warnings(const DieDesign& die);

/// Regressor values of one port. All lengths mm, areas mm^2.
struct PortVariables {
  std::string port_id;
  double area = 0.0;
  double dist = 0.0;
  double area_prof = 0.0;
  double perim_prof = 0.0;
  double dist_port_prof = 0.0;
  double area_total = 0.0;
  // Recorded but excluded from the balancing models.
  double perimeter = 0.0;
  double perim_total = 0.0;
  std::optional<double> depth;
};

/// One entry per port in cavity order. Every entry carries the die-level
/// totals (sum of port areas and perimeters).
std::vector<PortVariables> extract_port_variables(const DieDesign& die);

}  // namespace diebal
