#include "diebal/die.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "diebal/error.hpp"

namespace diebal {

std::size_t DieDesign::port_count() const {
  std::size_t n = 0;
  for (const auto& c : cavities) n += c.size();
  return n;
}

const Port* DieDesign::find_port(std::string_view id) const {
  for (const auto& c : cavities) {
    for (const auto& p : c) {
      if (p.id == id) return &p;
    }
  }
  return nullptr;
}

void validate(const DieDesign& die) {
  if (!std::isfinite(die.centre.x) || !std::isfinite(die.centre.y)) {
    throw ValidationError("die centre is not finite");
  }
  if (die.container_diameter && !(*die.container_diameter > 0.0)) {
    throw ValidationError("container diameter must be positive");
  }
  if (die.max_pressure && !(*die.max_pressure > 0.0)) {
    throw ValidationError("maximum press pressure must be positive");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& cavity : die.cavities) {
    for (const auto& port : cavity) {
      if (port.id.empty()) throw ValidationError("port id must not be empty");
      if (!seen.insert(port.id).second) {
        throw ValidationError(fmt::format("duplicate port id '{}'", port.id));
      }
      if (port.depth && !(*port.depth > 0.0)) {
        throw ValidationError(fmt::format("port '{}': depth must be positive", port.id));
      }
    }
  }
}

bool is_standard_layout(const DieDesign& die) {
  if (die.cavities.size() != 4) return false;
  for (const auto& c : die.cavities) {
    if (c.size() != 4) return false;
  }
  return true;
}

std::vector<std::string> layout_warnings(const DieDesign& die) {
  std::vector<std::string> out;
  if (die.cavities.size() != 4) {
    out.push_back(fmt::format(
        "die has {} cavities; balancing formulas are validated for 4 cavities",
        die.cavities.size()));
  }
  for (std::size_t i = 0; i < die.cavities.size(); ++i) {
    if (die.cavities[i].size() != 4) {
      out.push_back(fmt::format(
          "cavity {} has {} ports; balancing formulas are validated for 4 ports per cavity",
          i + 1, die.cavities[i].size()));
    }
  }
  return out;
}

std::vector<PortVariables> extract_port_variables(const DieDesign& die) {
  std::vector<PortVariables> out;
  out.reserve(die.port_count());
  double area_total = 0.0;
  double perim_total = 0.0;
  for (const auto& cavity : die.cavities) {
    for (const auto& port : cavity) {
      try {
        PortVariables v;
        v.port_id = port.id;
        v.area = polygon_area(port.geometry);
        v.perimeter = polygon_perimeter(port.geometry);
        const Point2 c = polygon_centroid(port.geometry);
        v.dist = distance(c, die.centre);
        v.area_prof = zone_area(port.profile_zone);
        v.perim_prof = zone_perimeter(port.profile_zone);
        v.dist_port_prof = distance(c, zone_centroid(port.profile_zone));
        v.depth = port.depth;
        area_total += v.area;
        perim_total += v.perimeter;
        out.push_back(std::move(v));
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("port '{}': {}", port.id, e.what()));
      }
    }
  }
  for (auto& v : out) {
    v.area_total = area_total;
    v.perim_total = perim_total;
  }
  return out;
}

}  // namespace diebal
