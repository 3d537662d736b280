#include <fstream>

#include <fmt/format.h>

#include "diebal/error.hpp"
#include "diebal/io.hpp"

namespace diebal::io {

using nlohmann::json;

namespace {

// Field access with JSON-pointer style locations in error messages.
class Field {
 public:
  Field(const json& node, std::string source, std::string path)
      : node_(node), source_(std::move(source)), path_(std::move(path)) {}

  [[noreturn]] void fail(std::string_view what) const {
    throw ParseError(fmt::format("{}: {}: {}", source_, path_.empty() ? "/" : path_, what));
  }

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

  bool has(std::string_view key) const { return node_.is_object() && node_.contains(key); }

  Field at(std::string_view key) const {
    if (!node_.is_object()) fail("expected an object");
    const auto it = node_.find(key);
    if (it == node_.end()) fail(fmt::format("missing field '{}'", key));
    return {*it, source_, fmt::format("{}/{}", path_, key)};
  }

  Field at(std::size_t i) const { return {node_.at(i), source_, fmt::format("{}/{}", path_, i)}; }

  std::size_t array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  std::string string() const {
    if (node_.is_string()) return node_.get<std::string>();
    if (node_.is_number_integer()) return std::to_string(node_.get<long long>());
    fail("expected a string");
  }

  Point2 point() const {
    if (array_size() != 2) fail("expected [x, y]");
    return {at(std::size_t{0}).number(), at(std::size_t{1}).number()};
  }

  Polygon polygon() const {
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < array_size(); ++i) pts.push_back(at(i).point());
    try {
      return Polygon(std::move(pts));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("{}: {}: {}", source_, path_, e.what()));
    }
  }

 private:
  const json& node_;
  std::string source_;
  std::string path_;
};

json points_to_json(std::span<const Point2> pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

}  // namespace

LoadedDie parse_die(const json& doc, const std::string& source) {
  const Field root(doc, source, "");
  if (!doc.is_object()) root.fail("expected an object");
  const int version = static_cast<int>(root.at("schema_version").number());
  if (version != kDieSchemaVersion) {
    root.at("schema_version").fail(fmt::format("unsupported schema version {}", version));
  }

  DieDesign die;
  die.name = root.has("name") ? root.at("name").string() : std::string();
  if (root.has("centre")) die.centre = root.at("centre").point();
  if (root.has("press")) {
    const auto press = root.at("press");
    if (press.has("container_diameter_mm")) {
      die.container_diameter = press.at("container_diameter_mm").number();
    }
    if (press.has("max_pressure")) die.max_pressure = press.at("max_pressure").number();
  }

  const auto cavities = root.at("cavities");
  for (std::size_t c = 0; c < cavities.array_size(); ++c) {
    const auto ports = cavities.at(c).at("ports");
    Cavity cavity;
    for (std::size_t p = 0; p < ports.array_size(); ++p) {
      const auto pf = ports.at(p);
      const std::string id = pf.at("id").string();
      try {
        std::optional<double> depth;
        if (pf.has("depth_mm")) depth = pf.at("depth_mm").number();
        Polygon geometry = pf.at("polygon").polygon();
        const auto bounds = pf.at("profile_zone").at("boundaries");
        std::vector<Polygon> rings;
        for (std::size_t b = 0; b < bounds.array_size(); ++b) rings.push_back(bounds.at(b).polygon());
        ProfileZone zone = [&] {
          try {
            return ProfileZone(std::move(rings));
          } catch (const ValidationError& e) {
            throw ValidationError(fmt::format("{}: {}: {}", source, bounds.path(), e.what()));
          }
        }();
        cavity.push_back({id, std::move(geometry), depth, std::move(zone)});
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("port '{}': {}", id, e.what()));
      }
    }
    die.cavities.push_back(std::move(cavity));
  }

  try {
    validate(die);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", source, e.what()));
  }
  auto warnings = layout_warnings(die);
  return {std::move(die), std::move(warnings)};
}

LoadedDie load_die(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return parse_die(doc, path.string());
}

json die_to_json(const DieDesign& die) {
  json doc;
  doc["schema_version"] = kDieSchemaVersion;
  doc["name"] = die.name;
  doc["centre"] = {die.centre.x, die.centre.y};
  json press = json::object();
  if (die.container_diameter) press["container_diameter_mm"] = *die.container_diameter;
  if (die.max_pressure) press["max_pressure"] = *die.max_pressure;
  if (!press.empty()) doc["press"] = press;
  json cavities = json::array();
  for (const auto& cavity : die.cavities) {
    json ports = json::array();
    for (const auto& port : cavity) {
      json p;
      p["id"] = port.id;
      if (port.depth) p["depth_mm"] = *port.depth;
      p["polygon"] = points_to_json(port.geometry.vertices());
      json bounds = json::array();
      for (const auto& b : port.profile_zone.boundaries()) bounds.push_back(points_to_json(b.vertices()));
      p["profile_zone"] = {{"boundaries", bounds}};
      ports.push_back(std::move(p));
    }
    cavities.push_back({{"ports", ports}});
  }
  doc["cavities"] = cavities;
  return doc;
}

void save_die(const std::filesystem::path& path, const DieDesign& die) {
  std::ofstream out(path);
  if (!out) throw ParseError(fmt::format("{}: cannot write file", path.string()));
  out << die_to_json(die).dump(2) << '\n';
}

}  // namespace diebal::io
