#include <fstream>

#include <fmt/format.h>

#include "diebal/error.hpp"
#include "diebal/io.hpp"

namespace diebal::io {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

double number_at(const json& obj, std::string_view key, const std::string& source,
                 std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(fmt::format("{}: {}: missing field '{}'", source, where, key));
  if (!it->is_number()) {
    throw ParseError(fmt::format("{}: {}/{}: expected a number", source, where, key));
  }
  return it->get<double>();
}

// Names of the per-variable coefficients in the coefficients file.
struct CoefficientSlot {
  std::string_view name;
  double ModelCoefficients::*member;
};
constexpr CoefficientSlot kSlots[] = {
    {"dist", &ModelCoefficients::coef_dist},
    {"area_total", &ModelCoefficients::coef_area_total},
    {"area_prof", &ModelCoefficients::coef_area_prof},
    {"dist_port_prof", &ModelCoefficients::coef_dist_port_prof},
    {"perim_prof", &ModelCoefficients::coef_perim_prof},
};

}  // namespace

json coefficients_to_json(const ModelCoefficients& c) {
  json j;
  j["schema_version"] = kCoefficientsSchemaVersion;
  j["kind"] = std::string(to_string(c.kind));
  j["intercept"] = c.intercept;
  json coefs = json::object();
  for (const auto& s : kSlots) coefs[std::string(s.name)] = c.*s.member;
  j["coefficients"] = coefs;
  if (c.std_error) j["std_error"] = *c.std_error;
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  return j;
}

ModelCoefficients coefficients_from_json(const json& j, const std::string& source) {
  if (!j.is_object()) throw ParseError(fmt::format("{}: expected an object", source));
  const double version = number_at(j, "schema_version", source, "");
  if (version != kCoefficientsSchemaVersion) {
    throw ParseError(fmt::format("{}: unsupported schema version {}", source, version));
  }
  ModelCoefficients c;
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) {
    throw ParseError(fmt::format("{}: /kind: expected \"linear\" or \"loglinear\"", source));
  }
  try {
    c.kind = parse_model_kind(kind->get<std::string>());
  } catch (const UsageError& e) {
    throw ParseError(fmt::format("{}: /kind: {}", source, e.what()));
  }
  c.intercept = number_at(j, "intercept", source, "");
  const auto coefs = j.find("coefficients");
  if (coefs == j.end() || !coefs->is_object()) {
    throw ParseError(fmt::format("{}: missing object 'coefficients'", source));
  }
  for (const auto& [key, value] : coefs->items()) {
    const auto* slot = std::find_if(std::begin(kSlots), std::end(kSlots),
                                    [&](const auto& s) { return s.name == key; });
    if (slot == std::end(kSlots)) {
      throw ParseError(fmt::format("{}: /coefficients/{}: unknown variable", source, key));
    }
    if (!value.is_number()) {
      throw ParseError(fmt::format("{}: /coefficients/{}: expected a number", source, key));
    }
    c.*slot->member = value.get<double>();
  }
  if (j.contains("std_error")) c.std_error = number_at(j, "std_error", source, "");
  if (j.contains("tolerance")) c.tolerance = number_at(j, "tolerance", source, "");
  try {
    validate(c);
  } catch (const ValidationError& e) {
    throw ParseError(fmt::format("{}: {}", source, e.what()));
  }
  return c;
}

ModelCoefficients load_coefficients(const std::filesystem::path& path) {
  return coefficients_from_json(read_json(path), path.string());
}

void save_coefficients(const std::filesystem::path& path, const ModelCoefficients& c) {
  std::ofstream out(path);
  if (!out) throw ParseError(fmt::format("{}: cannot write file", path.string()));
  out << coefficients_to_json(c).dump(2) << '\n';
}

ColumnMapping load_column_mapping(const std::filesystem::path& path) {
  const json j = read_json(path);
  if (!j.is_object()) throw ParseError(fmt::format("{}: expected an object", path.string()));
  ColumnMapping m;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) {
      throw ParseError(fmt::format("{}: /{}: expected a column name", path.string(), key));
    }
    m[key] = value.get<std::string>();
  }
  return m;
}

MaterialConfig parse_material_config(const json& doc, const std::string& source) {
  if (!doc.is_object()) throw ParseError(fmt::format("{}: expected an object", source));
  MaterialConfig cfg;
  if (const auto hs = doc.find("hansel_spittel"); hs != doc.end()) {
    if (!hs->is_object()) throw ParseError(fmt::format("{}: /hansel_spittel: expected an object", source));
    auto& c = cfg.hansel_spittel;
    c = {};
    c.A = number_at(*hs, "A", source, "/hansel_spittel");
    const std::pair<std::string_view, double*> exps[] = {
        {"m1", &c.m1}, {"m2", &c.m2}, {"m3", &c.m3}, {"m4", &c.m4}, {"m5", &c.m5},
        {"m7", &c.m7}, {"m8", &c.m8}, {"m9", &c.m9}};
    for (const auto& [name, slot] : exps) {
      if (hs->contains(name)) *slot = number_at(*hs, name, source, "/hansel_spittel");
    }
  }
  if (const auto tables = doc.find("property_tables"); tables != doc.end()) {
    if (!tables->is_array()) {
      throw ParseError(fmt::format("{}: /property_tables: expected an array", source));
    }
    for (std::size_t i = 0; i < tables->size(); ++i) {
      const auto& t = (*tables)[i];
      const std::string where = fmt::format("/property_tables/{}", i);
      if (!t.is_object() || !t.contains("name") || !t["name"].is_string() ||
          !t.contains("breakpoints") || !t["breakpoints"].is_array()) {
        throw ParseError(fmt::format("{}: {}: expected {{name, breakpoints}}", source, where));
      }
      std::vector<materials::Breakpoint> bps;
      for (const auto& bp : t["breakpoints"]) {
        if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number()) {
          throw ParseError(
              fmt::format("{}: {}/breakpoints: expected [temperature, value] pairs", source, where));
        }
        bps.push_back({bp[0].get<double>(), bp[1].get<double>()});
      }
      const std::string name = t["name"].get<std::string>();
      const std::string unit = t.value("unit", std::string());
      try {
        materials::PropertyTable table(name, unit, std::move(bps));
        auto existing = std::find_if(cfg.tables.begin(), cfg.tables.end(),
                                     [&](const auto& x) { return x.name() == name; });
        if (existing != cfg.tables.end()) {
          *existing = std::move(table);
        } else {
          cfg.tables.push_back(std::move(table));
        }
      } catch (const ValidationError& e) {
        throw ParseError(fmt::format("{}: {}: {}", source, where, e.what()));
      }
    }
  }
  return cfg;
}

MaterialConfig load_material_config(const std::filesystem::path& path) {
  return parse_material_config(read_json(path), path.string());
}

}  // namespace diebal::io
