#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diebal/die.hpp"
#include "diebal/materials.hpp"
#include "diebal/model.hpp"
#include "diebal/regression.hpp"

namespace diebal::io {

inline constexpr int kDieSchemaVersion = 1;
inline constexpr int kCoefficientsSchemaVersion = 1;

struct LoadedDie {
  DieDesign die;
  std::vector<std::string> warnings;
};

/// Reads a die file (JSON, see docs/file-formats.md). Throws ParseError with
/// the JSON location of the offending field, or ValidationError naming the port.
LoadedDie load_die(const std::filesystem::path& path);
LoadedDie parse_die(const nlohmann::json& doc, const std::string& source = "<die>");
nlohmann::json die_to_json(const DieDesign& die);
void save_die(const std::filesystem::path& path, const DieDesign& die);

/// Maps external column names onto the canonical dataset columns.
using ColumnMapping = std::map<std::string, std::string>;

/// Reads a JSON object {"external name": "canonical name", ...}.
ColumnMapping load_column_mapping(const std::filesystem::path& path);

/// Canonical dataset columns, file name -> regressor name. `area_mm2` is the response.
struct DatasetColumn {
  std::string_view file_name;
  std::string_view regressor;
  bool mandatory;
};
std::span<const DatasetColumn> dataset_columns();

/// Reads a delimited dataset (comma, semicolon or tab, detected from the
/// header). Throws ParseError naming the missing column or the row and column
/// of a non-numeric cell.
Dataset load_dataset(const std::filesystem::path& path, const ColumnMapping& mapping = {});
Dataset parse_dataset(std::istream& in, const std::string& source = "<dataset>",
                      const ColumnMapping& mapping = {});

/// One dataset row, as produced from a die or by a data generator.
struct DatasetRow {
  std::string die_id;
  PortVariables vars;
  std::optional<double> container_diameter;
  std::optional<double> max_pressure;
};

std::vector<DatasetRow> dataset_rows(const DieDesign& die);
/// Writes comma-separated rows with the canonical header. Optional press
/// columns are written when any row carries them. Values use shortest
/// round-trip formatting.
void write_dataset(std::ostream& out, std::span<const DatasetRow> rows);

nlohmann::json coefficients_to_json(const ModelCoefficients& c);
ModelCoefficients coefficients_from_json(const nlohmann::json& j,
                                         const std::string& source = "<coefficients>");
ModelCoefficients load_coefficients(const std::filesystem::path& path);
void save_coefficients(const std::filesystem::path& path, const ModelCoefficients& c);

/// Material configuration: an optional Hansel-Spittel coefficient set and
/// extra property tables. Missing parts fall back to the shipped defaults.
struct MaterialConfig {
  materials::HanselSpittelCoefficients hansel_spittel = materials::HanselSpittelCoefficients::aa6063_o();
  std::vector<materials::PropertyTable> tables = materials::default_property_tables();
};
MaterialConfig load_material_config(const std::filesystem::path& path);
MaterialConfig parse_material_config(const nlohmann::json& doc,
                                     const std::string& source = "<config>");

}  // namespace diebal::io
