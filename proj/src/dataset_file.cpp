#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "diebal/error.hpp"
#include "diebal/io.hpp"

namespace diebal::io {

namespace {

constexpr DatasetColumn kColumns[] = {
    {"area_mm2", "area", true},
    {"perimeter_mm", "perimeter", true},
    {"dist_mm", "dist", true},
    {"area_prof_mm2", "area_prof", true},
    {"perim_prof_mm", "perim_prof", true},
    {"dist_port_prof_mm", "dist_port_prof", true},
    {"depth_mm", "depth", true},
    {"area_total_mm2", "area_total", true},
    {"perim_total_mm", "perim_total", false},
    {"container_diameter_mm", "container_diameter", false},
    {"max_pressure", "max_pressure", false},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delim) {
      out.emplace_back(trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  out.emplace_back(trim(cell));
  return out;
}

char detect_delimiter(std::string_view header) {
  const char candidates[] = {',', ';', '\t'};
  char best = ',';
  std::ptrdiff_t best_count = 0;
  for (char c : candidates) {
    const auto n = std::count(header.begin(), header.end(), c);
    if (n > best_count) {
      best = c;
      best_count = n;
    }
  }
  return best;
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string canonical_header(std::string name, const ColumnMapping& mapping) {
  if (const auto it = mapping.find(name); it != mapping.end()) name = it->second;
  if (name == "perim_total_mm2") name = "perim_total_mm";
  return name;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

}  // namespace

std::span<const DatasetColumn> dataset_columns() { return kColumns; }

Dataset parse_dataset(std::istream& in, const std::string& source, const ColumnMapping& mapping) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ParseError(fmt::format("{}: empty dataset file", source));
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const char delim = detect_delimiter(line);
  std::vector<std::string> header = split(line, delim);
  for (auto& h : header) h = canonical_header(h, mapping);
  auto find = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };

  const auto die_col = find("die_id");
  const auto port_col = find("port_id");
  if (!die_col) throw ParseError(fmt::format("{}: missing column die_id", source));
  if (!port_col) throw ParseError(fmt::format("{}: missing column port_id", source));

  struct Used {
    std::string_view file_name;
    std::string_view regressor;
    std::size_t index;
  };
  std::vector<Used> used;
  for (const auto& c : kColumns) {
    const auto idx = find(c.file_name);
    if (!idx) {
      if (c.mandatory) throw ParseError(fmt::format("{}: missing column {}", source, c.file_name));
      continue;
    }
    used.push_back({c.file_name, c.regressor, *idx});
  }

  std::vector<std::vector<double>> values;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, delim);
    if (cells.size() != header.size()) {
      throw ParseError(fmt::format("{}: line {}: expected {} fields, got {}", source, line_no,
                                   header.size(), cells.size()));
    }
    std::vector<double> row;
    for (const auto& u : used) {
      const auto v = parse_number(cells[u.index]);
      if (!v) {
        throw ParseError(fmt::format("{}: line {}, column {}: '{}' is not a number", source,
                                     line_no, u.file_name, cells[u.index]));
      }
      row.push_back(*v);
    }
    values.push_back(std::move(row));
    labels.push_back(fmt::format("{}/{}", cells[*die_col], cells[*port_col]));
  }

  Dataset d;
  const auto n = static_cast<Eigen::Index>(values.size());
  const auto m = static_cast<Eigen::Index>(used.size()) - 1;
  d.response.resize(n);
  d.candidates.resize(n, m);
  for (std::size_t j = 1; j < used.size(); ++j) d.candidate_names.emplace_back(used[j].regressor);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = values[static_cast<std::size_t>(r)];
    d.response(r) = row[0];
    for (Eigen::Index c = 0; c < m; ++c) d.candidates(r, c) = row[static_cast<std::size_t>(c + 1)];
  }
  d.row_labels = std::move(labels);
  return d;
}

Dataset load_dataset(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));
  return parse_dataset(in, path.string(), mapping);
}

std::vector<DatasetRow> dataset_rows(const DieDesign& die) {
  std::vector<DatasetRow> out;
  for (auto& v : extract_port_variables(die)) {
    out.push_back({die.name, std::move(v), die.container_diameter, die.max_pressure});
  }
  return out;
}

void write_dataset(std::ostream& out, std::span<const DatasetRow> rows) {
  const bool press_cd = std::any_of(rows.begin(), rows.end(),
                                    [](const auto& r) { return r.container_diameter.has_value(); });
  const bool press_mp =
      std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.max_pressure.has_value(); });
  out << "die_id,port_id,area_mm2,perimeter_mm,dist_mm,area_prof_mm2,perim_prof_mm,"
         "dist_port_prof_mm,depth_mm,area_total_mm2,perim_total_mm";
  if (press_cd) out << ",container_diameter_mm";
  if (press_mp) out << ",max_pressure";
  out << '\n';
  for (const auto& r : rows) {
    const auto& v = r.vars;
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{}", r.die_id, v.port_id, v.area, v.perimeter,
               v.dist, v.area_prof, v.perim_prof, v.dist_port_prof, fmt_opt(v.depth),
               v.area_total, v.perim_total);
    if (press_cd) out << ',' << fmt_opt(r.container_diameter);
    if (press_mp) out << ',' << fmt_opt(r.max_pressure);
    out << '\n';
  }
}

}  // namespace diebal::io
