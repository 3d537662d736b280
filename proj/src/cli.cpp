#include "diebal/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "diebal/error.hpp"
#include "diebal/io.hpp"
#include "diebal/materials.hpp"
#include "diebal/report.hpp"

namespace diebal::cli {

namespace {

struct Options {
  std::string die_path;
  bool json = false;
  bool csv = false;

  std::string model = "linear";
  std::optional<double> tolerance;
  std::string coeffs_path;
  std::string target = "zero";

  std::string dataset_path;
  bool log = false;
  double entry_p = 0.05;
  double removal_p = 0.10;
  std::string columns_path;
  std::vector<std::string> candidates;
  std::string out_path;

  std::string config_path;
  double temperature = 0.0;
  double strain = 0.0;
  double strain_rate = 0.0;
  double friction_factor = 1.0;
  double flow_stress = 0.0;
  double pressure = 0.0;
  std::string table;
  bool list_tables = false;
};

ModelCoefficients select_coefficients(const Options& o) {
  ModelCoefficients c = o.coeffs_path.empty()
                            ? (parse_model_kind(o.model) == ModelKind::linear
                                   ? ModelCoefficients::linear_default()
                                   : ModelCoefficients::loglinear_default())
                            : io::load_coefficients(o.coeffs_path);
  if (o.tolerance) c.tolerance = *o.tolerance;
  validate(c);
  return c;
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) fmt::print(err, "warning: {}\n", w);
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  const auto loaded = io::load_die(o.die_path);
  print_warnings(err, loaded.warnings);
  if (o.csv) {
    io::write_dataset(out, io::dataset_rows(loaded.die));
    return kExitOk;
  }
  const auto vars = extract_port_variables(loaded.die);
  if (o.json) {
    out << report::variables_json(loaded.die.name, vars).dump(2) << '\n';
  } else {
    report::print_variables(out, loaded.die.name, vars);
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const auto loaded = io::load_die(o.die_path);
  const auto c = select_coefficients(o);
  const auto target = o.target == "edge" ? AdjustTarget::range_edge : AdjustTarget::zero;
  const auto r = check_die(loaded.die, c, target);
  if (o.json) {
    print_warnings(err, r.warnings);
    out << report::verification_json(r).dump(2) << '\n';
  } else {
    report::print_verification(out, r);
  }
  return r.all_in_tolerance ? kExitOk : kExitOutOfTolerance;
}

int cmd_rebalance(const Options& o, std::ostream& out, std::ostream& err) {
  const auto loaded = io::load_die(o.die_path);
  const auto c = select_coefficients(o);
  const auto r = rebalance(loaded.die, c);
  if (o.json) {
    print_warnings(err, r.warnings);
    out << report::rebalance_json(r).dump(2) << '\n';
  } else {
    report::print_rebalance(out, r);
  }
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
  const io::ColumnMapping mapping =
      o.columns_path.empty() ? io::ColumnMapping{} : io::load_column_mapping(o.columns_path);
  Dataset d = io::load_dataset(o.dataset_path, mapping);
  if (!o.candidates.empty()) d = d.select(o.candidates);
  const StepwiseOptions opts{o.entry_p, o.removal_p};
  const auto r = o.log ? fit_loglinear(d, opts) : stepwise_fit(d, opts);
  if (o.json) {
    out << report::regression_json(r).dump(2) << '\n';
  } else {
    report::print_regression(out, r);
  }
  if (!o.out_path.empty()) {
    io::save_coefficients(o.out_path, to_model_coefficients(r));
    if (!o.json) fmt::print(err, "model written to {}\n", o.out_path);
  }
  return kExitOk;
}

int cmd_stress(const Options& o, std::ostream& out) {
  const auto cfg = o.config_path.empty() ? io::MaterialConfig{} : io::load_material_config(o.config_path);
  const double s = materials::hansel_spittel_stress(o.temperature, o.strain, o.strain_rate, cfg.hansel_spittel);
  if (o.json) {
    out << nlohmann::json{{"flow_stress_mpa", s}}.dump() << '\n';
  } else {
    fmt::print(out, "flow stress: {:.4f} MPa\n", s);
  }
  return kExitOk;
}

int cmd_friction(const Options& o, std::ostream& out) {
  const double f = materials::levanov_friction(o.friction_factor, o.flow_stress, o.pressure);
  if (o.json) {
    out << nlohmann::json{{"shear_traction_mpa", f}}.dump() << '\n';
  } else {
    fmt::print(out, "friction shear traction: {:.4f} MPa\n", f);
  }
  return kExitOk;
}

int cmd_property(const Options& o, std::ostream& out) {
  const auto cfg = o.config_path.empty() ? io::MaterialConfig{} : io::load_material_config(o.config_path);
  if (o.list_tables || o.table.empty()) {
    for (const auto& t : cfg.tables) fmt::print(out, "{} [{}]\n", t.name(), t.unit());
    return kExitOk;
  }
  const auto& t = materials::find_table(cfg.tables, o.table);
  const double v = materials::interpolate_property(t, o.temperature);
  if (o.json) {
    out << nlohmann::json{{"table", t.name()}, {"temperature_c", o.temperature}, {"value", v}}.dump()
        << '\n';
  } else {
    fmt::print(out, "{} at {} C: {} {}\n", t.name(), o.temperature, v, t.unit());
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Port balancing toolkit for four-cavity porthole extrusion dies", "diebal"};
  app.require_subcommand(1);
  Options o;

  auto* extract = app.add_subcommand("extract", "Per-port geometric variables of a die file");
  extract->add_option("die", o.die_path, "Die file (JSON)")->required()->check(CLI::ExistingFile);
  extract->add_flag("--json", o.json, "Machine-readable output");
  extract->add_flag("--csv", o.csv, "Emit dataset rows (CSV) instead of a table");

  auto* check = app.add_subcommand("check", "Verify port balance against the model tolerance");
  check->add_option("die", o.die_path, "Die file (JSON)")->required()->check(CLI::ExistingFile);
  check->add_option("--model", o.model, "Built-in model")->check(CLI::IsMember({"linear", "loglinear"}));
  check->add_option("--tolerance", o.tolerance, "Tolerance (mm2 for linear models)")
      ->check(CLI::PositiveNumber);
  check->add_option("--coeffs", o.coeffs_path, "Coefficients file")->check(CLI::ExistingFile);
  check->add_option("--target", o.target, "Adjustment target")->check(CLI::IsMember({"zero", "edge"}));
  check->add_flag("--json", o.json, "Machine-readable output");

  auto* reb = app.add_subcommand("rebalance", "Area changes that zero every port's linear value");
  reb->add_option("die", o.die_path, "Die file (JSON)")->required()->check(CLI::ExistingFile);
  reb->add_option("--coeffs", o.coeffs_path, "Coefficients file (linear)")->check(CLI::ExistingFile);
  reb->add_flag("--json", o.json, "Machine-readable output");

  auto* fit = app.add_subcommand("fit", "Stepwise regression on a port dataset");
  fit->add_option("dataset", o.dataset_path, "Dataset file (CSV)")->required()->check(CLI::ExistingFile);
  fit->add_flag("--log", o.log, "Fit the log-linear model");
  fit->add_option("--entry-p", o.entry_p, "Entry threshold")->check(CLI::Range(0.0, 1.0));
  fit->add_option("--removal-p", o.removal_p, "Removal threshold")->check(CLI::Range(0.0, 1.0));
  fit->add_option("--columns", o.columns_path, "Column mapping file (JSON)")->check(CLI::ExistingFile);
  fit->add_option("--candidates", o.candidates, "Restrict candidate regressors")->delimiter(',');
  fit->add_option("--out", o.out_path, "Write the fitted coefficients file");
  fit->add_flag("--json", o.json, "Machine-readable output");

  auto* material = app.add_subcommand("material", "Material model evaluations");
  material->require_subcommand(1);
  auto* stress = material->add_subcommand("stress", "Hansel-Spittel flow stress (MPa)");
  stress->add_flag("--json", o.json, "Machine-readable output");
  stress->add_option("--temperature", o.temperature, "Temperature (C)")->required();
  stress->add_option("--strain", o.strain, "Equivalent strain")->required();
  stress->add_option("--rate", o.strain_rate, "Strain rate (1/s)")->required();
  stress->add_option("--config", o.config_path, "Material config file")->check(CLI::ExistingFile);
  auto* friction = material->add_subcommand("friction", "Levanov friction shear traction (MPa)");
  friction->add_flag("--json", o.json, "Machine-readable output");
  friction->add_option("--m", o.friction_factor, "Friction factor in [0, 1]");
  friction->add_option("--flow-stress", o.flow_stress, "Flow stress (MPa)")->required();
  friction->add_option("--pressure", o.pressure, "Normal contact pressure (MPa)")->required();
  auto* property = material->add_subcommand("property", "Interpolate a temperature-dependent property");
  property->add_flag("--json", o.json, "Machine-readable output");
  property->add_option("table", o.table, "Table name, e.g. h13.young_modulus");
  property->add_option("--temperature", o.temperature, "Temperature (C)");
  property->add_option("--config", o.config_path, "Material config file")->check(CLI::ExistingFile);
  property->add_flag("--list", o.list_tables, "List available tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n\n", e.what());
    err << app.help();
    return kExitError;
  }

  try {
    if (*extract) return cmd_extract(o, out, err);
    if (*check) return cmd_check(o, out, err);
    if (*reb) return cmd_rebalance(o, out, err);
    if (*fit) return cmd_fit(o, out, err);
    if (*stress) return cmd_stress(o, out);
    if (*friction) return cmd_friction(o, out);
    if (*property) return cmd_property(o, out);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitError;
  }
  err << app.help();
  return kExitError;
}

}  // namespace diebal::cli
