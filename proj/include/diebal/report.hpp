#pragma once

#include <iosfwd>
#include <span>

#include <json.hpp>

#include "diebal/model.hpp"
#include "diebal/regression.hpp"

namespace diebal::report {

// Human-readable tables print values to 2 decimals; JSON carries full precision.

void print_variables(std::ostream& out, std::string_view die_name,
                     std::span<const PortVariables> vars);
nlohmann::json variables_json(std::string_view die_name, std::span<const PortVariables> vars);

void print_verification(std::ostream& out, const VerificationReport& r);
nlohmann::json verification_json(const VerificationReport& r);

void print_rebalance(std::ostream& out, const RebalanceResult& r);
nlohmann::json rebalance_json(const RebalanceResult& r);

void print_regression(std::ostream& out, const RegressionReport& r);
nlohmann::json regression_json(const RegressionReport& r);

}  // namespace diebal::report
