#include "inerton/scales.hpp"

#include <json.hpp>

#include "inerton/config.hpp"

namespace inerton {

Constantsd constants_from_config(KeyValueConfig& config) {
  const std::string system = config.get_string("unit_system", "natural");
  Constantsd consts;
  if (system == "natural") {
    consts = Constantsd::natural();
  } else if (system == "si") {
    consts = Constantsd::si();
  } else {
    throw ConfigError("units-and-scales", "constants_from_config",
                      "unit_system must be 'si' or 'natural', got '" + system + "'");
  }
  consts.h = config.get_double("h", consts.h);
  consts.c = config.get_double("c", consts.c);
  if (!(consts.h > 0.0) || !(consts.c > 0.0)) {
    throw DomainError("units-and-scales", "constants_from_config", "h and c must be > 0");
  }
  return consts;
}

std::string to_json(const ScaleReportd& report) {
  nlohmann::ordered_json j;
  j["lambda"] = report.lambda;
  j["Lambda"] = report.Lambda;
  j["lambda_com"] = report.lambda_com;
  j["T"] = report.T;
  j["nu"] = report.nu;
  return j.dump(2);
}

}  // namespace inerton
