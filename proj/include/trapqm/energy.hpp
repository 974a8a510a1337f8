#pragma once

#include <map>
#include <string>
#include <utility>

namespace trapqm {

/// A method-tagged energy with its leading/correction split.
/// Invariant: value == leading + correction.
struct EnergyEstimate {
  std::string method;
  double value = 0.0;
  double leading = 0.0;
  double correction = 0.0;
  std::map<std::string, double> metadata;

  static EnergyEstimate from_parts(std::string method, double leading, double correction) {
    EnergyEstimate e;
    e.method = std::move(method);
    e.leading = leading;
    e.correction = correction;
    e.value = leading + correction;
    return e;
  }
};

}  // namespace trapqm
