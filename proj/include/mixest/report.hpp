#pragma once

#include <string>

#include "mixest/bayes.hpp"

namespace mixest {

/// A measurement together with its analytic score.
struct EstimationReport {
  std::string method;
  Povm povm;
  MeasurementScore score;
};

}  // namespace mixest
