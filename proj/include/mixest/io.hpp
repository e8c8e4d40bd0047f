#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixest/prior.hpp"
#include "mixest/report.hpp"
#include "mixest/simulator.hpp"
#include "mixest/state.hpp"

namespace mixest {

using Json = nlohmann::json;

/// {"dim": d, "re": [[...]], "im": [[...]]}, row-major; "im" may be omitted.
ComplexMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);

/// {"kind": "uniform"} | {"kind": "trunc_reciprocal", "t_bmax": x} |
/// {"kind": "table", "lambda": [...], "density": [...]} | {"kind": "point_mass", "lambda": x}
Prior prior_from_json(const Json& j);
Json prior_to_json(const Prior& prior);

struct ProblemFile {
  DensityMatrix rho1;
  DensityMatrix rho2;
  Prior prior;
  Json options;
};

/// Missing "prior" means uniform.
ProblemFile problem_from_json(const Json& j);
/// {"effects": [matrix, ...]}
std::vector<ComplexMatrix> povm_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Inline JSON when the text starts with '{', otherwise a file path.
Json json_from_arg(const std::string& text_or_path);

Json report_to_json(const EstimationReport& report);
Json summary_to_json(const SimulationSummary& summary);

/// Shortest text that round-trips: 17 significant digits.
std::string format_double(double x);
void write_summary_csv(std::ostream& os, const SimulationSummary& summary);
void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& trials);

}  // namespace mixest
