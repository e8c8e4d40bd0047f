#include "mixest/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "mixest/errors.hpp"

namespace mixest {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("field \"") + key + "\": " + e.what());
  }
}

std::vector<std::vector<double>> rows_of(const Json& j, const char* key, int dim) {
  const auto rows = get_field<std::vector<std::vector<double>>>(j, key);
  if (static_cast<int>(rows.size()) != dim) parse_error(std::string("\"") + key + "\" must have dim rows");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != dim) parse_error(std::string("\"") + key + "\" must have dim columns");
  return rows;
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j) {
  const int dim = get_field<int>(j, "dim");
  if (dim < 1) parse_error("\"dim\" must be positive");
  const auto re = rows_of(j, "re", dim);
  std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
  if (j.contains("im")) im = rows_of(j, "im", dim);
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

Prior prior_from_json(const Json& j) {
  const auto kind = get_field<std::string>(j, "kind");
  if (kind == "uniform") return Prior::uniform();
  if (kind == "trunc_reciprocal") return Prior::truncated_reciprocal(get_field<double>(j, "t_bmax"));
  if (kind == "point_mass") return Prior::point_mass(get_field<double>(j, "lambda"));
  if (kind == "table") {
    return Prior::table(get_field<std::vector<double>>(j, "lambda"), get_field<std::vector<double>>(j, "density"));
  }
  parse_error("unknown prior kind \"" + kind + "\"");
}

Json prior_to_json(const Prior& prior) {
  Json j{{"kind", to_string(prior.kind())}};
  switch (prior.kind()) {
    case PriorKind::Uniform: break;
    case PriorKind::TruncatedReciprocal: j["t_bmax"] = prior.parameter(); break;
    case PriorKind::PointMass: j["lambda"] = prior.parameter(); break;
    case PriorKind::Table:
      j["lambda"] = prior.table_lambda();
      j["density"] = prior.table_density();
      break;
  }
  j["mean"] = prior.mean();
  j["second_moment"] = prior.second_moment();
  return j;
}

ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) parse_error("problem must be a JSON object");
  auto rho1 = validate_state(matrix_from_json(get_field<Json>(j, "rho1")));
  auto rho2 = validate_state(matrix_from_json(get_field<Json>(j, "rho2")));
  if (rho1.dim() != rho2.dim()) throw Error(ErrorCode::DimensionMismatch, "rho1 and rho2 differ in dimension");
  Prior prior = j.contains("prior") ? prior_from_json(j.at("prior")) : Prior::uniform();
  Json options = j.contains("options") ? j.at("options") : Json::object();
  return {std::move(rho1), std::move(rho2), std::move(prior), std::move(options)};
}

std::vector<ComplexMatrix> povm_from_json(const Json& j) {
  const auto list = get_field<std::vector<Json>>(j, "effects");
  if (list.empty()) parse_error("\"effects\" is empty");
  std::vector<ComplexMatrix> effects;
  for (const auto& e : list) effects.push_back(matrix_from_json(e));
  return effects;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

Json json_from_arg(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\n");
  if (first != std::string::npos && text_or_path[first] == '{') {
    try {
      return Json::parse(text_or_path);
    } catch (const nlohmann::json::exception& e) {
      parse_error(e.what());
    }
  }
  return read_json_file(text_or_path);
}

Json report_to_json(const EstimationReport& report) {
  Json effects = Json::array();
  for (const auto& e : report.povm.effects()) effects.push_back(matrix_to_json(e.matrix()));
  Json outcomes = Json::array();
  for (const auto& pm : report.score.per_outcome) {
    outcomes.push_back({{"prob", pm.prob},
                        {"estimate", pm.estimate},
                        {"posterior_variance", pm.variance},
                        {"occurs", pm.occurs}});
  }
  return {{"method", report.method},
          {"effects", effects},
          {"outcomes", outcomes},
          {"q_value", report.score.q_value},
          {"mean_variance", report.score.mean_variance}};
}

Json summary_to_json(const SimulationSummary& s) {
  return {{"seed", s.seed},
          {"n_trials", s.n_trials},
          {"empirical_mse", s.empirical_mse},
          {"analytic_mean_variance", s.analytic_mean_variance},
          {"std_error", s.std_error},
          {"flagged", s.flagged}};
}

std::string format_double(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

void write_summary_csv(std::ostream& os, const SimulationSummary& s) {
  os << "seed,n_trials,empirical_mse,analytic_mean_variance,std_error\n"
     << s.seed << ',' << s.n_trials << ',' << format_double(s.empirical_mse) << ','
     << format_double(s.analytic_mean_variance) << ',' << format_double(s.std_error) << '\n';
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& trials) {
  os << "true_lambda,outcome_index,estimate,squared_error\n";
  for (const auto& t : trials) {
    os << format_double(t.true_lambda) << ',' << t.outcome_index << ',' << format_double(t.estimate) << ','
       << format_double(t.squared_error) << '\n';
  }
}

}  // namespace mixest
