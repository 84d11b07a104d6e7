#include "oqho/json_io.hpp"

#include <array>
#include <fstream>
#include <limits>
#include <sstream>

#include "oqho/errors.hpp"

namespace oqho::io {
namespace {

std::string child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const Json& require(const Json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(std::string(key));
  if (it == j.end()) fail(child(path, key), "missing");
  return *it;
}

double number(const Json& j, const std::string& path) {
  // NaN and infinity are written as null.
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Index count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(path, "expected a non-negative integer");
  }
  return static_cast<Index>(j.get<long long>());
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Json rows_of(const RealMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix read_rows(const Json& j, Index rows, Index cols, const std::string& path) {
  array(j, path);
  if (static_cast<Index>(j.size()) != rows) {
    fail(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  RealMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const std::string row_path = element(path, static_cast<std::size_t>(i));
    const Json& row = array(j[static_cast<std::size_t>(i)], row_path);
    if (static_cast<Index>(row.size()) != cols) {
      fail(row_path,
           "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    }
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = number(row[static_cast<std::size_t>(k)],
                       element(row_path, static_cast<std::size_t>(k)));
    }
  }
  return m;
}

std::vector<double> doubles(const Json& j, const std::string& path) {
  array(j, path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], element(path, i)));
  return out;
}

Json complex_list(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (const Complex& z : values) out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

std::vector<Complex> complex_list_from(const Json& j, const std::string& path) {
  array(j, path);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = element(path, i);
    if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected a [re, im] pair");
    out.emplace_back(number(j[i][0], element(p, 0)), number(j[i][1], element(p, 1)));
  }
  return out;
}

RealMatrix real_field(const Json& j, std::string_view key, const std::string& path) {
  return real_matrix_from_json(require(j, key, path), child(path, key));
}

ComplexMatrix complex_field(const Json& j, std::string_view key, const std::string& path) {
  return complex_matrix_from_json(require(j, key, path), child(path, key));
}

double number_field(const Json& j, std::string_view key, const std::string& path) {
  return number(require(j, key, path), child(path, key));
}

Json conditions_json(const std::vector<Condition>& conds) {
  Json out = Json::array();
  for (const Condition& c : conds) out.push_back(to_json(c));
  return out;
}

std::vector<Condition> conditions_from(const Json& j, const std::string& path) {
  array(j, path);
  std::vector<Condition> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(condition_from_json(j[i], element(path, i)));
  return out;
}

bool has_all(const Json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (!j.contains(k)) return false;
  }
  return true;
}

}  // namespace

Json to_json(const RealMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = rows_of(m);
  return j;
}

Json to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = rows_of(m.real());
  j["im"] = rows_of(m.imag());
  return j;
}

RealMatrix real_matrix_from_json(const Json& j, const std::string& path) {
  const Index rows = count(require(j, "rows", path), child(path, "rows"));
  const Index cols = count(require(j, "cols", path), child(path, "cols"));
  return read_rows(require(j, "data", path), rows, cols, child(path, "data"));
}

ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& path) {
  const Index rows = count(require(j, "rows", path), child(path, "rows"));
  const Index cols = count(require(j, "cols", path), child(path, "cols"));
  const RealMatrix re = read_rows(require(j, "re", path), rows, cols, child(path, "re"));
  const RealMatrix im = read_rows(require(j, "im", path), rows, cols, child(path, "im"));
  ComplexMatrix m(rows, cols);
  m.real() = re;
  m.imag() = im;
  return m;
}

Json to_json(const StateSpace& ss) {
  ss.validate();
  if (ss.states() % 2 != 0 || ss.D.rows() % 2 != 0) {
    throw DimensionError("StateSpace JSON needs an even number of states and channels");
  }
  Json j;
  j["n"] = ss.states() / 2;
  j["m"] = ss.D.rows() / 2;
  j["A"] = to_json(ss.A);
  j["B"] = to_json(ss.B);
  j["C"] = to_json(ss.C);
  j["D"] = to_json(ss.D);
  return j;
}

StateSpace state_space_from_json(const Json& j) {
  const std::string root = "$";
  const Index n = count(require(j, "n", root), "$.n");
  const Index m = count(require(j, "m", root), "$.m");
  StateSpace ss{real_field(j, "A", root), real_field(j, "B", root), real_field(j, "C", root),
                real_field(j, "D", root)};
  auto expect = [](const RealMatrix& x, Index r, Index c, const char* field) {
    if (x.rows() != r || x.cols() != c) {
      fail(std::string("$.") + field, "expected " + std::to_string(r) + "x" + std::to_string(c) +
                                          " for n and m given, found " +
                                          std::to_string(x.rows()) + "x" +
                                          std::to_string(x.cols()));
    }
  };
  expect(ss.A, 2 * n, 2 * n, "A");
  expect(ss.B, 2 * n, 2 * m, "B");
  expect(ss.C, 2 * m, 2 * n, "C");
  expect(ss.D, 2 * m, 2 * m, "D");
  return ss;
}

Json to_json(const std::vector<RationalEntry>& entries) {
  Json list = Json::array();
  for (const RationalEntry& e : entries) {
    Json item;
    item["num"] = e.num;
    item["den"] = e.den;
    list.push_back(std::move(item));
  }
  Json j;
  j["entries"] = std::move(list);
  return j;
}

std::vector<RationalEntry> rational_from_json(const Json& j) {
  const Json& list = array(require(j, "entries", "$"), "$.entries");
  std::vector<RationalEntry> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = element("$.entries", i);
    out.push_back(RationalEntry{doubles(require(list[i], "num", p), child(p, "num")),
                                doubles(require(list[i], "den", p), child(p, "den"))});
  }
  return out;
}

Json to_json(const PmParams& p) {
  Json j;
  j["D"] = to_json(p.D);
  j["M"] = to_json(p.M);
  j["R"] = to_json(p.R);
  j["Theta"] = to_json(p.Theta);
  return j;
}

PmParams pm_params_from_json(const Json& j) {
  return PmParams{real_field(j, "D", "$"), real_field(j, "M", "$"), real_field(j, "R", "$"),
                  real_field(j, "Theta", "$")};
}

Json to_json(const AcParams& a) {
  Json j;
  j["S"] = to_json(a.S);
  j["N1"] = to_json(a.N1);
  j["N2"] = to_json(a.N2);
  j["H1"] = to_json(a.H1);
  j["H2"] = to_json(a.H2);
  j["E1"] = to_json(a.E1);
  j["E2"] = to_json(a.E2);
  return j;
}

AcParams ac_params_from_json(const Json& j) {
  return AcParams{complex_field(j, "S", "$"),  complex_field(j, "N1", "$"),
                  complex_field(j, "N2", "$"), complex_field(j, "H1", "$"),
                  complex_field(j, "H2", "$"), complex_field(j, "E1", "$"),
                  complex_field(j, "E2", "$")};
}

Json to_json(const Condition& c) {
  Json j;
  j["name"] = c.name;
  j["residual"] = c.residual;
  j["threshold"] = c.threshold;
  j["passed"] = c.passed;
  return j;
}

Condition condition_from_json(const Json& j, const std::string& path) {
  return Condition{text(require(j, "name", path), child(path, "name")),
                   number_field(j, "residual", path), number_field(j, "threshold", path),
                   boolean(require(j, "passed", path), child(path, "passed"))};
}

Json to_json(const PrReport& r) {
  Json j;
  j["check"] = r.check;
  j["verdict"] = std::string(to_string(r.verdict));
  j["tolerance"] = r.tolerance;
  j["d_orthogonality_residual"] = r.d_orthogonality_residual;
  j["d_symplectic_residual"] = r.d_symplectic_residual;
  j["jj_unitarity_max_residual"] = r.jj_unitarity_max_residual;
  j["sample_points"] = complex_list(r.sample_points);
  j["conditions"] = conditions_json(r.conditions);
  j["dominant_condition"] = r.dominant_condition;
  j["failure_reason"] = r.failure_reason;
  return j;
}

PrReport pr_report_from_json(const Json& j, const std::string& path) {
  PrReport r;
  r.check = text(require(j, "check", path), child(path, "check"));
  const std::string verdict_path = child(path, "verdict");
  try {
    r.verdict = verdict_from_string(text(require(j, "verdict", path), verdict_path));
  } catch (const ParseError& e) {
    if (std::string_view(e.what()).starts_with("field")) throw;
    fail(verdict_path, e.what());
  }
  r.tolerance = number_field(j, "tolerance", path);
  r.d_orthogonality_residual = number_field(j, "d_orthogonality_residual", path);
  r.d_symplectic_residual = number_field(j, "d_symplectic_residual", path);
  r.jj_unitarity_max_residual = number_field(j, "jj_unitarity_max_residual", path);
  r.sample_points =
      complex_list_from(require(j, "sample_points", path), child(path, "sample_points"));
  r.conditions = conditions_from(require(j, "conditions", path), child(path, "conditions"));
  r.dominant_condition =
      text(require(j, "dominant_condition", path), child(path, "dominant_condition"));
  r.failure_reason = text(require(j, "failure_reason", path), child(path, "failure_reason"));
  return r;
}

Json to_json(const CheckReport& r) {
  Json j = to_json(r.frequency);
  if (r.time_domain) j["time_domain"] = to_json(*r.time_domain);
  j["overall_verdict"] = std::string(to_string(r.overall));
  return j;
}

CheckReport check_report_from_json(const Json& j) {
  CheckReport r;
  r.frequency = pr_report_from_json(j, "$");
  if (j.contains("time_domain")) r.time_domain = pr_report_from_json(j["time_domain"], "$.time_domain");
  try {
    r.overall = verdict_from_string(text(require(j, "overall_verdict", "$"), "$.overall_verdict"));
  } catch (const ParseError& e) {
    if (std::string_view(e.what()).starts_with("field")) throw;
    fail("$.overall_verdict", e.what());
  }
  return r;
}

Json to_json(const SynthesisResult& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["F"] = to_json(r.F);
  j["Rhat"] = to_json(r.Rhat);
  j["Sigma"] = to_json(r.Sigma);
  j["equation_residuals"] = conditions_json(r.equation_residuals);
  j["f_raw_asymmetry"] = r.f_raw_asymmetry;
  j["rhat_raw_asymmetry"] = r.rhat_raw_asymmetry;
  j["rebuild_residual"] = r.rebuild_residual;
  j["original_states"] = r.original_states;
  j["minimal_states"] = r.minimal_states;
  j["frequency_report"] = to_json(r.frequency_report);
  j["rebuilt_time_domain_report"] = to_json(r.rebuilt_time_domain_report);
  return j;
}

SynthesisResult synthesis_result_from_json(const Json& j) {
  SynthesisResult r;
  const Json& params = require(j, "params", "$");
  r.params = PmParams{real_field(params, "D", "$.params"), real_field(params, "M", "$.params"),
                      real_field(params, "R", "$.params"),
                      real_field(params, "Theta", "$.params")};
  r.F = real_field(j, "F", "$");
  r.Rhat = real_field(j, "Rhat", "$");
  r.Sigma = real_field(j, "Sigma", "$");
  r.equation_residuals =
      conditions_from(require(j, "equation_residuals", "$"), "$.equation_residuals");
  r.f_raw_asymmetry = number_field(j, "f_raw_asymmetry", "$");
  r.rhat_raw_asymmetry = number_field(j, "rhat_raw_asymmetry", "$");
  r.rebuild_residual = number_field(j, "rebuild_residual", "$");
  r.original_states = count(require(j, "original_states", "$"), "$.original_states");
  r.minimal_states = count(require(j, "minimal_states", "$"), "$.minimal_states");
  r.frequency_report = pr_report_from_json(require(j, "frequency_report", "$"), "$.frequency_report");
  r.rebuilt_time_domain_report = pr_report_from_json(require(j, "rebuilt_time_domain_report", "$"),
                                                     "$.rebuilt_time_domain_report");
  return r;
}

Json to_json(const SpectrumReport& r) {
  Json j;
  j["poles"] = complex_list(r.poles);
  j["zeros"] = complex_list(r.zeros);
  j["mirror_symmetric"] = r.mirror_symmetric;
  j["spectrally_generic"] = r.spectrally_generic;
  j["max_pairing_distance"] = r.max_pairing_distance;
  return j;
}

SpectrumReport spectrum_report_from_json(const Json& j) {
  SpectrumReport r;
  r.poles = complex_list_from(require(j, "poles", "$"), "$.poles");
  r.zeros = complex_list_from(require(j, "zeros", "$"), "$.zeros");
  r.mirror_symmetric = boolean(require(j, "mirror_symmetric", "$"), "$.mirror_symmetric");
  r.spectrally_generic = boolean(require(j, "spectrally_generic", "$"), "$.spectrally_generic");
  r.max_pairing_distance = number_field(j, "max_pairing_distance", "$");
  return r;
}

Json to_json(const SkewFactorization& f) {
  Json j;
  j["Sigma"] = to_json(f.Sigma);
  j["O"] = to_json(f.O);
  j["deltas"] = f.deltas;
  j["residual"] = f.residual;
  j["condition"] = f.condition;
  return j;
}

SkewFactorization skew_factorization_from_json(const Json& j) {
  SkewFactorization f;
  f.Sigma = real_field(j, "Sigma", "$");
  f.O = real_field(j, "O", "$");
  f.deltas = doubles(require(j, "deltas", "$"), "$.deltas");
  f.residual = number_field(j, "residual", "$");
  f.condition = number_field(j, "condition", "$");
  return f;
}

std::string_view to_string(Schema s) {
  switch (s) {
    case Schema::kRealMatrix:
      return "real matrix";
    case Schema::kComplexMatrix:
      return "complex matrix";
    case Schema::kStateSpace:
      return "state space";
    case Schema::kRational:
      return "rational diagonal";
    case Schema::kPmParams:
      return "position-momentum parameters";
    case Schema::kAcParams:
      return "annihilation-creation parameters";
  }
  return "unknown";
}

Schema detect_schema(const Json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  const std::array<std::pair<Schema, bool>, 6> candidates{{
      {Schema::kRealMatrix, has_all(j, {"rows", "cols", "data"})},
      {Schema::kComplexMatrix, has_all(j, {"rows", "cols", "re", "im"})},
      {Schema::kStateSpace, has_all(j, {"n", "m", "A", "B", "C", "D"})},
      {Schema::kRational, has_all(j, {"entries"})},
      {Schema::kPmParams, has_all(j, {"D", "M", "R", "Theta"})},
      {Schema::kAcParams, has_all(j, {"S", "N1", "N2", "H1", "H2", "E1", "E2"})},
  }};
  std::vector<Schema> hits;
  for (const auto& [schema, present] : candidates) {
    if (present) hits.push_back(schema);
  }
  if (hits.empty()) fail("$", "does not match any known input schema");
  if (hits.size() > 1) {
    std::string names;
    for (Schema s : hits) {
      if (!names.empty()) names += ", ";
      names += to_string(s);
    }
    fail("$", "ambiguous input, matches several schemas (" + names + ")");
  }
  return hits.front();
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace oqho::io
