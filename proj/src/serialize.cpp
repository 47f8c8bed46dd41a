// Copyright 2026 The qteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qteleport/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qteleport {

namespace {

std::string quoted(const std::string& s) {
  // All strings we emit are plain ASCII labels; no escaping needed
  // beyond the quotes.
  return "\"" + s + "\"";
}

std::string pair_json(Complex z) {
  return "[" + format_real(z.real()) + "," + format_real(z.imag()) + "]";
}

std::string vector_json(const ComplexVector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += pair_json(v(i));
  }
  return out + "]";
}

std::string matrix_json(const ComplexMatrix& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r > 0) out += ",";
    out += "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ",";
      out += pair_json(m(r, c));
    }
    out += "]";
  }
  return out + "]";
}

std::string optional_json(const std::optional<double>& x) {
  return x ? format_real(*x) : "null";
}

std::string checks_json(const std::vector<CheckResult>& checks) {
  std::string out = "[";
  bool first = true;
  for (const CheckResult& c : checks) {
    if (!first) out += ",";
    first = false;
    out += "{" + quoted("name") + ":" + quoted(c.name) + "," +
           quoted("value") + ":" + optional_json(c.value) + "," +
           quoted("expected") + ":" + optional_json(c.expected) + "," +
           quoted("residual") + ":" + format_real(c.residual) + "," +
           quoted("tolerance") + ":" + format_real(c.tolerance) + "," +
           quoted("passed") + ":" + (c.passed ? "true" : "false") + "}";
  }
  return out + "]";
}

std::string meta_json(const std::string& command, double tolerance,
                      const std::string& extra = "") {
  std::string out = "{" + quoted("command") + ":" + quoted(command) + "," +
                    quoted("tolerance") + ":" + format_real(tolerance);
  if (!extra.empty()) out += "," + extra;
  return out + "}";
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string report_json(const ProtocolReport& report,
                        const std::vector<CheckResult>& checks,
                        double tolerance) {
  bool all_passed = true;
  for (const CheckResult& c : checks) all_passed = all_passed && c.passed;

  std::string out = "{";
  out += quoted("meta") + ":" +
         meta_json("run", tolerance,
                   quoted("spec") + ":" + quoted(report.spec.label));
  out += "," + quoted("input") + ":{" + quoted("a") + ":" +
         pair_json(report.input.a()) + "," + quoted("b") + ":" +
         pair_json(report.input.b()) + "}";
  out += "," + quoted("theta") + ":" + optional_json(report.theta);
  out += "," + quoted("fidelity_after_U") + ":" +
         format_real(report.fidelity_after_U);
  out += "," + quoted("fidelity_final") + ":" +
         format_real(report.fidelity_final);
  out += "," + quoted("coincidence_expectation") + ":" +
         format_real(report.coincidence_expectation);
  out += "," + quoted("total_state_after_U") + ":" +
         vector_json(report.total_state_after_U);
  out += "," + quoted("total_state_final") + ":" +
         vector_json(report.total_state_final);
  out += "," + quoted("reduced") + ":{";
  out += quoted("T0") + ":" + matrix_json(report.reduced.T0.matrix());
  out += "," + quoted("T3") + ":" + matrix_json(report.reduced.T3.matrix());
  out += "," + quoted("T12") + ":" + matrix_json(report.reduced.T12.matrix());
  out +=
      "," + quoted("T012") + ":" + matrix_json(report.reduced.T012.matrix());
  out +=
      "," + quoted("T123") + ":" + matrix_json(report.reduced.T123.matrix());
  out += "," + quoted("T3_final") + ":" + matrix_json(report.T3_final.matrix());
  out += "}";
  out += "," + quoted("checks") + ":" + checks_json(checks);
  out += "," + quoted("all_passed") + ":" + (all_passed ? "true" : "false");
  return out + "}\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "theta,fidelity_pipeline,fidelity_closed_form,"
      "coincidence_expectation,abs_gap\n";
  for (const SweepRow& r : rows) {
    out += format_real(r.theta) + "," + format_real(r.fidelity_pipeline) +
           "," + format_real(r.fidelity_closed_form) + "," +
           format_real(r.coincidence_expectation) + "," +
           format_real(r.abs_gap) + "\n";
  }
  return out;
}

std::string sweep_json(const ThetaSweep& sweep, double tolerance) {
  std::string out = "{";
  out += quoted("meta") + ":" +
         meta_json("sweep-theta", tolerance,
                   quoted("label") + ":" + quoted(sweep.label) + "," +
                       quoted("points") + ":" +
                       std::to_string(sweep.rows.size()));
  out += "," + quoted("rows") + ":[";
  bool first = true;
  for (const SweepRow& r : sweep.rows) {
    if (!first) out += ",";
    first = false;
    out += "{" + quoted("theta") + ":" + format_real(r.theta) + "," +
           quoted("fidelity_pipeline") + ":" +
           format_real(r.fidelity_pipeline) + "," +
           quoted("fidelity_closed_form") + ":" +
           format_real(r.fidelity_closed_form) + "," +
           quoted("coincidence_expectation") + ":" +
           format_real(r.coincidence_expectation) + "," + quoted("abs_gap") +
           ":" + format_real(r.abs_gap) + "}";
  }
  return out + "]}\n";
}

std::string trials_csv(const TrialSummary& summary) {
  std::string out =
      "n_trials,min_fidelity,max_fidelity,mean_fidelity,"
      "max_unitarity_defect,seed\n";
  out += std::to_string(summary.n_trials) + "," +
         format_real(summary.min_fidelity) + "," +
         format_real(summary.max_fidelity) + "," +
         format_real(summary.mean_fidelity) + "," +
         format_real(summary.max_unitarity_defect) + "," +
         std::to_string(summary.seed) + "\n";
  return out;
}

std::string trials_json(const TrialSummary& summary, double tolerance) {
  std::string out = "{";
  out += quoted("meta") + ":" + meta_json("random-trials", tolerance);
  out += "," + quoted("summary") + ":{";
  out += quoted("n_trials") + ":" + std::to_string(summary.n_trials);
  out += "," + quoted("min_fidelity") + ":" + format_real(summary.min_fidelity);
  out += "," + quoted("max_fidelity") + ":" + format_real(summary.max_fidelity);
  out +=
      "," + quoted("mean_fidelity") + ":" + format_real(summary.mean_fidelity);
  out += "," + quoted("max_unitarity_defect") + ":" +
         format_real(summary.max_unitarity_defect);
  out += "," + quoted("seed") + ":" + std::to_string(summary.seed);
  return out + "}}\n";
}

std::string show_state_text(const ProtocolReport& report) {
  const auto basis_label = [](Eigen::Index k) {
    const int probe = static_cast<int>(k / 8);
    std::string s = "eta_" + std::to_string(probe + 1) + "|";
    for (int bit = 2; bit >= 0; --bit)
      s += ((k >> bit) & 1) ? '-' : '+';
    return s + ">";
  };
  const auto listing = [&](const ComplexVector& v) {
    std::string out;
    for (Eigen::Index k = 0; k < v.size(); ++k)
      out += "  " + basis_label(k) + " = (" + format_real(v(k).real()) +
             ", " + format_real(v(k).imag()) + ")\n";
    return out;
  };

  std::string out;
  out += "input: a = (" + format_real(report.input.a().real()) + ", " +
         format_real(report.input.a().imag()) + "), b = (" +
         format_real(report.input.b().real()) + ", " +
         format_real(report.input.b().imag()) + ")\n";
  out += "spec: " + report.spec.label + "\n";
  out += "theta: " + (report.theta ? format_real(*report.theta)
                                   : std::string("none")) +
         "\n";
  out += "state after premeasurement:\n" + listing(report.total_state_after_U);
  out += "final state:\n" + listing(report.total_state_final);
  out += "fidelity_after_U = " + format_real(report.fidelity_after_U) + "\n";
  out += "fidelity_final = " + format_real(report.fidelity_final) + "\n";
  out += "coincidence_expectation = " +
         format_real(report.coincidence_expectation) + "\n";
  return out;
}

PremeasurementSpec parse_chi_spec(const std::string& text,
                                  const std::string& label) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("chi file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("chi"))
    throw ParseError("chi file: expected an object with a \"chi\" key");
  const auto& chi = doc["chi"];
  if (!chi.is_array()) throw ParseError("chi file: \"chi\" must be an array");
  if (chi.size() < 4)
    throw MissingVector("chi file: expected 4 vectors, found " +
                        std::to_string(chi.size()));
  if (chi.size() > 4)
    throw ParseError("chi file: expected exactly 4 vectors");

  PremeasurementSpec spec;
  spec.label = label;
  for (int i = 0; i < 4; ++i) {
    const auto& entries = chi[i];
    if (!entries.is_array() || entries.size() != 4)
      throw ParseError("chi file: vector " + std::to_string(i + 1) +
                       " must have 4 entries");
    ComplexVector v(4);
    for (int k = 0; k < 4; ++k) {
      const auto& pair = entries[k];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        throw ParseError("chi file: entries must be [re, im] pairs");
      v(k) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    const double nrm = v.norm();
    if (std::abs(nrm - 1.0) > 1e-9)
      throw NormError("chi file: vector " + std::to_string(i + 1) +
                      " has norm " + format_real(nrm));
    spec.chi[i] = v / nrm;
  }
  return spec;
}

PremeasurementSpec load_chi_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read chi file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading chi file: " + path);
  return parse_chi_spec(buffer.str(), "file:" + path);
}

}  // namespace qteleport
