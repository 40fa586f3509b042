#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace epilim {

/// HypothesisFailure means "theorem inapplicable", distinct from Fail
/// ("conclusion not observed").
enum class Outcome { Pass, Fail, HypothesisFailure };

std::string_view to_string(Outcome o);

struct HypothesisReport {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct NamedVerdict;

/// Structured result of a theorem check.
struct Verdict {
  Outcome outcome = Outcome::Fail;
  double residual_max = 0.0;
  double residual_argmax = 0.0;
  std::vector<std::string> diagnostics;
  std::map<std::string, double> truncation_params;
  std::vector<HypothesisReport> hypotheses;
  std::map<std::string, std::vector<double>> witness;
  std::vector<NamedVerdict> parts;

  bool holds() const { return outcome == Outcome::Pass; }
  bool has_diagnostic(std::string_view needle) const;
  const Verdict* part(std::string_view name) const;

  /// JSON object {outcome, residual_max, residual_argmax, diagnostics[],
  /// truncation_params, hypotheses[], witness, parts}. Non-finite numbers are
  /// written as the strings "inf" / "-inf". Key order is fixed.
  std::string to_json(int indent = 2) const;
};

struct NamedVerdict {
  std::string name;
  Verdict verdict;
};

}  // namespace epilim
