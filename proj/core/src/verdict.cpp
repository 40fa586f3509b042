#include "epilim/verdict.hpp"

#include <cmath>

#include <json.hpp>

namespace epilim {
namespace {

nlohmann::ordered_json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::ordered_json to_json_value(const Verdict& v) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(to_string(v.outcome));
  j["residual_max"] = number(v.residual_max);
  j["residual_argmax"] = number(v.residual_argmax);
  j["diagnostics"] = v.diagnostics;
  auto& tp = j["truncation_params"] = nlohmann::ordered_json::object();
  for (const auto& [k, x] : v.truncation_params) tp[k] = number(x);
  auto& hyp = j["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& h : v.hypotheses) {
    hyp.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  }
  auto& wit = j["witness"] = nlohmann::ordered_json::object();
  for (const auto& [k, xs] : v.witness) {
    auto arr = nlohmann::ordered_json::array();
    for (double x : xs) arr.push_back(number(x));
    wit[k] = std::move(arr);
  }
  auto& parts = j["parts"] = nlohmann::ordered_json::object();
  for (const auto& p : v.parts) parts[p.name] = to_json_value(p.verdict);
  return j;
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::HypothesisFailure: return "hypothesis_failure";
  }
  return "unknown";
}

bool Verdict::has_diagnostic(std::string_view needle) const {
  for (const auto& d : diagnostics) {
    if (d.find(needle) != std::string::npos) return true;
  }
  return false;
}

const Verdict* Verdict::part(std::string_view name) const {
  for (const auto& p : parts) {
    if (p.name == name) return &p.verdict;
  }
  return nullptr;
}

std::string Verdict::to_json(int indent) const { return to_json_value(*this).dump(indent); }

}  // namespace epilim
