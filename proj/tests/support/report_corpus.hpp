#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "disasteller/reporting/report.hpp"
#include "support/fixtures.hpp"

namespace fixtures {

using disasteller::reporting::IssueCode;
using disasteller::reporting::ReportKind;

inline const std::vector<std::string>& wajima_site_names() {
  static const std::vector<std::string> names = {
      "Wajima Drama Memorial Hall", "Hama Street",          "Concrete Bridge",
      "Central Nishikigawa Street", "North Asaichi Street", "South Central Asaichi Street"};
  return names;
}

/// The six conformant reports the golden script produces.
inline std::map<ReportKind, std::string> golden_reports() {
  const auto script = read_json(fixtures::script());
  std::map<std::string, std::string> finals;
  for (const auto& e : script) {
    const auto& text = e["response"]["text"];
    if (text.is_string() && !text.get<std::string>().empty()) {
      finals[e["stage"].get<std::string>()] = text.get<std::string>();
    }
  }
  std::map<ReportKind, std::string> out;
  out[ReportKind::ExpertSummary] = finals.at("expert");
  out[ReportKind::AlertNews] = finals.at("alerts");
  out[ReportKind::EmergencyServices] = finals.at("emergency");
  const std::vector<ReportKind> multi = {ReportKind::HumanAllocation, ReportKind::PublicNotice,
                                         ReportKind::ReconstructionPlan};
  for (const auto& [kind, text] : disasteller::reporting::split_reports(finals.at("assignment"), multi)) {
    out[kind] = text.value();
  }
  return out;
}

inline std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  if (pos == std::string::npos) throw std::logic_error("corpus anchor not found: " + from);
  return text.replace(pos, from.size(), to);
}

inline std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  if (text.find(from) == std::string::npos) throw std::logic_error("corpus anchor not found: " + from);
  for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
  return text;
}

/// Text from `from` up to (not including) `until`, or to the end.
inline std::string cut(std::string text, const std::string& from, const std::string& until = "") {
  const auto a = text.find(from);
  if (a == std::string::npos) throw std::logic_error("corpus anchor not found: " + from);
  const auto b = until.empty() ? text.size() : text.find(until, a + from.size());
  return text.erase(a, b - a);
}

struct ExpectedIssue {
  IssueCode code;
  std::string section;
};

struct MutatedReport {
  std::string name;
  ReportKind kind;
  std::string text;
  std::vector<ExpectedIssue> expected;
};

/// Hand-mutated copies of the golden reports with the exact issues each must yield.
inline std::vector<MutatedReport> mutated_report_corpus() {
  using K = ReportKind;
  using C = IssueCode;
  const auto g = golden_reports();
  const auto& expert = g.at(K::ExpertSummary);
  const auto& alerts = g.at(K::AlertNews);
  const auto& emergency = g.at(K::EmergencyServices);
  const auto& allocation = g.at(K::HumanAllocation);
  const auto& notice = g.at(K::PublicNotice);
  const auto& plan = g.at(K::ReconstructionPlan);

  const std::string alert_headline = alerts.substr(alerts.find("## Headline"),
                                                   alerts.find("## Dangerous Areas") - alerts.find("## Headline"));
  return {
      {"missing header", K::ExpertSummary, cut(expert, "## Damage Grades"),
       {{C::MissingSection, "Damage Grades"}}},
      {"bad grade token", K::ExpertSummary,
       replace_once(expert, "Hama Street: G4", "Hama Street: G9"),
       {{C::ConstraintViolation, "Site Assessments"}}},
      {"site without a line", K::ExpertSummary,
       cut(expert, "- Concrete Bridge:", "- Central Nishikigawa"),
       {{C::ConstraintViolation, "Site Assessments"}}},
      {"reordered headers", K::AlertNews,
       cut(alerts, "## Headline", "## Dangerous Areas") + "\n" + alert_headline,
       {{C::OutOfOrder, "Headline"}}},
      {"duplicate header", K::AlertNews, alerts + "\n## Headline\n\nRepeated headline\n",
       {{C::DuplicateSection, "Headline"}}},
      {"prose instead of list", K::AlertNews, replace_all(alerts, "\n- ", "\n"),
       {{C::ConstraintViolation, "Dangerous Areas"}}},
      {"empty section", K::EmergencyServices,
       cut(emergency, "Urban search and rescue", "## Historical Reference"),
       {{C::EmptySection, "Required Services"}}},
      {"missing header and unnumbered priorities", K::EmergencyServices,
       replace_all(replace_all(replace_all(cut(emergency, "## Historical Reference"), "\n1. ", "\n"),
                               "\n2. ", "\n"),
                   "\n3. ", "\n"),
       {{C::MissingSection, "Historical Reference"}, {C::ConstraintViolation, "Priority Areas"}}},
      {"unquantified allocation line", K::HumanAllocation,
       replace_once(allocation, "25 rescue workers and 6 structural engineers",
                    "a rescue team and structural engineers"),
       {{C::ConstraintViolation, "Allocation by Location"}}},
      {"totals without numbers", K::HumanAllocation,
       cut(allocation, "201 personnel") + "All personnel listed above.\n",
       {{C::ConstraintViolation, "Totals"}}},
      {"missing coordination header", K::PublicNotice,
       replace_once(notice, "## Coordination Statement\n", ""),
       {{C::MissingSection, "Coordination Statement"}}},
      {"budget without an amount", K::ReconstructionPlan,
       replace_once(plan, "approximately $1 billion", "a substantial budget"),
       {{C::ConstraintViolation, "Budget Estimate"}}},
  };
}

}  // namespace fixtures
