#include "disasteller/reporting/report.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <stdexcept>

#include "disasteller/core/text.hpp"
#include "disasteller/error.hpp"

namespace disasteller::reporting {

namespace {

std::string strip_hashes(std::string_view line) {
  std::string s = core::trim(line);
  std::size_t i = 0;
  while (i < s.size() && s[i] == '#') ++i;
  return core::trim(std::string_view(s).substr(i));
}

bool is_list_item(const std::string& line) {
  static const std::regex kItem(R"(^\s*([-*+]|\d+[.)])\s+\S)");
  return std::regex_search(line, kItem);
}

bool is_top_level_item(const std::string& line) {
  return !line.empty() && !std::isspace(static_cast<unsigned char>(line[0])) &&
         is_list_item(line);
}

bool has_personnel_count(const std::string& line) {
  static const std::regex kPersonnel(
      R"((^|[^0-9A-Za-z])[0-9]+\s+([A-Za-z-]+\s+){0,3}?)"
      R"((personnel|staff|workers?|doctors?|nurses?|engineers?|responders?|volunteers?|)"
      R"(officers?|firefighters?|technicians?|paramedics?|specialists?|members?|people|)"
      R"(medics?|inspectors?|operators?|coordinators?|rescuers?|soldiers?|teams?)([^A-Za-z]|$))",
      std::regex::icase);
  return std::regex_search(line, kPersonnel);
}

bool has_budget_amount(const std::string& body) {
  static const std::regex kMoney(
      R"(([$€£¥]\s?[0-9][0-9,]*(\.[0-9]+)?)|)"
      R"(([0-9][0-9,]*(\.[0-9]+)?\s*(thousand|million|billion|trillion)?\s*)"
      R"((USD|JPY|EUR|AUD|yen|dollars)))",
      std::regex::icase);
  return std::regex_search(body, kMoney);
}

bool has_number(const std::string& body) {
  return std::any_of(body.begin(), body.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

void check_constraint(const SectionRule& rule, const std::string& body,
                      const ValidationContext& ctx, std::vector<Issue>& issues) {
  auto violation = [&](std::string msg) {
    issues.push_back({IssueCode::ConstraintViolation, rule.header, std::move(msg)});
  };
  const auto lines = core::split_lines(body);
  switch (rule.constraint) {
    case Constraint::None:
      return;
    case Constraint::SiteGrades: {
      if (!ctx.site_names.empty()) {
        for (const auto& sg : parse_site_grades(body, ctx.site_names)) {
          if (!sg.grade) violation(sg.error);
        }
        return;
      }
      int items = 0;
      for (const auto& line : lines) {
        if (!is_list_item(line)) continue;
        ++items;
        try {
          core::parse_grade(line);
        } catch (const Error& e) {
          violation(e.code() == Errc::AmbiguousGrade
                        ? "ambiguous grade tokens in '" + core::trim(line) + "'"
                        : "unparsable grade token in '" + core::trim(line) + "'");
        }
      }
      if (items == 0) violation("no site assessment lines");
      return;
    }
    case Constraint::NonEmptyList:
      if (std::none_of(lines.begin(), lines.end(), is_list_item)) {
        violation("expected at least one list item");
      }
      return;
    case Constraint::QuantifiedPersonnel: {
      int items = 0;
      for (const auto& line : lines) {
        if (!is_top_level_item(line)) continue;
        ++items;
        if (!has_personnel_count(line)) {
          violation("no integer-quantified personnel line for '" + core::trim(line) + "'");
        }
      }
      if (items == 0) violation("no per-location allocation lines");
      return;
    }
    case Constraint::ContainsNumber:
      if (!has_number(body)) violation("expected a numeric total");
      return;
    case Constraint::BudgetAmount:
      if (!has_budget_amount(body)) violation("no budget amount with currency");
      return;
  }
}

struct HeaderHit {
  std::size_t section;  // index into template sections
  std::size_t line;
};

std::vector<HeaderHit> find_headers(const std::vector<std::string>& lines,
                                    const ReportTemplate& tmpl) {
  std::vector<HeaderHit> hits;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t s = 0; s < tmpl.sections.size(); ++s) {
      if (is_header_line(lines[i], tmpl.sections[s].header)) {
        hits.push_back({s, i});
        break;
      }
    }
  }
  return hits;
}

}  // namespace

std::string to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::ExpertSummary: return "ExpertSummary";
    case ReportKind::AlertNews: return "AlertNews";
    case ReportKind::EmergencyServices: return "EmergencyServices";
    case ReportKind::HumanAllocation: return "HumanAllocation";
    case ReportKind::PublicNotice: return "PublicNotice";
    case ReportKind::ReconstructionPlan: return "ReconstructionPlan";
  }
  return "";
}

ReportKind report_kind_from_string(std::string_view s) {
  for (auto k : kAllReportKinds) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown report kind '" + std::string(s) + "'");
}

std::string report_title(ReportKind kind) {
  switch (kind) {
    case ReportKind::ExpertSummary: return "Expert Summary";
    case ReportKind::AlertNews: return "Alert News";
    case ReportKind::EmergencyServices: return "Emergency Services Report";
    case ReportKind::HumanAllocation: return "Human Allocation Report";
    case ReportKind::PublicNotice: return "Public Notice";
    case ReportKind::ReconstructionPlan: return "Reconstruction Plan";
  }
  return "";
}

std::string report_file_stem(ReportKind kind) {
  switch (kind) {
    case ReportKind::ExpertSummary: return "expert_summary";
    case ReportKind::AlertNews: return "alert_news";
    case ReportKind::EmergencyServices: return "emergency_services";
    case ReportKind::HumanAllocation: return "human_allocation";
    case ReportKind::PublicNotice: return "public_notice";
    case ReportKind::ReconstructionPlan: return "reconstruction_plan";
  }
  return "";
}

std::vector<std::string> ReportTemplate::headers() const {
  std::vector<std::string> out;
  for (const auto& s : sections) out.push_back(s.header);
  return out;
}

ReportTemplate template_for(ReportKind kind) {
  using C = Constraint;
  switch (kind) {
    case ReportKind::ExpertSummary:
      return {kind, {{"Overview", C::None}, {"Site Assessments", C::SiteGrades},
                     {"Damage Grades", C::None}}};
    case ReportKind::AlertNews:
      return {kind, {{"Headline", C::None}, {"Dangerous Areas", C::NonEmptyList},
                     {"Safety Instructions", C::None}}};
    case ReportKind::EmergencyServices:
      return {kind, {{"Priority Areas", C::NonEmptyList}, {"Required Services", C::None},
                     {"Historical Reference", C::None}}};
    case ReportKind::HumanAllocation:
      return {kind, {{"Allocation by Location", C::QuantifiedPersonnel},
                     {"Totals", C::ContainsNumber}}};
    case ReportKind::PublicNotice:
      return {kind, {{"Situation", C::None}, {"Guidance", C::None},
                     {"Coordination Statement", C::None}}};
    case ReportKind::ReconstructionPlan:
      return {kind, {{"Damage Summary", C::None}, {"Phases", C::NonEmptyList},
                     {"Budget Estimate", C::BudgetAmount}}};
  }
  throw std::invalid_argument("unknown report kind");
}

std::string describe_template(const ReportTemplate& tmpl) {
  std::string out = "Report \"" + report_title(tmpl.kind) +
                    "\": start with the title line \"# " + report_title(tmpl.kind) +
                    "\", then exactly these section headers, each once, in this order:\n";
  for (const auto& s : tmpl.sections) {
    out += "## " + s.header;
    switch (s.constraint) {
      case Constraint::None: break;
      case Constraint::SiteGrades:
        out += "  (one list line per site: location name, EMS-98 grade token G1-G5, short "
               "reason)";
        break;
      case Constraint::NonEmptyList: out += "  (a list with at least one item)"; break;
      case Constraint::QuantifiedPersonnel:
        out += "  (one list line per location with integer personnel counts, e.g. "
               "\"20 medical personnel\")";
        break;
      case Constraint::ContainsNumber: out += "  (numeric totals)"; break;
      case Constraint::BudgetAmount:
        out += "  (a budget amount with currency, e.g. \"$120 million\")";
        break;
    }
    out += "\n";
  }
  return out;
}

std::string to_string(IssueCode code) {
  switch (code) {
    case IssueCode::MissingSection: return "MissingSection";
    case IssueCode::DuplicateSection: return "DuplicateSection";
    case IssueCode::OutOfOrder: return "OutOfOrder";
    case IssueCode::EmptySection: return "EmptySection";
    case IssueCode::ConstraintViolation: return "ConstraintViolation";
    case IssueCode::MissingReport: return "MissingReport";
  }
  return "";
}

nlohmann::json to_json(const Issue& issue) {
  return {{"code", to_string(issue.code)}, {"section", issue.section},
          {"message", issue.message}};
}

bool is_header_line(std::string_view line, std::string_view header) {
  return core::to_lower(strip_hashes(line)) == core::to_lower(core::trim(header));
}

Sections parse_sections(std::string_view text, const ReportTemplate& tmpl) {
  const auto lines = core::split_lines(text);
  const auto hits = find_headers(lines, tmpl);
  Sections out;
  for (std::size_t h = 0; h < hits.size(); ++h) {
    const auto& header = tmpl.sections[hits[h].section].header;
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const auto& p) { return p.first == header; });
    if (seen) continue;
    const std::size_t end = h + 1 < hits.size() ? hits[h + 1].line : lines.size();
    std::string body;
    for (std::size_t i = hits[h].line + 1; i < end; ++i) {
      body += lines[i];
      body += '\n';
    }
    out.emplace_back(header, core::trim(body));
  }
  return out;
}

std::vector<Issue> validate_report(std::string_view text, const ReportTemplate& tmpl,
                                   const ValidationContext& ctx) {
  std::vector<Issue> issues;
  const auto lines = core::split_lines(text);
  const auto hits = find_headers(lines, tmpl);

  std::vector<std::size_t> first_line(tmpl.sections.size(), SIZE_MAX);
  std::vector<int> count(tmpl.sections.size(), 0);
  for (const auto& hit : hits) {
    if (count[hit.section]++ == 0) first_line[hit.section] = hit.line;
  }
  for (std::size_t s = 0; s < tmpl.sections.size(); ++s) {
    const auto& header = tmpl.sections[s].header;
    if (count[s] == 0) {
      issues.push_back({IssueCode::MissingSection, header, "required section is missing"});
    } else if (count[s] > 1) {
      issues.push_back({IssueCode::DuplicateSection, header,
                        "section appears " + std::to_string(count[s]) + " times"});
    }
  }
  // The largest set of present sections already in template order stays put;
  // the rest are out of order. Ties keep the earliest template sections.
  std::vector<std::size_t> present;
  for (std::size_t s = 0; s < tmpl.sections.size(); ++s) {
    if (count[s] > 0) present.push_back(s);
  }
  std::vector<std::size_t> best;
  const std::size_t subsets = std::size_t{1} << present.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::size_t> chosen;
    bool ordered = true;
    for (std::size_t i = 0; i < present.size() && ordered; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      if (!chosen.empty() && first_line[chosen.back()] > first_line[present[i]]) ordered = false;
      chosen.push_back(present[i]);
    }
    if (ordered && (chosen.size() > best.size() || (chosen.size() == best.size() && chosen < best))) {
      best = std::move(chosen);
    }
  }
  for (auto s : present) {
    if (std::find(best.begin(), best.end(), s) == best.end()) {
      issues.push_back({IssueCode::OutOfOrder, tmpl.sections[s].header,
                        "section is not in template order"});
    }
  }

  const auto sections = parse_sections(text, tmpl);
  for (const auto& rule : tmpl.sections) {
    auto it = std::find_if(sections.begin(), sections.end(),
                           [&](const auto& p) { return p.first == rule.header; });
    if (it == sections.end()) continue;
    if (it->second.empty()) {
      issues.push_back({IssueCode::EmptySection, rule.header, "section body is empty"});
      continue;
    }
    check_constraint(rule, it->second, ctx, issues);
  }
  return issues;
}

std::string render_report(ReportKind kind, const Sections& sections) {
  std::string out = "# " + report_title(kind) + "\n";
  for (const auto& [header, body] : sections) {
    out += "\n## " + header + "\n\n" + body + "\n";
  }
  return out;
}

Report make_report(ReportKind kind, std::string text, const ValidationContext& context) {
  const auto tmpl = template_for(kind);
  Report r{kind, std::move(text), {}, {}};
  r.sections = parse_sections(r.raw_text, tmpl);
  r.issues = validate_report(r.raw_text, tmpl, context);
  return r;
}

nlohmann::ordered_json report_to_json(const Report& report) {
  nlohmann::ordered_json sections = nlohmann::ordered_json::object();
  for (const auto& [h, b] : report.sections) sections[h] = b;
  nlohmann::ordered_json issues = nlohmann::ordered_json::array();
  for (const auto& i : report.issues) {
    issues.push_back({{"code", to_string(i.code)}, {"section", i.section},
                      {"message", i.message}});
  }
  return {{"kind", to_string(report.kind)},
          {"sections", std::move(sections)},
          {"valid", report.valid()},
          {"issues", std::move(issues)}};
}

std::vector<std::pair<ReportKind, std::optional<std::string>>> split_reports(
    std::string_view text, const std::vector<ReportKind>& kinds) {
  const auto lines = core::split_lines(text);
  std::vector<std::pair<std::size_t, std::size_t>> starts;  // (line, kind index)
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      if (is_header_line(lines[i], report_title(kinds[k]))) {
        starts.emplace_back(i, k);
        break;
      }
    }
  }
  std::vector<std::pair<ReportKind, std::optional<std::string>>> out;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    auto it = std::find_if(starts.begin(), starts.end(),
                           [&](const auto& s) { return s.second == k; });
    if (it == starts.end()) {
      out.emplace_back(kinds[k], std::nullopt);
      continue;
    }
    const std::size_t end = std::next(it) != starts.end() ? std::next(it)->first : lines.size();
    std::string body;
    for (std::size_t i = it->first; i < end; ++i) {
      body += lines[i];
      body += '\n';
    }
    out.emplace_back(kinds[k], core::trim(body) + "\n");
  }
  return out;
}

std::vector<SiteGrade> parse_site_grades(std::string_view body,
                                         const std::vector<std::string>& site_names) {
  const auto lines = core::split_lines(body);
  std::vector<SiteGrade> out;
  for (const auto& name : site_names) {
    SiteGrade sg{name, std::nullopt, "", ""};
    auto it = std::find_if(lines.begin(), lines.end(), [&](const std::string& l) {
      return core::contains_icase(l, name);
    });
    if (it == lines.end()) {
      sg.error = "no assessment line for site '" + name + "'";
      out.push_back(std::move(sg));
      continue;
    }
    sg.line = core::trim(*it);
    try {
      sg.grade = core::parse_grade(*it);
    } catch (const Error& e) {
      sg.error = e.code() == Errc::AmbiguousGrade
                     ? "ambiguous grade tokens for site '" + name + "'"
                     : "unparsable grade token for site '" + name + "'";
    }
    out.push_back(std::move(sg));
  }
  return out;
}

}  // namespace disasteller::reporting
