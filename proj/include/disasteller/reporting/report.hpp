#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "disasteller/core/grade.hpp"

namespace disasteller::reporting {

enum class ReportKind {
  ExpertSummary,
  AlertNews,
  EmergencyServices,
  HumanAllocation,
  PublicNotice,
  ReconstructionPlan,
};

inline constexpr std::array<ReportKind, 6> kAllReportKinds = {
    ReportKind::ExpertSummary,   ReportKind::AlertNews,    ReportKind::EmergencyServices,
    ReportKind::HumanAllocation, ReportKind::PublicNotice, ReportKind::ReconstructionPlan};

/// "ExpertSummary", ...
std::string to_string(ReportKind kind);
/// Throws std::invalid_argument.
ReportKind report_kind_from_string(std::string_view s);
/// Document title, e.g. "Emergency Services Report".
std::string report_title(ReportKind kind);
/// File stem, e.g. "emergency_services".
std::string report_file_stem(ReportKind kind);

enum class Constraint {
  None,
  /// One parseable grade token per scenario site.
  SiteGrades,
  /// At least one list item.
  NonEmptyList,
  /// Every top-level list item carries an integer personnel count.
  QuantifiedPersonnel,
  ContainsNumber,
  /// A currency amount such as "$1 billion" or "12 million USD".
  BudgetAmount,
};

struct SectionRule {
  std::string header;
  Constraint constraint = Constraint::None;
};

struct ReportTemplate {
  ReportKind kind;
  std::vector<SectionRule> sections;
  std::vector<std::string> headers() const;
};

ReportTemplate template_for(ReportKind kind);

/// Human-readable instructions listing a template's headers and rules.
std::string describe_template(const ReportTemplate& tmpl);

enum class IssueCode {
  MissingSection,
  DuplicateSection,
  OutOfOrder,
  EmptySection,
  ConstraintViolation,
  MissingReport,
};

std::string to_string(IssueCode code);

struct Issue {
  IssueCode code;
  std::string section;
  std::string message;
  friend bool operator==(const Issue&, const Issue&) = default;
};

nlohmann::json to_json(const Issue& issue);

struct ValidationContext {
  /// Scenario location names the ExpertSummary must grade.
  std::vector<std::string> site_names;
};

/// Header line test: equal to the header after trimming and case folding,
/// with or without leading '#' marks.
bool is_header_line(std::string_view line, std::string_view header);

/// Ordered (header, body) pairs; only template headers open sections and a
/// repeated header keeps its first body.
using Sections = std::vector<std::pair<std::string, std::string>>;

Sections parse_sections(std::string_view text, const ReportTemplate& tmpl);

/// Issues in check order: header presence/uniqueness, header order, then
/// per-section content. Empty means valid. Pure.
std::vector<Issue> validate_report(std::string_view text, const ReportTemplate& tmpl,
                                   const ValidationContext& context = {});

/// Markdown rendering; parse_sections(render_report(...)) recovers sections.
std::string render_report(ReportKind kind, const Sections& sections);

struct Report {
  ReportKind kind;
  std::string raw_text;
  Sections sections;
  std::vector<Issue> issues;
  bool valid() const { return issues.empty(); }
};

Report make_report(ReportKind kind, std::string text, const ValidationContext& context = {});

/// Sidecar form {kind, sections:{header: body}, valid, issues:[...]}.
nlohmann::ordered_json report_to_json(const Report& report);

/// Splits a multi-report answer at report title lines ("# Public Notice").
/// Missing titles yield nullopt for that kind.
std::vector<std::pair<ReportKind, std::optional<std::string>>> split_reports(
    std::string_view text, const std::vector<ReportKind>& kinds);

struct SiteGrade {
  std::string location_name;
  std::optional<core::DamageGrade> grade;
  std::string line;   // empty when no line mentions the site
  std::string error;  // why grade is absent
};

/// Matches each site name to the first line of body mentioning it and
/// parses that line's grade token.
std::vector<SiteGrade> parse_site_grades(std::string_view body,
                                         const std::vector<std::string>& site_names);

}  // namespace disasteller::reporting
