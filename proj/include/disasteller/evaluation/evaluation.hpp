#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disasteller/core/digest.hpp"
#include "disasteller/core/scenario.hpp"
#include "disasteller/error.hpp"
#include "disasteller/gateway/backend.hpp"
#include "disasteller/reporting/report.hpp"
#include "disasteller/reporting/run_record.hpp"

namespace disasteller::evaluation {

/// The six report kinds plus the two intermediate tasks.
enum class EvalTarget {
  ExpertSummary,
  AlertNews,
  EmergencyServices,
  HumanAllocation,
  PublicNotice,
  ReconstructionPlan,
  LocalGrading,
  MapAnnotation,
};

inline constexpr std::array<EvalTarget, 8> kAllTargets = {
    EvalTarget::ExpertSummary,     EvalTarget::AlertNews,    EvalTarget::EmergencyServices,
    EvalTarget::HumanAllocation,   EvalTarget::PublicNotice, EvalTarget::ReconstructionPlan,
    EvalTarget::LocalGrading,      EvalTarget::MapAnnotation};

std::string to_string(EvalTarget target);
std::optional<EvalTarget> target_from_string(std::string_view s);
EvalTarget target_for(reporting::ReportKind kind);

enum class Evaluator { Machine, Human };
std::string to_string(Evaluator evaluator);

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 10;

struct Rubric {
  std::vector<std::string> criteria = {"coherence", "consistency", "accuracy"};
  /// Embedded verbatim in every evaluator prompt.
  std::string text;
};

Rubric default_rubric();

struct EvaluationScore {
  EvalTarget target = EvalTarget::ExpertSummary;
  double score = 0;
  std::string explanation;
  Evaluator evaluator = Evaluator::Machine;
  int round = 1;
};

nlohmann::json to_json(const EvaluationScore& score);
EvaluationScore score_from_json(const nlohmann::json& j);

/// Stage tag of evaluator calls, "evaluator:<Target>".
std::string evaluator_stage(EvalTarget target);

/// System turn casting the model as a post-disaster management expert; user
/// turn with the rubric, the material under review, every image and the
/// "SCORE: <n>/10" / "WEAKNESSES:" answer format. Throws UndecodableImage.
gateway::ModelRequest build_evaluator_request(EvalTarget target, const std::string& material,
                                              const std::vector<core::Bytes>& images,
                                              const Rubric& rubric, const std::string& model_id);

struct ParsedScore {
  int score = 0;
  std::string explanation;
};

/// First "SCORE: <n>/10" token and everything after "WEAKNESSES:". Throws
/// UnparsableScore for a missing token, n outside 1..10 or an empty
/// explanation.
ParsedScore parse_score(std::string_view text);
std::string render_score(int score, const std::string& explanation);

struct TargetError {
  EvalTarget target;
  Errc code;
  std::string message;
};

struct EvaluationOutcome {
  std::vector<EvaluationScore> scores;
  std::vector<TargetError> errors;
};

struct EvaluateOptions {
  std::string model_id = "gpt-4o";
  double temperature = 0.7;
  int max_output_tokens = 1024;
  int round = 1;
  bool parallel = true;
};

/// One machine score per target. Reports are judged with all site images;
/// LocalGrading from the per-site assessments and images; MapAnnotation
/// from the alert map and assessments. Failures are collected per target.
EvaluationOutcome evaluate_run(const reporting::RunRecord& record,
                               const core::DisasterScenario& scenario,
                               gateway::ModelBackend& gateway, const Rubric& rubric,
                               const EvaluateOptions& options = {});

/// CSV input error naming the 1-based row (header is row 1) and field.
class CsvError : public Error {
 public:
  CsvError(Errc code, int row, std::string field, const std::string& message)
      : Error(code, "row " + std::to_string(row) + ", field '" + field + "': " + message),
        row_(row),
        field_(std::move(field)) {}
  int row() const noexcept { return row_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int row_;
  std::string field_;
};

/// Header round,target,score,explanation. Throws CsvError with CsvFormat or
/// ScoreOutOfRange.
std::vector<EvaluationScore> parse_human_scores(std::string_view csv);
std::vector<EvaluationScore> ingest_human_scores(const std::string& path);

struct AggregateStats {
  EvalTarget target;
  Evaluator evaluator;
  int n = 0;
  double mean = 0;
  /// Sample (n-1) deviation; absent for n == 1.
  std::optional<double> stddev;
};

/// Per (target, evaluator), in target then evaluator order. Throws EmptyInput.
std::vector<AggregateStats> aggregate(const std::vector<EvaluationScore>& scores);

struct ComparisonRow {
  EvalTarget target;
  double machine_mean = 0;
  double human_mean = 0;
  double difference = 0;  // machine - human
};

/// Targets scored by both evaluators. Throws EmptyInput.
std::vector<ComparisonRow> compare(const std::vector<EvaluationScore>& machine,
                                   const std::vector<EvaluationScore>& human);

nlohmann::json to_json(const AggregateStats& stats);
nlohmann::json to_json(const ComparisonRow& row);

/// Per-round rows and mean/std rows: kind,target,evaluator,round,value,std.
std::string plot_data_csv(const std::vector<EvaluationScore>& scores,
                          const std::vector<AggregateStats>& aggregates);

struct EvaluationFiles {
  std::vector<EvaluationScore> scores;  // machine and human
  std::vector<TargetError> errors;
  std::string evaluator_model_id;
  std::string run_id;
  bool with_comparison = false;
};

/// Writes scores.json, aggregates.json, plot_data.csv and (with both
/// evaluators) comparison.json into a new directory. Returns the paths.
std::vector<std::string> write_evaluation(const std::string& out_dir, const EvaluationFiles& files);

/// Recomputes aggregates.json from scores.json; true when they agree.
bool verify_evaluation(const std::string& dir);

}  // namespace disasteller::evaluation
