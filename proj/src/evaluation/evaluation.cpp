#include "disasteller/evaluation/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <map>
#include <regex>

#include "disasteller/core/text.hpp"
#include "disasteller/orchestrator/agent_spec.hpp"

namespace disasteller::evaluation {

namespace fs = std::filesystem;
using nlohmann::json;
using reporting::ReportKind;

std::string to_string(EvalTarget target) {
  switch (target) {
    case EvalTarget::LocalGrading: return "LocalGrading";
    case EvalTarget::MapAnnotation: return "MapAnnotation";
    default: return reporting::to_string(static_cast<ReportKind>(static_cast<int>(target)));
  }
}

std::optional<EvalTarget> target_from_string(std::string_view s) {
  for (auto t : kAllTargets) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

EvalTarget target_for(ReportKind kind) {
  for (std::size_t i = 0; i < reporting::kAllReportKinds.size(); ++i) {
    if (reporting::kAllReportKinds[i] == kind) return kAllTargets[i];
  }
  return EvalTarget::ExpertSummary;
}

std::string to_string(Evaluator evaluator) {
  return evaluator == Evaluator::Machine ? "machine" : "human";
}

namespace {

Evaluator evaluator_from_string(const std::string& s) {
  if (s == "machine") return Evaluator::Machine;
  if (s == "human") return Evaluator::Human;
  throw Error(Errc::MalformedResponse, "unknown evaluator '" + s + "'");
}

std::optional<ReportKind> report_kind_of(EvalTarget t) {
  if (t == EvalTarget::LocalGrading || t == EvalTarget::MapAnnotation) return std::nullopt;
  return reporting::kAllReportKinds[static_cast<std::size_t>(t)];
}

std::string target_description(EvalTarget t) {
  switch (t) {
    case EvalTarget::LocalGrading:
      return "the local disaster grading: the EMS-98 damage grade and description assigned "
             "to each on-site image";
    case EvalTarget::MapAnnotation:
      return "the alert map: the global map annotated with the damage grade of each site";
    default:
      return "the report \"" + reporting::report_title(*report_kind_of(t)) + "\"";
  }
}

}  // namespace

Rubric default_rubric() {
  Rubric r;
  r.text =
      "Judge the material on three criteria:\n"
      "- coherence: the sentences form a clear, well organised whole;\n"
      "- consistency: statements agree with each other and with the on-site images;\n"
      "- accuracy: claims about damage, locations, needs and figures are correct and "
      "supported.\n"
      "Give one overall integer score from 1 (unusable) to 10 (flawless), and explain "
      "the weaknesses in detail for every criterion.";
  return r;
}

json to_json(const EvaluationScore& s) {
  return {{"target", to_string(s.target)},
          {"evaluator", to_string(s.evaluator)},
          {"round", s.round},
          {"score", s.score},
          {"explanation", s.explanation}};
}

EvaluationScore score_from_json(const json& j) {
  try {
    const auto target = target_from_string(j.at("target").get<std::string>());
    if (!target) throw Error(Errc::MalformedResponse, "unknown target");
    return {*target, j.at("score").get<double>(), j.at("explanation").get<std::string>(),
            evaluator_from_string(j.at("evaluator").get<std::string>()), j.at("round").get<int>()};
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedResponse, std::string("score record: ") + e.what());
  }
}

std::string evaluator_stage(EvalTarget target) { return "evaluator:" + to_string(target); }

gateway::ModelRequest build_evaluator_request(EvalTarget target, const std::string& material,
                                              const std::vector<core::Bytes>& images,
                                              const Rubric& rubric, const std::string& model_id) {
  std::vector<gateway::ImagePart> parts;
  for (const auto& img : images) parts.push_back(gateway::make_image_part(img));

  gateway::ModelRequest req;
  req.stage = evaluator_stage(target);
  req.model_id = model_id;
  req.messages.push_back(gateway::Message::system(
      "You are EvaluatorGPT, a post-disaster management expert. You review the outputs of "
      "a disaster response system with access to the post-disaster on-site images, and "
      "grade them strictly and fairly."));
  std::string text = "Evaluate " + target_description(target) + ".\n\nRubric:\n" + rubric.text +
                     "\n\nMaterial under review:\n" + material + "\n\n";
  if (!parts.empty()) {
    text += std::to_string(parts.size()) + " image(s) are attached.\n\n";
  }
  text +=
      "Answer in exactly this format:\n"
      "SCORE: <n>/10\n"
      "WEAKNESSES: <detailed explanation of the weaknesses covering coherence, consistency "
      "and accuracy>";
  auto user = gateway::Message::user(std::move(text));
  for (auto& p : parts) user.parts.emplace_back(std::move(p));
  req.messages.push_back(std::move(user));
  return req;
}

ParsedScore parse_score(std::string_view text) {
  static const std::regex token(R"(SCORE:\s*(\d+)\s*/\s*10)", std::regex::icase);
  const std::string s(text);
  std::smatch m;
  if (!std::regex_search(s, m, token)) {
    throw Error(Errc::UnparsableScore, "no 'SCORE: <n>/10' token");
  }
  const auto digits = m[1].str();
  const int n = digits.size() > 2 ? 0 : std::stoi(digits);
  if (n < kMinScore || n > kMaxScore) {
    throw Error(Errc::UnparsableScore, "score " + digits + " outside 1..10");
  }
  const auto tail = s.substr(static_cast<std::size_t>(m.position(0) + m.length(0)));
  const auto w = core::to_lower(tail).find("weaknesses:");
  if (w == std::string::npos) throw Error(Errc::UnparsableScore, "no 'WEAKNESSES:' section");
  auto explanation = core::trim(tail.substr(w + 11));
  if (explanation.empty()) throw Error(Errc::UnparsableScore, "empty explanation");
  return {n, std::string(explanation)};
}

std::string render_score(int score, const std::string& explanation) {
  return "SCORE: " + std::to_string(score) + "/10\nWEAKNESSES: " + explanation;
}

EvaluationOutcome evaluate_run(const reporting::RunRecord& record,
                               const core::DisasterScenario& scenario,
                               gateway::ModelBackend& gateway, const Rubric& rubric,
                               const EvaluateOptions& options) {
  auto site_images = [&] {
    std::vector<core::Bytes> out;
    for (const auto& s : scenario.sites) out.push_back(core::read_file(s.image_path));
    return out;
  };
  auto assessments = [&]() -> std::string {
    for (const auto& e : record.blackboard) {
      if (e.key == orchestrator::keys::kExpertAssessments) return e.content.dump(2);
    }
    throw Error(Errc::MissingInput, "run has no per-site assessments");
  };

  auto evaluate_one = [&](EvalTarget target) -> EvaluationScore {
    std::string material;
    std::vector<core::Bytes> images;
    if (auto kind = report_kind_of(target)) {
      auto it = record.reports.find(*kind);
      if (it == record.reports.end()) {
        throw Error(Errc::MissingInput, "run has no " + reporting::to_string(*kind));
      }
      material = it->second.raw_text;
      images = site_images();
    } else if (target == EvalTarget::LocalGrading) {
      material = "Per-site assessments (one on-site image attached per site, in order):\n" +
                 assessments();
      images = site_images();
    } else {
      if (record.alert_map_png.empty()) throw Error(Errc::MissingInput, "run has no alert map");
      material = "Per-site assessments the alert map should show (alert map attached):\n" +
                 assessments();
      images.push_back(record.alert_map_png);
    }
    auto req = build_evaluator_request(target, material, images, rubric, options.model_id);
    req.temperature = options.temperature;
    req.max_output_tokens = options.max_output_tokens;
    const auto parsed = parse_score(gateway.complete(req).text);
    return {target, static_cast<double>(parsed.score), parsed.explanation, Evaluator::Machine,
            options.round};
  };

  std::vector<std::future<EvaluationScore>> futures;
  for (auto t : kAllTargets) {
    futures.push_back(std::async(options.parallel ? std::launch::async : std::launch::deferred,
                                 evaluate_one, t));
  }
  EvaluationOutcome out;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      out.scores.push_back(futures[i].get());
    } catch (const Error& e) {
      out.errors.push_back({kAllTargets[i], e.code(), e.what()});
    } catch (const std::exception& e) {
      out.errors.push_back({kAllTargets[i], Errc::StageFailed, e.what()});
    }
  }
  return out;
}

namespace {

/// RFC 4180 records; quoted fields may hold commas, quotes and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t i = 0;
  auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    rows.push_back(std::move(row));
    row.clear();
    any = false;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) end_row();
    } else {
      field += c;
      any = true;
    }
    ++i;
  }
  if (quoted) throw CsvError(Errc::CsvFormat, static_cast<int>(rows.size()) + 1, "", "unterminated quote");
  if (any || !field.empty()) end_row();
  return rows;
}

}  // namespace

std::vector<EvaluationScore> parse_human_scores(std::string_view csv) {
  const auto rows = parse_csv(csv);
  const std::vector<std::string> header = {"round", "target", "score", "explanation"};
  if (rows.empty()) throw CsvError(Errc::CsvFormat, 1, "header", "missing header");
  std::vector<std::string> got;
  for (const auto& f : rows[0]) got.push_back(core::to_lower(core::trim(f)));
  if (got != header) {
    throw CsvError(Errc::CsvFormat, 1, "header", "expected round,target,score,explanation");
  }
  auto parse_int = [](const std::string& s) -> std::optional<int> {
    const auto t = core::trim(s);
    if (t.empty() || t.size() > 9) return std::nullopt;
    std::size_t start = t.front() == '-' ? 1 : 0;
    if (start == t.size()) return std::nullopt;
    for (std::size_t i = start; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return std::nullopt;
    }
    return std::stoi(std::string(t));
  };

  std::vector<EvaluationScore> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const int row = static_cast<int>(r) + 1;
    const auto& f = rows[r];
    if (f.size() != 4) {
      throw CsvError(Errc::CsvFormat, row, "row",
                     "expected 4 fields, got " + std::to_string(f.size()));
    }
    const auto round = parse_int(f[0]);
    if (!round || *round < 1) throw CsvError(Errc::CsvFormat, row, "round", "not a positive integer");
    const auto target = target_from_string(core::trim(f[1]));
    if (!target) throw CsvError(Errc::CsvFormat, row, "target", "unknown target '" + f[1] + "'");
    const auto score = parse_int(f[2]);
    if (!score) throw CsvError(Errc::CsvFormat, row, "score", "not an integer");
    if (*score < kMinScore || *score > kMaxScore) {
      throw CsvError(Errc::ScoreOutOfRange, row, "score",
                     std::to_string(*score) + " outside 1..10");
    }
    out.push_back({*target, static_cast<double>(*score), std::string(core::trim(f[3])),
                   Evaluator::Human, *round});
  }
  return out;
}

std::vector<EvaluationScore> ingest_human_scores(const std::string& path) {
  return parse_human_scores(core::read_text_file(path));
}

std::vector<AggregateStats> aggregate(const std::vector<EvaluationScore>& scores) {
  if (scores.empty()) throw Error(Errc::EmptyInput, "no scores to aggregate");
  std::map<std::pair<EvalTarget, Evaluator>, std::vector<double>> groups;
  for (const auto& s : scores) groups[{s.target, s.evaluator}].push_back(s.score);

  std::vector<AggregateStats> out;
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    double sum = 0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    AggregateStats a{key.first, key.second, static_cast<int>(n), mean, std::nullopt};
    if (n >= 2) {
      double ss = 0;
      for (double v : values) ss += (v - mean) * (v - mean);
      a.stddev = std::sqrt(ss / static_cast<double>(n - 1));
    }
    out.push_back(a);
  }
  return out;
}

std::vector<ComparisonRow> compare(const std::vector<EvaluationScore>& machine,
                                   const std::vector<EvaluationScore>& human) {
  if (machine.empty() || human.empty()) throw Error(Errc::EmptyInput, "nothing to compare");
  std::map<EvalTarget, double> m;
  std::map<EvalTarget, double> h;
  for (const auto& a : aggregate(machine)) {
    if (a.evaluator == Evaluator::Machine) m[a.target] = a.mean;
  }
  for (const auto& a : aggregate(human)) {
    if (a.evaluator == Evaluator::Human) h[a.target] = a.mean;
  }
  std::vector<ComparisonRow> out;
  for (auto t : kAllTargets) {
    if (m.contains(t) && h.contains(t)) out.push_back({t, m[t], h[t], m[t] - h[t]});
  }
  return out;
}

json to_json(const AggregateStats& a) {
  return {{"target", to_string(a.target)},
          {"evaluator", to_string(a.evaluator)},
          {"n", a.n},
          {"mean", a.mean},
          {"std", a.stddev ? json(*a.stddev) : json()}};
}

json to_json(const ComparisonRow& r) {
  return {{"target", to_string(r.target)},
          {"machine_mean", r.machine_mean},
          {"human_mean", r.human_mean},
          {"difference", r.difference}};
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string plot_data_csv(const std::vector<EvaluationScore>& scores,
                          const std::vector<AggregateStats>& aggregates) {
  std::string out = "kind,target,evaluator,round,value,std\n";
  auto sorted = scores;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(a.evaluator, a.target, a.round) < std::tie(b.evaluator, b.target, b.round);
  });
  for (const auto& s : sorted) {
    out += "round," + to_string(s.target) + "," + to_string(s.evaluator) + "," +
           std::to_string(s.round) + "," + fmt(s.score) + ",\n";
  }
  for (const auto& a : aggregates) {
    out += "mean," + to_string(a.target) + "," + to_string(a.evaluator) + ",," + fmt(a.mean) +
           "," + (a.stddev ? fmt(*a.stddev) : "") + "\n";
  }
  return out;
}

std::vector<std::string> write_evaluation(const std::string& out_dir, const EvaluationFiles& files) {
  std::error_code ec;
  if (fs::exists(out_dir)) throw Error(Errc::IoError, "output directory exists: " + out_dir);
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + out_dir + ": " + ec.message());

  json scores = json::array();
  for (const auto& s : files.scores) scores.push_back(to_json(s));
  json errors = json::array();
  for (const auto& e : files.errors) {
    errors.push_back({{"target", to_string(e.target)},
                      {"code", std::string(disasteller::to_string(e.code))},
                      {"message", e.message}});
  }
  const json scores_doc = {{"run_id", files.run_id},
                           {"evaluator_model_id", files.evaluator_model_id},
                           {"scores", scores},
                           {"errors", errors}};

  std::vector<AggregateStats> aggs;
  if (!files.scores.empty()) aggs = aggregate(files.scores);
  json agg_json = json::array();
  for (const auto& a : aggs) agg_json.push_back(to_json(a));
  const json agg_doc = {{"run_id", files.run_id},
                        {"evaluator_model_id", files.evaluator_model_id},
                        {"aggregates", agg_json}};

  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& body) {
    const auto path = (fs::path(out_dir) / name).string();
    core::write_new_file(path, body);
    written.push_back(path);
  };
  put("scores.json", scores_doc.dump(2) + "\n");
  put("aggregates.json", agg_doc.dump(2) + "\n");
  put("plot_data.csv", plot_data_csv(files.scores, aggs));
  if (files.with_comparison) {
    std::vector<EvaluationScore> machine;
    std::vector<EvaluationScore> human;
    for (const auto& s : files.scores) {
      (s.evaluator == Evaluator::Machine ? machine : human).push_back(s);
    }
    json rows = json::array();
    for (const auto& r : compare(machine, human)) rows.push_back(to_json(r));
    put("comparison.json", json{{"rows", rows}}.dump(2) + "\n");
  }
  return written;
}

namespace {

bool verify_evaluation_files(const std::string& dir) {
  const auto scores_doc = json::parse(core::read_text_file((fs::path(dir) / "scores.json").string()));
  const auto agg_doc =
      json::parse(core::read_text_file((fs::path(dir) / "aggregates.json").string()));
  std::vector<EvaluationScore> scores;
  for (const auto& j : scores_doc.at("scores")) scores.push_back(score_from_json(j));
  json recomputed = json::array();
  if (!scores.empty()) {
    for (const auto& a : aggregate(scores)) recomputed.push_back(to_json(a));
  }
  return recomputed == agg_doc.at("aggregates");
}

}  // namespace

bool verify_evaluation(const std::string& dir) {
  try {
    return verify_evaluation_files(dir);
  } catch (const json::exception&) {
    return false;
  }
}

}  // namespace disasteller::evaluation
