#include "disasteller/reporting/run_record.hpp"

#include <filesystem>

#include "disasteller/core/digest.hpp"
#include "disasteller/error.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace disasteller::reporting {

std::string layout::report_markdown(ReportKind kind) {
  return "reports/" + report_file_stem(kind) + ".md";
}

std::string layout::report_sidecar(ReportKind kind) {
  return "reports/" + report_file_stem(kind) + ".json";
}

namespace {

class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path root) : root_(std::move(root)) {}

  void write(const std::string& rel, std::span<const std::uint8_t> bytes) {
    core::write_new_file((root_ / rel).string(), bytes);
    artifacts_.push_back({{"path", rel},
                          {"sha256", core::sha256_hex(bytes)},
                          {"bytes", bytes.size()}});
  }

  void write(const std::string& rel, std::string_view text) {
    write(rel, std::span<const std::uint8_t>(
                   reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }

  json artifacts() const { return artifacts_; }

 private:
  fs::path root_;
  json artifacts_ = json::array();
};

long long epoch_ms(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

json timings_json(const RunRecord& r) {
  json stages = json::array();
  for (const auto& t : r.stage_timings) {
    stages.push_back({{"stage", t.stage},
                      {"start_ms", t.start_ms},
                      {"end_ms", t.end_ms},
                      {"duration_ms", t.duration_ms()}});
  }
  return {{"stages", std::move(stages)}, {"total_wall_time_ms", r.total_wall_time_ms}};
}

template <typename Json = json>
Json read_json(const fs::path& p) {
  try {
    return Json::parse(core::read_text_file(p.string()));
  } catch (const json::parse_error& e) {
    throw Error(Errc::IoError, p.string() + ": " + e.what());
  }
}

}  // namespace

std::string persist_run(const RunRecord& record, const std::string& out_dir) {
  if (record.run_id.empty()) throw Error(Errc::IoError, "run record has no run_id");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const fs::path root = fs::path(out_dir) / record.run_id;
  if (!fs::create_directory(root, ec)) {
    throw Error(Errc::IoError, "run directory '" + root.string() +
                                   "' already exists or cannot be created");
  }
  fs::create_directory(root / "reports", ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + (root / "reports").string());

  ArtifactWriter w(root);
  json report_status = json::object();
  for (const auto& [kind, report] : record.reports) {
    w.write(layout::report_markdown(kind), report.raw_text);
    w.write(layout::report_sidecar(kind), report_to_json(report).dump(2) + "\n");
    report_status[to_string(kind)] = {{"valid", report.valid()},
                                      {"issues", report.issues.size()}};
  }
  if (!record.alert_map_png.empty()) w.write(layout::kAlertMap, record.alert_map_png);

  json board = json::array();
  for (const auto& e : record.blackboard) board.push_back(core::to_json(e));
  w.write(layout::kBlackboard, board.dump(2) + "\n");

  json tools = json::array();
  for (const auto& t : record.tool_calls) tools.push_back(toolkit::to_json(t));
  w.write(layout::kToolLog, tools.dump(2) + "\n");
  w.write(layout::kTimings, timings_json(record).dump(2) + "\n");
  w.write(layout::kTranscript,
          gateway::script_to_json(gateway::record_transcript(record.exchanges)).dump(2) + "\n");

  const json manifest = {{"run_id", record.run_id},
                         {"scenario_id", record.scenario_id},
                         {"scenario_manifest", record.scenario_manifest},
                         {"started_at_ms", epoch_ms(record.started_at)},
                         {"total_wall_time_ms", record.total_wall_time_ms},
                         {"warnings", record.warnings},
                         {"reports", report_status},
                         {"config", record.config},
                         {"artifacts", w.artifacts()}};
  const auto manifest_path = (root / layout::kManifest).string();
  core::write_new_file(manifest_path, manifest.dump(2) + "\n");
  return manifest_path;
}

RunRecord load_run(const std::string& run_dir) {
  const fs::path root(run_dir);
  const json manifest = read_json(root / layout::kManifest);
  RunRecord r;
  try {
    r.run_id = manifest.at("run_id").get<std::string>();
    r.scenario_id = manifest.at("scenario_id").get<std::string>();
    r.scenario_manifest = manifest.value("scenario_manifest", "");
    r.started_at = std::chrono::system_clock::time_point(
        std::chrono::milliseconds(manifest.value("started_at_ms", 0LL)));
    r.total_wall_time_ms = manifest.value("total_wall_time_ms", 0.0);
    r.warnings = manifest.value("warnings", std::vector<std::string>{});
    r.config = manifest.value("config", json::object());

    for (const auto& [name, _] : manifest.at("reports").items()) {
      const auto kind = report_kind_from_string(name);
      const auto text = core::read_text_file((root / layout::report_markdown(kind)).string());
      const auto sidecar = read_json<nlohmann::ordered_json>(root / layout::report_sidecar(kind));
      Report rep{kind, text, {}, {}};
      for (const auto& [h, b] : sidecar.at("sections").items()) {
        rep.sections.emplace_back(h, b.get<std::string>());
      }
      for (const auto& i : sidecar.at("issues")) {
        const auto code = i.at("code").get<std::string>();
        IssueCode ic = IssueCode::ConstraintViolation;
        for (auto c : {IssueCode::MissingSection, IssueCode::DuplicateSection,
                       IssueCode::OutOfOrder, IssueCode::EmptySection,
                       IssueCode::ConstraintViolation, IssueCode::MissingReport}) {
          if (to_string(c) == code) ic = c;
        }
        rep.issues.push_back({ic, i.at("section").get<std::string>(),
                              i.at("message").get<std::string>()});
      }
      r.reports.emplace(kind, std::move(rep));
    }

    if (fs::exists(root / layout::kAlertMap)) {
      r.alert_map_png = core::read_file((root / layout::kAlertMap).string());
    }
    for (const auto& e : read_json(root / layout::kBlackboard)) {
      core::BlackboardEntry entry;
      entry.key = e.at("key").get<std::string>();
      entry.producer = e.at("producer").get<std::string>();
      entry.kind = core::entry_kind_from_string(e.at("kind").get<std::string>());
      entry.content = e.at("content");
      entry.sequence = e.at("sequence").get<std::uint64_t>();
      entry.created_at = std::chrono::system_clock::time_point(
          std::chrono::milliseconds(e.value("created_at_ms", 0LL)));
      r.blackboard.push_back(std::move(entry));
    }
    for (const auto& t : read_json(root / layout::kToolLog)) {
      toolkit::ToolCallRecord rec;
      rec.sequence = t.at("sequence").get<std::uint64_t>();
      rec.stage = t.at("stage").get<std::string>();
      rec.origin = t.value("origin", "");
      rec.call_id = t.value("call_id", "");
      rec.tool_id = t.at("tool").get<std::string>();
      rec.args = t.at("args");
      rec.ok = t.at("ok").get<bool>();
      rec.result = t.at("result");
      rec.error = t.value("error", "");
      rec.duration_ms = t.value("duration_ms", 0.0);
      r.tool_calls.push_back(std::move(rec));
    }
    const json timings = read_json(root / layout::kTimings);
    for (const auto& s : timings.at("stages")) {
      r.stage_timings.push_back({s.at("stage").get<std::string>(),
                                 s.at("start_ms").get<double>(), s.at("end_ms").get<double>()});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::IoError, "run directory '" + run_dir + "' is malformed: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::IoError, "run directory '" + run_dir + "': " + e.what());
  }
  return r;
}

std::vector<std::string> verify_manifest(const std::string& run_dir) {
  const fs::path root(run_dir);
  const json manifest = read_json(root / layout::kManifest);
  std::vector<std::string> bad;
  for (const auto& a : manifest.at("artifacts")) {
    const auto rel = a.at("path").get<std::string>();
    const auto p = root / rel;
    if (!fs::exists(p) || core::sha256_hex(core::read_file(p.string())) != a.at("sha256")) {
      bad.push_back(rel);
    }
  }
  return bad;
}

}  // namespace disasteller::reporting
