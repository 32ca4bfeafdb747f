#include "disasteller/orchestrator/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <future>
#include <memory>
#include <mutex>
#include <random>

#include "disasteller/core/digest.hpp"
#include "disasteller/toolkit/gazetteer.hpp"
#include "disasteller/toolkit/standard_tools.hpp"

namespace disasteller::orchestrator {

using nlohmann::json;
using reporting::ReportKind;
using Clock = std::chrono::steady_clock;

std::string make_run_id(const std::string& scenario_id) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  std::random_device rd;
  char suffix[8];
  std::snprintf(suffix, sizeof suffix, "%06x", rd() & 0xffffffu);
  return scenario_id + "-" + stamp + "-" + suffix;
}

namespace {

struct MapSink {
  std::mutex mu;
  std::optional<toolkit::AlertMapOutput> latest;
};

json assessments_json(const core::DisasterScenario& scenario, const reporting::Report& summary,
                      const std::vector<toolkit::ToolCallRecord>& calls) {
  std::vector<std::string> names;
  for (const auto& s : scenario.sites) names.push_back(s.location_name);
  std::string body;
  for (const auto& [h, b] : summary.sections) {
    if (h == "Site Assessments") body = b;
  }
  const auto grades = reporting::parse_site_grades(body, names);

  json refs = json::array();
  for (const auto& rec : calls) {
    if (!rec.ok || rec.tool_id != toolkit::tool_ids::kFileSearch) continue;
    for (const auto& hit : rec.result["results"]) {
      if (std::find(refs.begin(), refs.end(), hit["ref"]) == refs.end()) refs.push_back(hit["ref"]);
    }
  }
  json sites = json::array();
  for (std::size_t i = 0; i < scenario.sites.size(); ++i) {
    const auto& site = scenario.sites[i];
    std::string description;
    for (const auto& rec : calls) {
      if (rec.ok && rec.tool_id == toolkit::tool_ids::kInterpretImage &&
          rec.args.value("image", "") == site.site_id) {
        description = rec.result.value("description", "");
      }
    }
    sites.push_back({{"site_id", site.site_id},
                     {"location_name", site.location_name},
                     {"grade", grades[i].grade ? json(core::to_string(*grades[i].grade)) : json()},
                     {"description", description}});
  }
  return {{"sites", sites}, {"guideline_refs", refs}};
}

double offset_ms(Clock::time_point origin) {
  return std::chrono::duration<double, std::milli>(Clock::now() - origin).count();
}

}  // namespace

PipelineResult run_pipeline(const core::DisasterScenario& scenario, const EngineConfig& config,
                            const PipelineBackends& backends, const PipelineOptions& options) {
  if (backends.model == nullptr) throw std::invalid_argument("run_pipeline: no model backend");
  core::validate_scenario(scenario);

  const auto origin = Clock::now();
  PipelineResult out;
  auto& record = out.record;
  record.started_at = std::chrono::system_clock::now();
  record.run_id = options.run_id.empty() ? make_run_id(scenario.scenario_id) : options.run_id;
  record.scenario_id = scenario.scenario_id;
  record.scenario_manifest = scenario.manifest_path;
  record.config = to_json(config);

  std::unique_ptr<toolkit::WebSearchProvider> own_search;
  toolkit::WebSearchProvider* search = backends.search;
  if (search == nullptr) {
    if (config.tools.web_search_mode != WebSearchMode::Fixture) {
      throw Error(Errc::ConfigError, "tools.web_search: live mode needs a search provider");
    }
    own_search = std::make_unique<toolkit::FixtureSearchProvider>(
        toolkit::FixtureSearchProvider::from_file(config.tools.web_search_fixture));
    search = own_search.get();
  }
  std::optional<toolkit::GuidelineIndex> own_index;
  const toolkit::GuidelineIndex* index = backends.index;
  if (index == nullptr) {
    own_index = toolkit::ingest_guideline(
        scenario.guideline_path, {config.retrieval.chunk_size, config.retrieval.overlap});
    index = &*own_index;
  }
  const auto gazetteer = toolkit::Gazetteer::load(scenario.gazetteer_path);
  for (const auto& site : scenario.sites) {
    if (!gazetteer.try_resolve(site.location_name)) {
      record.warnings.push_back("site " + site.site_id + ": location '" + site.location_name +
                                "' is not in the gazetteer and is left off the alert map");
    }
  }

  gateway::RecordingBackend gateway(*backends.model);
  auto sink = std::make_shared<MapSink>();
  toolkit::ToolRegistry registry;
  {
    toolkit::StandardToolContext ctx;
    ctx.scenario = &scenario;
    ctx.gateway = &gateway;
    ctx.interpret.model_id = config.gateway.model_id;
    ctx.interpret.temperature = config.gateway.temperature;
    ctx.index = index;
    ctx.default_k = config.retrieval.k;
    ctx.search = search;
    ctx.gazetteer = &gazetteer;
    ctx.on_alert_map = [sink](const toolkit::AlertMapOutput& m) {
      std::lock_guard lock(sink->mu);
      sink->latest = m;
    };
    toolkit::register_standard_tools(registry, std::move(ctx));
  }
  const auto specs = build_default_agents(config, registry.tool_ids());
  auto spec_of = [&](StageId id) -> const AgentSpec& {
    return *std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.stage == id; });
  };

  core::Blackboard board;
  board.put(keys::kScenarioSites,
            {keys::kScenarioSites, "scenario", core::EntryKind::Structured,
             core::sites_to_json(scenario), 0, {}});

  AgentRunOptions base;
  base.artifact_bytes = [sink](const std::string& artifact) -> std::vector<std::uint8_t> {
    std::lock_guard lock(sink->mu);
    if (artifact != reporting::layout::kAlertMap || !sink->latest) {
      throw Error(Errc::MissingInput, "no artifact '" + artifact + "'");
    }
    return sink->latest->png;
  };

  AgentRunOptions expert_opts = base;
  for (const auto& s : scenario.sites) expert_opts.validation.site_names.push_back(s.location_name);
  expert_opts.finalize = [&](const std::vector<reporting::Report>& reports) {
    const auto stage = to_string(StageId::Expert);
    std::vector<toolkit::ToolCallRecord> calls;
    for (auto& rec : registry.log().records()) {
      if (rec.stage == stage) calls.push_back(std::move(rec));
    }
    auto assessments = assessments_json(scenario, reports.front(), calls);

    bool have_map;
    {
      std::lock_guard lock(sink->mu);
      have_map = sink->latest.has_value();
    }
    if (!have_map) {
      json annotations = json::array();
      for (const auto& s : assessments["sites"]) {
        if (!s["grade"].is_null()) {
          annotations.push_back({{"location_name", s["location_name"]}, {"grade", s["grade"]}});
        }
      }
      registry.dispatch(toolkit::tool_ids::kAnnotateMap, {{"annotations", annotations}},
                        {stage, "orchestrator", "orchestrator-annotate-map"});
    }
    std::string digest;
    {
      std::lock_guard lock(sink->mu);
      digest = core::sha256_hex(sink->latest->png);
    }
    std::vector<core::BlackboardEntry> extra(2);
    extra[0].key = keys::kExpertAssessments;
    extra[0].kind = core::EntryKind::Structured;
    extra[0].content = std::move(assessments);
    extra[1].key = keys::kExpertAlertMap;
    extra[1].kind = core::EntryKind::ImageRef;
    extra[1].content = {{"artifact", reporting::layout::kAlertMap},
                        {"media_type", "image/png"},
                        {"sha256", digest}};
    return extra;
  };

  std::mutex timing_mu;
  auto run_stage = [&](StageId id) {
    const double start = offset_ms(origin);
    struct Finish {
      std::mutex& mu;
      std::vector<reporting::StageTiming>& timings;
      std::string stage;
      double start;
      Clock::time_point origin;
      ~Finish() {
        std::lock_guard lock(mu);
        timings.push_back({stage, start, offset_ms(origin)});
      }
    } finish{timing_mu, record.stage_timings, to_string(id), start, origin};
    if (options.on_stage_start) options.on_stage_start(id);
    return run_agent(spec_of(id), board, gateway, registry,
                     id == StageId::Expert ? expert_opts : base);
  };

  auto failure_of = [&](StageId id, std::exception_ptr ep) {
    StageFailure f;
    f.stage = id;
    try {
      std::rethrow_exception(ep);
    } catch (const FormatRetriesExhaustedError& e) {
      f.code = e.code();
      f.message = e.what();
      f.issues = e.issues();
      for (const auto& r : e.reports()) record.reports.emplace(r.kind, r);
    } catch (const Error& e) {
      f.code = e.code();
      f.message = e.what();
    } catch (const std::exception& e) {
      f.code = Errc::StageFailed;
      f.message = e.what();
    }
    return f;
  };

  auto attempt = [&](StageId id) -> std::exception_ptr {
    try {
      out.stages.push_back(run_stage(id));
      return nullptr;
    } catch (...) {
      return std::current_exception();
    }
  };

  std::vector<std::pair<StageId, std::exception_ptr>> errors;
  if (auto ep = attempt(StageId::Expert)) errors.emplace_back(StageId::Expert, ep);

  if (errors.empty()) {
    if (config.orchestration.parallel_alerts_emergency) {
      auto fa = std::async(std::launch::async, [&] {
        try {
          return std::make_pair(std::optional<StageResult>(run_stage(StageId::Alerts)),
                                std::exception_ptr());
        } catch (...) {
          return std::make_pair(std::optional<StageResult>(), std::current_exception());
        }
      });
      std::exception_ptr emergency_error;
      std::optional<StageResult> emergency;
      try {
        emergency = run_stage(StageId::Emergency);
      } catch (...) {
        emergency_error = std::current_exception();
      }
      auto [alerts, alerts_error] = fa.get();
      if (alerts) out.stages.push_back(std::move(*alerts));
      if (emergency) out.stages.push_back(std::move(*emergency));
      if (alerts_error) errors.emplace_back(StageId::Alerts, alerts_error);
      if (emergency_error) errors.emplace_back(StageId::Emergency, emergency_error);
    } else {
      if (auto ep = attempt(StageId::Alerts)) errors.emplace_back(StageId::Alerts, ep);
      if (errors.empty()) {
        if (auto ep = attempt(StageId::Emergency)) errors.emplace_back(StageId::Emergency, ep);
      }
    }
  }
  if (errors.empty()) {
    if (auto ep = attempt(StageId::Assignment)) errors.emplace_back(StageId::Assignment, ep);
  }

  if (!errors.empty()) {
    auto f = failure_of(errors.front().first, errors.front().second);
    for (std::size_t i = 1; i < errors.size(); ++i) {
      const auto extra = failure_of(errors[i].first, errors[i].second);
      record.warnings.push_back("stage " + to_string(extra.stage) + " failed: " + extra.message);
    }
    for (auto id : kAllStages) {
      const bool ran = std::any_of(out.stages.begin(), out.stages.end(),
                                   [&](const auto& s) { return s.stage == id; }) ||
                       std::any_of(errors.begin(), errors.end(),
                                   [&](const auto& e) { return e.first == id; });
      if (!ran) f.skipped.push_back(id);
    }
    record.warnings.push_back("stage " + to_string(f.stage) + " failed: " + f.message);
    out.failure = std::move(f);
  }

  std::sort(out.stages.begin(), out.stages.end(),
            [](const auto& a, const auto& b) { return a.stage < b.stage; });
  std::sort(record.stage_timings.begin(), record.stage_timings.end(),
            [](const auto& a, const auto& b) { return a.start_ms < b.start_ms; });
  for (const auto& s : out.stages) {
    for (const auto& r : s.reports) record.reports.insert_or_assign(r.kind, r);
  }
  {
    std::lock_guard lock(sink->mu);
    if (sink->latest) record.alert_map_png = sink->latest->png;
  }
  record.blackboard = board.snapshot();
  record.tool_calls = registry.log().records();
  record.exchanges = gateway.exchanges();
  record.total_wall_time_ms = offset_ms(origin);
  return out;
}

}  // namespace disasteller::orchestrator
