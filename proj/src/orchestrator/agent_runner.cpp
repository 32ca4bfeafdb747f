#include "disasteller/orchestrator/agent_runner.hpp"

#include <algorithm>
#include <chrono>

namespace disasteller::orchestrator {

using nlohmann::json;
using reporting::Issue;
using reporting::IssueCode;
using reporting::Report;

std::size_t StageResult::model_tool_calls() const {
  return static_cast<std::size_t>(std::count_if(
      tool_calls.begin(), tool_calls.end(), [](const auto& r) { return r.origin == "model"; }));
}

std::vector<Issue> FormatRetriesExhaustedError::issues() const {
  std::vector<Issue> out;
  for (const auto& r : reports_) out.insert(out.end(), r.issues.begin(), r.issues.end());
  return out;
}

namespace {

bool is_gateway_error(Errc code) {
  return code == Errc::Timeout || code == Errc::Transport || code == Errc::ScriptMiss ||
         code == Errc::MalformedResponse;
}

std::vector<Report> extract_reports(const AgentSpec& spec, const std::string& text,
                                    const reporting::ValidationContext& ctx) {
  std::vector<Report> out;
  if (spec.reports.size() == 1) {
    out.push_back(reporting::make_report(spec.reports.front(), text, ctx));
    return out;
  }
  for (auto& [kind, body] : reporting::split_reports(text, spec.reports)) {
    if (body) {
      out.push_back(reporting::make_report(kind, *body, ctx));
    } else {
      const auto title = reporting::report_title(kind);
      out.push_back({kind, "", {}, {{IssueCode::MissingReport, "", "no '# " + title + "' title line"}}});
    }
  }
  return out;
}

}  // namespace

gateway::Message compose_task_message(const AgentSpec& spec, const core::Blackboard& board,
                                      const AgentRunOptions& options) {
  std::string text = "Inputs:\n";
  std::vector<gateway::ImagePart> images;
  for (const auto& key : spec.input_keys) {
    const auto entry = board.get(key);
    text += "\n### " + key + "\n";
    switch (entry.kind) {
      case core::EntryKind::Text:
        text += entry.content.get<std::string>() + "\n";
        break;
      case core::EntryKind::Structured:
        text += entry.content.dump(2) + "\n";
        break;
      case core::EntryKind::ImageRef: {
        const auto artifact = entry.content.at("artifact").get<std::string>();
        text += "(attached image: " + artifact + ")\n";
        if (options.artifact_bytes) {
          images.push_back(gateway::make_image_part(options.artifact_bytes(artifact)));
        }
        break;
      }
    }
  }
  text += "\nOutput format:\n";
  if (spec.reports.size() > 1) {
    text += "Write all of the following reports in one answer. Start each report with its "
            "title line, exactly as given.\n";
  }
  for (auto kind : spec.reports) {
    text += "\n# " + reporting::report_title(kind) + "\n";
    text += reporting::describe_template(reporting::template_for(kind));
  }
  auto msg = gateway::Message::user(std::move(text));
  for (auto& img : images) msg.parts.emplace_back(std::move(img));
  return msg;
}

std::string describe_issues(const std::vector<Report>& reports) {
  std::string out = "Your answer did not pass format validation:\n";
  for (const auto& r : reports) {
    for (const auto& i : r.issues) {
      out += "- " + reporting::report_title(r.kind) + ", " + reporting::to_string(i.code);
      if (!i.section.empty()) out += " [" + i.section + "]";
      out += ": " + i.message + "\n";
    }
  }
  out += "Rewrite the complete answer so that every listed problem is fixed.";
  return out;
}

StageResult run_agent(const AgentSpec& spec, core::Blackboard& board,
                      gateway::ModelBackend& gateway, toolkit::ToolRegistry& registry,
                      const AgentRunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto stage = to_string(spec.stage);
  for (const auto& key : spec.input_keys) {
    if (!board.contains(key)) {
      throw Error(Errc::MissingInput, stage + " needs '" + key + "'");
    }
  }

  StageResult result;
  result.stage = spec.stage;

  gateway::ModelRequest req;
  req.stage = stage;
  req.model_id = spec.sampling.model_id;
  req.temperature = spec.sampling.temperature;
  req.max_output_tokens = spec.sampling.max_output_tokens;
  for (const auto& id : spec.allowed_tools) {
    req.tools.push_back(registry.spec(id).to_function_schema());
  }
  req.messages.push_back(gateway::Message::system(spec.system_prompt));
  req.messages.push_back(compose_task_message(spec, board, options));

  int tool_rounds = 0;
  std::vector<Report> reports;
  for (int attempt = 0;; ++attempt) {
    result.attempts = attempt + 1;
    std::string final_text;
    for (;;) {
      auto resp = gateway.complete(req);
      ++result.model_calls;
      if (resp.tool_calls.empty()) {
        final_text = resp.text;
        break;
      }
      if (++tool_rounds > spec.max_tool_iterations) {
        throw Error(Errc::ToolIterationLimit,
                    stage + " exceeded " + std::to_string(spec.max_tool_iterations) +
                        " tool rounds");
      }
      for (const auto& call : resp.tool_calls) {
        if (!spec.allowed_tools.contains(call.tool_id)) {
          throw Error(Errc::DisallowedTool,
                      stage + " may not call '" + call.tool_id + "'");
        }
      }
      req.messages.push_back(gateway::Message::assistant(resp.text, resp.tool_calls));
      for (const auto& call : resp.tool_calls) {
        json out;
        try {
          out = registry.dispatch(call.tool_id, call.arguments, {stage, "model", call.id});
        } catch (const Error& e) {
          if (is_gateway_error(e.code())) throw;
          out = {{"error", e.what()}};
        } catch (const std::invalid_argument& e) {
          out = {{"error", e.what()}};
        }
        req.messages.push_back(gateway::Message::tool(call.id, out.dump()));
      }
    }

    reports = extract_reports(spec, final_text, options.validation);
    const bool ok = std::all_of(reports.begin(), reports.end(),
                                [](const Report& r) { return r.valid(); });
    if (ok) break;
    if (attempt >= spec.max_format_retries) {
      throw FormatRetriesExhaustedError(
          stage + " reports invalid after " + std::to_string(attempt + 1) + " attempts",
          std::move(reports));
    }
    req.messages.push_back(gateway::Message::assistant(final_text));
    req.messages.push_back(gateway::Message::user(describe_issues(reports)));
  }

  std::vector<core::BlackboardEntry> entries;
  for (const auto& r : reports) {
    core::BlackboardEntry e;
    e.key = report_key(r.kind);
    e.producer = stage;
    e.kind = core::EntryKind::Text;
    e.content = r.raw_text;
    entries.push_back(std::move(e));
  }
  if (options.finalize) {
    for (auto& e : options.finalize(reports)) {
      e.producer = stage;
      entries.push_back(std::move(e));
    }
  }
  for (const auto& e : entries) result.written_keys.push_back(e.key);
  board.put_all(std::move(entries));

  for (auto& rec : registry.log().records()) {
    if (rec.stage == stage) result.tool_calls.push_back(std::move(rec));
  }
  result.reports = std::move(reports);
  result.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace disasteller::orchestrator
