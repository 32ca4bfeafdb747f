#include "disasteller/toolkit/standard_tools.hpp"

#include <memory>

#include "disasteller/core/digest.hpp"
#include "disasteller/error.hpp"

using nlohmann::json;

namespace disasteller::toolkit {

namespace {

int requested_k(const json& args, int fallback) {
  if (!args.contains("k")) return fallback;
  const int k = args["k"].get<int>();
  if (k < 1) throw ArgumentError("k", "must be a positive integer");
  return k;
}

}  // namespace

std::vector<ToolSpec> standard_tool_specs() {
  return {
      {tool_ids::kInterpretImage,
       "Describe the visible disaster damage in one scenario image. 'image' is a "
       "site_id or 'global_map'.",
       {{"image", ArgType::String, true, "site_id of an on-site photo, or 'global_map'"},
        {"instruction", ArgType::String, true, "what to look for"}}},
      {tool_ids::kFileSearch,
       "Search the technical guideline manual (EMS-98) and return the most relevant "
       "passages with their chunk references.",
       {{"query", ArgType::String, true, "search terms"},
        {"k", ArgType::Integer, false, "number of passages"}}},
      {tool_ids::kWebSearch,
       "Search the internet for historical disaster records and response data.",
       {{"query", ArgType::String, true, "search terms"},
        {"k", ArgType::Integer, false, "number of results"}}},
      {tool_ids::kAnnotateMap,
       "Mark damage grades at named locations on the global map to produce the alert map.",
       {{"annotations", ArgType::AnnotationList, true,
         "one entry per location with its EMS-98 grade"}}},
  };
}

void register_standard_tools(ToolRegistry& registry, StandardToolContext context) {
  auto ctx = std::make_shared<StandardToolContext>(std::move(context));
  auto specs = standard_tool_specs();

  registry.register_tool(specs[0], [ctx](const json& args) -> json {
    const auto image = args["image"].get<std::string>();
    std::string path;
    std::string location;
    if (image == kGlobalMapImageId) {
      path = ctx->scenario->global_map_path;
      location = ctx->scenario->region_name;
    } else if (const auto* site = ctx->scenario->find_site(image)) {
      path = site->image_path;
      location = site->location_name;
    } else {
      throw ArgumentError("image", "unknown image id '" + image + "'");
    }
    const auto bytes = core::read_file(path);
    auto text = interpret_image(*ctx->gateway, bytes, args["instruction"].get<std::string>(),
                                ctx->interpret);
    return {{"image", image}, {"location_name", location}, {"description", std::move(text)}};
  });

  registry.register_tool(specs[1], [ctx](const json& args) -> json {
    const int k = requested_k(args, ctx->default_k);
    json results = json::array();
    for (const auto& hit : ctx->index->search(args["query"].get<std::string>(), k)) {
      const auto& chunk = ctx->index->chunks()[hit.ordinal];
      results.push_back({{"ref", chunk.ref()}, {"score", hit.score}, {"text", chunk.text}});
    }
    return {{"results", std::move(results)}};
  });

  registry.register_tool(specs[2], [ctx](const json& args) -> json {
    const int k = requested_k(args, ctx->default_k);
    json results = json::array();
    for (const auto& r : ctx->search->search(args["query"].get<std::string>(), k)) {
      results.push_back(to_json(r));
    }
    return {{"results", std::move(results)}};
  });

  registry.register_tool(specs[3], [ctx](const json& args) -> json {
    AlertMapOutput out;
    json annotated = json::array();
    for (const auto& a : args["annotations"]) {
      const auto name = a["location_name"].get<std::string>();
      const auto grade = core::parse_grade(a["grade"].get<std::string>());
      if (auto at = ctx->gazetteer->try_resolve(name)) {
        out.annotated.push_back({name, grade, at->x, at->y});
        annotated.push_back(
            {{"location_name", name}, {"grade", core::to_string(grade)}, {"x", at->x}, {"y", at->y}});
      } else {
        out.unresolved.push_back(name);
      }
    }
    const auto base = core::load_image(ctx->scenario->global_map_path);
    out.png = core::encode_png(annotate_map(base, out.annotated, ctx->marker_style));
    if (ctx->on_alert_map) ctx->on_alert_map(out);
    return {{"annotated", std::move(annotated)},
            {"unresolved", out.unresolved},
            {"artifact", "alert_map.png"}};
  });
}

}  // namespace disasteller::toolkit
