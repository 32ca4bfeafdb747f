#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "disasteller/core/digest.hpp"
#include "disasteller/core/scenario.hpp"
#include "disasteller/error.hpp"
#include "disasteller/gateway/backend.hpp"
#include "disasteller/toolkit/alert_map.hpp"
#include "disasteller/toolkit/gazetteer.hpp"
#include "disasteller/toolkit/guideline_index.hpp"
#include "disasteller/toolkit/interpret_image.hpp"
#include "disasteller/toolkit/registry.hpp"
#include "disasteller/toolkit/standard_tools.hpp"
#include "disasteller/toolkit/web_search.hpp"
#include "support/fixtures.hpp"
#include "support/map_probe.hpp"
#include "support/oracles.hpp"

using namespace disasteller;
using namespace disasteller::toolkit;
using core::DamageGrade;
using nlohmann::json;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::StageFailed;
}

std::string numbered_words(int n, const std::string& prefix = "w") {
  std::string s;
  for (int i = 0; i < n; ++i) s += prefix + std::to_string(i) + " ";
  return s;
}

std::vector<std::string> chunk_texts(const GuidelineIndex& index) {
  std::vector<std::string> out;
  for (const auto& c : index.chunks()) out.push_back(c.text);
  return out;
}

}  // namespace

TEST_CASE("term tokenizer matches the oracle rule") {
  for (const std::string s : {"Grade-3 damage, G4!", "EMS98 ÉCOLE naïve", "  ", "a_b c.d"}) {
    CHECK(tokenize_terms(s) == oracle::terms(s));
  }
}

TEST_CASE("chunking arithmetic") {
  using R = std::vector<std::pair<int, int>>;
  CHECK(chunk_ranges(1000, {300, 50}) == R{{0, 300}, {250, 550}, {500, 800}, {750, 1000}});
  CHECK(chunk_ranges(300, {300, 50}) == R{{0, 300}});
  CHECK(chunk_ranges(10, {300, 50}) == R{{0, 10}});
  CHECK(chunk_ranges(301, {300, 50}) == R{{0, 300}, {250, 301}});

  GuidelineIndex index;
  index.add_document("doc", numbered_words(1000));
  REQUIRE(index.chunks().size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(index.chunks()[static_cast<std::size_t>(i)].chunk_id == i);
    CHECK(index.chunks()[static_cast<std::size_t>(i)].token_count <= 300);
    CHECK(index.chunks()[static_cast<std::size_t>(i)].text.rfind("w" + std::to_string(250 * i) + " ", 0) == 0);
  }
  CHECK(index.chunks()[1].ref() == "doc#1");
}

TEST_CASE("chunk property: windows cover the document with the stated overlap") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int size = 1 + static_cast<int>(rng() % 50);
    const int overlap = static_cast<int>(rng() % static_cast<unsigned>(size));
    const int n = 1 + static_cast<int>(rng() % 400);
    const auto ranges = chunk_ranges(n, {size, overlap});
    REQUIRE_FALSE(ranges.empty());
    CHECK(ranges.front().first == 0);
    CHECK(ranges.back().second == n);
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      CHECK(ranges[i].second - ranges[i].first <= size);
      if (i > 0) CHECK(ranges[i].first == ranges[i - 1].first + size - overlap);
      if (i + 1 < ranges.size()) CHECK(ranges[i].second < n);
    }
  }
}

TEST_CASE("ingestion errors and determinism") {
  fixtures::TempDir dir("ingest");
  fixtures::write_text(dir.path() / "empty.txt", "  \n\t ");
  CHECK(code_of([&] { ingest_guideline(dir.str("empty.txt")); }) == Errc::EmptyDocument);
  CHECK(code_of([&] { ingest_guideline(dir.str("missing.txt")); }) == Errc::IoError);
  const auto path = (fixtures::data_dir() / "ems98_summary.txt").string();
  const auto a = ingest_guideline(path);
  const auto b = ingest_guideline(path);
  CHECK(a.chunks_json() == b.chunks_json());
  CHECK(a.stats_json() == b.stats_json());
  CHECK(a.chunks().front().doc_id == "ems98_summary");
}

TEST_CASE("index persistence round trip and refusal to overwrite") {
  fixtures::TempDir dir("index");
  const auto index = ingest_guideline((fixtures::data_dir() / "ems98_summary.txt").string());
  save_index(index, dir.str("idx"));
  CHECK(code_of([&] { save_index(index, dir.str("idx")); }) == Errc::IoError);
  const auto back = load_index(dir.str("idx"));
  CHECK(back.chunks_json() == index.chunks_json());
  CHECK(back.stats_json() == index.stats_json());
  const auto hits_a = index.search("reinforced concrete collapse", 5);
  const auto hits_b = back.search("reinforced concrete collapse", 5);
  REQUIRE(hits_a.size() == hits_b.size());
  for (std::size_t i = 0; i < hits_a.size(); ++i) {
    CHECK(hits_a[i].ordinal == hits_b[i].ordinal);
    CHECK(hits_a[i].score == hits_b[i].score);
  }
}

TEST_CASE("bm25 basics") {
  GuidelineIndex index({5, 0});
  index.add_document("d", "alpha beta gamma delta epsilon zeta eta theta iota kappa unique lambda mu nu xi");
  REQUIRE(index.chunks().size() == 3);
  const auto hits = index.search("unique", 3);
  REQUIRE(hits.size() == 3);
  CHECK(hits[0].ordinal == 2);
  CHECK(hits[0].score > 0);
  CHECK(hits[1].score == 0);
  CHECK(hits[1].ordinal == 0);  // zero-score ties by ordinal
  CHECK(hits[2].ordinal == 1);
  CHECK(index.search("unique unique UNIQUE", 1)[0].score == hits[0].score);
  CHECK(code_of([&] { index.search(" ,;: ", 3); }) == Errc::EmptyQuery);
  CHECK(index.search("alpha", 10).size() == 3);
  CHECK(bm25_idf(10, 1) == doctest::Approx(std::log(1 + 9.5 / 1.5)));
}

TEST_CASE("bm25 matches the brute-force oracle on the guideline and random corpora") {
  GuidelineIndex index({40, 10});
  index.add_document("ems98", core::read_text_file((fixtures::data_dir() / "ems98_summary.txt").string()));
  std::mt19937 rng(17);
  const std::vector<std::string> vocab = {"grade", "damage", "masonry", "concrete", "collapse",
                                          "fire", "bridge", "crack", "wall", "timber", "class",
                                          "intensity", "roof", "column", "debris", "shelter"};
  for (int d = 0; d < 8; ++d) {
    std::string text;
    const int n = 200 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) text += vocab[rng() % vocab.size()] + " ";
    index.add_document("rand" + std::to_string(d), text);
  }
  REQUIRE(index.chunks().size() >= 50);
  const auto texts = chunk_texts(index);
  for (int q = 0; q < 40; ++q) {
    std::string query;
    const int len = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) query += vocab[rng() % vocab.size()] + " ";
    CAPTURE(query);
    const auto expect = oracle::bm25_rank(texts, query);
    const auto got = index.search(query, 10);
    REQUIRE(got.size() == 10);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].ordinal == expect[i].ordinal);
      CHECK(std::fabs(got[i].score - static_cast<double>(expect[i].score)) <= 1e-9);
    }
  }
}

TEST_CASE("damage grade classification query finds a grade chunk") {
  const auto index = ingest_guideline((fixtures::data_dir() / "ems98_summary.txt").string(), {60, 10});
  const auto texts = chunk_texts(index);
  const auto expect = oracle::bm25_rank(texts, "damage grade classification");
  const auto got = index.search("damage grade classification", 1);
  REQUIRE(got.size() == 1);
  CHECK(got[0].ordinal == expect[0].ordinal);
  const auto terms = oracle::terms(index.chunks()[got[0].ordinal].text);
  CHECK(std::find(terms.begin(), terms.end(), "grade") != terms.end());
}

TEST_CASE("fixture web search") {
  auto provider = FixtureSearchProvider::from_file((fixtures::data_dir() / "web_search.json").string());
  const auto three = provider.search("noto earthquake 2024 casualties", 5);
  REQUIRE(three.size() == 3);
  CHECK(three[0].title == "2024 Noto earthquake - overview of damage");
  CHECK(provider.search("  Noto Earthquake, 2024 casualties ", 1).size() == 1);
  CHECK(provider.search("noto earthquake 2024 casualties", 1)[0].url == three[0].url);
  CHECK(code_of([&] { provider.search("unknown query", 3); }) == Errc::NoFixture);
  FixtureSearchProvider empty(std::map<std::string, std::vector<SearchResult>>{{"nothing", {}}});
  CHECK(empty.search("nothing", 3).empty());
  CHECK(code_of([] { FixtureSearchProvider::from_json(json::array()); }) == Errc::ConfigError);
}

TEST_CASE("live web search maps network failures") {
  LiveSearchProvider live({"http://127.0.0.1:1/search", "", std::chrono::milliseconds(300)});
  CHECK(code_of([&] { live.search("x", 3); }) == Errc::ProviderUnavailable);
}

TEST_CASE("gazetteer resolution") {
  Gazetteer g({{"Hama Street", {"Hama-dori"}, 120, 340}, {"Concrete Bridge", {}, 5, 6}});
  CHECK(g.resolve("Hama Street") == PixelCoord{120, 340});
  CHECK(g.resolve("  hama STREET ") == PixelCoord{120, 340});
  CHECK(g.resolve("hama-dori") == PixelCoord{120, 340});
  CHECK(code_of([&] { g.resolve("Nonexistent Plaza"); }) == Errc::UnresolvedLocation);
  CHECK(code_of([&] { g.resolve("Hama"); }) == Errc::UnresolvedLocation);
  CHECK_FALSE(g.try_resolve("Bridge").has_value());
  CHECK(code_of([] { Gazetteer({{"Hama Street", {}, 1, 1}, {"hama  street.", {}, 2, 2}}); }) ==
        Errc::ScenarioInvalid);
  const auto wajima = Gazetteer::load((fixtures::data_dir() / "gazetteer.json").string());
  CHECK(wajima.resolve("North Asaichi Street") == PixelCoord{330, 150});
}

TEST_CASE("alert map pixels") {
  const core::Raster base(800, 600, {200, 200, 200});
  SUBCASE("zero annotations is the identity") {
    CHECK(annotate_map(base, {}) == base);
  }
  SUBCASE("every grade's disc center has the palette colour") {
    std::vector<MapAnnotation> anns;
    int x = 150;
    for (auto g : core::kAllGrades) {
      anns.push_back({core::to_string(g), g, x, 340});
      x += 120;
    }
    const auto copy = base;
    const auto out = annotate_map(base, anns);
    CHECK(base == copy);
    CHECK(out.width() == 800);
    CHECK(out.height() == 600);
    for (const auto& a : anns) {
      CHECK(out.at(a.x, a.y) == core::grade_color(a.grade));
      CHECK(out.at(a.x + 7, a.y) == core::grade_color(a.grade));
      CHECK(out.at(a.x + 13, a.y) == core::Rgb{0, 0, 0});
      CHECK(out.at(a.x, a.y - 13) == core::Rgb{0, 0, 0});
      CHECK(fixtures::changed_pixels(base, out, a.x + 16, a.y - 10, 30, 20) > 0);  // label
    }
    CHECK(fixtures::count_marker_discs(out) == 5);
    const auto corner = choose_legend_corner(base, anns);
    const auto box = legend_box(corner, 800, 600);
    CHECK(box.width == 132);
    CHECK(box.height == 104);
    CHECK(fixtures::changed_pixels(base, out, box.x, box.y, box.width, box.height) > 1000);
  }
  SUBCASE("single annotation") {
    const std::vector<MapAnnotation> one = {{"Hama Street", DamageGrade::G4, 120, 340}};
    CHECK(annotate_map(base, one).at(120, 340) == core::Rgb{255, 65, 54});
  }
  SUBCASE("annotation at the map border") {
    const std::vector<MapAnnotation> edge = {{"corner", DamageGrade::G2, 0, 599}};
    CHECK(annotate_map(base, edge).at(0, 599) == core::grade_color(DamageGrade::G2));
  }
  SUBCASE("out of bounds names the annotation") {
    const std::vector<MapAnnotation> bad = {{"ok", DamageGrade::G1, 10, 10},
                                            {"Far Away", DamageGrade::G2, 800, 10}};
    try {
      annotate_map(base, bad);
      FAIL("expected OutOfBounds");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OutOfBounds);
      CHECK(std::string(e.what()).find("Far Away") != std::string::npos);
    }
  }
}

TEST_CASE("legend corner choice") {
  core::Raster noisy(400, 300, {128, 128, 128});
  std::mt19937 rng(1);
  for (int y = 0; y < 300; ++y) {
    for (int x = 0; x < 400; ++x) {
      if (!(x > 200 && y < 150)) {
        const auto v = static_cast<std::uint8_t>(rng() % 256);
        noisy.set(x, y, {v, v, v});
      }
    }
  }
  const std::vector<MapAnnotation> none_near = {{"mid", DamageGrade::G3, 200, 150}};
  CHECK(choose_legend_corner(noisy, none_near) == Corner::TopRight);
  const std::vector<MapAnnotation> on_tr = {{"tr", DamageGrade::G3, 330, 50}};
  CHECK(choose_legend_corner(noisy, on_tr) != Corner::TopRight);
  const core::Raster flat(400, 300);
  CHECK(choose_legend_corner(flat, none_near) == Corner::TopLeft);
  const std::vector<MapAnnotation> on_tl = {{"tl", DamageGrade::G1, 40, 40}};
  CHECK(choose_legend_corner(flat, on_tl) == Corner::TopRight);
}

TEST_CASE("registry dispatch contract") {
  auto log = std::make_shared<ToolCallLog>();
  ToolRegistry reg(log);
  reg.register_tool({"echo", "echo", {{"text", ArgType::String, true, ""}, {"n", ArgType::Integer, false, ""}}},
                    [](const json& a) { return json{{"echo", a["text"]}}; });
  reg.register_tool({"boom", "fails", {}}, [](const json&) -> json {
    throw Error(Errc::NoFixture, "nothing");
  });
  CHECK(code_of([&] { reg.register_tool({"echo", "", {}}, [](const json&) { return json(); }); }) ==
        Errc::DuplicateTool);

  CHECK(reg.dispatch("echo", {{"text", "hi"}}, {"expert", "model", "c1"})["echo"] == "hi");
  CHECK(code_of([&] { reg.dispatch("no_such_tool", json::object()); }) == Errc::UnknownTool);
  try {
    reg.dispatch("echo", {{"text", 3}});
    FAIL("expected ArgumentError");
  } catch (const ArgumentError& e) {
    CHECK(e.field() == "text");
  }
  CHECK(code_of([&] { reg.dispatch("echo", {{"text", "a"}, {"extra", 1}}); }) ==
        Errc::ArgumentSchemaViolation);
  CHECK(code_of([&] { reg.dispatch("echo", json::object()); }) == Errc::ArgumentSchemaViolation);
  CHECK(code_of([&] { reg.dispatch("echo", {{"text", "a"}, {"n", 1.5}}); }) ==
        Errc::ArgumentSchemaViolation);
  CHECK(code_of([&] { reg.dispatch("boom", json::object()); }) == Errc::NoFixture);

  const auto records = log->records();
  REQUIRE(records.size() == 7);
  CHECK(records[0].ok);
  CHECK(records[0].stage == "expert");
  CHECK(records[0].call_id == "c1");
  for (std::size_t i = 1; i < records.size(); ++i) {
    CHECK_FALSE(records[i].ok);
    CHECK_FALSE(records[i].error.empty());
    CHECK(records[i].sequence == i);
  }
  CHECK(to_json(records[0], false).contains("duration_ms") == false);
}

TEST_CASE("tool call log accepts concurrent dispatches") {
  ToolRegistry reg;
  reg.register_tool({"noop", "", {}}, [](const json&) { return json::object(); });
  std::vector<std::thread> threads;
  for (int t = 0; t < 6; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 100; ++i) reg.dispatch("noop", json::object());
    });
  }
  for (auto& th : threads) th.join();
  const auto records = reg.log().records();
  REQUIRE(records.size() == 600);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i].sequence == i);
}

TEST_CASE("interpret_image") {
  const auto png = core::read_file((fixtures::data_dir() / "images" / "site_01.png").string());
  gateway::ScriptedBackend backend(
      {{"tool:interpret_image", 0, std::nullopt,
        gateway::ModelResponse::final_text("Collapsed timber facade...")}});
  CHECK(interpret_image(backend, png, "Describe the damage.") == "Collapsed timber facade...");

  gateway::ScriptedBackend untouched({});
  const core::Bytes corrupt = {0x89, 'P', 'N', 'G', 0, 0};
  CHECK(code_of([&] { interpret_image(untouched, corrupt, "x"); }) == Errc::UndecodableImage);
  CHECK_THROWS_AS(interpret_image(untouched, png, "  "), std::invalid_argument);
  CHECK(untouched.calls() == 0);
}

namespace {

struct StandardToolsHarness {
  core::DisasterScenario scenario = core::load_scenario(fixtures::manifest());
  GuidelineIndex index = ingest_guideline(scenario.guideline_path);
  FixtureSearchProvider search =
      FixtureSearchProvider::from_file((fixtures::data_dir() / "web_search.json").string());
  Gazetteer gazetteer = Gazetteer::load(scenario.gazetteer_path);
  gateway::ScriptedBackend gateway{{{"tool:interpret_image", 0, std::nullopt,
                                     gateway::ModelResponse::final_text("a hall")}}};
  std::vector<AlertMapOutput> maps;
  ToolRegistry registry;

  StandardToolsHarness() {
    StandardToolContext ctx;
    ctx.scenario = &scenario;
    ctx.gateway = &gateway;
    ctx.index = &index;
    ctx.search = &search;
    ctx.gazetteer = &gazetteer;
    ctx.on_alert_map = [this](const AlertMapOutput& m) { maps.push_back(m); };
    register_standard_tools(registry, ctx);
  }
};

}  // namespace

TEST_CASE("standard tools") {
  StandardToolsHarness h;
  CHECK(h.registry.tool_ids() ==
        std::vector<std::string>{"annotate_map", "file_search", "interpret_image", "web_search"});

  const auto fs = h.registry.dispatch("file_search", {{"query", "masonry walls collapse"}, {"k", 3}});
  CHECK(fs["results"].size() == 3);
  CHECK(fs["results"][0]["ref"].get<std::string>().rfind("ems98_summary#", 0) == 0);
  CHECK(h.registry.dispatch("file_search", {{"query", "grade"}})["results"].size() == 3);

  const auto ws = h.registry.dispatch("web_search", {{"query", "noto earthquake 2024 casualties"}, {"k", 2}});
  CHECK(ws["results"].size() == 2);

  const auto ii = h.registry.dispatch("interpret_image", {{"image", "site_01"}, {"instruction", "Describe."}});
  CHECK(ii["location_name"] == "Wajima Drama Memorial Hall");
  CHECK(ii["description"] == "a hall");
  CHECK(code_of([&] {
          h.registry.dispatch("interpret_image", {{"image", "site_99"}, {"instruction", "x"}});
        }) == Errc::ArgumentSchemaViolation);

  try {
    h.registry.dispatch("annotate_map",
                        {{"annotations", {{{"location_name", "Hama Street"}, {"grade", "G7"}}}}});
    FAIL("expected ArgumentError");
  } catch (const ArgumentError& e) {
    CHECK(e.field() == "annotations[0].grade");
  }
  const auto am = h.registry.dispatch(
      "annotate_map", {{"annotations",
                        {{{"location_name", "hama street"}, {"grade", "G4"}},
                         {{"location_name", "Nonexistent Plaza"}, {"grade", "G1"}}}}});
  CHECK(am["annotated"].size() == 1);
  CHECK(am["annotated"][0]["x"] == 235);
  CHECK(am["unresolved"] == json::array({"Nonexistent Plaza"}));
  REQUIRE(h.maps.size() == 1);
  const auto img = core::decode_image(h.maps[0].png);
  CHECK(img.at(235, 200) == core::grade_color(DamageGrade::G4));
}
