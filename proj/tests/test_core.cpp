#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "disasteller/core/blackboard.hpp"
#include "disasteller/core/digest.hpp"
#include "disasteller/core/grade.hpp"
#include "disasteller/core/raster.hpp"
#include "disasteller/core/scenario.hpp"
#include "disasteller/core/text.hpp"
#include "disasteller/error.hpp"
#include "support/fixtures.hpp"

using namespace disasteller;
using namespace disasteller::core;

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

BlackboardEntry text_entry(const std::string& key, const std::string& text) {
  BlackboardEntry e;
  e.key = key;
  e.producer = key.substr(0, key.find('.'));
  e.kind = EntryKind::Text;
  e.content = text;
  return e;
}

}  // namespace

TEST_CASE("parse_grade accepts the documented spellings") {
  CHECK(parse_grade("G3") == DamageGrade::G3);
  CHECK(parse_grade("Grade 5 (very heavy damage)") == DamageGrade::G5);
  CHECK(parse_grade("grade-2") == DamageGrade::G2);
  CHECK(parse_grade("g-4 at the bridge") == DamageGrade::G4);
  CHECK(parse_grade("GRADE 1") == DamageGrade::G1);
  CHECK(parse_grade("- Hama Street: G4 (very heavy damage)") == DamageGrade::G4);
  CHECK(parse_grade("G2, consistent with G2 elsewhere") == DamageGrade::G2);
}

TEST_CASE("parse_grade rejects missing, bare and conflicting tokens") {
  CHECK(code_of([] { parse_grade("damage between G2 and G4"); }) == Errc::AmbiguousGrade);
  CHECK(code_of([] { parse_grade("3"); }) == Errc::NoGradeToken);
  CHECK(code_of([] { parse_grade("no damage visible"); }) == Errc::NoGradeToken);
  CHECK(code_of([] { parse_grade("G9"); }) == Errc::NoGradeToken);
  CHECK(code_of([] { parse_grade("G35"); }) == Errc::NoGradeToken);
  CHECK(code_of([] { parse_grade("building 3"); }) == Errc::NoGradeToken);
  CHECK(code_of([] { parse_grade("EMS-98 grading"); }) == Errc::NoGradeToken);
  CHECK(code_of([] { parse_grade("G3x"); }) == Errc::NoGradeToken);
}

TEST_CASE("parse_grade inverts every supported formatting") {
  for (auto g : kAllGrades) {
    const auto n = std::to_string(grade_level(g));
    for (const std::string& s : {"G" + n, "g" + n, "G-" + n, "G " + n, "Grade " + n,
                                 "grade-" + n, "GRADE" + n, "Site X: Grade " + n + ".",
                                 to_string(g) + " (" + std::string(grade_label(g)) + ")"}) {
      CAPTURE(s);
      CHECK(parse_grade(s) == g);
    }
  }
}

TEST_CASE("grade palette is fixed and injective") {
  CHECK(grade_color(DamageGrade::G1) == Rgb{46, 204, 64});
  CHECK(grade_color(DamageGrade::G2) == Rgb{255, 220, 0});
  CHECK(grade_color(DamageGrade::G3) == Rgb{255, 133, 27});
  CHECK(grade_color(DamageGrade::G4) == Rgb{255, 65, 54});
  CHECK(grade_color(DamageGrade::G5) == Rgb{128, 0, 32});
  for (auto a : kAllGrades) {
    for (auto b : kAllGrades) {
      if (a != b) CHECK_FALSE(grade_color(a) == grade_color(b));
    }
  }
  CHECK(grade_from_level(0) == std::nullopt);
  CHECK(grade_from_level(6) == std::nullopt);
  CHECK(grade_from_level(3) == DamageGrade::G3);
  CHECK(DamageGrade::G1 < DamageGrade::G5);
}

TEST_CASE("text helpers") {
  CHECK(trim("  a b \n") == "a b");
  CHECK(normalize_name("  Wajima   Drama-Memorial Hall! ") == "wajima dramamemorial hall");
  CHECK(split_lines("a\r\nb\n\nc") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split_whitespace(" a\tb\n c ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(contains_icase("Hama STREET", "hama street"));
}

TEST_CASE("digest and base64") {
  CHECK(sha256_hex(std::string_view("abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const Bytes raw = {0, 1, 2, 250, 255, 10};
  CHECK(base64_encode(raw) == "AAEC+v8K");
  CHECK(base64_decode("AAEC+v8K") == raw);
  CHECK(code_of([] { base64_decode("!!notbase64"); }) == Errc::MalformedResponse);
}

TEST_CASE("write_new_file never overwrites") {
  fixtures::TempDir dir("core");
  const auto p = dir.str("x.txt");
  write_new_file(p, std::string_view("one"));
  CHECK(code_of([&] { write_new_file(p, std::string_view("two")); }) == Errc::IoError);
  CHECK(read_text_file(p) == "one");
  CHECK(code_of([&] { read_file(dir.str("missing")); }) == Errc::IoError);
}

TEST_CASE("raster encode/decode round trip and sniffing") {
  Raster img(7, 5, {10, 20, 30});
  img.set(3, 2, {255, 0, 0});
  const auto png = encode_png(img);
  CHECK(sniff_media_type(png) == "image/png");
  CHECK(decode_image(png) == img);
  const Bytes junk = {1, 2, 3, 4};
  CHECK(sniff_media_type(junk).empty());
  CHECK(code_of([&] { decode_image(junk); }) == Errc::UndecodableImage);
  const auto small = fit_within(Raster(400, 100), 100);
  CHECK(small.width() == 100);
  CHECK(small.height() == 25);
  CHECK(fit_within(img, 100) == img);
}

TEST_CASE("blackboard round trip, immutability and sequence") {
  Blackboard bb;
  auto e = text_entry("expert.summary", "hello");
  bb.put("expert.summary", e);
  const auto got = bb.get("expert.summary");
  CHECK(got.content == e.content);
  CHECK(got.producer == "expert");
  CHECK(code_of([&] { bb.put("expert.summary", text_entry("expert.summary", "other")); }) ==
        Errc::DuplicateKey);
  CHECK(bb.get("expert.summary").content == "hello");
  CHECK(code_of([&] { bb.get("absent"); }) == Errc::MissingKey);

  Blackboard three;
  for (const char* k : {"a.x", "b.y", "c.z"}) three.put(k, text_entry(k, k));
  const auto snap = three.snapshot();
  REQUIRE(snap.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(snap[i].sequence == i);
}

TEST_CASE("put_all is all or none") {
  Blackboard bb;
  bb.put("a.one", text_entry("a.one", "1"));
  CHECK(code_of([&] {
          bb.put_all({text_entry("a.two", "2"), text_entry("a.one", "dup")});
        }) == Errc::DuplicateKey);
  CHECK_FALSE(bb.contains("a.two"));
  CHECK(bb.size() == 1);
  CHECK(code_of([&] {
          bb.put_all({text_entry("a.three", "3"), text_entry("a.three", "3")});
        }) == Errc::DuplicateKey);
  CHECK(bb.size() == 1);
  bb.put_all({text_entry("a.two", "2"), text_entry("a.three", "3")});
  CHECK(bb.size() == 3);
}

TEST_CASE("blackboard is append-only under concurrent writers") {
  Blackboard bb;
  constexpr int kThreads = 8;
  constexpr int kPerThread = 200;
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < kPerThread; ++i) {
        // Every other key collides with another thread's key.
        const auto key = "s" + std::to_string(i % 2 == 0 ? t : 0) + "." + std::to_string(i);
        try {
          bb.put(key, text_entry(key, key));
          ++ok;
        } catch (const Error& e) {
          CHECK(e.code() == Errc::DuplicateKey);
        }
        (void)bb.snapshot();
      }
    });
  }
  for (auto& th : threads) th.join();
  const auto snap = bb.snapshot();
  CHECK(static_cast<int>(snap.size()) == ok.load());
  std::set<std::string> keys;
  for (std::size_t i = 0; i < snap.size(); ++i) {
    CHECK(snap[i].sequence == i);
    CHECK(snap[i].content == snap[i].key);
    keys.insert(snap[i].key);
  }
  CHECK(keys.size() == snap.size());
}

TEST_CASE("entry kinds serialize by name") {
  CHECK(to_string(EntryKind::ImageRef) == "image-ref");
  CHECK(entry_kind_from_string("structured") == EntryKind::Structured);
  auto e = text_entry("a.b", "c");
  const auto j = to_json(e, false);
  CHECK(j["kind"] == "text");
  CHECK_FALSE(j.contains("created_at_ms"));
}

TEST_CASE("scenario loading") {
  const auto sc = load_scenario(fixtures::manifest());
  CHECK(sc.scenario_id == "wajima-2024");
  REQUIRE(sc.sites.size() == 6);
  CHECK(sc.sites[0].location_name == "Wajima Drama Memorial Hall");
  CHECK(sc.sites[5].location_name == "South Central Asaichi Street");
  CHECK(sc.map_width == 800);
  CHECK(sc.map_height == 600);
  for (const auto& s : sc.sites) {
    CHECK(std::filesystem::path(s.image_path).is_absolute());
    CHECK(s.width >= 1);
  }
  CHECK(sc.find_site("site_03")->location_name == "Concrete Bridge");
  CHECK(sc.find_site("nope") == nullptr);
  CHECK(sites_to_json(sc)["sites"].size() == 6);
}

TEST_CASE("scenario validation failures") {
  fixtures::TempDir dir("scenario");
  fixtures::copy_scenario(dir.path() / "s");
  const auto manifest = (dir.path() / "s" / "manifest.json").string();

  SUBCASE("missing image") {
    std::filesystem::remove(dir.path() / "s" / "images" / "site_02.jpg");
    CHECK(code_of([&] { load_scenario(manifest); }) == Errc::ScenarioInvalid);
  }
  SUBCASE("missing global map") {
    std::filesystem::remove(dir.path() / "s" / "images" / "wajima_map.png");
    CHECK(code_of([&] { load_scenario(manifest); }) == Errc::ScenarioInvalid);
  }
  SUBCASE("undecodable image") {
    fixtures::write_text(dir.path() / "s" / "images" / "site_01.png", "not an image");
    CHECK(code_of([&] { load_scenario(manifest); }) == Errc::ScenarioInvalid);
  }
  SUBCASE("duplicate site id") {
    auto j = fixtures::read_json(manifest);
    j["sites"][1]["site_id"] = "site_01";
    std::filesystem::remove(manifest);
    fixtures::write_text(manifest, j.dump());
    CHECK(code_of([&] { load_scenario(manifest); }) == Errc::ScenarioInvalid);
  }
  SUBCASE("no sites") {
    auto j = fixtures::read_json(manifest);
    j["sites"] = nlohmann::json::array();
    std::filesystem::remove(manifest);
    fixtures::write_text(manifest, j.dump());
    CHECK(code_of([&] { load_scenario(manifest); }) == Errc::ScenarioInvalid);
  }
  SUBCASE("file removed after load") {
    const auto sc = load_scenario(manifest);
    std::filesystem::remove(dir.path() / "s" / "gazetteer.json");
    CHECK(code_of([&] { validate_scenario(sc); }) == Errc::ScenarioInvalid);
  }
}
