#include "disasteller/core/grade.hpp"

#include <regex>
#include <set>

#include "disasteller/error.hpp"

namespace disasteller::core {

std::optional<DamageGrade> grade_from_level(int level) {
  if (level < 1 || level > 5) return std::nullopt;
  return static_cast<DamageGrade>(level);
}

std::string to_string(DamageGrade g) {
  return "G" + std::to_string(grade_level(g));
}

std::string_view grade_label(DamageGrade g) {
  switch (g) {
    case DamageGrade::G1: return "negligible to slight damage";
    case DamageGrade::G2: return "moderate damage";
    case DamageGrade::G3: return "substantial to heavy damage";
    case DamageGrade::G4: return "very heavy damage";
    case DamageGrade::G5: return "destruction";
  }
  return "";
}

DamageGrade parse_grade(std::string_view text) {
  // The leading group stands in for a lookbehind: the token must not be
  // glued to a preceding letter or digit ("EG3", "1G3").
  static const std::regex kToken(
      R"((?:^|[^A-Za-z0-9])(?:grade|g)[ \t-]?([0-9]+)(?![A-Za-z0-9]))",
      std::regex::icase | std::regex::ECMAScript);

  std::set<int> found;
  bool saw_invalid = false;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kToken);
       it != std::sregex_iterator(); ++it) {
    const std::string digits = (*it)[1].str();
    if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '5') {
      found.insert(digits[0] - '0');
    } else {
      saw_invalid = true;
    }
  }
  if (found.size() > 1) {
    throw Error(Errc::AmbiguousGrade,
                "more than one grade token in '" + s + "'");
  }
  if (found.empty()) {
    throw Error(Errc::NoGradeToken,
                saw_invalid ? "grade out of range G1..G5 in '" + s + "'"
                            : "no grade token in '" + s + "'");
  }
  return static_cast<DamageGrade>(*found.begin());
}

Rgb grade_color(DamageGrade g) {
  switch (g) {
    case DamageGrade::G1: return {46, 204, 64};
    case DamageGrade::G2: return {255, 220, 0};
    case DamageGrade::G3: return {255, 133, 27};
    case DamageGrade::G4: return {255, 65, 54};
    case DamageGrade::G5: return {128, 0, 32};
  }
  return {};
}

}  // namespace disasteller::core
