#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace disasteller::core {

/// EMS-98 building damage grade, G1 (slight) through G5 (destruction).
enum class DamageGrade : std::uint8_t { G1 = 1, G2, G3, G4, G5 };

inline constexpr std::array<DamageGrade, 5> kAllGrades = {
    DamageGrade::G1, DamageGrade::G2, DamageGrade::G3, DamageGrade::G4,
    DamageGrade::G5};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

constexpr int grade_level(DamageGrade g) { return static_cast<int>(g); }

/// Returns nullopt outside 1..5.
std::optional<DamageGrade> grade_from_level(int level);

/// Canonical token, e.g. "G3".
std::string to_string(DamageGrade g);

/// Short EMS-98 label, e.g. "substantial to heavy damage".
std::string_view grade_label(DamageGrade g);

/// Finds exactly one grade token ("G3", "g-3", "Grade 3", "grade-3") in
/// free text. Bare numbers are never taken as grades. Repeating the same
/// grade is fine; two distinct grades throw AmbiguousGrade, none throws
/// NoGradeToken.
DamageGrade parse_grade(std::string_view text);

/// Fixed marker palette used by the alert map.
Rgb grade_color(DamageGrade g);

}  // namespace disasteller::core
