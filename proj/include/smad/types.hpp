#pragma once

#include <array>
#include <string>
#include <string_view>

namespace smad {

enum class AntiPattern { GodClass, FeatureEnvy };

/// Detector families, in the fixed order used for every tie-break.
enum class Tool { RuleCard = 0, Hist = 1, JDeodorant = 2 };

inline constexpr std::array<Tool, 3> kAllTools{Tool::RuleCard, Tool::Hist, Tool::JDeodorant};

std::string_view to_string(AntiPattern pattern);
std::string_view to_string(Tool tool);
/// Accepts "god-class" / "feature-envy". Throws std::invalid_argument otherwise.
AntiPattern parse_anti_pattern(std::string_view text);
Tool parse_tool(std::string_view text);

} // namespace smad
