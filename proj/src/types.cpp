#include "smad/types.hpp"

#include <stdexcept>
#include <string>

namespace smad {

std::string_view to_string(AntiPattern pattern) {
    return pattern == AntiPattern::GodClass ? "god-class" : "feature-envy";
}

std::string_view to_string(Tool tool) {
    switch (tool) {
    case Tool::RuleCard:
        return "RULE_CARD";
    case Tool::Hist:
        return "HIST";
    case Tool::JDeodorant:
        return "JDEODORANT";
    }
    return "?";
}

AntiPattern parse_anti_pattern(std::string_view text) {
    if (text == "god-class") {
        return AntiPattern::GodClass;
    }
    if (text == "feature-envy") {
        return AntiPattern::FeatureEnvy;
    }
    throw std::invalid_argument("unknown anti-pattern '" + std::string(text) + "'");
}

Tool parse_tool(std::string_view text) {
    for (Tool tool : kAllTools) {
        if (to_string(tool) == text) {
            return tool;
        }
    }
    throw std::invalid_argument("unknown tool '" + std::string(text) + "'");
}

} // namespace smad
