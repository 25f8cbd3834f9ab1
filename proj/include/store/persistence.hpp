#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "store/model.hpp"

namespace store::persistence {

inline constexpr std::string_view kFileExtension = ".store.json";

// File representation of single entities; the CLI and API reuse it.
nlohmann::json encode(const Goal& goal);
nlohmann::json encode(const Stakeholder& stakeholder);
nlohmann::json encode(const Agreement& agreement);
nlohmann::json encode(const Asset& asset);
nlohmann::json encode(const AttackPoint& point);
nlohmann::json encode(const Threat& threat);
nlohmann::json encode(const RiskAssessment& assessment);
nlohmann::json encode(const SecurityRequirement& requirement);
nlohmann::json encode(const ValidationRecord& record);
nlohmann::json encode(const Entity& entity);

nlohmann::json project_to_json(const Project& project);
// Throws ParseError on structural problems. Does not validate invariants.
Project project_from_json(const nlohmann::json& payload);

// Canonical file bytes: sorted keys, entities in insertion order, two-space
// indent, LF endings, trailing newline.
std::string serialize(const Project& project);
Project deserialize(std::string_view bytes);

// Validates, serializes and writes atomically (temp file then rename).
// Returns the bytes written.
std::string save(const Project& project, const std::filesystem::path& destination);
Project load(const std::filesystem::path& source);

}  // namespace store::persistence
