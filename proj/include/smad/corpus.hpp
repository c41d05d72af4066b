#pragma once

#include "smad/dataset.hpp"
#include "smad/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace smad {

/// {"god_classes": [...], "feature_envy": [{"method": ..., "envied_class": ...}]}
std::string serialize_ground_truth(const GroundTruth& truth);
GroundTruth load_ground_truth(const std::string& document);

/// Manifest documenting how every system of a corpus was generated.
std::string corpus_manifest(std::uint64_t seed, const std::vector<SyntheticSystem>& systems);

/// Writes manifest.json plus <id>.facts.json, <id>.history.json and <id>.labels.json
/// per system. Creates the directory when missing.
void write_corpus(const std::filesystem::path& dir, std::uint64_t seed, const std::vector<SyntheticSystem>& systems);

/// Systems listed in manifest.json, in manifest order. Throws ParseError or
/// ValidationError on malformed files and LookupError on missing ones.
std::vector<LabeledSystem> load_corpus(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace smad
