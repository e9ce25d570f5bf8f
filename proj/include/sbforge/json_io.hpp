#pragma once

// JSON file formats: frames, braces (table and structural), YBE solutions,
// census reports. Key order is fixed so identical inputs give identical bytes.

#include <json.hpp>
#include <string>

#include "sbforge/brace.hpp"
#include "sbforge/classify.hpp"
#include "sbforge/construct.hpp"
#include "sbforge/ybe.hpp"

namespace sbforge {

using ordered_json = nlohmann::ordered_json;

ordered_json frame_to_json(const Frame& f);
Frame frame_from_json(const ordered_json& j);

// Table mode: {"n","p","q","which","dot","circ"}.
// Structural mode: {"n","p","q","which","mode":"structural","frame",...,"gmap"}.
ordered_json brace_to_json(const SkewBrace& b);
SkewBrace brace_from_json(const ordered_json& j);

ordered_json solution_to_json(const YBESolution& s);

ordered_json census_to_json(const CensusResult& res);

ordered_json structure_to_json(const StructureDescriptor& d);

void write_text_file(const std::string& path, const std::string& content);
ordered_json read_json_file(const std::string& path);

}  // namespace sbforge
