#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sunset {

std::string sha256_hex(std::string_view data);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

inline constexpr const char* kSchemaHeader = R"({"schema":"sunset/v1"})";

// Reads a JSONL file, skipping (and checking, when require_header) the
// sunset/v1 schema line. Throws ParseError with a 1-based line number.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path,
                                       bool require_header);

// Writes records as JSONL with the schema header line first.
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::json>& records);

// Deterministic parallel map: calls fn(i) for i in [0, n) on up to `threads`
// workers, each result landing in its preassigned slot.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace sunset
