#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

// Small text-output utilities shared by the CLI and tests: lossless double
// formatting, CSV assembly/parsing, atomic file writes, and FNV-1a
// checksums for run manifests.

namespace hctlab {

// Shortest form that still round-trips exactly through strtod.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

// Parses CSV produced by CsvTable::to_string (plain comma separation, no
// quoting). Throws std::runtime_error on ragged rows.
CsvTable parse_csv(const std::string& text);

// Writes via a temporary file in the same directory, then renames, so
// failed runs leave no partial file behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::uint64_t fnv1a64(std::string_view bytes);

// FNV-1a of a file's bytes as fixed-width hex.
std::string file_checksum(const std::filesystem::path& path);

}  // namespace hctlab
