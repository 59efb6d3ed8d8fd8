#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtkit {

// Reads a UTF-8 text file as lines. "\r\n" and lone "\r" terminators are
// normalized; a missing final newline is accepted. Throws IoError when the
// file cannot be opened and EncodingError (with line number) on invalid UTF-8.
std::vector<std::string> read_lines(const std::filesystem::path& path);
std::vector<std::string> split_lines(std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Writes one line per element, each terminated by '\n'.
void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mtkit
