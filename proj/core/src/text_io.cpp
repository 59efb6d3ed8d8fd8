#include "mtkit/text_io.hpp"

#include <fstream>
#include <sstream>

#include "mtkit/errors.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return buf.str();
}

std::vector<std::string> split_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::string current;
  for (std::size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (c == '\r') {
      if (i + 1 < content.size() && content[i + 1] == '\n') ++i;
      lines.push_back(std::move(current));
      current.clear();
    } else if (c == '\n') {
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (auto bad = unicode::find_invalid_utf8(lines[i])) {
      throw EncodingError("invalid UTF-8 byte at column " + std::to_string(*bad + 1),
                          i + 1);
    }
  }
  return lines;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  try {
    return split_lines(read_file(path));
  } catch (const EncodingError& e) {
    throw EncodingError(path.string() + ": " + e.detail(), e.line());
  }
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines) {
  std::string content;
  for (const auto& line : lines) {
    content += line;
    content += '\n';
  }
  write_file(path, content);
}

}  // namespace mtkit
