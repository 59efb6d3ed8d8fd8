#include "mtkit/errors.hpp"

namespace mtkit {

AlignmentError::AlignmentError(std::size_t source_lines, std::size_t target_lines)
    : Error("parallel files are not aligned: source has " +
            std::to_string(source_lines) + " lines, target has " +
            std::to_string(target_lines) + " lines"),
      source_lines_(source_lines),
      target_lines_(target_lines) {}

LineError::LineError(const std::string& what, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}

}  // namespace mtkit
