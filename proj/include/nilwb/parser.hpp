#pragma once

#include <string>
#include <string_view>

#include "nilwb/family.hpp"

namespace nilwb {

enum class ParseErrorCode {
  Lexical = 1,
  Syntax = 2,
  DuplicateGenerator = 3,
  IndexOutOfRange = 4,
  ZeroTwoComponent = 5,
  MissingGenerator = 6,
  UndeclaredParameter = 7,
  Validation = 8,
  Metric = 9,
};

std::string error_code_name(ParseErrorCode code);

class ParseError : public WorkbenchError {
 public:
  ParseError(ParseErrorCode code, int line, int column, const std::string& message);
  ParseErrorCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorCode code_;
  int line_;
  int column_;
};

LieComplexModel parse_model(std::string_view text);
DeformationFamily parse_family(std::string_view text);

// Text in the model grammar; parse_model(format_model(m)) == m.
std::string format_model(const LieComplexModel& model);
std::string format_family(const DeformationFamily& family);

std::string read_text_file(const std::string& path);

bool operator==(const LieComplexModel& a, const LieComplexModel& b);

}  // namespace nilwb
