#pragma once

#include <string>
#include <vector>

#include "capgeo/pipeline/record.hpp"

namespace capgeo::pipeline {

struct GradeResult {
  std::string extracted;
  bool correct = false;
  bool extraction_failure = false;  // nothing answer-like found in the response
};

// Deterministic answer grading.
//   choice:  the last standalone option letter in the response (with or
//            without parentheses) is the extracted answer.
//   numeric: the last number-like token (integer, fraction, or decimal) is
//            parsed as a rational and compared exactly to the gold value.
//   text:    whitespace-collapsed, case-insensitive comparison of the last
//            nonempty line (or the whole response) against the gold text.
// A response with no extractable answer grades incorrect and is flagged.
GradeResult grade_answer(const std::string& raw, const std::string& gold, AnswerType type,
                         const std::vector<std::string>& options = {});

}  // namespace capgeo::pipeline
