#include "capgeo/pipeline/grading.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace capgeo::pipeline {
namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Last standalone occurrence of any option letter: the letter itself must
// not touch other word characters ("(B)", " B.", "B" at end all count,
// "ABC" does not).
std::optional<std::string> last_option_letter(const std::string& raw,
                                              const std::vector<std::string>& options) {
  std::optional<std::string> found;
  std::size_t best = 0;
  for (const auto& option : options) {
    if (option.size() != 1) continue;
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(option[0])));
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(raw[i])) != upper) continue;
      const bool left_ok = i == 0 || !is_word_char(raw[i - 1]);
      const bool right_ok = i + 1 >= raw.size() || !is_word_char(raw[i + 1]);
      if (left_ok && right_ok && (!found || i >= best)) {
        best = i;
        found = std::string(1, upper);
      }
    }
  }
  return found;
}

// Last whole-word occurrence of a multi-character option, case-insensitive.
std::optional<std::string> last_option_word(const std::string& raw,
                                            const std::vector<std::string>& options) {
  std::string lower = raw;
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  std::optional<std::string> found;
  std::size_t best = 0;
  for (const auto& option : options) {
    std::string needle = option;
    std::transform(needle.begin(), needle.end(), needle.begin(), ::tolower);
    std::size_t pos = lower.find(needle);
    while (pos != std::string::npos) {
      const bool left_ok = pos == 0 || !is_word_char(lower[pos - 1]);
      const bool right_ok =
          pos + needle.size() >= lower.size() || !is_word_char(lower[pos + needle.size()]);
      if (left_ok && right_ok && (!found || pos >= best)) {
        best = pos;
        found = option;
      }
      pos = lower.find(needle, pos + 1);
    }
  }
  return found;
}

// Last maximal number-like token: [sign] digits [. digits | / digits].
std::optional<std::string> last_number_token(const std::string& raw) {
  std::optional<std::string> found;
  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    const bool sign_start = (c == '-' || c == '+') && i + 1 < raw.size() &&
                            std::isdigit(static_cast<unsigned char>(raw[i + 1])) &&
                            (i == 0 || (!is_word_char(raw[i - 1]) && raw[i - 1] != '.'));
    const bool digit_start = std::isdigit(static_cast<unsigned char>(c)) &&
                             (i == 0 || (!is_word_char(raw[i - 1]) && raw[i - 1] != '.' &&
                                         raw[i - 1] != '/'));
    if (!sign_start && !digit_start) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (sign_start) ++j;
    while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
    if (j < raw.size() && (raw[j] == '.' || raw[j] == '/') && j + 1 < raw.size() &&
        std::isdigit(static_cast<unsigned char>(raw[j + 1]))) {
      ++j;
      while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
    }
    found = raw.substr(i, j - i);
    i = j;
  }
  return found;
}

std::string normalize_text(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string last_nonempty_line(const std::string& s) {
  std::size_t end = s.size();
  while (end > 0) {
    std::size_t start = s.rfind('\n', end - 1);
    const std::size_t line_start = start == std::string::npos ? 0 : start + 1;
    const std::string line = s.substr(line_start, end - line_start);
    if (!normalize_text(line).empty()) return line;
    if (start == std::string::npos) break;
    end = start;
  }
  return s;
}

}  // namespace

GradeResult grade_answer(const std::string& raw, const std::string& gold, AnswerType type,
                         const std::vector<std::string>& options) {
  GradeResult result;
  switch (type) {
    case AnswerType::Choice: {
      const bool single_letters = std::all_of(options.begin(), options.end(),
                                              [](const std::string& o) { return o.size() == 1; });
      const auto extracted =
          single_letters ? last_option_letter(raw, options) : last_option_word(raw, options);
      if (!extracted) {
        result.extraction_failure = true;
        return result;
      }
      result.extracted = *extracted;
      std::string gold_norm = gold;
      std::transform(gold_norm.begin(), gold_norm.end(), gold_norm.begin(), ::toupper);
      std::string got = *extracted;
      std::transform(got.begin(), got.end(), got.begin(), ::toupper);
      result.correct = got == gold_norm;
      return result;
    }
    case AnswerType::Numeric: {
      const auto token = last_number_token(raw);
      const auto value = token ? Rational::parse(*token) : std::nullopt;
      if (!value) {
        result.extraction_failure = true;
        return result;
      }
      result.extracted = value->str();
      const auto gold_value = Rational::parse(gold);
      result.correct = gold_value && *value == *gold_value;
      return result;
    }
    case AnswerType::Text: {
      const std::string norm_gold = normalize_text(gold);
      const std::string last_line = normalize_text(last_nonempty_line(raw));
      const std::string whole = normalize_text(raw);
      if (last_line.empty() && whole.empty()) {
        result.extraction_failure = true;
        return result;
      }
      result.extracted = last_line;
      result.correct = last_line == norm_gold || whole == norm_gold;
      return result;
    }
  }
  return result;
}

}  // namespace capgeo::pipeline
