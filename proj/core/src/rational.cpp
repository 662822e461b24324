#include "capgeo/rational.hpp"

#include <cctype>

namespace capgeo {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses a digit run that must stay well inside int64 range.
std::optional<std::int64_t> parse_digits(std::string_view s) {
  if (!all_digits(s) || s.size() > 18) return std::nullopt;
  std::int64_t v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  const auto slash = text.find('/');
  const auto dot = text.find('.');
  if (slash != std::string_view::npos && dot != std::string_view::npos) return std::nullopt;

  if (slash != std::string_view::npos) {
    const auto num = parse_digits(text.substr(0, slash));
    const auto den = parse_digits(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(negative ? -*num : *num, *den);
  }

  if (dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) return std::nullopt;
    const auto w = whole.empty() ? std::optional<std::int64_t>(0) : parse_digits(whole);
    const auto f = parse_digits(frac);
    if (!w || !f) return std::nullopt;
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t num = *w * den + *f;
    return Rational(negative ? -num : num, den);
  }

  const auto v = parse_digits(text);
  if (!v) return std::nullopt;
  return Rational(negative ? -*v : *v, 1);
}

}  // namespace capgeo
