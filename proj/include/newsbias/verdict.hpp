#pragma once

#include <optional>
#include <string>

namespace newsbias {

enum class Verdict { NotMainSubject, Positive, Neutral, Negative };

enum class VerdictSource { Remote, Mock, Cache };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotMainSubject: return "NotMainSubject";
    case Verdict::Positive: return "Positive";
    case Verdict::Neutral: return "Neutral";
    case Verdict::Negative: return "Negative";
  }
  return "NotMainSubject";
}

inline std::optional<Verdict> verdict_from_name(const std::string& s) {
  if (s == "NotMainSubject") return Verdict::NotMainSubject;
  if (s == "Positive") return Verdict::Positive;
  if (s == "Neutral") return Verdict::Neutral;
  if (s == "Negative") return Verdict::Negative;
  return std::nullopt;
}

inline const char* verdict_source_name(VerdictSource s) {
  switch (s) {
    case VerdictSource::Remote: return "Remote";
    case VerdictSource::Mock: return "Mock";
    case VerdictSource::Cache: return "Cache";
  }
  return "Mock";
}

}  // namespace newsbias
