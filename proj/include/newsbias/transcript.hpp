#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "newsbias/errors.hpp"
#include "newsbias/text.hpp"

namespace newsbias {

// ---------------------------------------------------------------------------
// Calendar date
// ---------------------------------------------------------------------------

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  static bool leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

  static int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return days[m - 1];
  }

  // Strict YYYY-MM-DD with calendar validation.
  static Date parse(const std::string& s) {
    auto fail = [&]() -> Date { throw UnparsableDate(s); };
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return fail();
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
      if (!is_digit(s[i])) return fail();
    Date d;
    d.year = std::stoi(s.substr(0, 4));
    d.month = std::stoi(s.substr(5, 2));
    d.day = std::stoi(s.substr(8, 2));
    if (d.year < 1900 || d.month < 1 || d.month > 12) return fail();
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return fail();
    return d;
  }

  std::string to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return std::string(buf);
  }

  std::string month_key() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return std::string(buf);
  }
};

// ---------------------------------------------------------------------------
// Sentence segmentation
// ---------------------------------------------------------------------------

struct SentenceSpan {
  size_t begin = 0;  // inclusive
  size_t end = 0;    // exclusive
  bool operator==(const SentenceSpan&) const = default;
};

// Abbreviations that keep a trailing '.' from ending a sentence. Compared
// lowercased against the whitespace-delimited token ending at the period.
inline const std::set<std::string>& abbreviation_list() {
  static const std::set<std::string> abbrevs = {
      "mr.",   "mrs.",  "ms.",   "dr.",   "st.",   "jr.",   "sr.",  "sen.",
      "rep.",  "gov.",  "gen.",  "sgt.",  "col.",  "capt.", "lt.",  "prof.",
      "rev.",  "hon.",  "u.s.",  "u.n.",  "u.k.",  "d.c.",  "a.m.", "p.m.",
      "e.g.",  "i.e.",  "etc.",  "vs.",   "inc.",  "corp.", "co.",  "ltd.",
      "no.",   "dept.", "jan.",  "feb.",  "mar.",  "apr.",  "jun.", "jul.",
      "aug.",  "sep.",  "sept.", "oct.",  "nov.",  "dec.",  "mt.",  "ft.",
  };
  return abbrevs;
}

namespace detail {

// Token ending at text[dot] (a '.'), reaching back to the previous whitespace,
// leading punctuation stripped.
inline bool is_abbreviation_at(std::string_view text, size_t dot) {
  size_t b = dot;
  while (b > 0 && !is_space(text[b - 1])) --b;
  while (b < dot && !is_alnum(text[b])) ++b;
  std::string token = to_lower(text.substr(b, dot - b + 1));
  if (token.size() == 2 && is_alpha(token[0])) return true;  // middle initial "W."
  return abbreviation_list().count(token) > 0;
}

}  // namespace detail

// Splits on '.', '?', '!' followed by whitespace or end-of-text; a '.' that
// closes a known abbreviation does not split. Spans are trimmed and non-empty.
inline std::vector<SentenceSpan> segment_sentences(std::string_view text) {
  std::vector<SentenceSpan> spans;
  auto emit = [&](size_t b, size_t e) {
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    if (b < e) spans.push_back({b, e});
  };
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    bool at_boundary = (i + 1 == text.size()) || is_space(text[i + 1]);
    if (!at_boundary) continue;
    if (c == '.' && detail::is_abbreviation_at(text, i)) continue;
    emit(start, i + 1);
    start = i + 1;
  }
  emit(start, text.size());
  return spans;
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct Statement {
  std::string speaker;  // uppercase tag, internal whitespace collapsed
  std::string text;
  std::vector<SentenceSpan> sentence_spans;

  bool operator==(const Statement&) const = default;

  std::string sentence(size_t i) const {
    const auto& s = sentence_spans[i];
    return text.substr(s.begin, s.end - s.begin);
  }
};

struct TranscriptHeader {
  std::string program_name;
  std::string network;
  Date air_date;
  bool operator==(const TranscriptHeader&) const = default;
};

struct Transcript {
  std::string id;  // stable hash of source path + header
  TranscriptHeader header;
  std::vector<Statement> statements;
  std::string month_key;

  std::string program_id() const { return header.network + "/" + header.program_name; }
};

inline bool same_content(const Transcript& a, const Transcript& b) {
  return a.header == b.header && a.statements == b.statements && a.month_key == b.month_key;
}

// Lightweight row as stored in transcripts.jsonl; what downstream stages see.
struct StatementDoc {
  std::string speaker;
  std::vector<std::string> sentences;
  bool operator==(const StatementDoc&) const = default;
};

struct TranscriptDoc {
  std::string id;
  std::string program;
  std::string network;
  std::string date;
  std::string month;
  std::vector<StatementDoc> statements;

  bool operator==(const TranscriptDoc&) const = default;
  std::string program_id() const { return network + "/" + program; }
};

inline TranscriptDoc to_doc(const Transcript& t) {
  TranscriptDoc d;
  d.id = t.id;
  d.program = t.header.program_name;
  d.network = t.header.network;
  d.date = t.header.air_date.to_string();
  d.month = t.month_key;
  for (const auto& st : t.statements) {
    StatementDoc sd;
    sd.speaker = st.speaker;
    for (size_t i = 0; i < st.sentence_spans.size(); ++i) sd.sentences.push_back(st.sentence(i));
    d.statements.push_back(std::move(sd));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Canonical-format parsing
// ---------------------------------------------------------------------------

struct ParseOptions {
  std::set<std::string> networks = {"CNN", "FOX", "MSNBC"};
  std::string source_path;  // feeds the transcript id hash
};

// Speaker tag: all-caps prefix before the first colon; letters, spaces,
// periods and hyphens only; at most 6 tokens; at least one letter.
inline bool is_speaker_tag(std::string_view prefix) {
  prefix = trim_view(prefix);
  if (prefix.empty()) return false;
  bool has_letter = false;
  int tokens = 1;
  bool prev_space = false;
  for (char c : prefix) {
    if (is_upper(c)) {
      has_letter = true;
      prev_space = false;
    } else if (c == ' ') {
      if (!prev_space) ++tokens;
      prev_space = true;
    } else if (c == '.' || c == '-') {
      prev_space = false;
    } else {
      return false;
    }
  }
  return has_letter && tokens <= 6;
}

inline Transcript parse_transcript(const std::string& raw, const ParseOptions& opts = {}) {
  std::vector<std::string> lines = split(raw, '\n');
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();

  // Header block: KEY: value lines up to the first blank line.
  std::map<std::string, std::string> header_fields;
  size_t i = 0;
  for (; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) {
      ++i;
      break;
    }
    size_t colon = line.find(':');
    if (colon == std::string::npos) break;  // malformed header line ends the block
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    header_fields[key] = value;
  }

  for (const char* field : {"PROGRAM", "NETWORK", "DATE"}) {
    auto it = header_fields.find(field);
    if (it == header_fields.end() || collapse_ws(it->second).empty())
      throw MissingHeaderField(field);
  }

  Transcript t;
  t.header.program_name = collapse_ws(header_fields["PROGRAM"]);
  t.header.network = collapse_ws(header_fields["NETWORK"]);
  t.header.air_date = Date::parse(header_fields["DATE"]);
  t.month_key = t.header.air_date.month_key();
  if (!opts.networks.empty() && opts.networks.count(t.header.network) == 0)
    throw UnknownNetwork(t.header.network);

  // Body: SPEAKER NAME: utterance, continuation lines append to the previous
  // statement. Orphan lines before the first statement are skipped.
  for (; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    size_t colon = line.find(':');
    bool is_statement = colon != std::string::npos && is_speaker_tag(line.substr(0, colon));
    if (is_statement) {
      Statement st;
      st.speaker = collapse_ws(line.substr(0, colon));
      st.text = trim(line.substr(colon + 1));
      t.statements.push_back(std::move(st));
    } else if (!t.statements.empty()) {
      auto& prev = t.statements.back();
      if (prev.text.empty())
        prev.text = line;
      else
        prev.text += " " + line;
    }
  }
  if (t.statements.empty()) throw EmptyBody();
  for (auto& st : t.statements) st.sentence_spans = segment_sentences(st.text);

  uint64_t h = fnv1a64(opts.source_path);
  h = fnv1a64("\n", h);
  h = fnv1a64(t.header.program_name, h);
  h = fnv1a64("\n", h);
  h = fnv1a64(t.header.network, h);
  h = fnv1a64("\n", h);
  h = fnv1a64(t.header.air_date.to_string(), h);
  t.id = hex64(h);
  return t;
}

inline std::string serialize_transcript(const Transcript& t) {
  std::string out;
  out += "PROGRAM: " + t.header.program_name + "\n";
  out += "NETWORK: " + t.header.network + "\n";
  out += "DATE: " + t.header.air_date.to_string() + "\n\n";
  for (const auto& st : t.statements) out += st.speaker + ": " + st.text + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Monthly bucketing
// ---------------------------------------------------------------------------

inline std::map<std::string, std::vector<Transcript>> bucket_by_month(
    std::vector<Transcript> transcripts) {
  std::map<std::string, std::vector<Transcript>> buckets;
  for (auto& t : transcripts) buckets[t.month_key].push_back(std::move(t));
  for (auto& [key, bucket] : buckets) {
    std::sort(bucket.begin(), bucket.end(), [](const Transcript& a, const Transcript& b) {
      if (a.header.air_date != b.header.air_date) return a.header.air_date < b.header.air_date;
      return a.id < b.id;
    });
  }
  return buckets;
}

}  // namespace newsbias
