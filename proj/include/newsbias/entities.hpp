#pragma once

#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "newsbias/errors.hpp"
#include "newsbias/text.hpp"
#include "newsbias/transcript.hpp"

namespace newsbias {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class EntityLabel { Person, Org, Place, Other, Excluded };

inline const char* entity_label_name(EntityLabel l) {
  switch (l) {
    case EntityLabel::Person: return "PERSON";
    case EntityLabel::Org: return "ORG";
    case EntityLabel::Place: return "PLACE";
    case EntityLabel::Other: return "OTHER";
    case EntityLabel::Excluded: return "EXCLUDED";
  }
  return "OTHER";
}

struct EntityMention {
  std::string surface;
  std::string canonical;
  EntityLabel label = EntityLabel::Other;
  std::string transcript_id;
  int statement_index = 0;
  int sentence_index = 0;
};

struct KeywordEntry {
  std::string canonical;
  int mention_count = 0;
  std::vector<std::pair<int, int>> sentence_refs;  // (statement, sentence), sorted, distinct
  bool operator==(const KeywordEntry&) const = default;
};

// Keyword set for one transcript. The constructor enforces the selection
// rules: at most five keywords, each supported by at least three distinct
// sentences, ordered by mention count descending with lexicographic
// tie-breaks.
class KeywordAssignment {
 public:
  KeywordAssignment() = default;

  KeywordAssignment(std::string transcript_id, std::vector<KeywordEntry> keywords)
      : transcript_id_(std::move(transcript_id)), keywords_(std::move(keywords)) {
    if (keywords_.size() > 5)
      throw Error(ErrorFamily::Data, "keyword assignment exceeds five keywords");
    for (size_t i = 0; i < keywords_.size(); ++i) {
      const auto& k = keywords_[i];
      std::set<std::pair<int, int>> distinct(k.sentence_refs.begin(), k.sentence_refs.end());
      if (distinct.size() < 3)
        throw Error(ErrorFamily::Data,
                    "keyword \"" + k.canonical + "\" has fewer than three supporting sentences");
      if (i > 0) {
        const auto& prev = keywords_[i - 1];
        bool ordered = prev.mention_count > k.mention_count ||
                       (prev.mention_count == k.mention_count && prev.canonical < k.canonical);
        if (!ordered) throw Error(ErrorFamily::Data, "keywords out of rank order");
      }
    }
  }

  const std::string& transcript_id() const { return transcript_id_; }
  const std::vector<KeywordEntry>& keywords() const { return keywords_; }
  bool operator==(const KeywordAssignment&) const = default;

 private:
  std::string transcript_id_;
  std::vector<KeywordEntry> keywords_;
};

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

// Trims, collapses whitespace, strips a leading article and a possessive
// suffix, and title-cases multiword names. Single tokens keep their casing
// ("CDC" stays "CDC").
inline std::string canonicalize(const std::string& surface) {
  std::string s = collapse_ws(surface);
  for (const char* article : {"the ", "The ", "THE ", "a ", "A "}) {
    std::string_view a(article);
    if (s.size() > a.size() && std::string_view(s).substr(0, a.size()) == a) {
      s = s.substr(a.size());
      break;
    }
  }
  constexpr std::string_view curly_s = "’s";  // UTF-8 right single quote + s
  if (s.size() > curly_s.size() && s.ends_with(curly_s)) {
    s.resize(s.size() - curly_s.size());
  } else if (s.size() > 2 && s.ends_with("'s")) {
    s.resize(s.size() - 2);
  } else if (s.size() > 1 && s.back() == '\'') {
    s.pop_back();
  }
  s = collapse_ws(s);
  auto words = split_ws(s);
  if (words.size() > 1) {
    std::string out;
    for (auto& w : words) {
      std::string lw = to_lower(w);
      lw[0] = to_upper_c(lw[0]);
      if (!out.empty()) out += ' ';
      out += lw;
    }
    return out;
  }
  return s;
}

using AliasMap = std::map<std::string, std::string>;

// ---------------------------------------------------------------------------
// Exclusion families (tagger-independent)
// ---------------------------------------------------------------------------

// Regex families covering entity classes that are never news topics:
// numbers, ordinals, percentages, money, clock times, weekday/month names,
// and compass directions.
inline const std::vector<std::regex>& exclusion_patterns() {
  static const std::vector<std::regex> patterns = [] {
    auto f = std::regex::icase | std::regex::optimize;
    std::vector<std::regex> v;
    v.emplace_back(R"(\d{1,2}(:\d{2})?\s*(am|pm|a\.m\.|p\.m\.))", f);      // clock times
    v.emplace_back(R"(\d[\d,]*(\.\d+)?\s*(percent|%))", f);               // percentages
    v.emplace_back(R"(\$\s?\d[\d,]*(\.\d+)?(\s*(million|billion|trillion))?)", f);  // money
    v.emplace_back(R"(\d[\d,]*(\.\d+)?\s*(dollars|cents|bucks))", f);
    v.emplace_back(R"(\d+(st|nd|rd|th))", f);                             // ordinals
    v.emplace_back(
        R"((monday|tuesday|wednesday|thursday|friday|saturday|sunday)s?)", f);
    v.emplace_back(
        R"((january|february|march|april|may|june|july|august|september|october|november|december)(\s+\d{1,2}(st|nd|rd|th)?)?(,?\s+\d{4})?)",
        f);
    v.emplace_back(R"((north|south|east|west)(east|west)?(ern)?)", f);    // compass
    v.emplace_back(R"(\d[\d,]*(\.\d+)?)", f);                             // bare numerals
    return v;
  }();
  return patterns;
}

struct TextSpan {
  size_t begin = 0;
  size_t end = 0;
};

namespace detail {

inline bool boundary_ok(std::string_view s, size_t b, size_t e) {
  bool left = (b == 0) || !is_alnum(s[b - 1]);
  bool right = (e == s.size()) || !is_alnum(s[e]);
  return left && right;
}

}  // namespace detail

// All word-bounded exclusion matches in a sentence, longest-first per origin
// so "9 PM" wins over the bare "9".
inline std::vector<TextSpan> exclusion_spans(const std::string& sentence) {
  std::vector<TextSpan> spans;
  for (const auto& re : exclusion_patterns()) {
    for (auto it = std::sregex_iterator(sentence.begin(), sentence.end(), re);
         it != std::sregex_iterator(); ++it) {
      size_t b = static_cast<size_t>(it->position());
      size_t e = b + static_cast<size_t>(it->length());
      if (!detail::boundary_ok(sentence, b, e)) continue;
      spans.push_back({b, e});
    }
  }
  // Drop spans contained in another span; keep the widest cover.
  std::sort(spans.begin(), spans.end(), [](const TextSpan& a, const TextSpan& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.end > b.end;
  });
  std::vector<TextSpan> kept;
  for (const auto& s : spans) {
    bool contained = false;
    for (const auto& k : kept)
      if (k.begin <= s.begin && s.end <= k.end) {
        contained = true;
        break;
      }
    if (!contained) kept.push_back(s);
  }
  return kept;
}

// True when the whole string is one exclusion-family match.
inline bool is_excluded_phrase(const std::string& phrase) {
  std::string p = trim(phrase);
  if (p.empty()) return true;
  for (const auto& re : exclusion_patterns()) {
    if (std::regex_match(p, re)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Recognizer interface
// ---------------------------------------------------------------------------

struct RawEntity {
  std::string text;
  std::string label;  // PERSON / ORG / PLACE / OTHER / EXCLUDED or tagger-native
  size_t start = 0;
  size_t end = 0;
};

class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  virtual std::string id() const = 0;
  // One entry per input sentence; transcript-scoped so implementations can
  // use document context.
  virtual std::vector<std::vector<RawEntity>> recognize(
      const std::vector<std::string>& sentences) = 0;
};

// ---------------------------------------------------------------------------
// Bundled heuristic recognizer
// ---------------------------------------------------------------------------

// Function words and honorifics that never join a capitalized run. Honorifics
// additionally mark the following run as a person.
inline const std::set<std::string>& recognizer_stoplist() {
  static const std::set<std::string> stop = {
      "the", "a", "an", "and", "but", "or", "nor", "so", "yet", "if", "as",
      "at", "by", "for", "from", "in", "into", "of", "off", "on", "onto",
      "to", "up", "with", "that", "this", "these", "those", "it", "its",
      "he", "she", "they", "we", "you", "i", "his", "her", "their", "our",
      "what", "which", "who", "whom", "when", "where", "why", "how", "there",
      "here", "now", "then", "today", "tonight", "yesterday", "tomorrow",
      "mr", "mrs", "ms", "dr", "president", "vice", "senator", "secretary",
      "governor", "mayor", "rep", "sen", "congressman", "congresswoman",
      "justice", "judge", "general", "chief", "speaker", "leader", "former",
      "breaking", "next", "well", "look", "thanks", "thank", "welcome", "good",
      "meanwhile", "finally", "first", "second", "also", "still", "again",
  };
  return stop;
}

inline const std::set<std::string>& honorific_cues() {
  static const std::set<std::string> cues = {
      "mr", "mrs", "ms", "dr", "president", "senator", "secretary", "governor",
      "mayor", "rep", "sen", "congressman", "congresswoman", "justice", "judge",
  };
  return cues;
}

inline const std::set<std::string>& place_gazetteer() {
  static const std::set<std::string> places = {
      "america", "washington", "new york", "new york city", "california",
      "texas", "florida", "ohio", "michigan", "georgia", "arizona", "iowa",
      "china", "russia", "iran", "israel", "ukraine", "mexico", "canada",
      "europe", "london", "moscow", "beijing", "chicago", "atlanta",
      "united states", "white house",  // White House handled by org cues first
  };
  return places;
}

inline const std::set<std::string>& org_cue_words() {
  static const std::set<std::string> cues = {
      "house", "senate", "congress", "committee", "department", "party",
      "administration", "network", "news", "corporation", "company", "inc",
      "agency", "bureau", "council", "court", "union", "association", "act",
  };
  return cues;
}

namespace heuristic_detail {

struct Token {
  std::string text;   // edge punctuation stripped
  size_t begin = 0;   // offset of text within the sentence
  size_t end = 0;
};

inline std::vector<Token> tokenize(const std::string& sentence) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && is_space(sentence[i])) ++i;
    size_t b = i;
    while (i < sentence.size() && !is_space(sentence[i])) ++i;
    if (i == b) break;
    size_t tb = b, te = i;
    while (tb < te && !is_alnum(sentence[tb]) && sentence[tb] != '$') ++tb;
    while (te > tb && !is_alnum(sentence[te - 1]) && sentence[te - 1] != '.') --te;
    // keep a trailing '.' only for dotted abbreviations like "U.S."
    if (te > tb && sentence[te - 1] == '.' &&
        std::count(sentence.begin() + tb, sentence.begin() + te, '.') < 2)
      --te;
    if (te > tb) tokens.push_back({sentence.substr(tb, te - tb), tb, te});
  }
  return tokens;
}

inline bool is_capitalized_word(const std::string& t) {
  for (char c : t)
    if (is_alpha(c)) return is_upper(c);
  return false;
}

inline bool is_digitish(const std::string& t) {
  bool any = false;
  for (char c : t) {
    if (is_digit(c)) {
      any = true;
    } else if (is_alpha(c)) {
      return false;
    }
  }
  return any;
}

inline bool is_stoplisted(const std::string& t) {
  std::string key = to_lower(t);
  while (!key.empty() && key.back() == '.') key.pop_back();
  return recognizer_stoplist().count(key) > 0;
}

inline bool is_honorific(const std::string& t) {
  std::string key = to_lower(t);
  while (!key.empty() && key.back() == '.') key.pop_back();
  return honorific_cues().count(key) > 0;
}

inline bool all_caps_acronym(const std::string& t) {
  int letters = 0;
  for (char c : t) {
    if (is_alpha(c)) {
      if (!is_upper(c)) return false;
      ++letters;
    } else if (c != '.' && c != '-' && !is_digit(c)) {
      return false;
    }
  }
  return letters >= 2 && letters <= 6;
}

}  // namespace heuristic_detail

// Rule-based recognizer: maximal runs of capitalized tokens away from the
// sentence start; a sentence-initial token joins only when the same token
// recurs capitalized mid-sentence elsewhere in the transcript. Exclusion
// families are emitted as EXCLUDED mentions, and capitalized runs fully
// inside an exclusion span are suppressed.
class HeuristicRecognizer : public EntityRecognizer {
 public:
  std::string id() const override { return "heuristic"; }

  std::vector<std::vector<RawEntity>> recognize(
      const std::vector<std::string>& sentences) override {
    using namespace heuristic_detail;

    // Pass 1: capitalized tokens seen mid-sentence anywhere in the transcript.
    std::unordered_set<std::string> mid_sentence;
    std::vector<std::vector<Token>> token_lists;
    token_lists.reserve(sentences.size());
    for (const auto& s : sentences) {
      auto tokens = tokenize(s);
      for (size_t i = 1; i < tokens.size(); ++i)
        if (is_capitalized_word(tokens[i].text)) mid_sentence.insert(tokens[i].text);
      token_lists.push_back(std::move(tokens));
    }

    std::vector<std::vector<RawEntity>> out(sentences.size());
    for (size_t si = 0; si < sentences.size(); ++si) {
      const auto& sentence = sentences[si];
      const auto& tokens = token_lists[si];
      auto excluded = exclusion_spans(sentence);
      for (const auto& span : excluded) {
        RawEntity e;
        e.text = sentence.substr(span.begin, span.end - span.begin);
        e.label = "EXCLUDED";
        e.start = span.begin;
        e.end = span.end;
        out[si].push_back(std::move(e));
      }

      // Pass 2: assemble maximal runs.
      size_t i = 0;
      while (i < tokens.size()) {
        const auto& tok = tokens[i];
        bool eligible = is_capitalized_word(tok.text) && !is_stoplisted(tok.text) &&
                        (i > 0 || mid_sentence.count(tok.text) > 0);
        if (!eligible) {
          ++i;
          continue;
        }
        size_t run_begin = i;
        size_t j = i + 1;
        while (j < tokens.size()) {
          const auto& next = tokens[j].text;
          bool joins = (is_capitalized_word(next) && !is_stoplisted(next)) || is_digitish(next);
          if (!joins) break;
          ++j;
        }
        size_t run_end = j;
        size_t b = tokens[run_begin].begin;
        size_t e = tokens[run_end - 1].end;
        bool suppressed = false;
        for (const auto& span : excluded)
          if (span.begin <= b && e <= span.end) {
            suppressed = true;
            break;
          }
        if (!suppressed) {
          RawEntity ent;
          ent.text = sentence.substr(b, e - b);
          ent.start = b;
          ent.end = e;
          bool person_cue = run_begin > 0 && is_honorific(tokens[run_begin - 1].text);
          ent.label = classify(ent.text, person_cue);
          out[si].push_back(std::move(ent));
        }
        i = j;
      }
    }
    return out;
  }

 private:
  static std::string classify(const std::string& text, bool person_cue) {
    using namespace heuristic_detail;
    if (person_cue) return "PERSON";
    std::string lower = to_lower(text);
    auto words = split_ws(lower);
    for (const auto& w : words)
      if (org_cue_words().count(w)) return "ORG";
    if (place_gazetteer().count(lower)) return "PLACE";
    if (words.size() == 1 && all_caps_acronym(text)) return "ORG";
    if (words.size() >= 2) return "PERSON";
    return "OTHER";
  }
};

// ---------------------------------------------------------------------------
// Mention extraction + keyword selection
// ---------------------------------------------------------------------------

inline EntityLabel entity_label_from_string(const std::string& raw) {
  std::string l = to_lower(raw);
  if (l == "person" || l == "per") return EntityLabel::Person;
  if (l == "org" || l == "organization" || l == "norp") return EntityLabel::Org;
  if (l == "place" || l == "gpe" || l == "loc" || l == "location" || l == "fac")
    return EntityLabel::Place;
  static const std::set<std::string> excluded = {
      "excluded", "date", "time", "quantity", "cardinal", "ordinal", "percent", "money",
  };
  if (excluded.count(l)) return EntityLabel::Excluded;
  return EntityLabel::Other;
}

// Runs the recognizer over every sentence of a transcript and assembles
// mentions with positions. Exclusion families are re-checked on the entity
// text so external taggers get the same filtering as the bundled one.
inline std::vector<EntityMention> recognize_entities(const TranscriptDoc& doc,
                                                     EntityRecognizer& recognizer,
                                                     const AliasMap& aliases = {}) {
  std::vector<std::string> sentences;
  std::vector<std::pair<int, int>> positions;
  for (size_t s = 0; s < doc.statements.size(); ++s)
    for (size_t i = 0; i < doc.statements[s].sentences.size(); ++i) {
      sentences.push_back(doc.statements[s].sentences[i]);
      positions.emplace_back(static_cast<int>(s), static_cast<int>(i));
    }

  auto per_sentence = recognizer.recognize(sentences);
  std::vector<EntityMention> mentions;
  for (size_t si = 0; si < per_sentence.size(); ++si) {
    for (const auto& raw : per_sentence[si]) {
      EntityMention m;
      m.surface = raw.text;
      m.label = entity_label_from_string(raw.label);
      if (m.label != EntityLabel::Excluded && is_excluded_phrase(raw.text))
        m.label = EntityLabel::Excluded;
      std::string canon;
      auto direct = aliases.find(raw.text);
      if (direct != aliases.end()) {
        canon = direct->second;
      } else {
        canon = canonicalize(raw.text);
        auto mapped = aliases.find(canon);
        if (mapped != aliases.end()) canon = mapped->second;
      }
      if (canon.empty()) continue;
      m.canonical = canon;
      m.transcript_id = doc.id;
      m.statement_index = positions[si].first;
      m.sentence_index = positions[si].second;
      mentions.push_back(std::move(m));
    }
  }
  return mentions;
}

// Top five non-excluded canonical entities by mention count, then drop any
// used in fewer than three distinct sentences. Order invariant to the
// input order of mentions.
inline KeywordAssignment select_keywords(const std::vector<EntityMention>& mentions) {
  std::string transcript_id;
  std::map<std::string, std::pair<int, std::set<std::pair<int, int>>>> grouped;
  for (const auto& m : mentions) {
    if (transcript_id.empty()) transcript_id = m.transcript_id;
    if (m.label == EntityLabel::Excluded) continue;
    auto& slot = grouped[m.canonical];
    slot.first += 1;
    slot.second.insert({m.statement_index, m.sentence_index});
  }

  std::vector<KeywordEntry> candidates;
  for (const auto& [canonical, slot] : grouped) {
    KeywordEntry e;
    e.canonical = canonical;
    e.mention_count = slot.first;
    e.sentence_refs.assign(slot.second.begin(), slot.second.end());
    candidates.push_back(std::move(e));
  }
  std::sort(candidates.begin(), candidates.end(), [](const KeywordEntry& a, const KeywordEntry& b) {
    if (a.mention_count != b.mention_count) return a.mention_count > b.mention_count;
    return a.canonical < b.canonical;
  });
  if (candidates.size() > 5) candidates.resize(5);
  std::vector<KeywordEntry> kept;
  for (auto& c : candidates)
    if (c.sentence_refs.size() >= 3) kept.push_back(std::move(c));
  return KeywordAssignment(transcript_id, std::move(kept));
}

}  // namespace newsbias
