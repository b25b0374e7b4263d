#pragma once

#include <atomic>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newsbias/entities.hpp"
#include "newsbias/errors.hpp"
#include "newsbias/stance_cache.hpp"
#include "newsbias/text.hpp"
#include "newsbias/transcript.hpp"

namespace newsbias {

// ---------------------------------------------------------------------------
// Prompt template
// ---------------------------------------------------------------------------

// The template version is part of the cache key: editing the prompt
// invalidates cached verdicts instead of silently mixing them.
inline constexpr const char* kPromptVersion = "v1";

inline std::string build_prompt(const std::string& sentence, const std::string& keyword) {
  std::string p;
  p += "You will be given a sentence and a keyword.\n";
  p += "If the keyword is not the main subject in the sentence, respond NO.\n";
  p += "Otherwise return whether the statements are POSITIVE, NEUTRAL, or NEGATIVE towards ";
  p += "the keyword.\n";
  p += "Answer with exactly one word: NO, POSITIVE, NEUTRAL, or NEGATIVE.\n\n";
  p += "Sentence: \"" + sentence + "\"\n";
  p += "Keyword: \"" + keyword + "\"";
  return p;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

struct SentenceVerdict {
  std::string transcript_id;
  std::string keyword;
  int statement_index = 0;
  int sentence_index = 0;
  Verdict verdict = Verdict::NotMainSubject;
  VerdictSource source = VerdictSource::Mock;
};

struct StanceRecord {
  std::string transcript_id;
  std::string keyword;
  double stance = 0.0;              // (#Positive - #Negative) / n_subject_sentences
  int n_subject_sentences = 0;      // >= 1 for emitted records
  bool operator==(const StanceRecord&) const = default;
};

// First token of the reply that names a verdict, case-insensitive.
inline std::optional<Verdict> parse_verdict(const std::string& reply) {
  for (const auto& w : lower_words(reply)) {
    if (w == "no") return Verdict::NotMainSubject;
    if (w == "positive") return Verdict::Positive;
    if (w == "neutral") return Verdict::Neutral;
    if (w == "negative") return Verdict::Negative;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classifier interface
// ---------------------------------------------------------------------------

class StanceClassifier {
 public:
  virtual ~StanceClassifier() = default;
  virtual std::string id() const = 0;
  virtual VerdictSource source() const = 0;
  // Raw reply text for one (sentence, keyword) query. Throws TransportError.
  virtual std::string complete(const std::string& sentence, const std::string& keyword) = 0;
  int64_t calls() const { return calls_.load(); }

 protected:
  std::atomic<int64_t> calls_{0};
};

// ---------------------------------------------------------------------------
// Cue vocabulary — shared by the mock classifier and the corpus generator
// ---------------------------------------------------------------------------

// Strong-polarity cues. Magnitudes come in matched +/- pairs so generated
// corpora can balance total valence while keeping stance direction.
inline const std::map<std::string, double>& cue_valences() {
  static const std::map<std::string, double> cues = {
      {"fantastic", 0.8},  {"terrible", -0.8}, {"wonderful", 0.7},  {"awful", -0.7},
      {"brilliant", 0.7},  {"disaster", -0.7}, {"success", 0.6},    {"failure", -0.6},
      {"heroic", 0.6},     {"corrupt", -0.6},  {"admirable", 0.6},  {"shameful", -0.6},
  };
  return cues;
}

// Wider valence lexicon for the sentiment baseline; includes every cue.
inline const std::map<std::string, double>& default_valence_lexicon() {
  static const std::map<std::string, double> lex = [] {
    std::map<std::string, double> m = cue_valences();
    m.insert({
        {"good", 0.5},      {"bad", -0.5},     {"great", 0.65},    {"poor", -0.45},
        {"strong", 0.4},    {"weak", -0.4},    {"win", 0.5},       {"lose", -0.5},
        {"winning", 0.5},   {"losing", -0.5},  {"hope", 0.45},     {"fear", -0.5},
        {"crisis", -0.6},   {"calm", 0.3},     {"chaos", -0.6},    {"safe", 0.4},
        {"danger", -0.55},  {"honest", 0.55},  {"lie", -0.6},      {"lies", -0.6},
        {"fraud", -0.65},   {"fair", 0.45},    {"unfair", -0.5},   {"progress", 0.5},
        {"decline", -0.45}, {"boom", 0.55},    {"collapse", -0.65},{"love", 0.6},
        {"hate", -0.6},     {"smart", 0.5},    {"dumb", -0.5},     {"clean", 0.35},
        {"dirty", -0.4},    {"best", 0.65},    {"worst", -0.65},   {"support", 0.4},
        {"oppose", -0.35},  {"praise", 0.55},  {"blame", -0.5},    {"threat", -0.55},
        {"victory", 0.6},   {"defeat", -0.5},  {"recovery", 0.5},  {"scandal", -0.6},
    });
    return m;
  }();
  return lex;
}

inline const std::set<std::string>& negation_tokens() {
  static const std::set<std::string> negs = {"not", "never", "no"};
  return negs;
}

// Normalized valence sum: clamp(s / sqrt(s^2 + 15), -1, 1). Negation tokens
// flip the sign of the next lexicon token.
inline double lexicon_sentiment(const std::string& sentence,
                                const std::map<std::string, double>& lexicon =
                                    default_valence_lexicon()) {
  double sum = 0.0;
  double pending_sign = 1.0;
  for (const auto& w : lower_words(sentence)) {
    if (negation_tokens().count(w)) {
      pending_sign = -pending_sign;
      continue;
    }
    auto it = lexicon.find(w);
    if (it != lexicon.end()) {
      sum += pending_sign * it->second;
      pending_sign = 1.0;
    }
  }
  double score = sum / std::sqrt(sum * sum + 15.0);
  return std::clamp(score, -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Mock classifier
// ---------------------------------------------------------------------------

// Deterministic rules for offline runs and tests:
//   - keyword absent                  -> NO
//   - sentence contains "mentioned"   -> NO (passing reference)
//   - nearest cue token to the keyword decides POSITIVE/NEGATIVE;
//     equidistant opposite cues or no cue at all -> NEUTRAL
class MockClassifier : public StanceClassifier {
 public:
  std::string id() const override { return "mock"; }
  VerdictSource source() const override { return VerdictSource::Mock; }

  std::string complete(const std::string& sentence, const std::string& keyword) override {
    calls_.fetch_add(1);
    auto words = lower_words(sentence);
    auto kw = lower_words(keyword);
    if (kw.empty()) return "NO";

    int kpos = -1;
    for (size_t i = 0; i + kw.size() <= words.size(); ++i) {
      bool match = true;
      for (size_t j = 0; j < kw.size(); ++j)
        if (words[i + j] != kw[j]) {
          match = false;
          break;
        }
      if (match) {
        kpos = static_cast<int>(i);
        break;
      }
    }
    if (kpos < 0) return "NO";
    for (const auto& w : words)
      if (w == "mentioned") return "NO";

    int kend = kpos + static_cast<int>(kw.size()) - 1;
    int best_dist = -1;
    double best_valence = 0.0;
    bool tie_opposite = false;
    for (size_t i = 0; i < words.size(); ++i) {
      auto it = cue_valences().find(words[i]);
      if (it == cue_valences().end()) continue;
      int pos = static_cast<int>(i);
      int dist = pos < kpos ? kpos - pos : (pos > kend ? pos - kend : 0);
      if (best_dist < 0 || dist < best_dist) {
        best_dist = dist;
        best_valence = it->second;
        tie_opposite = false;
      } else if (dist == best_dist && (it->second > 0) != (best_valence > 0)) {
        tie_opposite = true;
      }
    }
    if (best_dist < 0 || tie_opposite) return "NEUTRAL";
    return best_valence > 0 ? "POSITIVE" : "NEGATIVE";
  }
};

// ---------------------------------------------------------------------------
// Sentence classification and transcript scoring
// ---------------------------------------------------------------------------

struct StanceRunStats {
  int64_t classifier_calls = 0;
  int64_t cache_hits = 0;
  int64_t prefilter_skips = 0;
  int64_t malformed_as_not_subject = 0;
  int64_t truncated_tasks = 0;
  std::vector<std::string> failures;  // "(transcript, keyword): reason"
};

namespace stance_detail {

// One classifier exchange with the malformed-reply retry. Returns the verdict
// and whether a malformed reply was swallowed.
inline Verdict classify_with_retry(const std::string& sentence, const std::string& keyword,
                                   StanceClassifier& classifier, bool& malformed) {
  malformed = false;
  auto v = parse_verdict(classifier.complete(sentence, keyword));
  if (v) return *v;
  v = parse_verdict(classifier.complete(sentence, keyword));
  if (v) return *v;
  malformed = true;  // recorded as NotMainSubject, never as Neutral
  return Verdict::NotMainSubject;
}

}  // namespace stance_detail

// Classifies one (sentence, keyword) pair. Sentences that do not contain the
// keyword short-circuit to NotMainSubject without touching the classifier.
inline SentenceVerdict classify_sentence(const std::string& sentence, const std::string& keyword,
                                         StanceClassifier& classifier,
                                         StanceCache* cache = nullptr,
                                         StanceRunStats* stats = nullptr) {
  SentenceVerdict out;
  out.keyword = keyword;
  out.source = classifier.source();
  if (!contains_word(sentence, keyword)) {
    out.verdict = Verdict::NotMainSubject;
    if (stats) stats->prefilter_skips++;
    return out;
  }
  std::string key;
  if (cache) {
    key = StanceCache::make_key(classifier.id(), kPromptVersion, sentence, keyword);
    if (auto hit = cache->lookup(key)) {
      out.verdict = *hit;
      out.source = VerdictSource::Cache;
      if (stats) stats->cache_hits++;
      return out;
    }
  }
  bool malformed = false;
  out.verdict = stance_detail::classify_with_retry(sentence, keyword, classifier, malformed);
  if (stats) {
    stats->classifier_calls += malformed ? 2 : 1;
    if (malformed) stats->malformed_as_not_subject++;
  }
  if (cache && !malformed) cache->insert(key, out.verdict);
  return out;
}

// Average of the per-sentence stances (+1 / 0 / -1) over the sentences where
// the keyword is the main subject. Keywords with no subject sentences emit
// no record. Classifier failures skip the keyword and are reported.
inline std::vector<StanceRecord> score_transcript(const TranscriptDoc& doc,
                                                  const KeywordAssignment& assignment,
                                                  StanceClassifier& classifier,
                                                  StanceCache* cache = nullptr,
                                                  StanceRunStats* stats = nullptr) {
  std::vector<StanceRecord> records;
  for (const auto& entry : assignment.keywords()) {
    std::set<std::pair<int, int>> refs(entry.sentence_refs.begin(), entry.sentence_refs.end());
    int positives = 0, negatives = 0, subjects = 0;
    bool failed = false;
    for (size_t s = 0; s < doc.statements.size() && !failed; ++s) {
      const auto& sentences = doc.statements[s].sentences;
      for (size_t i = 0; i < sentences.size(); ++i) {
        bool eligible = contains_word(sentences[i], entry.canonical) ||
                        refs.count({static_cast<int>(s), static_cast<int>(i)}) > 0;
        if (!eligible) continue;
        try {
          auto verdict =
              classify_sentence(sentences[i], entry.canonical, classifier, cache, stats);
          switch (verdict.verdict) {
            case Verdict::Positive: ++positives; ++subjects; break;
            case Verdict::Negative: ++negatives; ++subjects; break;
            case Verdict::Neutral: ++subjects; break;
            case Verdict::NotMainSubject: break;
          }
        } catch (const TransportError& e) {
          if (stats)
            stats->failures.push_back("(" + doc.id + ", " + entry.canonical + "): " + e.what());
          failed = true;
          break;
        }
      }
    }
    if (!failed && subjects >= 1) {
      StanceRecord r;
      r.transcript_id = doc.id;
      r.keyword = entry.canonical;
      r.n_subject_sentences = subjects;
      r.stance = static_cast<double>(positives - negatives) / subjects;
      records.push_back(std::move(r));
    }
  }
  return records;
}

// Sentiment baseline: mean lexicon sentiment over the sentences containing
// each keyword, with no main-subject gating.
inline std::vector<StanceRecord> sentiment_baseline_records(const TranscriptDoc& doc,
                                                            const KeywordAssignment& assignment) {
  std::vector<StanceRecord> records;
  for (const auto& entry : assignment.keywords()) {
    std::set<std::pair<int, int>> refs(entry.sentence_refs.begin(), entry.sentence_refs.end());
    double sum = 0.0;
    int n = 0;
    for (size_t s = 0; s < doc.statements.size(); ++s) {
      const auto& sentences = doc.statements[s].sentences;
      for (size_t i = 0; i < sentences.size(); ++i) {
        bool eligible = contains_word(sentences[i], entry.canonical) ||
                        refs.count({static_cast<int>(s), static_cast<int>(i)}) > 0;
        if (!eligible) continue;
        sum += lexicon_sentiment(sentences[i]);
        ++n;
      }
    }
    if (n >= 1) {
      StanceRecord r;
      r.transcript_id = doc.id;
      r.keyword = entry.canonical;
      r.n_subject_sentences = n;
      r.stance = sum / n;
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace newsbias
