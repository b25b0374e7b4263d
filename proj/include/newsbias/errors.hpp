#pragma once

#include <stdexcept>
#include <string>

namespace newsbias {

// Error families map 1:1 onto CLI exit codes (see README).
enum class ErrorFamily {
  Internal = 1,
  Config = 2,
  MissingArtifact = 3,
  Data = 4,
  Classifier = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, const std::string& msg)
      : std::runtime_error(msg), family_(family) {}

  ErrorFamily family() const { return family_; }

 private:
  ErrorFamily family_;
};

// --- corpus ingest ---

struct MissingHeaderField : Error {
  explicit MissingHeaderField(const std::string& field)
      : Error(ErrorFamily::Data, "missing header field: " + field), field(field) {}
  std::string field;
};

struct UnparsableDate : Error {
  explicit UnparsableDate(const std::string& value)
      : Error(ErrorFamily::Data, "unparsable date: \"" + value + "\""), value(value) {}
  std::string value;
};

struct EmptyBody : Error {
  EmptyBody() : Error(ErrorFamily::Data, "transcript has no statement lines") {}
};

struct UnknownNetwork : Error {
  explicit UnknownNetwork(const std::string& network)
      : Error(ErrorFamily::Data, "network not in configured label set: " + network),
        network(network) {}
  std::string network;
};

// --- entity extraction ---

struct RecognizerUnavailable : Error {
  explicit RecognizerUnavailable(const std::string& detail)
      : Error(ErrorFamily::Classifier, "entity recognizer unavailable: " + detail) {}
};

// --- stance engine ---

struct TransportError : Error {
  explicit TransportError(const std::string& detail)
      : Error(ErrorFamily::Classifier, "classifier transport error: " + detail) {}
};

struct MalformedResponse : Error {
  explicit MalformedResponse(const std::string& reply)
      : Error(ErrorFamily::Classifier, "malformed classifier reply: \"" + reply + "\"") {}
};

// --- bias networks ---

struct EmptyMonth : Error {
  explicit EmptyMonth(const std::string& month)
      : Error(ErrorFamily::Data, "no records for month " + month) {}
};

struct DegenerateProgram : Error {
  explicit DegenerateProgram(const std::string& program)
      : Error(ErrorFamily::Data, "program has an all-zero topic row: " + program) {}
};

struct ProgramSetMismatch : Error {
  explicit ProgramSetMismatch(const std::string& detail)
      : Error(ErrorFamily::Data, "program sets do not match: " + detail) {}
};

// --- cluster analytics ---

struct IsolatedProgram : Error {
  explicit IsolatedProgram(const std::string& program)
      : Error(ErrorFamily::Data, "program has zero affinity degree: " + program) {}
};

struct EigensolverFailure : Error {
  explicit EigensolverFailure(const std::string& detail)
      : Error(ErrorFamily::Data, "eigensolver did not converge: " + detail) {}
};

struct KMismatch : Error {
  explicit KMismatch(const std::string& detail)
      : Error(ErrorFamily::Data, "cluster count mismatch across months: " + detail) {}
};

struct ItemSetMismatch : Error {
  explicit ItemSetMismatch(const std::string& detail)
      : Error(ErrorFamily::Data, "partitions cover different item sets: " + detail) {}
};

struct InsufficientData : Error {
  explicit InsufficientData(const std::string& detail)
      : Error(ErrorFamily::Data, "insufficient data: " + detail) {}
};

struct TooFewPrograms : Error {
  explicit TooFewPrograms(const std::string& detail)
      : Error(ErrorFamily::Data, "too few programs: " + detail) {}
};

// --- pipeline / CLI ---

struct MissingArtifact : Error {
  explicit MissingArtifact(const std::string& path)
      : Error(ErrorFamily::MissingArtifact, "missing stage artifact: " + path), path(path) {}
  std::string path;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& detail)
      : Error(ErrorFamily::Config, "bad configuration: " + detail) {}
};

struct SpecError : Error {
  explicit SpecError(const std::string& detail)
      : Error(ErrorFamily::Config, "bad synthetic corpus spec: " + detail) {}
};

}  // namespace newsbias
