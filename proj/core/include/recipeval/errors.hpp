#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace recipeval {

// Root of the library's exception hierarchy. ValidationError maps to CLI
// exit code 1, EndpointError to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class EndpointError : public Error {
 public:
  using Error::Error;
};

struct NoContentTokens : ValidationError {
  explicit NoContentTokens(const std::string& raw)
      : ValidationError("ingredient has no alphabetic token: \"" + raw + "\"") {}
};

struct MissingColumn : ValidationError {
  explicit MissingColumn(const std::string& column)
      : ValidationError("required CSV column missing: " + column), column(column) {}
  std::string column;
};

struct TooFewRecipes : ValidationError {
  explicit TooFewRecipes(std::size_t got)
      : ValidationError("need at least 10 recipes to split, got " + std::to_string(got)) {}
};

struct EmptyReference : ValidationError {
  EmptyReference() : ValidationError("reference token stream is empty") {}
};

struct EmptyInput : ValidationError {
  explicit EmptyInput(const std::string& what = "input is empty") : ValidationError(what) {}
};

struct EmptyTrace : ValidationError {
  EmptyTrace() : ValidationError("log-probability trace is empty") {}
};

struct EmptyIngredientList : ValidationError {
  EmptyIngredientList() : ValidationError("recipe has no ingredients") {}
};

struct EmptySteps : ValidationError {
  EmptySteps() : ValidationError("no non-empty instruction steps") {}
};

struct SchemaViolation : ValidationError {
  SchemaViolation(std::size_t line, const std::string& reason)
      : ValidationError("allergen db line " + std::to_string(line) + ": " + reason),
        line(line),
        reason(reason) {}
  std::size_t line;
  std::string reason;
};

struct DuplicateAllergen : ValidationError {
  explicit DuplicateAllergen(const std::string& name)
      : ValidationError("duplicate allergen entry: " + name) {}
};

struct InvalidChunkParams : ValidationError {
  InvalidChunkParams(std::size_t size, std::size_t overlap)
      : ValidationError("chunk overlap " + std::to_string(overlap) +
                        " must be smaller than chunk size " + std::to_string(size)) {}
};

struct EmptyIndex : ValidationError {
  EmptyIndex() : ValidationError("vector index is empty") {}
};

struct EmptyField : ValidationError {
  explicit EmptyField(const std::string& field)
      : ValidationError("empty field: " + field), field(field) {}
  std::string field;
};

struct EmptyRecipe : ValidationError {
  EmptyRecipe() : ValidationError("recipe text is empty") {}
};

struct IdMismatch : ValidationError {
  IdMismatch(std::vector<std::string> gen_only, std::vector<std::string> ref_only)
      : ValidationError("generated/reference ids do not align (" +
                        std::to_string(gen_only.size()) + " generated-only, " +
                        std::to_string(ref_only.size()) + " reference-only)"),
        generated_only(std::move(gen_only)),
        reference_only(std::move(ref_only)) {}
  std::vector<std::string> generated_only;
  std::vector<std::string> reference_only;
};

struct ScorecardParseError : ValidationError {
  explicit ScorecardParseError(const std::string& reason)
      : ValidationError("scorecard parse failed: " + reason) {}
};

struct EndpointUnreachable : EndpointError {
  explicit EndpointUnreachable(const std::string& detail)
      : EndpointError("endpoint unreachable: " + detail) {}
};

struct AuthFailure : EndpointError {
  explicit AuthFailure(int status)
      : EndpointError("endpoint authentication failed (HTTP " + std::to_string(status) + ")") {}
};

struct MalformedResponse : EndpointError {
  explicit MalformedResponse(const std::string& detail)
      : EndpointError("malformed endpoint response: " + detail) {}
};

struct UnparseableAfterRetries : EndpointError {
  explicit UnparseableAfterRetries(int attempts)
      : EndpointError("no parseable scorecard after " + std::to_string(attempts) + " attempts") {}
};

}  // namespace recipeval
