#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tokforge {

enum class ErrorKind {
  input,            // empty or unreadable input
  parameter,        // argument out of its valid range
  encoding,         // text cannot be represented by the vocabulary
  decoding,         // token id out of range
  consistency,      // two artifacts disagree (vocab vs plan, verdict vs eval set)
  config,           // unknown field, stage or option
  degenerate_input, // input too small for the requested operation
  undefined_ppl,    // perplexity of an empty document
  validation,       // record violates its schema
  scoring_parse,    // judge reply carries no usable score
  transport,        // endpoint unreachable after retries
  io,               // filesystem failure
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can report a structured error.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tokforge
