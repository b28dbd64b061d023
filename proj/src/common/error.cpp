#include "tokforge/common/error.hpp"

namespace tokforge {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::encoding: return "encoding";
    case ErrorKind::decoding: return "decoding";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::config: return "config";
    case ErrorKind::degenerate_input: return "degenerate_input";
    case ErrorKind::undefined_ppl: return "undefined_ppl";
    case ErrorKind::validation: return "validation";
    case ErrorKind::scoring_parse: return "scoring_parse";
    case ErrorKind::transport: return "transport";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace tokforge
