#pragma once

#include <string>
#include <string_view>

namespace tokforge {

/// Line-safe, reversible spelling of an arbitrary byte string.
///
/// Well-formed multi-byte UTF-8 passes through untouched so CJK tokens stay
/// readable in vocabulary files. Backslash, tab, newline and carriage return
/// use C escapes; other control bytes, DEL and every byte that is not part of
/// a complete UTF-8 sequence become `\xHH`.
[[nodiscard]] std::string escape_bytes(std::string_view bytes);

/// Inverse of escape_bytes. Throws Error(validation) on malformed escapes.
[[nodiscard]] std::string unescape_bytes(std::string_view escaped);

}  // namespace tokforge
