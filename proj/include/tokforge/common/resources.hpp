#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tokforge {

/// Prompt templates compiled into the binary from resources/templates/.
[[nodiscard]] std::string_view resource(std::string_view name);
[[nodiscard]] std::vector<std::string_view> resource_names();
/// SHA-256 of the embedded bytes; equals the hash of the shipped file.
[[nodiscard]] std::string resource_sha256(std::string_view name);

struct TemplateValue {
  std::string_view key;
  std::string_view value;
};

/// Replaces each `{key}` in the template with its value in one pass; values are
/// never rescanned, and unknown placeholders are left as written.
[[nodiscard]] std::string render_template(std::string_view tmpl, std::initializer_list<TemplateValue> values);

}  // namespace tokforge
