#include "tokforge/common/resources.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/hash.hpp"

namespace tokforge {

namespace detail {
struct EmbeddedResource {
  const char* name;
  const unsigned char* data;
  std::size_t size;
};
// Defined in the generated embedded_resources.cpp.
extern const EmbeddedResource kEmbeddedResources[];
extern const std::size_t kEmbeddedResourceCount;
}  // namespace detail

std::string_view resource(std::string_view name) {
  for (std::size_t i = 0; i < detail::kEmbeddedResourceCount; ++i) {
    const auto& r = detail::kEmbeddedResources[i];
    if (name == r.name) return {reinterpret_cast<const char*>(r.data), r.size};
  }
  throw Error(ErrorKind::config, fmt::format("unknown resource '{}'", name));
}

std::vector<std::string_view> resource_names() {
  std::vector<std::string_view> names;
  for (std::size_t i = 0; i < detail::kEmbeddedResourceCount; ++i) names.emplace_back(detail::kEmbeddedResources[i].name);
  return names;
}

std::string resource_sha256(std::string_view name) { return sha256_hex(resource(name)); }

std::string render_template(std::string_view tmpl, std::initializer_list<TemplateValue> values) {
  std::string out;
  out.reserve(tmpl.size() + 256);
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const std::string_view key = tmpl.substr(i + 1, close - i - 1);
        const auto it = std::find_if(values.begin(), values.end(), [&](const TemplateValue& v) { return v.key == key; });
        if (it != values.end()) {
          out.append(it->value);
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

}  // namespace tokforge
