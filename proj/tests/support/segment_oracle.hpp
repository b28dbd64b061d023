#pragma once

// Arithmetic segmentation oracle: works on turn costs only.

#include <cstddef>
#include <vector>

namespace oracle {

struct SegmentShape {
  bool context = false;       // previous human turn copied in front
  bool context_loss = false;
  std::size_t first = 0;      // original turn range [first, last)
  std::size_t last = 0;
  bool truncated = false;
};

/// costs[i] is the token count of turn i; turns alternate human/assistant from 0.
inline std::vector<SegmentShape> segment_shapes(const std::vector<std::size_t>& costs, std::size_t budget) {
  std::size_t total = 0;
  for (auto c : costs) total += c;
  if (total <= budget) return {SegmentShape{false, false, 0, costs.size(), false}};
  std::vector<SegmentShape> out;
  std::size_t i = 0;
  while (i < costs.size()) {
    SegmentShape s;
    s.first = i;
    std::size_t room = budget;
    const bool assistant = i % 2 == 1;
    if (assistant) {
      const std::size_t own = costs[i] > budget ? budget : costs[i];
      if (costs[i - 1] + own <= budget) {
        s.context = true;
        room -= costs[i - 1];
      } else {
        s.context_loss = true;
      }
    }
    while (i < costs.size() && costs[i] <= room) room -= costs[i++];
    if (i == s.first) {
      s.truncated = true;
      ++i;
    }
    s.last = i;
    out.push_back(s);
  }
  return out;
}

}  // namespace oracle
