#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arching/engine.hpp"
#include "arching/world.hpp"

namespace testing {

/// Step record with the given cells occupied by stationary agents 0..n-1.
inline arching::StepRecord stationary_record(int t, const std::vector<arching::Cell>& cells) {
  arching::StepRecord r;
  r.t = t;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    r.agents.push_back({static_cast<int>(i), cells[i], false, false});
  }
  return r;
}

/// Half-disk of the given radius resting on the row in front of the exit:
/// rows 1..radius, so its depth is `radius` and its base spans 2 radius + 1.
inline std::vector<arching::Cell> half_disk(int cx, int radius) {
  std::vector<arching::Cell> out;
  for (int y = 1; y <= radius; ++y) {
    for (int x = cx - radius; x <= cx + radius; ++x) {
      const int dx = x - cx;
      const int dy = y - 1;
      if (dx * dx + dy * dy <= radius * radius) out.push_back({x, y});
    }
  }
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("arching_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace testing
