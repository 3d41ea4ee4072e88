#include "rae/acting/trace_log.hpp"

#include <fstream>
#include <stdexcept>

namespace rae::acting {

void TraceLog::record(const std::string& json_object) {
  const std::size_t seq = lines_.size();
  std::string line = "{\"seq\":" + std::to_string(seq);
  if (json_object.size() > 2) line += "," + json_object.substr(1);
  else line += "}";
  lines_.push_back(std::move(line));
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  timing_.push_back("{\"seq\":" + std::to_string(seq) + ",\"wall_s\":" + std::to_string(wall) + "}");
}

void TraceLog::write(const std::filesystem::path& events, const std::filesystem::path& timing) const {
  auto dump = [](const std::filesystem::path& p, const std::vector<std::string>& lines) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    for (const auto& l : lines) out << l << '\n';
  };
  dump(events, lines_);
  dump(timing, timing_);
}

}  // namespace rae::acting
