#include "rae/trial/analysis.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rae::trial {

using nlohmann::json;

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogError("cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<CallClusters> clusters_from_log(const std::vector<std::string>& lines) {
  std::vector<CallClusters> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    try {
      const json j = json::parse(lines[i]);
      CallClusters c;
      c.call = j.at("call").get<int>();
      c.task = j.at("task").get<std::string>();
      c.budget = j.at("budget").get<int>();
      std::vector<std::pair<std::string, double>> keyed;
      for (const auto& r : j.at("rollouts")) {
        keyed.emplace_back(r.at("path").get<std::string>(), r.at("utility").get<double>());
      }
      c.clusters = upom::cluster_paths(keyed);
      out.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw LogError(where + ": " + e.what());
    }
  }
  return out;
}

std::string heatmap_csv(const std::vector<CallClusters>& calls) {
  std::ostringstream csv;
  csv << "call,task,cluster,size,utility,success,clusters_in_call\n";
  for (const auto& c : calls) {
    for (std::size_t k = 0; k < c.clusters.size(); ++k) {
      const auto& cl = c.clusters[k];
      csv << c.call << ",\"" << c.task << "\"," << k << ',' << cl.size << ',' << json(cl.utility).dump() << ','
          << (cl.success ? 1 : 0) << ',' << c.clusters.size() << '\n';
    }
  }
  return csv.str();
}

ReplayResult replay_trace(const std::vector<std::string>& lines) {
  ReplayResult res;
  auto violation = [&](std::size_t line, const std::string& what) {
    res.violations.push_back("line " + std::to_string(line + 1) + ": " + what);
  };

  std::set<std::uint64_t> dispatched;
  std::set<std::uint64_t> terminated;
  std::map<std::uint64_t, int> owner;
  std::map<int, std::uint64_t> outstanding;
  std::set<int> planned;
  std::set<int> dispatching;
  std::int64_t time = 0;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    json ev;
    try {
      ev = json::parse(lines[i]);
    } catch (const json::exception& e) {
      violation(i, std::string("malformed event: ") + e.what());
      continue;
    }
    ++res.events;
    if (!ev.contains("seq") || ev["seq"] != i) violation(i, "sequence number out of order");
    const std::string kind = ev.value("event", "");
    if (ev.contains("time")) {
      const auto t = ev["time"].get<std::int64_t>();
      if (t < time) violation(i, "time decreased from " + std::to_string(time) + " to " + std::to_string(t));
      time = std::max(time, t);
    }
    if (kind == "plan") {
      planned.insert(ev["entry"].get<int>());
    } else if (kind == "dispatch") {
      ++res.dispatches;
      const auto id = ev["id"].get<std::uint64_t>();
      const int entry = ev["entry"].get<int>();
      if (!dispatched.insert(id).second) violation(i, "dispatch id " + std::to_string(id) + " reused");
      if (outstanding.count(entry)) violation(i, "entry " + std::to_string(entry) + " has two outstanding commands");
      outstanding[entry] = id;
      owner[id] = entry;
      if (dispatching.insert(entry).second && !planned.count(entry)) {
        violation(i, "dispatch without a preceding planner decision");
      }
    } else if (kind == "status") {
      const auto id = ev["id"].get<std::uint64_t>();
      if (!dispatched.count(id)) {
        violation(i, "status for unknown dispatch id " + std::to_string(id));
        continue;
      }
      const std::string st = ev.value("status", "");
      if (st == "success" || st == "failure") {
        if (!terminated.insert(id).second) violation(i, "second terminal status for " + std::to_string(id));
        outstanding.erase(owner[id]);
      } else if (st != "running") {
        violation(i, "unknown status '" + st + "'");
      } else if (terminated.count(id)) {
        violation(i, "running status after terminal status for " + std::to_string(id));
      }
    } else if (kind == "retry") {
      if (ev["attempt"].get<int>() > ev["max_attempts"].get<int>()) {
        violation(i, "attempt " + ev["attempt"].dump() + " exceeds retry bound for " + ev["method"].dump());
      }
    }
  }
  for (const auto& [entry, id] : outstanding) {
    res.violations.push_back("dispatch " + std::to_string(id) + " of entry " + std::to_string(entry) +
                             " never terminated");
  }
  return res;
}

}  // namespace rae::trial
