#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rae {

/// Node of the refinement tree grown while a task is refined. Task nodes get
/// one method child per attempt (later attempts are flagged as retries);
/// method nodes get the tasks and commands their body emitted, in order.
struct RefinementNode {
  enum class Kind { kTask, kMethod, kCommand };

  Kind kind = Kind::kTask;
  std::string label;
  bool retry = false;
  std::optional<bool> succeeded;
  std::vector<std::unique_ptr<RefinementNode>> children;

  RefinementNode* add(Kind k, std::string lbl, bool is_retry = false) {
    auto node = std::make_unique<RefinementNode>();
    node->kind = k;
    node->label = std::move(lbl);
    node->retry = is_retry;
    children.push_back(std::move(node));
    return children.back().get();
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c->size();
    return n;
  }
};

/// Bracketed rendering, e.g. "T:drive(r1,tb1)[M:drive_method(r1,tb1)[C:move(r1,start,tb1)]]".
std::string render(const RefinementNode& node);

}  // namespace rae
