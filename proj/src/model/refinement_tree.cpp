#include "rae/model/refinement_tree.hpp"

namespace rae {

std::string render(const RefinementNode& node) {
  std::string out;
  switch (node.kind) {
    case RefinementNode::Kind::kTask:
      out = "T:";
      break;
    case RefinementNode::Kind::kMethod:
      out = node.retry ? "R:" : "M:";
      break;
    case RefinementNode::Kind::kCommand:
      out = "C:";
      break;
  }
  out += node.label;
  if (!node.children.empty()) {
    out += '[';
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i) out += ',';
      out += render(*node.children[i]);
    }
    out += ']';
  }
  return out;
}

}  // namespace rae
