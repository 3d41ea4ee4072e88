#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace rae {

/// A bound argument: identifiers are strings, joint angles and the like are
/// doubles.
using Value = std::variant<std::int64_t, double, std::string>;
using Args = std::vector<Value>;

std::string to_string(const Value& v);
std::string to_string(const Args& args);

const std::string& as_string(const Value& v);
double as_double(const Value& v);

struct TaskSignature {
  std::string name;
  Args args;

  bool operator==(const TaskSignature&) const = default;
  std::string key() const { return name + to_string(args); }
};

struct CommandCall {
  std::string name;
  Args args;

  bool operator==(const CommandCall&) const = default;
  std::string key() const { return name + to_string(args); }
};

}  // namespace rae
