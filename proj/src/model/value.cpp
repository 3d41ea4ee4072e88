#include "rae/model/value.hpp"

#include <charconv>
#include <stdexcept>

namespace rae {

std::string to_string(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), *d);
    return std::string(buf, end);
  }
  return std::get<std::string>(v);
}

std::string to_string(const Args& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += to_string(args[i]);
  }
  return out + ")";
}

const std::string& as_string(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw std::invalid_argument("expected an identifier argument, got " + to_string(v));
}

double as_double(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw std::invalid_argument("expected a numeric argument, got '" + std::get<std::string>(v) + "'");
}

}  // namespace rae
