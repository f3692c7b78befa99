#include "darboux/poly/context.hpp"

#include <set>

#include "darboux/poly/errors.hpp"

namespace darboux {

VariableContext::VariableContext(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables) {
    throw Error("a context holds at most " + std::to_string(kMaxVariables) + " variables");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error("empty variable name");
    if (!seen.insert(n).second) throw Error("duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> VariableContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VariableContext::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw UnknownVariable(std::string(name));
}

ContextPtr make_context(std::vector<std::string> names) {
  return std::make_shared<const VariableContext>(std::move(names));
}

const ContextPtr& standard_context() {
  static const ContextPtr ctx = make_context({"z", "y", "q", "p", "a", "x"});
  return ctx;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace darboux
