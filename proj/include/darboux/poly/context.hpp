#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace darboux {

inline constexpr std::size_t kMaxVariables = 8;

/// Ordered, immutable list of variable names. Every polynomial refers to
/// exactly one context; the order fixes the monomial order.
class VariableContext {
 public:
  explicit VariableContext(std::vector<std::string> names);

  std::size_t arity() const { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Like index_of but throws UnknownVariable.
  std::size_t require(std::string_view name) const;

  bool operator==(const VariableContext& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

ContextPtr make_context(std::vector<std::string> names);

/// The shared context used for every catalog object: z, y, q, p, a, x.
/// The first five follow the normal-form systems; x is the state variable
/// of the introductory systems.
const ContextPtr& standard_context();

bool same_context(const ContextPtr& a, const ContextPtr& b);

}  // namespace darboux
