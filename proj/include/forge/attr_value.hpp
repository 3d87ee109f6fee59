#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace forge {

// Tagged attribute value: text, integer, real, or boolean. Reals must be
// finite; text must not contain control characters.
class AttrValue {
public:
  enum class Kind { Text, Integer, Real, Boolean };

  AttrValue() : value_(std::int64_t{0}) {}

  static AttrValue text(std::string v);
  static AttrValue integer(std::int64_t v) { return AttrValue(v); }
  static AttrValue real(double v);
  static AttrValue boolean(bool v) { return AttrValue(v); }

  Kind kind() const noexcept { return static_cast<Kind>(value_.index()); }
  bool is_text() const noexcept { return kind() == Kind::Text; }
  bool is_integer() const noexcept { return kind() == Kind::Integer; }
  bool is_real() const noexcept { return kind() == Kind::Real; }
  bool is_boolean() const noexcept { return kind() == Kind::Boolean; }

  const std::string& as_text() const { return std::get<std::string>(value_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
  double as_real() const { return std::get<double>(value_); }
  bool as_boolean() const { return std::get<bool>(value_); }

  // Canonical textual rendering: shortest round-trip decimals, booleans as
  // true/false. Used by textualizers and answer rendering.
  std::string render() const;

  bool operator==(const AttrValue& other) const { return value_ == other.value_; }
  bool operator!=(const AttrValue& other) const { return !(*this == other); }

private:
  explicit AttrValue(std::string v) : value_(std::move(v)) {}
  explicit AttrValue(std::int64_t v) : value_(v) {}
  explicit AttrValue(double v) : value_(v) {}
  explicit AttrValue(bool v) : value_(v) {}

  // Variant order defines Kind numbering.
  std::variant<std::string, std::int64_t, double, bool> value_;
};

// Attribute maps are lexicographically ordered by name so every rendering
// and serialization of a graph is deterministic.
using AttrMap = std::map<std::string, AttrValue>;

// Shortest round-trip decimal for a double, always carrying a '.' or
// exponent so the real/integer distinction survives parsing.
std::string format_real(double v);

std::string_view to_string(AttrValue::Kind kind);

}  // namespace forge
