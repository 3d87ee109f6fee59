#include "forge/attr_value.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "forge/error.hpp"

namespace forge {

AttrValue AttrValue::text(std::string v) {
  for (unsigned char c : v) {
    if (c < 0x20 || c == 0x7f) {
      throw_error(ErrorCategory::Validation,
                  "text attribute values must not contain control characters");
    }
  }
  return AttrValue(std::move(v));
}

AttrValue AttrValue::real(double v) {
  if (!std::isfinite(v)) {
    throw_error(ErrorCategory::Validation, "real attribute values must be finite");
  }
  return AttrValue(v);
}

std::string format_real(double v) {
  // nlohmann's dtoa emits the shortest representation that round-trips and
  // always includes '.' or 'e'.
  return nlohmann::json(v).dump();
}

std::string AttrValue::render() const {
  switch (kind()) {
    case Kind::Text: return as_text();
    case Kind::Integer: return std::to_string(as_integer());
    case Kind::Real: return format_real(as_real());
    case Kind::Boolean: return as_boolean() ? "true" : "false";
  }
  return {};
}

std::string_view to_string(AttrValue::Kind kind) {
  switch (kind) {
    case AttrValue::Kind::Text: return "text";
    case AttrValue::Kind::Integer: return "integer";
    case AttrValue::Kind::Real: return "real";
    case AttrValue::Kind::Boolean: return "boolean";
  }
  return "text";
}

}  // namespace forge
