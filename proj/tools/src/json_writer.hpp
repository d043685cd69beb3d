#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace citenorm::cli {

std::string json_escape(std::string_view s);

/// %.17g: enough digits that parsing the text recovers the exact double.
std::string format_real(double v);

/// Append-style writer for the fixed JSON shapes this tool emits; keys keep
/// insertion order and reals use format_real, so outputs diff cleanly.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  std::string str() const { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> need_comma_;
  bool pending_key_ = false;
};

}  // namespace citenorm::cli
