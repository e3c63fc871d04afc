#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wts {

// Minimal JSON emitter with deterministic output: keys appear in insertion
// order, floats use 17 significant digits, indentation is two spaces.  This
// is what makes repeated runs byte-identical.
class JsonWriter {
public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();

  void key(std::string_view k);

  void value(double v);
  void value(int v);
  void value(long long v);
  void value(bool v);
  void value(std::string_view v);
  void value(const char* v) { value(std::string_view(v)); }
  void null_value();

  template <typename T>
  void field(std::string_view k, T v) {
    key(k);
    value(v);
  }
  void null_field(std::string_view k) {
    key(k);
    null_value();
  }

  const std::string& str() const { return out_; }

private:
  enum class Frame { Object, Array };
  void prepare_value();
  void newline_indent();

  std::string out_;
  std::vector<Frame> stack_;
  std::vector<bool> has_items_;
  bool key_pending_ = false;
};

std::string json_escape(std::string_view s);

}  // namespace wts
