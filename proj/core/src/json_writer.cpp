#include "wts/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wts {

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void JsonWriter::newline_indent() {
  out_ += '\n';
  out_.append(stack_.size() * 2, ' ');
}

void JsonWriter::prepare_value() {
  if (stack_.empty()) {
    if (!out_.empty()) throw std::logic_error("multiple top-level JSON values");
    return;
  }
  if (stack_.back() == Frame::Object) {
    if (!key_pending_) throw std::logic_error("object value needs a key");
    key_pending_ = false;
    return;
  }
  if (has_items_.back()) out_ += ',';
  has_items_.back() = true;
  newline_indent();
}

void JsonWriter::begin_object() {
  prepare_value();
  out_ += '{';
  stack_.push_back(Frame::Object);
  has_items_.push_back(false);
}

void JsonWriter::end_object() {
  if (stack_.empty() || stack_.back() != Frame::Object) {
    throw std::logic_error("mismatched end_object");
  }
  bool had = has_items_.back();
  stack_.pop_back();
  has_items_.pop_back();
  if (had) newline_indent();
  out_ += '}';
}

void JsonWriter::begin_array() {
  prepare_value();
  out_ += '[';
  stack_.push_back(Frame::Array);
  has_items_.push_back(false);
}

void JsonWriter::end_array() {
  if (stack_.empty() || stack_.back() != Frame::Array) {
    throw std::logic_error("mismatched end_array");
  }
  bool had = has_items_.back();
  stack_.pop_back();
  has_items_.pop_back();
  if (had) newline_indent();
  out_ += ']';
}

void JsonWriter::key(std::string_view k) {
  if (stack_.empty() || stack_.back() != Frame::Object) {
    throw std::logic_error("key outside of object");
  }
  if (key_pending_) throw std::logic_error("consecutive keys");
  if (has_items_.back()) out_ += ',';
  has_items_.back() = true;
  newline_indent();
  out_ += '"';
  out_ += json_escape(k);
  out_ += "\": ";
  key_pending_ = true;
}

void JsonWriter::value(double v) {
  prepare_value();
  if (std::isnan(v) || std::isinf(v)) {
    out_ += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out_ += buf;
}

void JsonWriter::value(int v) { value(static_cast<long long>(v)); }

void JsonWriter::value(long long v) {
  prepare_value();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
  prepare_value();
  out_ += v ? "true" : "false";
}

void JsonWriter::value(std::string_view v) {
  prepare_value();
  out_ += '"';
  out_ += json_escape(v);
  out_ += '"';
}

void JsonWriter::null_value() {
  prepare_value();
  out_ += "null";
}

}  // namespace wts
