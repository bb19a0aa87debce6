#include "phibvp/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace phibvp {

std::string json_escape(const std::string& s) {
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

std::string format_double(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e400" : "-1e400";  // out-of-range literal, parses as inf
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

JsonWriter::JsonWriter() { has_entry_.push_back(false); }

void JsonWriter::raw(const std::string& s) { out_ += s; }

void JsonWriter::separator() {
  if (pending_value_) {
    pending_value_ = false;
    return;
  }
  if (has_entry_.back()) raw(",");
  has_entry_.back() = true;
}

void JsonWriter::begin_object() {
  separator();
  raw("{");
  has_entry_.push_back(false);
}

void JsonWriter::end_object() {
  has_entry_.pop_back();
  raw("}");
}

void JsonWriter::begin_array() {
  separator();
  raw("[");
  has_entry_.push_back(false);
}

void JsonWriter::end_array() {
  has_entry_.pop_back();
  raw("]");
}

void JsonWriter::key(const std::string& name) {
  separator();
  raw("\"" + json_escape(name) + "\":");
  pending_value_ = true;
}

void JsonWriter::value(const std::string& s) {
  separator();
  raw("\"" + json_escape(s) + "\"");
}

void JsonWriter::value(const char* s) { value(std::string(s)); }

void JsonWriter::value(double x) {
  separator();
  raw(format_double(x));
}

void JsonWriter::value(int x) {
  separator();
  raw(std::to_string(x));
}

void JsonWriter::value(std::int64_t x) {
  separator();
  raw(std::to_string(x));
}

void JsonWriter::value(bool b) {
  separator();
  raw(b ? "true" : "false");
}

void JsonWriter::null() {
  separator();
  raw("null");
}

void JsonWriter::raw_json(const std::string& rendered) {
  separator();
  raw(rendered);
}

void JsonWriter::key_value(const std::string& name, const std::string& s) {
  key(name);
  value(s);
}

void JsonWriter::key_value(const std::string& name, const char* s) {
  key(name);
  value(s);
}

void JsonWriter::key_value(const std::string& name, double x) {
  key(name);
  value(x);
}

void JsonWriter::key_value(const std::string& name, int x) {
  key(name);
  value(x);
}

void JsonWriter::key_value(const std::string& name, bool b) {
  key(name);
  value(b);
}

void JsonWriter::key_array(const std::string& name, const std::vector<double>& xs) {
  key(name);
  begin_array();
  for (double x : xs) value(x);
  end_array();
}

void JsonWriter::key_array(const std::string& name, const std::vector<int>& xs) {
  key(name);
  begin_array();
  for (int x : xs) value(x);
  end_array();
}

}  // namespace phibvp
