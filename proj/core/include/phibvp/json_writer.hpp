#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phibvp {

// Minimal JSON document builder. Keys are emitted in insertion order and
// doubles are printed with %.17g, so equal inputs always produce identical
// bytes. Only what the diagnostics and certificate files need.
class JsonWriter {
 public:
  JsonWriter();

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();

  // Inside an object: emit "key": and expect a value next.
  void key(const std::string& name);

  void value(const std::string& s);
  void value(const char* s);
  void value(double x);
  void value(int x);
  void value(std::int64_t x);
  void value(bool b);
  void null();

  // Splices an already-rendered JSON value verbatim (for nesting one
  // document inside another without re-walking it).
  void raw_json(const std::string& rendered);

  void key_value(const std::string& name, const std::string& s);
  void key_value(const std::string& name, const char* s);
  void key_value(const std::string& name, double x);
  void key_value(const std::string& name, int x);
  void key_value(const std::string& name, bool b);
  void key_array(const std::string& name, const std::vector<double>& xs);
  void key_array(const std::string& name, const std::vector<int>& xs);

  const std::string& str() const { return out_; }

 private:
  void separator();
  void raw(const std::string& s);

  std::string out_;
  // True once something was written at the current nesting level, so the
  // next entry needs a comma first.
  std::vector<bool> has_entry_;
  bool pending_value_ = false;
};

std::string json_escape(const std::string& s);
std::string format_double(double x);

}  // namespace phibvp
