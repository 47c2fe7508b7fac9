#pragma once

#include <complex>
#include <string>
#include <vector>

namespace bergman {

// Decimal rendering with 17 significant digits; round-trips doubles and is
// byte-stable across runs and job counts.
std::string format_double(double v);
std::string format_int(long long v);

// Minimal deterministic JSON writer (we control every emitted byte, so
// serialized reports compare byte-for-byte).
class JsonWriter {
 public:
  std::string take() { return out_; }

  void begin_object() { out_ += '{'; fresh_ = true; }
  void end_object() { out_ += '}'; fresh_ = false; }
  void begin_array() { out_ += '['; fresh_ = true; }
  void end_array() { out_ += ']'; fresh_ = false; }
  void key(const std::string& k);
  void value(double v);
  void value(long long v);
  void value(int v) { value(static_cast<long long>(v)); }
  void value(bool v);
  void value(const std::string& s);
  void raw(const std::string& s) { comma(); out_ += s; fresh_ = false; }

 private:
  void comma();
  std::string out_;
  bool fresh_ = true;
};

// CSV assembly: mandatory header, one row per record.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  std::string take() { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

}  // namespace bergman
