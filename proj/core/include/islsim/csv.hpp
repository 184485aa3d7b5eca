#pragma once

#include <concepts>
#include <ios>
#include <ostream>
#include <string>
#include <string_view>

namespace islsim {

/// Minimal CSV row writer. Floating-point values are written with 9 significant
/// digits; strings are written verbatim (callers keep them comma-free).
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((write_separator(first), write(fields)), ...);
    out_ << '\n';
  }

 private:
  void write_separator(bool& first) {
    if (!first) out_ << ',';
    first = false;
  }

  template <std::floating_point T>
  void write(T value) {
    const auto flags = out_.flags();
    const auto precision = out_.precision(9);
    out_.unsetf(std::ios::floatfield);
    out_ << static_cast<double>(value);
    out_.precision(precision);
    out_.flags(flags);
  }

  template <std::integral T>
  void write(T value) {
    out_ << value;
  }

  void write(std::string_view s) { out_ << s; }
  void write(const std::string& s) { out_ << s; }
  void write(const char* s) { out_ << s; }

  std::ostream& out_;
};

}  // namespace islsim
