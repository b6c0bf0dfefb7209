#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace chaos {

using ReportValue =
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string>;

/// Ordered key/value record. Keys keep insertion order in every output.
class ReportRow {
 public:
  ReportRow& set(std::string key, ReportValue value) {
    return assign(std::move(key), std::move(value));
  }
  template <class T>
  ReportRow& set(std::string key, const T& value) {
    if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::nullptr_t>) {
      return assign(std::move(key), ReportValue(value));
    } else if constexpr (std::is_integral_v<T>) {
      return assign(std::move(key), ReportValue(static_cast<std::int64_t>(value)));
    } else if constexpr (std::is_floating_point_v<T>) {
      return assign(std::move(key), ReportValue(static_cast<double>(value)));
    } else {
      return assign(std::move(key), ReportValue(std::string(value)));
    }
  }

  const std::vector<std::pair<std::string, ReportValue>>& fields() const noexcept {
    return fields_;
  }
  const ReportValue* find(const std::string& key) const;

 private:
  ReportRow& assign(std::string key, ReportValue value);

  std::vector<std::pair<std::string, ReportValue>> fields_;
};

struct Report {
  std::string command;
  ReportRow inputs;
  std::vector<ReportRow> rows;
};

/// Doubles are written with 17 significant digits; non-finite doubles as
/// null. Output is a pure function of the report contents.
std::string to_json(const Report& report);
/// One line per row; the header is the union of row keys in first-seen
/// order, prefixed by "command".
std::string to_csv(const Report& report);

std::string format_double(double v);

}  // namespace chaos
