#include "chaos/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace chaos {
namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

struct JsonScalar {
  std::string operator()(std::nullptr_t) const { return "null"; }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(std::int64_t i) const { return std::to_string(i); }
  std::string operator()(double d) const {
    return std::isfinite(d) ? format_double(d) : "null";
  }
  std::string operator()(const std::string& s) const { return json_string(s); }
};

struct CsvScalar {
  std::string operator()(std::nullptr_t) const { return ""; }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(std::int64_t i) const { return std::to_string(i); }
  std::string operator()(double d) const { return format_double(d); }
  std::string operator()(const std::string& s) const {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }
};

void write_object(std::ostringstream& os, const ReportRow& row,
                  const std::string& indent) {
  if (row.fields().empty()) {
    os << "{}";
    return;
  }
  os << "{\n";
  for (std::size_t i = 0; i < row.fields().size(); ++i) {
    const auto& [key, value] = row.fields()[i];
    os << indent << "  " << json_string(key) << ": " << std::visit(JsonScalar{}, value);
    os << (i + 1 < row.fields().size() ? ",\n" : "\n");
  }
  os << indent << "}";
}

}  // namespace

ReportRow& ReportRow::assign(std::string key, ReportValue value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

const ReportValue* ReportRow::find(const std::string& key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const Report& report) {
  std::ostringstream os;
  os << "{\n  \"command\": " << json_string(report.command) << ",\n  \"inputs\": ";
  write_object(os, report.inputs, "  ");
  os << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    os << (i ? ",\n    " : "\n    ");
    write_object(os, report.rows[i], "    ");
  }
  os << (report.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

std::string to_csv(const Report& report) {
  std::vector<std::string> header;
  for (const auto& row : report.rows) {
    for (const auto& [k, v] : row.fields()) {
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    }
  }
  std::ostringstream os;
  os << "command";
  for (const auto& h : header) os << ',' << CsvScalar{}(h);
  os << '\n';
  for (const auto& row : report.rows) {
    os << CsvScalar{}(report.command);
    for (const auto& h : header) {
      os << ',';
      if (const auto* v = row.find(h)) os << std::visit(CsvScalar{}, *v);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace chaos
