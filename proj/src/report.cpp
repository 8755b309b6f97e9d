#include "pspin/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace pspin {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    default:
      out += c;
    }
  }
  out += '"';
  return out;
}

} // namespace

void JsonWriter::add_raw(const std::string &key, std::string raw) {
  fields_.emplace_back(key, std::move(raw));
}

void JsonWriter::field(const std::string &key, double value) {
  add_raw(key, format_double(value));
}

void JsonWriter::field(const std::string &key, int value) {
  add_raw(key, std::to_string(value));
}

void JsonWriter::field(const std::string &key, std::int64_t value) {
  add_raw(key, std::to_string(value));
}

void JsonWriter::field(const std::string &key, bool value) {
  add_raw(key, value ? "true" : "false");
}

void JsonWriter::field(const std::string &key, const std::string &value) {
  add_raw(key, quote(value));
}

void JsonWriter::field_null(const std::string &key) { add_raw(key, "null"); }

void JsonWriter::field_array(const std::string &key,
                             std::span<const double> values) {
  std::string raw = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) {
      raw += ", ";
    }
    raw += format_double(values[i]);
  }
  raw += ']';
  add_raw(key, std::move(raw));
}

void JsonWriter::field_array(const std::string &key,
                             std::span<const int> values) {
  std::string raw = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) {
      raw += ", ";
    }
    raw += std::to_string(values[i]);
  }
  raw += ']';
  add_raw(key, std::move(raw));
}

void JsonWriter::field_vector_list(const std::string &key,
                                   std::span<const std::vector<double>> rows) {
  std::string raw = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) {
      raw += ", ";
    }
    raw += '[';
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) {
        raw += ", ";
      }
      raw += format_double(rows[i][j]);
    }
    raw += ']';
  }
  raw += ']';
  add_raw(key, std::move(raw));
}

std::string JsonWriter::text() const {
  std::string out;
  for (const auto &[key, raw] : fields_) {
    out += key;
    out += ": ";
    out += raw;
    out += '\n';
  }
  return out;
}

std::string JsonWriter::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) {
      out += ", ";
    }
    out += quote(fields_[i].first);
    out += ": ";
    out += fields_[i].second;
  }
  out += "}\n";
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : n_cols_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) {
      out_ += ',';
    }
    out_ += columns[i];
  }
  out_ += '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != n_cols_) {
    throw std::invalid_argument("CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) {
      out_ += ',';
    }
    out_ += format_double(values[i]);
  }
  out_ += '\n';
}

std::string CsvWriter::str() const { return out_; }

} // namespace pspin
