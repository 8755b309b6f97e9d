#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Deterministic machine-readable output. The JSON writer keeps keys in
// insertion order and prints every floating-point number with 17 significant
// digits (%.17g), so identical inputs produce byte-identical bytes and the
// values round-trip exactly.

namespace pspin {

/// %.17g rendering of a double.
std::string format_double(double v);

class JsonWriter {
public:
  void field(const std::string &key, double value);
  void field(const std::string &key, int value);
  void field(const std::string &key, std::int64_t value);
  void field(const std::string &key, bool value);
  void field(const std::string &key, const std::string &value);
  void field_null(const std::string &key);
  void field_array(const std::string &key, std::span<const double> values);
  void field_array(const std::string &key, std::span<const int> values);
  /// Array of fixed-width numeric rows, e.g. a list of 3-vectors.
  void field_vector_list(const std::string &key,
                         std::span<const std::vector<double>> rows);

  /// Single-line JSON object followed by a newline.
  std::string str() const;

  /// "key: value" lines for --format text.
  std::string text() const;

private:
  void add_raw(const std::string &key, std::string raw);
  std::vector<std::pair<std::string, std::string>> fields_;
};

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(std::span<const double> values);
  std::string str() const;

private:
  std::size_t n_cols_;
  std::string out_;
};

} // namespace pspin
