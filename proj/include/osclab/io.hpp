#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace osclab {

// fixed numeric formatting for CSV interchange (significant digits)
std::string csv_num(double v, int digits = 17);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// run manifest: flat "key = value" lines, insertion order
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::int64_t value);
  void set(const std::string& key, int value);
  std::string text() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace osclab
