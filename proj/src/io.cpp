#include "osclab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "osclab/errors.hpp"

namespace osclab {

std::string csv_num(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::parse, "cannot open " + path + " for writing");
  out << content;
  if (!out) fail(errc::parse, "write to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Manifest::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}
void Manifest::set(const std::string& key, double value) {
  entries_.emplace_back(key, csv_num(value));
}
void Manifest::set(const std::string& key, std::int64_t value) {
  entries_.emplace_back(key, std::to_string(value));
}
void Manifest::set(const std::string& key, int value) {
  entries_.emplace_back(key, std::to_string(value));
}

std::string Manifest::text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

void Manifest::write(const std::string& path) const {
  write_text_file(path, text());
}

}  // namespace osclab
