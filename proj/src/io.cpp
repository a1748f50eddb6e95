#include "uavcov/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "uavcov/error.hpp"

namespace uavcov::io {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write failed for " + path.string());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text,
                                                std::string_view header) {
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  const auto expected = split_fields(header);
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = trim(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
    ++line_no;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (!seen_header) {
      if (fields != expected) {
        throw InputError("unexpected CSV header '" + std::string(line) + "', expected '" +
                         std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != expected.size()) {
      throw InputError("CSV line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(expected.size()));
    }
    rows.push_back(std::move(fields));
  }
  if (!seen_header) throw InputError("CSV document is missing header '" + std::string(header) + "'");
  return rows;
}

long long parse_int(const std::string& field) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw InputError("not an integer: '" + field + "'");
  return value;
}

double parse_double(const std::string& field) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw InputError("not a number: '" + field + "'");
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw InputError("cannot format number");
  return std::string(buf, ptr);
}

}  // namespace uavcov::io
