#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "lvbec/sweep.hpp"

namespace lvbec {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CurveTable& table, bool with_timestamp) {
  std::string out;
  out += "# " + table.provenance + "\n";
  if (with_timestamp) out += "# generated=" + table.timestamp + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += table.columns[c];
    out += ',';
  }
  out += "status\n#";
  for (std::size_t c = 0; c < table.units.size(); ++c) {
    out += table.units[c];
    out += ',';
  }
  out += "bitmask\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (double v : table.rows[r]) {
      out += format_double(v);
      out += ',';
    }
    out += std::to_string(table.row_status[r]);
    out += '\n';
  }
  return out;
}

void write_csv(const CurveTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw std::system_error(errno, std::generic_category(),
                            "cannot open " + path.string());
  }
  os << to_csv(table);
  if (!os) {
    throw std::system_error(errno, std::generic_category(),
                            "write failed for " + path.string());
  }
}

}  // namespace lvbec
