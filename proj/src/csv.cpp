#include "wlmc/csv.hpp"

#include <fstream>

namespace wlmc::csv {

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split_line(line);
      first = false;
    } else {
      auto fields = split_line(line);
      if (fields.size() != table.header.size()) {
        throw ValidationError("malformed CSV row in '" + path + "'");
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw ValidationError("'" + path + "' has no CSV header");
  return table;
}

}  // namespace wlmc::csv
