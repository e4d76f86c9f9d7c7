#include "tailweight/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace tailweight {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SortedSample read_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    if (line[begin] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(begin, end - begin + 1);
    double v = 0.0;
    try {
      std::size_t pos = 0;
      v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError(path + ": line " + std::to_string(lineno) +
                       ": not a number: '" + tok + "'");
    }
    if (!(v > 0.0) || !std::isfinite(v))
      throw ParseError(path + ": line " + std::to_string(lineno) +
                       ": values must be positive and finite, got " + tok);
    values.push_back(v);
  }
  if (values.size() < 3)
    throw ParseError(path + ": needs at least 3 positive values, found " +
                     std::to_string(values.size()));
  return SortedSample::from_data(std::move(values));
}

}  // namespace tailweight
