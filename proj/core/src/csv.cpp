#include "uwdgos/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "uwdgos/errors.hpp"

namespace uwdgos {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n\"");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_number(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // Print zero without a sign so tiny negative rounding does not change file bytes.
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::vector<double> read_column(std::istream& in, const std::vector<std::string>& headers) {
  std::string line;
  bool have_header = false;
  std::vector<double> values;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string cell = strip(line);
    if (cell.empty() || cell[0] == '#') continue;
    if (!have_header) {
      if (std::find(headers.begin(), headers.end(), cell) == headers.end()) {
        std::string want;
        for (const auto& h : headers) want += (want.empty() ? "" : " or ") + h;
        throw ParseError("expected a one-column CSV with header " + want + ", got '" + cell + "'");
      }
      have_header = true;
      continue;
    }
    if (cell.find(',') != std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected one column");
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
    }
  }
  if (!have_header) throw ParseError("CSV input is empty");
  return values;
}

std::vector<double> read_column_file(const std::string& path, const std::vector<std::string>& headers) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_column(in, headers);
}

void write_sample(std::ostream& out, const DgosSample& sample) {
  out << "x\n";
  // Round-trip exact: samples feed later likelihood evaluations.
  char buf[64];
  for (double v : sample.values()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

DgosSample read_sample(std::istream& in) { return DgosSample(read_column(in, {"x"})); }

void write_chains(std::ostream& out, const std::vector<PosteriorDraws>& chains) {
  out << "chain,iteration,alpha,beta\n";
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& d = chains[c];
    for (std::size_t i = 0; i < d.alpha.size(); ++i) {
      out << c << ',' << d.iteration[i] << ',' << format_number(d.alpha[i]) << ',' << format_number(d.beta[i]) << '\n';
    }
  }
}

}  // namespace uwdgos
