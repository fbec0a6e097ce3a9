#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uwdgos/dgos.hpp"
#include "uwdgos/mcmc.hpp"

namespace uwdgos {

/// Fixed-point formatting used by every file this library writes.
std::string format_number(double v, int decimals = 6);

/// Reads a one-column CSV whose header is one of `headers`. Blank lines and lines starting
/// with '#' are skipped. Throws ParseError on a missing/unknown header or a non-numeric cell.
std::vector<double> read_column(std::istream& in, const std::vector<std::string>& headers);
std::vector<double> read_column_file(const std::string& path, const std::vector<std::string>& headers);

/// One-column CSV with header `x`, values in stored (descending) order.
void write_sample(std::ostream& out, const DgosSample& sample);
DgosSample read_sample(std::istream& in);

/// Columns chain,iteration,alpha,beta.
void write_chains(std::ostream& out, const std::vector<PosteriorDraws>& chains);

}  // namespace uwdgos
