#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace btrob {

using CsvRow = std::vector<std::string>;

/// Writes one RFC 4180 row terminated by '\n'.
void write_csv_row(std::ostream& out, const CsvRow& row);

/// Reads every row of an RFC 4180 stream. Quoted fields may span lines.
std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace btrob
