#pragma once

#include <string>
#include <string_view>

#include "accwb/circuit.hpp"
#include "accwb/truth_table.hpp"

namespace accwb {

/// Netlist text, one item per line:
///
///   circuit <ident> inputs <n>
///   <id> = INPUT <k> | CONST <0|1> | NOT <id> | AND <id>+ | OR <id>+ | MOD <m> <id>+
///   output <id>
///
/// Lines starting with '#' and blank lines are ignored. Throws ParseError
/// (Syntax or Semantic) with the offending position.
Circuit parse_circuit(std::string_view text);

/// Canonical form: gates in id order, single spaces, LF endings.
std::string serialize_circuit(const Circuit& circuit);

/// "tt n=<n>\n" followed by ceil(2^n / 8) bytes, table index i at byte i / 8,
/// bit i % 8. Unused bits of the last byte must be zero.
TruthTable read_truthtable(std::string_view bytes);
std::string write_truthtable(const TruthTable& table);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

Circuit load_circuit(const std::string& path);

}  // namespace accwb
