#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vsb/molecule.hpp"

namespace vsb {

struct SdfRecord {
  Molecule mol;
  std::map<std::string, std::string> fields;  // data items, verbatim
};

struct SdfError {
  std::size_t line = 0;  // 1-based line where the problem was detected
  std::string message;
};

struct SdfResult {
  std::vector<SdfRecord> records;
  std::vector<SdfError> errors;  // malformed blocks are skipped, not fatal
};

// V2000 reader. Bond type 4 maps to aromatic; the title line is captured as
// the molecule name (and source CID when it parses as an integer); the
// comment line is exposed under the reserved field key "COMMENT". Charges
// come from M CHG when present, else from the atom-block charge column.
// Neutral organic-subset atoms receive implicit hydrogens by standard
// valence; explicit H atoms are kept as atoms.
SdfResult read_sdf(std::istream& in);
SdfResult read_sdf_file(const std::string& path);

// V2000 writer (aromatic bonds emitted as type 4). Zero coordinates are
// written when the molecule carries none.
void write_sdf(std::ostream& out, const Molecule& mol,
               const std::map<std::string, std::string>& fields = {});

}  // namespace vsb
