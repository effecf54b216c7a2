#pragma once

#include <string_view>

#include "vsb/molecule.hpp"

namespace vsb {

// Parses one SMILES record (OpenSMILES subset: organic-subset atoms,
// bracket atoms with isotope/chirality/H-count/charge, branches, ring
// closures incl. %nn, dots, bond symbols, directional bonds). Stereo marks
// are retained as annotations and do not alter the graph. Rings are
// perceived and implicit hydrogens resolved on return.
//
// Throws ParseError (with position) on syntax problems, ValenceError when
// an organic-subset atom exceeds its standard valence.
Molecule parse_smiles(std::string_view text);

}  // namespace vsb
