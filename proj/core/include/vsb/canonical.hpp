#pragma once

#include <string>
#include <vector>

#include "vsb/molecule.hpp"

namespace vsb {

// Refined symmetry classes by iterative neighborhood refinement over the
// invariant (element, charge, degree, H count, aromatic, isotope). Equal
// class = topologically equivalent under this scheme. Stable under atom
// reordering. Not necessarily discrete.
std::vector<int> canonical_classes(const Molecule& mol);

// Canonical SMILES: invariant under input atom reordering. Remaining ties
// after refinement are resolved by exploring each candidate and keeping the
// lexicographically smallest string. Tetrahedral and double-bond stereo
// annotations are re-emitted in normalized form when include_stereo is set.
std::string canonical_smiles(const Molecule& mol, bool include_stereo = true);

}  // namespace vsb
