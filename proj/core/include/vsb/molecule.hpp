#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vsb {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

// 1.5 for aromatic.
double bond_order_value(BondOrder order);
int bond_order_int(BondOrder order);  // aromatic counts as 1

enum class Chirality : std::uint8_t { None, Ccw, Cw };  // Ccw = '@'

// Directional single-bond annotation for double-bond geometry, stored
// relative to the bond's (a -> b) direction.
enum class BondDir : std::uint8_t { None, Up, Down };  // Up = '/'

struct Atom {
  int element = 0;        // atomic number, >= 1
  int formal_charge = 0;
  int explicit_h = 0;     // hydrogens carried on this atom (implicit-H model)
  int isotope = 0;        // 0 = natural abundance
  bool aromatic = false;
  Chirality chirality = Chirality::None;
};

struct Bond {
  int a = 0, b = 0;
  BondOrder order = BondOrder::Single;
  bool in_ring = false;     // derived at perception
  bool conjugated = false;  // derived at perception
  BondDir dir = BondDir::None;

  int other(int atom) const { return atom == a ? b : a; }
};

struct RingInfo {
  std::vector<std::vector<int>> atom_rings;  // SSSR cycles, atoms in order
  std::vector<std::vector<int>> bond_rings;  // parallel bond-index cycles
  std::size_t count() const { return atom_rings.size(); }
};

// Immutable perceived molecular graph. Built through MoleculeBuilder, which
// runs ring perception, aromatic-flag cleanup, implicit-H resolution and
// conjugation marking. All member functions are const and thread-safe.
class Molecule {
 public:
  Molecule() = default;

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  const Atom& atom(int i) const { return atoms_[i]; }
  const Bond& bond(int i) const { return bonds_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  const std::vector<int>& bonds_of(int atom) const { return adjacency_[atom]; }
  int degree(int atom) const { return static_cast<int>(adjacency_[atom].size()); }
  // Explicit-H-atom neighbors plus the implicit count.
  int total_h(int atom) const;
  int heavy_degree(int atom) const;  // neighbors excluding element-H atoms
  // Graph degree plus implicit hydrogens (what SMARTS 'X' sees).
  int total_degree(int atom) const { return degree(atom) + atoms_[atom].explicit_h; }
  const Bond* bond_between(int a, int b) const;  // nullptr if absent
  int neighbor(int atom, int k) const { return bonds_[adjacency_[atom][k]].other(atom); }

  double bond_order_sum(int atom) const;  // aromatic = 1.5, hydrogens excluded

  bool has_coords() const { return coords_.has_value(); }
  const std::vector<Vec3>& coords() const { return *coords_; }

  const RingInfo& rings() const { return rings_; }
  bool atom_in_ring(int i) const { return ring_membership_[i] > 0; }
  int ring_count_of_atom(int i) const { return ring_membership_[i]; }
  int smallest_ring_size(int i) const { return smallest_ring_[i]; }
  bool in_ring_of_size(int atom, int size) const;

  const std::string& name() const { return name_; }
  std::optional<long long> source_cid() const { return source_cid_; }

  // Neighbor slots of a chiral atom in input encounter order; -1 marks the
  // implicit-hydrogen slot. Empty when the atom carries no stereo mark.
  const std::vector<int>& stereo_order(int atom) const;

  bool empty() const { return atoms_.empty(); }

 private:
  friend class MoleculeBuilder;
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> stereo_orders_;
  RingInfo rings_;
  std::vector<int> ring_membership_;
  std::vector<int> smallest_ring_;
  std::optional<std::vector<Vec3>> coords_;
  std::string name_;
  std::optional<long long> source_cid_;
};

class MoleculeBuilder {
 public:
  // auto_h: resolve implicit hydrogens by standard valence at finish();
  // otherwise atom.explicit_h is taken as-is (bracket atoms, SDF atoms with
  // explicit hydrogens are added as real atoms by their readers).
  int add_atom(const Atom& atom, bool auto_h = false);
  void add_bond(int a, int b, BondOrder order, BondDir dir = BondDir::None);
  void set_coords(std::vector<Vec3> coords);
  void set_name(std::string name);
  void set_source_cid(long long cid);
  void set_stereo_order(int atom, std::vector<int> slots);
  bool has_bond(int a, int b) const;
  int atom_count() const { return static_cast<int>(atoms_.size()); }

  // Validates the graph, perceives rings, demotes out-of-ring aromatic
  // marks, resolves implicit hydrogens, derives conjugation.
  // Throws ValenceError when an auto-H atom exceeds its standard valence.
  Molecule finish();

 private:
  std::vector<Atom> atoms_;
  std::vector<bool> auto_h_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> stereo_orders_;
  std::optional<std::vector<Vec3>> coords_;
  std::string name_;
  std::optional<long long> source_cid_;
};

// ---- structure operations (pure) ----

// Rewrites every ring satisfying the 4n+2 rule over pi-capable atoms to
// aromatic bonds/atoms. Idempotent; never changes atom count, bond count,
// or formal charges.
Molecule aromatize(const Molecule& mol);

// Charge neutralization: positive atoms with enough hydrogens and no
// negatively charged neighbor lose their charge (H count drops by the
// charge); negative atoms with no positively charged neighbor gain
// hydrogens. Adjacent +/- pairs and no-H cations are preserved.
Molecule neutralize(const Molecule& mol);

// Connected components as independent, re-perceived molecules.
std::vector<Molecule> split_fragments(const Molecule& mol);

// Sum of atomic weights including implicit and explicit hydrogens, Da.
double molecular_weight(const Molecule& mol);

// Converts implicit hydrogens into explicit H atoms (appended after the
// existing atoms, in atom order). Coordinates, if any, are dropped since
// new atoms have no positions.
Molecule add_explicit_hydrogens(const Molecule& mol);

// All-pairs topological distance in bonds; -1 for disconnected pairs.
std::vector<std::vector<int>> bond_distance_matrix(const Molecule& mol);

}  // namespace vsb
