#include "vsb/molecule.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

#include "vsb/element.hpp"
#include "vsb/errors.hpp"

namespace vsb {

double bond_order_value(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1.0;
    case BondOrder::Double: return 2.0;
    case BondOrder::Triple: return 3.0;
    case BondOrder::Aromatic: return 1.5;
  }
  return 1.0;
}

int bond_order_int(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1;
    case BondOrder::Double: return 2;
    case BondOrder::Triple: return 3;
    case BondOrder::Aromatic: return 1;
  }
  return 1;
}

int Molecule::total_h(int atom) const {
  int n = atoms_[atom].explicit_h;
  for (int b : adjacency_[atom])
    if (atoms_[bonds_[b].other(atom)].element == elem::H) ++n;
  return n;
}

int Molecule::heavy_degree(int atom) const {
  int n = 0;
  for (int b : adjacency_[atom])
    if (atoms_[bonds_[b].other(atom)].element != elem::H) ++n;
  return n;
}

const Bond* Molecule::bond_between(int a, int b) const {
  for (int i : adjacency_[a]) {
    const Bond& bd = bonds_[i];
    if (bd.other(a) == b) return &bd;
  }
  return nullptr;
}

double Molecule::bond_order_sum(int atom) const {
  double s = 0.0;
  for (int b : adjacency_[atom]) s += bond_order_value(bonds_[b].order);
  return s;
}

bool Molecule::in_ring_of_size(int atom, int size) const {
  for (const auto& ring : rings_.atom_rings)
    if (static_cast<int>(ring.size()) == size &&
        std::find(ring.begin(), ring.end(), atom) != ring.end())
      return true;
  return false;
}

const std::vector<int>& Molecule::stereo_order(int atom) const {
  static const std::vector<int> empty;
  if (atom >= static_cast<int>(stereo_orders_.size())) return empty;
  return stereo_orders_[atom];
}

// ---------------------------------------------------------------------------
// builder

int MoleculeBuilder::add_atom(const Atom& atom, bool auto_h) {
  if (atom.element < 1) throw DataError("atom with element < 1");
  if (atom.explicit_h < 0) throw DataError("negative hydrogen count");
  atoms_.push_back(atom);
  auto_h_.push_back(auto_h);
  stereo_orders_.emplace_back();
  return static_cast<int>(atoms_.size()) - 1;
}

void MoleculeBuilder::add_bond(int a, int b, BondOrder order, BondDir dir) {
  int n = static_cast<int>(atoms_.size());
  if (a < 0 || b < 0 || a >= n || b >= n)
    throw DataError("bond endpoint out of range");
  if (a == b) throw DataError("self-bond");
  if (has_bond(a, b)) throw DataError("duplicate bond");
  Bond bd;
  bd.a = a;
  bd.b = b;
  bd.order = order;
  bd.dir = dir;
  bonds_.push_back(bd);
}

bool MoleculeBuilder::has_bond(int a, int b) const {
  for (const Bond& bd : bonds_)
    if ((bd.a == a && bd.b == b) || (bd.a == b && bd.b == a)) return true;
  return false;
}

void MoleculeBuilder::set_coords(std::vector<Vec3> coords) {
  coords_ = std::move(coords);
}

void MoleculeBuilder::set_name(std::string name) { name_ = std::move(name); }

void MoleculeBuilder::set_source_cid(long long cid) { source_cid_ = cid; }

void MoleculeBuilder::set_stereo_order(int atom, std::vector<int> slots) {
  stereo_orders_[atom] = std::move(slots);
}

namespace {

// Shortest cycle through each bond, then a greedy GF(2)-independent subset
// of the smallest candidates up to the cycle-space dimension.
RingInfo perceive_sssr(const std::vector<Atom>& atoms,
                       const std::vector<Bond>& bonds,
                       const std::vector<std::vector<int>>& adj) {
  const int natoms = static_cast<int>(atoms.size());
  const int nbonds = static_cast<int>(bonds.size());
  RingInfo info;
  if (natoms == 0 || nbonds == 0) return info;

  // components
  std::vector<int> comp(natoms, -1);
  int ncomp = 0;
  for (int s = 0; s < natoms; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int bi : adj[u]) {
        int v = bonds[bi].other(u);
        if (comp[v] < 0) {
          comp[v] = ncomp;
          q.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  int dim = nbonds - natoms + ncomp;
  if (dim <= 0) return info;

  struct Candidate {
    std::vector<int> atom_cycle;
    std::vector<int> bond_cycle;
    std::vector<int> key;  // sorted bond ids
  };
  std::vector<Candidate> cands;
  std::set<std::vector<int>> seen;

  std::vector<int> parent_atom(natoms), parent_bond(natoms), dist(natoms);
  for (int bi = 0; bi < nbonds; ++bi) {
    int src = bonds[bi].a, dst = bonds[bi].b;
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    parent_atom[src] = -1;
    std::deque<int> q{src};
    bool found = false;
    while (!q.empty() && !found) {
      int u = q.front();
      q.pop_front();
      for (int bj : adj[u]) {
        if (bj == bi) continue;
        int v = bonds[bj].other(u);
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        parent_atom[v] = u;
        parent_bond[v] = bj;
        if (v == dst) {
          found = true;
          break;
        }
        q.push_back(v);
      }
    }
    if (!found) continue;  // bridge bond
    Candidate c;
    for (int v = dst; v != -1; v = parent_atom[v]) {
      c.atom_cycle.push_back(v);
      if (parent_atom[v] != -1) c.bond_cycle.push_back(parent_bond[v]);
    }
    c.bond_cycle.push_back(bi);
    c.key = c.bond_cycle;
    std::sort(c.key.begin(), c.key.end());
    if (seen.insert(c.key).second) cands.push_back(std::move(c));
  }

  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& x, const Candidate& y) {
                     if (x.key.size() != y.key.size())
                       return x.key.size() < y.key.size();
                     return x.key < y.key;
                   });

  // incremental GF(2) row reduction over bond-index bitsets
  const std::size_t words = (static_cast<std::size_t>(nbonds) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> basis;  // reduced rows
  auto lowest_bit = [&](const std::vector<std::uint64_t>& row) -> int {
    for (std::size_t w = 0; w < words; ++w)
      if (row[w]) return static_cast<int>(w * 64 + __builtin_ctzll(row[w]));
    return -1;
  };
  std::vector<int> pivots;
  int taken = 0;
  for (const Candidate& c : cands) {
    if (taken == dim) break;
    std::vector<std::uint64_t> row(words, 0);
    for (int b : c.bond_cycle) row[b / 64] |= 1ULL << (b % 64);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      int p = pivots[k];
      if (row[p / 64] & (1ULL << (p % 64)))
        for (std::size_t w = 0; w < words; ++w) row[w] ^= basis[k][w];
    }
    int p = lowest_bit(row);
    if (p < 0) continue;  // dependent
    basis.push_back(row);
    pivots.push_back(p);
    info.atom_rings.push_back(c.atom_cycle);
    info.bond_rings.push_back(c.bond_cycle);
    ++taken;
  }
  return info;
}

bool has_incident(const std::vector<Bond>& bonds,
                  const std::vector<std::vector<int>>& adj, int atom,
                  BondOrder order, int skip = -1) {
  for (int bi : adj[atom])
    if (bi != skip && bonds[bi].order == order) return true;
  return false;
}

}  // namespace

Molecule MoleculeBuilder::finish() {
  Molecule m;
  m.atoms_ = std::move(atoms_);
  m.bonds_ = std::move(bonds_);
  m.stereo_orders_ = std::move(stereo_orders_);
  m.name_ = std::move(name_);
  m.source_cid_ = source_cid_;
  const int n = m.atom_count();

  if (coords_) {
    if (static_cast<int>(coords_->size()) != n)
      throw DataError("coordinate count differs from atom count");
    m.coords_ = std::move(coords_);
  }

  m.adjacency_.assign(n, {});
  for (int i = 0; i < m.bond_count(); ++i) {
    m.adjacency_[m.bonds_[i].a].push_back(i);
    m.adjacency_[m.bonds_[i].b].push_back(i);
  }

  m.rings_ = perceive_sssr(m.atoms_, m.bonds_, m.adjacency_);
  m.ring_membership_.assign(n, 0);
  m.smallest_ring_.assign(n, 0);
  for (const auto& bond_ring : m.rings_.bond_rings)
    for (int bi : bond_ring) m.bonds_[bi].in_ring = true;
  for (const auto& ring : m.rings_.atom_rings) {
    int sz = static_cast<int>(ring.size());
    for (int a : ring) {
      ++m.ring_membership_[a];
      if (m.smallest_ring_[a] == 0 || sz < m.smallest_ring_[a])
        m.smallest_ring_[a] = sz;
    }
  }

  // Aromatic bonds must lie in rings; stray marks are demoted to single.
  // Atom flags are then derived entirely from the surviving bonds, which
  // also picks up atoms that arrived via SDF bond code 4.
  for (Bond& b : m.bonds_)
    if (b.order == BondOrder::Aromatic && !b.in_ring) b.order = BondOrder::Single;
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int bi : m.adjacency_[i])
      if (m.bonds_[bi].order == BondOrder::Aromatic) any = true;
    m.atoms_[i].aromatic = any;
  }

  // implicit hydrogens
  for (int i = 0; i < n; ++i) {
    if (i >= static_cast<int>(auto_h_.size()) || !auto_h_[i]) continue;
    Atom& a = m.atoms_[i];
    int bond_sum = 0;
    bool any_aromatic_bond = false, any_multiple = false;
    for (int bi : m.adjacency_[i]) {
      bond_sum += bond_order_int(m.bonds_[bi].order);
      if (m.bonds_[bi].order == BondOrder::Aromatic) any_aromatic_bond = true;
      if (m.bonds_[bi].order == BondOrder::Double ||
          m.bonds_[bi].order == BondOrder::Triple)
        any_multiple = true;
    }
    // An aromatic C/N/P without an explicit multiple bond holds one pi bond
    // not visible in the integer bond sum.
    if (a.aromatic && any_aromatic_bond && !any_multiple &&
        (a.element == elem::C || a.element == elem::N || a.element == elem::P))
      bond_sum += 1;
    int vals[3];
    int nv = elem::standard_valences(a.element, vals);
    if (nv == 0) {
      a.explicit_h = 0;
      continue;
    }
    int h = -1;
    for (int k = 0; k < nv; ++k) {
      if (vals[k] >= bond_sum) {
        h = vals[k] - bond_sum;
        break;
      }
    }
    if (h < 0)
      throw ValenceError("valence " + std::to_string(bond_sum) +
                         " exceeds maximum for element " +
                         elem::symbol(a.element));
    a.explicit_h = h;
  }

  // conjugation
  for (Bond& b : m.bonds_)
    b.conjugated = (b.order == BondOrder::Aromatic);
  auto pi_ready = [&](int atom, int skip_bond) {
    for (int bi : m.adjacency_[atom]) {
      if (bi == skip_bond) continue;
      BondOrder o = m.bonds_[bi].order;
      if (o == BondOrder::Double || o == BondOrder::Triple ||
          o == BondOrder::Aromatic)
        return true;
    }
    int el = m.atoms_[atom].element;
    if ((el == elem::N || el == elem::O || el == elem::S) &&
        m.atoms_[atom].formal_charge <= 0)
      return true;
    return false;
  };
  for (int i = 0; i < m.bond_count(); ++i) {
    Bond& b = m.bonds_[i];
    if (b.order == BondOrder::Single && pi_ready(b.a, i) && pi_ready(b.b, i))
      b.conjugated = true;
  }
  for (int i = 0; i < m.bond_count(); ++i) {
    Bond& b = m.bonds_[i];
    if (b.order != BondOrder::Double && b.order != BondOrder::Triple) continue;
    bool conj = false;
    for (int atom : {b.a, b.b}) {
      for (int bi : m.adjacency_[atom]) {
        if (bi == i) continue;
        const Bond& nb = m.bonds_[bi];
        if (nb.order == BondOrder::Double || nb.order == BondOrder::Triple ||
            nb.order == BondOrder::Aromatic || nb.conjugated)
          conj = true;
      }
    }
    b.conjugated = conj;
  }
  return m;
}

// ---------------------------------------------------------------------------
// operations

namespace {

Molecule rebuild(const Molecule& src, const std::vector<Atom>& atoms,
                 const std::vector<Bond>& bonds) {
  MoleculeBuilder b;
  for (const Atom& a : atoms) b.add_atom(a, false);
  for (const Bond& bd : bonds) b.add_bond(bd.a, bd.b, bd.order, bd.dir);
  if (src.has_coords()) b.set_coords(src.coords());
  b.set_name(src.name());
  if (src.source_cid()) b.set_source_cid(*src.source_cid());
  for (int i = 0; i < src.atom_count(); ++i)
    if (!src.stereo_order(i).empty()) b.set_stereo_order(i, src.stereo_order(i));
  return b.finish();
}

}  // namespace

Molecule aromatize(const Molecule& mol) {
  std::vector<Atom> atoms = mol.atoms();
  std::vector<Bond> bonds = mol.bonds();
  std::vector<int> aromatize_ring;

  for (std::size_t r = 0; r < mol.rings().count(); ++r) {
    const auto& ring_atoms = mol.rings().atom_rings[r];
    const auto& ring_bonds = mol.rings().bond_rings[r];
    bool all_aromatic = true;
    for (int bi : ring_bonds)
      if (mol.bond(bi).order != BondOrder::Aromatic) all_aromatic = false;
    if (all_aromatic) continue;

    int pi = 0;
    bool capable = true;
    for (int ai : ring_atoms) {
      const Atom& a = mol.atom(ai);
      bool ring_double = false, any_double = false, any_triple = false,
           any_aromatic = false;
      for (int bi : mol.bonds_of(ai)) {
        const Bond& b = mol.bond(bi);
        if (b.order == BondOrder::Double) {
          any_double = true;
          if (b.in_ring) ring_double = true;
        } else if (b.order == BondOrder::Triple) {
          any_triple = true;
        } else if (b.order == BondOrder::Aromatic) {
          any_aromatic = true;
        }
      }
      if (any_triple || !elem::can_be_aromatic(a.element)) {
        capable = false;
        break;
      }
      if (ring_double) {
        pi += 1;
      } else if (any_aromatic) {
        // shared edge with an already-aromatic ring
        if (a.element == elem::C || a.element == elem::B) pi += 1;
        else if (a.element == elem::N || a.element == elem::P)
          pi += (mol.total_h(ai) > 0 || mol.degree(ai) >= 3) ? 2 : 1;
        else pi += 2;
      } else if (any_double) {
        pi += 0;  // exocyclic pi system, sp2 but contributes nothing
      } else if (a.element == elem::C) {
        if (a.formal_charge > 0) pi += 0;
        else if (a.formal_charge < 0) pi += 2;
        else { capable = false; break; }
      } else if (a.element == elem::B) {
        pi += 0;
      } else {
        pi += 2;  // N, O, P, S, Se lone pair
      }
    }
    if (capable && pi >= 2 && (pi - 2) % 4 == 0)
      aromatize_ring.push_back(static_cast<int>(r));
  }

  if (aromatize_ring.empty()) return mol;
  for (int r : aromatize_ring) {
    for (int bi : mol.rings().bond_rings[r]) bonds[bi].order = BondOrder::Aromatic;
    for (int ai : mol.rings().atom_rings[r]) atoms[ai].aromatic = true;
  }
  return rebuild(mol, atoms, bonds);
}

Molecule neutralize(const Molecule& mol) {
  std::vector<Atom> atoms = mol.atoms();
  bool changed = false;
  for (int i = 0; i < mol.atom_count(); ++i) {
    Atom& a = atoms[i];
    if (a.formal_charge == 0) continue;
    bool adjacent_neg = false, adjacent_pos = false;
    for (int bi : mol.bonds_of(i)) {
      int q = mol.atom(mol.bond(bi).other(i)).formal_charge;
      if (q < 0) adjacent_neg = true;
      if (q > 0) adjacent_pos = true;
    }
    if (a.formal_charge > 0) {
      if (a.explicit_h >= a.formal_charge && !adjacent_neg) {
        a.explicit_h -= a.formal_charge;
        a.formal_charge = 0;
        changed = true;
      }
    } else {
      if (!adjacent_pos) {
        a.explicit_h += -a.formal_charge;
        a.formal_charge = 0;
        changed = true;
      }
    }
  }
  if (!changed) return mol;
  return rebuild(mol, atoms, mol.bonds());
}

std::vector<Molecule> split_fragments(const Molecule& mol) {
  const int n = mol.atom_count();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int bi : mol.bonds_of(u)) {
        int v = mol.bond(bi).other(u);
        if (comp[v] < 0) {
          comp[v] = ncomp;
          q.push_back(v);
        }
      }
    }
    ++ncomp;
  }

  std::vector<Molecule> out;
  if (ncomp <= 1 && n > 0) {
    out.push_back(mol);
    return out;
  }
  for (int c = 0; c < ncomp; ++c) {
    MoleculeBuilder b;
    std::vector<int> remap(n, -1);
    std::vector<Vec3> coords;
    for (int i = 0; i < n; ++i) {
      if (comp[i] != c) continue;
      remap[i] = b.add_atom(mol.atom(i), false);
      if (mol.has_coords()) coords.push_back(mol.coords()[i]);
    }
    for (const Bond& bd : mol.bonds())
      if (comp[bd.a] == c)
        b.add_bond(remap[bd.a], remap[bd.b], bd.order, bd.dir);
    if (mol.has_coords()) b.set_coords(std::move(coords));
    b.set_name(mol.name());
    if (mol.source_cid()) b.set_source_cid(*mol.source_cid());
    for (int i = 0; i < n; ++i) {
      if (comp[i] != c || mol.stereo_order(i).empty()) continue;
      std::vector<int> slots;
      for (int s : mol.stereo_order(i)) slots.push_back(s < 0 ? s : remap[s]);
      b.set_stereo_order(remap[i], std::move(slots));
    }
    out.push_back(b.finish());
  }
  return out;
}

double molecular_weight(const Molecule& mol) {
  double w = 0.0;
  for (const Atom& a : mol.atoms()) {
    w += a.isotope > 0 ? static_cast<double>(a.isotope)
                       : elem::atomic_weight(a.element);
    w += a.explicit_h * elem::atomic_weight(elem::H);
  }
  return w;
}

Molecule add_explicit_hydrogens(const Molecule& mol) {
  MoleculeBuilder b;
  for (int i = 0; i < mol.atom_count(); ++i) {
    Atom a = mol.atom(i);
    a.explicit_h = 0;
    b.add_atom(a, false);
  }
  for (const Bond& bd : mol.bonds()) b.add_bond(bd.a, bd.b, bd.order, bd.dir);
  for (int i = 0; i < mol.atom_count(); ++i) {
    for (int k = 0; k < mol.atom(i).explicit_h; ++k) {
      Atom h;
      h.element = elem::H;
      int hi = b.add_atom(h, false);
      b.add_bond(i, hi, BondOrder::Single);
    }
  }
  b.set_name(mol.name());
  if (mol.source_cid()) b.set_source_cid(*mol.source_cid());
  return b.finish();
}

std::vector<std::vector<int>> bond_distance_matrix(const Molecule& mol) {
  const int n = mol.atom_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    d[s][s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int bi : mol.bonds_of(u)) {
        int v = mol.bond(bi).other(u);
        if (d[s][v] < 0) {
          d[s][v] = d[s][u] + 1;
          q.push_back(v);
        }
      }
    }
  }
  return d;
}

}  // namespace vsb
