#include "vsb/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>

#include "vsb/element.hpp"
#include "vsb/errors.hpp"

namespace vsb {
namespace {

constexpr int kLeafBudget = 40000;

std::vector<int> initial_ranks(const Molecule& m,
                               const std::vector<int>& frag) {
  struct Inv {
    int el, q, deg, h, arom, iso;
    bool operator<(const Inv& o) const {
      return std::tie(el, q, deg, h, arom, iso) <
             std::tie(o.el, o.q, o.deg, o.h, o.arom, o.iso);
    }
    bool operator==(const Inv& o) const {
      return std::tie(el, q, deg, h, arom, iso) ==
             std::tie(o.el, o.q, o.deg, o.h, o.arom, o.iso);
    }
  };
  std::vector<Inv> invs(frag.size());
  for (std::size_t k = 0; k < frag.size(); ++k) {
    int i = frag[k];
    const Atom& a = m.atom(i);
    invs[k] = {a.element, a.formal_charge, m.degree(i), m.total_h(i),
               a.aromatic ? 1 : 0, a.isotope};
  }
  std::vector<Inv> sorted = invs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> ranks(m.atom_count(), -1);
  for (std::size_t k = 0; k < frag.size(); ++k)
    ranks[frag[k]] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), invs[k]) -
        sorted.begin());
  return ranks;
}

int count_classes(const std::vector<int>& ranks, const std::vector<int>& frag) {
  std::set<int> s;
  for (int i : frag) s.insert(ranks[i]);
  return static_cast<int>(s.size());
}

// One round of neighborhood refinement; returns true if the partition split.
bool refine_once(const Molecule& m, const std::vector<int>& frag,
                 std::vector<int>& ranks) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  std::vector<Key> keys(frag.size());
  for (std::size_t k = 0; k < frag.size(); ++k) {
    int i = frag[k];
    std::vector<std::pair<int, int>> nb;
    for (int bi : m.bonds_of(i)) {
      const Bond& b = m.bond(bi);
      nb.emplace_back(static_cast<int>(b.order), ranks[b.other(i)]);
    }
    std::sort(nb.begin(), nb.end());
    keys[k] = {ranks[i], std::move(nb)};
  }
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  int before = count_classes(ranks, frag);
  for (std::size_t k = 0; k < frag.size(); ++k)
    ranks[frag[k]] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), keys[k]) -
        sorted.begin());
  return count_classes(ranks, frag) > before;
}

void refine(const Molecule& m, const std::vector<int>& frag,
            std::vector<int>& ranks) {
  while (refine_once(m, frag, ranks)) {
  }
}

// ---------------------------------------------------------------------------
// writer for one fragment under a discrete rank assignment

struct Traversal {
  std::vector<int> visit_order;            // atoms in DFS order
  std::vector<int> visit_index;            // atom -> position, -1 outside
  std::vector<int> parent_bond;            // atom -> bond index or -1
  std::vector<std::vector<int>> children;  // atom -> child atoms in order
  struct RingBond {
    int bond = -1;
    int opener = -1, closer = -1;
    int digit = 0;
  };
  std::vector<RingBond> ring_bonds;
  std::vector<std::vector<int>> opens;   // atom -> ring_bond ids opening here
  std::vector<std::vector<int>> closes;  // atom -> ring_bond ids closing here
};

Traversal traverse(const Molecule& m, const std::vector<int>& frag,
                   const std::vector<int>& ranks) {
  Traversal t;
  const int n = m.atom_count();
  t.visit_index.assign(n, -1);
  t.parent_bond.assign(n, -1);
  t.children.assign(n, {});
  t.opens.assign(n, {});
  t.closes.assign(n, {});

  int root = frag[0];
  for (int i : frag)
    if (ranks[i] < ranks[root]) root = i;

  std::vector<std::pair<int, int>> stack{{root, -1}};  // atom, via bond
  std::set<int> claimed;
  while (!stack.empty()) {
    auto [u, via] = stack.back();
    stack.pop_back();
    if (t.visit_index[u] >= 0) continue;  // became a ring bond
    t.visit_index[u] = static_cast<int>(t.visit_order.size());
    t.visit_order.push_back(u);
    t.parent_bond[u] = via;
    if (via >= 0) {
      t.children[m.bond(via).other(u)].push_back(u);
      claimed.insert(via);
    }
    std::vector<std::pair<int, int>> nbrs;  // rank, bond
    for (int bi : m.bonds_of(u))
      if (bi != via) nbrs.emplace_back(ranks[m.bond(bi).other(u)], bi);
    std::sort(nbrs.begin(), nbrs.end());
    for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it)
      stack.emplace_back(m.bond(it->second).other(u), it->second);
  }

  // Bonds not on the tree are ring closures; they open at the endpoint
  // visited first.
  for (int i : frag)
    for (int bi : m.bonds_of(i)) {
      const Bond& b = m.bond(bi);
      if (b.a != i) continue;  // visit each bond once
      if (claimed.count(bi)) continue;
      Traversal::RingBond rb;
      rb.bond = bi;
      if (t.visit_index[b.a] < t.visit_index[b.b]) {
        rb.opener = b.a;
        rb.closer = b.b;
      } else {
        rb.opener = b.b;
        rb.closer = b.a;
      }
      t.ring_bonds.push_back(rb);
    }
  // Deterministic opening order: by closer visit index.
  std::sort(t.ring_bonds.begin(), t.ring_bonds.end(),
            [&](const auto& x, const auto& y) {
              if (t.visit_index[x.opener] != t.visit_index[y.opener])
                return t.visit_index[x.opener] < t.visit_index[y.opener];
              return t.visit_index[x.closer] < t.visit_index[y.closer];
            });
  // digit allocation with reuse
  std::set<int> free_digits;
  for (int d = 1; d <= 99; ++d) free_digits.insert(d);
  std::vector<std::vector<int>> to_close(t.visit_order.size());
  for (std::size_t r = 0; r < t.ring_bonds.size(); ++r)
    t.opens[t.ring_bonds[r].opener].push_back(static_cast<int>(r));
  for (int u : t.visit_order) {
    for (int r : t.closes[u]) free_digits.insert(t.ring_bonds[r].digit);
    (void)u;
  }
  // Walk atoms in visit order assigning digits (opens) and freeing (closes).
  std::map<int, std::vector<int>> close_at;  // visit idx -> ring ids
  for (std::size_t r = 0; r < t.ring_bonds.size(); ++r)
    close_at[t.visit_index[t.ring_bonds[r].closer]].push_back(
        static_cast<int>(r));
  for (int vi = 0; vi < static_cast<int>(t.visit_order.size()); ++vi) {
    int u = t.visit_order[vi];
    auto cit = close_at.find(vi);
    if (cit != close_at.end()) {
      // order closings by digit for stable output
      std::sort(cit->second.begin(), cit->second.end(), [&](int x, int y) {
        return t.ring_bonds[x].digit < t.ring_bonds[y].digit;
      });
      for (int r : cit->second) {
        t.closes[u].push_back(r);
        free_digits.insert(t.ring_bonds[r].digit);
      }
    }
    for (int r : t.opens[u]) {
      if (free_digits.empty()) throw Error("ring closure digits exhausted");
      int d = *free_digits.begin();
      free_digits.erase(free_digits.begin());
      t.ring_bonds[r].digit = d;
    }
  }
  return t;
}

// ---- double-bond geometry normalization ----

struct DirAssign {
  // bond index -> output direction value (+1 '/' , -1 '\') relative to the
  // bond's a->b orientation; absent = no marker.
  std::map<int, int> out;
};

int raw_dir(const Bond& b) { return b.dir == BondDir::Up ? 1 : -1; }
// side of the substituent relative to the double-bond axis at atom x
int side_of(const Bond& b, int x, int raw) { return b.b == x ? -raw : raw; }

DirAssign assign_directions(const Molecule& m, const std::vector<int>& frag,
                            const Traversal& t) {
  DirAssign da;
  std::set<int> in_frag(frag.begin(), frag.end());

  struct StereoDb {
    int bond;
    std::vector<int> at_a, at_b;  // directional single bonds on each end
  };
  std::vector<StereoDb> dbs;
  for (int i = 0; i < m.bond_count(); ++i) {
    const Bond& b = m.bond(i);
    if (b.order != BondOrder::Double || !in_frag.count(b.a)) continue;
    StereoDb s;
    s.bond = i;
    for (int bi : m.bonds_of(b.a)) {
      const Bond& nb = m.bond(bi);
      if (nb.order == BondOrder::Single && nb.dir != BondDir::None)
        s.at_a.push_back(bi);
    }
    for (int bi : m.bonds_of(b.b)) {
      const Bond& nb = m.bond(bi);
      if (nb.order == BondOrder::Single && nb.dir != BondDir::None)
        s.at_b.push_back(bi);
    }
    if (!s.at_a.empty() && !s.at_b.empty()) dbs.push_back(std::move(s));
  }
  if (dbs.empty()) return da;

  // cluster active bonds through shared double bonds
  std::map<int, int> comp;  // bond -> cluster
  std::map<int, std::vector<std::pair<int, int>>> constraints;  // product
  int ncl = 0;
  std::set<int> bad_clusters;
  auto find_comp = [&](int b) -> int {
    auto it = comp.find(b);
    return it == comp.end() ? -1 : it->second;
  };
  for (const StereoDb& s : dbs) {
    std::vector<int> all = s.at_a;
    all.insert(all.end(), s.at_b.begin(), s.at_b.end());
    int cluster = -1;
    for (int b : all)
      if (int c = find_comp(b); c >= 0) cluster = c;
    if (cluster < 0) cluster = ncl++;
    for (int b : all) {
      int c = find_comp(b);
      if (c >= 0 && c != cluster) {
        for (auto& [k, v] : comp)
          if (v == c) v = cluster;
        if (bad_clusters.count(c)) bad_clusters.insert(cluster);
      }
      comp[b] = cluster;
    }
    // validate same-end pairs: substituents at one end sit on opposite sides
    const Bond& db = m.bond(s.bond);
    for (const auto* endv : {&s.at_a, &s.at_b}) {
      int x = (endv == &s.at_a) ? db.a : db.b;
      for (std::size_t i = 0; i + 1 < endv->size(); ++i)
        for (std::size_t j = i + 1; j < endv->size(); ++j) {
          const Bond& b1 = m.bond((*endv)[i]);
          const Bond& b2 = m.bond((*endv)[j]);
          if (side_of(b1, x, raw_dir(b1)) * side_of(b2, x, raw_dir(b2)) != -1)
            bad_clusters.insert(cluster);
        }
    }
    // pairwise product constraints
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        int prod = raw_dir(m.bond(all[i])) * raw_dir(m.bond(all[j]));
        constraints[all[i]].emplace_back(all[j], prod);
        constraints[all[j]].emplace_back(all[i], prod);
      }
  }

  // anchor per cluster: first bond in emission order gets '/'
  auto emit_key = [&](int bi) {
    const Bond& b = m.bond(bi);
    int va = t.visit_index[b.a], vb = t.visit_index[b.b];
    return std::make_pair(std::min(va, vb), std::max(va, vb));
  };
  std::map<int, std::vector<int>> cluster_bonds;
  for (auto& [b, c] : comp) cluster_bonds[c].push_back(b);
  for (auto& [c, bondlist] : cluster_bonds) {
    if (bad_clusters.count(c)) continue;
    std::sort(bondlist.begin(), bondlist.end(), [&](int x, int y) {
      return emit_key(x) < emit_key(y);
    });
    int anchor = bondlist.front();
    // written direction: tree bond parent->child; ring bond opener->closer
    const Bond& ab = m.bond(anchor);
    bool written_from_a;
    if (t.parent_bond[ab.a] == anchor) written_from_a = false;
    else if (t.parent_bond[ab.b] == anchor) written_from_a = true;
    else {  // ring bond: symbol sits on the opener
      written_from_a = t.visit_index[ab.a] < t.visit_index[ab.b];
    }
    std::map<int, int> val;
    val[anchor] = written_from_a ? 1 : -1;  // '/' when emitted
    std::vector<int> queue{anchor};
    bool ok = true;
    while (!queue.empty()) {
      int b = queue.back();
      queue.pop_back();
      for (auto [b2, prod] : constraints[b]) {
        int want = val[b] * prod;
        auto it = val.find(b2);
        if (it == val.end()) {
          val[b2] = want;
          queue.push_back(b2);
        } else if (it->second != want) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (auto [b, v] : val) da.out[b] = v;
  }
  return da;
}

// ---- atom / bond token emission ----

// Hydrogen count a reader would infer for a bare organic-subset symbol.
int inferred_h(const Molecule& m, int i) {
  const Atom& a = m.atom(i);
  int bond_sum = 0;
  bool any_arom = false, any_mult = false;
  for (int bi : m.bonds_of(i)) {
    bond_sum += bond_order_int(m.bond(bi).order);
    if (m.bond(bi).order == BondOrder::Aromatic) any_arom = true;
    if (m.bond(bi).order == BondOrder::Double ||
        m.bond(bi).order == BondOrder::Triple)
      any_mult = true;
  }
  if (a.aromatic && any_arom && !any_mult &&
      (a.element == elem::C || a.element == elem::N || a.element == elem::P))
    bond_sum += 1;
  int vals[3];
  int nv = elem::standard_valences(a.element, vals);
  for (int k = 0; k < nv; ++k)
    if (vals[k] >= bond_sum) return vals[k] - bond_sum;
  return -1;
}

bool lowercase_ok(int element) {
  switch (element) {
    case elem::B: case elem::C: case elem::N: case elem::O:
    case elem::P: case elem::S:
      return true;
    default:
      return false;
  }
}

std::string atom_symbol(const Atom& a) {
  std::string sym = elem::symbol(a.element);
  if (a.aromatic)
    for (char& c : sym) c = static_cast<char>(std::tolower(c));
  return sym;
}

}  // namespace

std::vector<int> canonical_classes(const Molecule& mol) {
  std::vector<int> frag(mol.atom_count());
  for (int i = 0; i < mol.atom_count(); ++i) frag[i] = i;
  if (frag.empty()) return {};
  std::vector<int> ranks = initial_ranks(mol, frag);
  refine(mol, frag, ranks);
  return ranks;
}

namespace {

class FragmentWriter {
 public:
  FragmentWriter(const Molecule& m, const std::vector<int>& frag,
                 bool include_stereo)
      : m_(m), frag_(frag), stereo_(include_stereo) {}

  // Minimal string over all discrete refinements of the fragment.
  std::string canonical() {
    std::vector<int> ranks = initial_ranks(m_, frag_);
    refine(m_, frag_, ranks);
    best_.clear();
    leaves_ = 0;
    search(ranks);
    return best_;
  }

 private:
  void search(std::vector<int> ranks) {
    // find smallest tied class
    std::map<int, std::vector<int>> classes;
    for (int i : frag_) classes[ranks[i]].push_back(i);
    const std::vector<int>* tied = nullptr;
    for (const auto& [r, members] : classes)
      if (members.size() > 1) {
        tied = &members;
        break;
      }
    if (!tied) {
      if (++leaves_ > kLeafBudget)
        throw Error("canonicalization exceeded symmetry budget");
      std::string s = emit(ranks);
      if (best_.empty() || s < best_) best_ = s;
      return;
    }
    for (int chosen : *tied) {
      std::vector<int> next(ranks.size(), -1);
      for (int i : frag_) next[i] = ranks[i] * 2;
      next[chosen] -= 1;
      refine(m_, frag_, next);
      search(std::move(next));
    }
  }

  std::string emit(const std::vector<int>& ranks) {
    Traversal t = traverse(m_, frag_, ranks);
    DirAssign dirs =
        stereo_ ? assign_directions(m_, frag_, t) : DirAssign{};
    std::string out;
    emit_atom(t.visit_order[0], t, dirs, out);
    return out;
  }

  char dir_symbol(int bond, int from, const DirAssign& dirs) const {
    auto it = dirs.out.find(bond);
    if (it == dirs.out.end()) return 0;
    const Bond& b = m_.bond(bond);
    int v = from == b.a ? it->second : -it->second;
    return v > 0 ? '/' : '\\';
  }

  // bond symbol when writing `bond` from atom `from` (empty if implied)
  std::string bond_token(int bond, int from, const DirAssign& dirs) const {
    const Bond& b = m_.bond(bond);
    if (char d = dir_symbol(bond, from, dirs)) return std::string(1, d);
    switch (b.order) {
      case BondOrder::Single:
        if (m_.atom(b.a).aromatic && m_.atom(b.b).aromatic) return "-";
        return "";
      case BondOrder::Aromatic:
        if (m_.atom(b.a).aromatic && m_.atom(b.b).aromatic) return "";
        return ":";
      case BondOrder::Double: return "=";
      case BondOrder::Triple: return "#";
    }
    return "";
  }

  void emit_atom(int u, const Traversal& t, const DirAssign& dirs,
                 std::string& out) {
    out += atom_token(u, t, dirs);
    for (int r : t.closes[u]) {
      int d = t.ring_bonds[r].digit;
      out += d < 10 ? std::to_string(d) : "%" + std::to_string(d);
    }
    for (int r : t.opens[u]) {
      out += bond_token(t.ring_bonds[r].bond, u, dirs);
      int d = t.ring_bonds[r].digit;
      out += d < 10 ? std::to_string(d) : "%" + std::to_string(d);
    }
    const auto& kids = t.children[u];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      int v = kids[k];
      std::string btok = bond_token(t.parent_bond[v], u, dirs);
      if (k + 1 < kids.size()) {
        out += "(" + btok;
        emit_atom(v, t, dirs, out);
        out += ")";
      } else {
        out += btok;
        emit_atom(v, t, dirs, out);
      }
    }
  }

  // Chirality symbol adjusted for written neighbor order; empty if dropped.
  std::string chirality_token(int u, const Traversal& t) const {
    const Atom& a = m_.atom(u);
    if (!stereo_ || a.chirality == Chirality::None) return "";
    const std::vector<int>& stored = m_.stereo_order(u);
    if (stored.empty() || a.explicit_h > 1) return "";
    std::vector<int> written;
    if (t.parent_bond[u] >= 0)
      written.push_back(m_.bond(t.parent_bond[u]).other(u));
    if (a.explicit_h == 1) written.push_back(-1);
    for (int r : t.closes[u])
      written.push_back(t.ring_bonds[r].opener);
    for (int r : t.opens[u])
      written.push_back(t.ring_bonds[r].closer);
    for (int v : t.children[u]) written.push_back(v);
    if (written.size() != stored.size() || written.size() < 3 ||
        written.size() > 4)
      return "";
    // permutation parity stored -> written
    std::vector<int> perm;
    for (int w : written) {
      auto it = std::find(stored.begin(), stored.end(), w);
      if (it == stored.end()) return "";
      perm.push_back(static_cast<int>(it - stored.begin()));
    }
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    bool flip = inversions % 2 == 1;
    bool ccw = (a.chirality == Chirality::Ccw) != flip;
    return ccw ? "@" : "@@";
  }

  std::string atom_token(int u, const Traversal& t, const DirAssign&) const {
    const Atom& a = m_.atom(u);
    std::string chiral = chirality_token(u, t);
    bool bracket = a.isotope != 0 || a.formal_charge != 0 || !chiral.empty() ||
                   !elem::is_organic_subset(a.element) ||
                   (a.aromatic && !lowercase_ok(a.element)) ||
                   inferred_h(m_, u) != a.explicit_h;
    if (!bracket) return atom_symbol(a);
    std::string s = "[";
    if (a.isotope) s += std::to_string(a.isotope);
    s += atom_symbol(a);
    s += chiral;
    if (a.explicit_h == 1) s += "H";
    else if (a.explicit_h > 1) s += "H" + std::to_string(a.explicit_h);
    if (a.formal_charge == 1) s += "+";
    else if (a.formal_charge == -1) s += "-";
    else if (a.formal_charge > 1) s += "+" + std::to_string(a.formal_charge);
    else if (a.formal_charge < -1) s += "-" + std::to_string(-a.formal_charge);
    s += "]";
    return s;
  }

  const Molecule& m_;
  const std::vector<int>& frag_;
  bool stereo_;
  std::string best_;
  int leaves_ = 0;
};

}  // namespace

std::string canonical_smiles(const Molecule& mol, bool include_stereo) {
  if (mol.atom_count() == 0) return "";
  // connected components
  std::vector<int> comp(mol.atom_count(), -1);
  int ncomp = 0;
  for (int s = 0; s < mol.atom_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int bi : mol.bonds_of(u)) {
        int v = mol.bond(bi).other(u);
        if (comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::vector<int>> frags(ncomp);
  for (int i = 0; i < mol.atom_count(); ++i) frags[comp[i]].push_back(i);
  std::vector<std::string> parts;
  parts.reserve(frags.size());
  for (const auto& frag : frags)
    parts.push_back(FragmentWriter(mol, frag, include_stereo).canonical());
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ".";
    out += parts[i];
  }
  return out;
}

}  // namespace vsb
