#include "vsb/smiles.hpp"

#include <cctype>
#include <map>
#include <string>

#include "vsb/element.hpp"
#include "vsb/errors.hpp"

namespace vsb {
namespace {

struct PendingBond {
  bool present = false;   // a bond symbol was seen since the last atom
  BondOrder order = BondOrder::Single;
  bool order_explicit = false;
  BondDir dir = BondDir::None;
  std::size_t pos = 0;
};

struct OpenRing {
  int atom = -1;
  int slot = -1;  // index into the atom's stereo slot list
  PendingBond bond;
  std::size_t pos = 0;
};

struct BracketAtom {
  Atom atom;
  bool h_explicit = false;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Molecule run() {
    if (text_.empty()) throw ParseError("empty SMILES", 0);
    while (pos_ < text_.size()) step();
    if (!branch_stack_.empty())
      throw ParseError("unclosed branch", text_.size());
    if (pending_.present)
      throw ParseError("dangling bond symbol", pending_.pos);
    if (!open_rings_.empty())
      throw ParseError("unmatched ring-closure digit " +
                           std::to_string(open_rings_.begin()->first),
                       open_rings_.begin()->second.pos);
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (chiral_[i]) builder_.set_stereo_order(static_cast<int>(i), slots_[i]);
    return builder_.finish();
  }

 private:
  void step() {
    char c = text_[pos_];
    switch (c) {
      case '(': {
        if (prev_ < 0) throw ParseError("branch before any atom", pos_);
        if (pending_.present)
          throw ParseError("bond symbol before '('", pending_.pos);
        branch_stack_.push_back(prev_);
        ++pos_;
        return;
      }
      case ')': {
        if (branch_stack_.empty())
          throw ParseError("unmatched ')'", pos_);
        if (pending_.present)
          throw ParseError("dangling bond symbol in branch", pending_.pos);
        prev_ = branch_stack_.back();
        branch_stack_.pop_back();
        ++pos_;
        return;
      }
      case '.': {
        if (pending_.present)
          throw ParseError("bond symbol before '.'", pending_.pos);
        prev_ = -1;
        ++pos_;
        return;
      }
      case '-': set_bond(BondOrder::Single, BondDir::None); return;
      case '=': set_bond(BondOrder::Double, BondDir::None); return;
      case '#': set_bond(BondOrder::Triple, BondDir::None); return;
      case ':': set_bond(BondOrder::Aromatic, BondDir::None); return;
      case '/': set_bond(BondOrder::Single, BondDir::Up); return;
      case '\\': set_bond(BondOrder::Single, BondDir::Down); return;
      case '%': {
        if (pos_ + 2 >= text_.size() || !std::isdigit(text_[pos_ + 1]) ||
            !std::isdigit(text_[pos_ + 2]))
          throw ParseError("'%' must be followed by two digits", pos_);
        int num = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
        pos_ += 3;
        ring_closure(num);
        return;
      }
      case '[': parse_bracket(); return;
      case '*':
        throw ParseError("wildcard atom is not valid in molecule SMILES", pos_);
      default:
        if (std::isdigit(c)) {
          ++pos_;
          ring_closure(c - '0');
          return;
        }
        parse_organic();
        return;
    }
  }

  void set_bond(BondOrder order, BondDir dir) {
    if (pending_.present)
      throw ParseError("two bond symbols in a row", pos_);
    if (prev_ < 0) throw ParseError("bond symbol before any atom", pos_);
    pending_.present = true;
    pending_.order = order;
    pending_.order_explicit = (dir == BondDir::None);
    pending_.dir = dir;
    pending_.pos = pos_;
    ++pos_;
  }

  void parse_organic() {
    std::size_t at = pos_;
    char c = text_[pos_];
    int element = 0;
    bool aromatic = false;
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      element = elem::Cl;
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      element = elem::Br;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': element = elem::B; break;
        case 'C': element = elem::C; break;
        case 'N': element = elem::N; break;
        case 'O': element = elem::O; break;
        case 'P': element = elem::P; break;
        case 'S': element = elem::S; break;
        case 'F': element = elem::F; break;
        case 'I': element = elem::I; break;
        case 'b': element = elem::B; aromatic = true; break;
        case 'c': element = elem::C; aromatic = true; break;
        case 'n': element = elem::N; aromatic = true; break;
        case 'o': element = elem::O; aromatic = true; break;
        case 'p': element = elem::P; aromatic = true; break;
        case 's': element = elem::S; aromatic = true; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           pos_);
      }
      ++pos_;
    }
    Atom a;
    a.element = element;
    a.aromatic = aromatic;
    add_atom(a, /*auto_h=*/true, at);
  }

  void parse_bracket() {
    std::size_t open = pos_;
    ++pos_;  // '['
    Atom a;
    bool h_explicit = false;

    // isotope
    int isotope = 0;
    while (pos_ < text_.size() && std::isdigit(text_[pos_])) {
      isotope = isotope * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    a.isotope = isotope;

    // element symbol (uppercase+lowercase pair, single uppercase, or
    // aromatic lowercase)
    if (pos_ >= text_.size()) throw ParseError("unterminated bracket", open);
    char c = text_[pos_];
    if (std::isupper(c)) {
      std::string sym(1, c);
      if (pos_ + 1 < text_.size() && std::islower(text_[pos_ + 1])) {
        std::string two = sym + text_[pos_ + 1];
        if (elem::from_symbol(two) != 0) {
          sym = two;
          ++pos_;
        }
      }
      ++pos_;
      a.element = elem::from_symbol(sym);
      if (a.element == 0)
        throw ParseError("unknown element symbol '" + sym + "'", open + 1);
    } else if (std::islower(c)) {
      std::string sym(1, static_cast<char>(std::toupper(c)));
      std::size_t sym_pos = pos_;
      ++pos_;
      if (c == 's' && pos_ < text_.size() && text_[pos_] == 'e') {
        sym = "Se";
        ++pos_;
      } else if (c == 'a' && pos_ < text_.size() && text_[pos_] == 's') {
        sym = "As";
        ++pos_;
      }
      a.element = elem::from_symbol(sym);
      if (a.element == 0 || !elem::can_be_aromatic(a.element))
        throw ParseError("invalid aromatic symbol", sym_pos);
      a.aromatic = true;
    } else {
      throw ParseError("expected element symbol in bracket", pos_);
    }

    // chirality
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '@') {
        a.chirality = Chirality::Cw;
        ++pos_;
      } else {
        a.chirality = Chirality::Ccw;
      }
      if (pos_ < text_.size() && std::isupper(text_[pos_]) &&
          (text_[pos_] == 'T' || text_[pos_] == 'S' || text_[pos_] == 'A' ||
           text_[pos_] == 'O'))
        throw ParseError("extended chirality classes are not supported", pos_);
    }

    // hydrogen count
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      int h = 1;
      if (pos_ < text_.size() && std::isdigit(text_[pos_])) {
        h = 0;
        while (pos_ < text_.size() && std::isdigit(text_[pos_]))
          h = h * 10 + (text_[pos_++] - '0');
      }
      a.explicit_h = h;
      h_explicit = true;
    }

    // charge
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      char sign = text_[pos_];
      int count = 0;
      while (pos_ < text_.size() && text_[pos_] == sign) {
        ++count;
        ++pos_;
      }
      if (pos_ < text_.size() && std::isdigit(text_[pos_])) {
        if (count != 1)
          throw ParseError("malformed charge", pos_);
        count = 0;
        while (pos_ < text_.size() && std::isdigit(text_[pos_]))
          count = count * 10 + (text_[pos_++] - '0');
      }
      a.formal_charge = sign == '+' ? count : -count;
    }

    // atom map (accepted, ignored)
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(text_[pos_]))
        throw ParseError("expected atom-map number after ':'", pos_);
      while (pos_ < text_.size() && std::isdigit(text_[pos_])) ++pos_;
    }

    if (pos_ >= text_.size() || text_[pos_] != ']')
      throw ParseError("unterminated bracket", open);
    ++pos_;

    (void)h_explicit;
    add_atom(a, /*auto_h=*/false, open);
  }

  void add_atom(const Atom& atom, bool auto_h, std::size_t at) {
    int idx = builder_.add_atom(atom, auto_h);
    slots_.emplace_back();
    chiral_.push_back(atom.chirality != Chirality::None);
    if (prev_ >= 0) {
      BondOrder order = pending_.order;
      if (!pending_.present)
        order = (builder_atom_aromatic_[prev_] && atom.aromatic)
                    ? BondOrder::Aromatic
                    : BondOrder::Single;
      make_bond(prev_, idx, order, pending_.dir, at);
    }
    // implicit-H stereo slot sits directly after the preceding atom
    if (atom.chirality != Chirality::None && atom.explicit_h > 0)
      slots_[idx].push_back(-1);
    pending_ = PendingBond{};
    prev_ = idx;
    builder_atom_aromatic_.push_back(atom.aromatic);
  }

  void make_bond(int a, int b, BondOrder order, BondDir dir, std::size_t at) {
    if (a == b) throw ParseError("ring closure bonds an atom to itself", at);
    if (builder_.has_bond(a, b))
      throw ParseError("duplicate bond between atoms", at);
    builder_.add_bond(a, b, order, dir);
    slots_[a].push_back(b);
    slots_[b].push_back(a);
  }

  void ring_closure(int number) {
    if (prev_ < 0)
      throw ParseError("ring-closure digit before any atom", pos_ - 1);
    auto it = open_rings_.find(number);
    if (it == open_rings_.end()) {
      OpenRing r;
      r.atom = prev_;
      r.bond = pending_;
      r.pos = pos_ - 1;
      r.slot = static_cast<int>(slots_[prev_].size());
      slots_[prev_].push_back(-2 - number);  // placeholder until closed
      open_rings_[number] = r;
      pending_ = PendingBond{};
      return;
    }
    OpenRing r = it->second;
    open_rings_.erase(it);
    if (r.atom == prev_)
      throw ParseError("ring closure bonds an atom to itself", pos_ - 1);

    BondOrder order;
    bool have_a = r.bond.present, have_b = pending_.present;
    if (have_a && have_b && r.bond.order != pending_.order)
      throw ParseError("conflicting ring-closure bond orders", pos_ - 1);
    if (have_a) order = r.bond.order;
    else if (have_b) order = pending_.order;
    else
      order = (builder_atom_aromatic_[r.atom] && builder_atom_aromatic_[prev_])
                  ? BondOrder::Aromatic
                  : BondOrder::Single;
    // Directional marks: as stored the bond runs opener -> closer, so a mark
    // on the closing side is flipped.
    BondDir dir = BondDir::None;
    if (r.bond.dir != BondDir::None) dir = r.bond.dir;
    else if (pending_.dir != BondDir::None)
      dir = pending_.dir == BondDir::Up ? BondDir::Down : BondDir::Up;

    if (builder_.has_bond(r.atom, prev_))
      throw ParseError("duplicate bond between atoms", pos_ - 1);
    builder_.add_bond(r.atom, prev_, order, dir);
    slots_[r.atom][r.slot] = prev_;
    slots_[prev_].push_back(r.atom);
    pending_ = PendingBond{};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MoleculeBuilder builder_;
  int prev_ = -1;
  std::vector<int> branch_stack_;
  PendingBond pending_;
  std::map<int, OpenRing> open_rings_;
  std::vector<std::vector<int>> slots_;
  std::vector<bool> chiral_;
  std::vector<bool> builder_atom_aromatic_;
};

}  // namespace

Molecule parse_smiles(std::string_view text) {
  return Parser(text).run();
}

}  // namespace vsb
