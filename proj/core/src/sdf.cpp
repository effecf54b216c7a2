#include "vsb/sdf.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vsb/element.hpp"
#include "vsb/errors.hpp"

namespace vsb {
namespace {

struct LineReader {
  std::istream& in;
  std::size_t lineno = 0;
  bool next(std::string& out) {
    if (!std::getline(in, out)) return false;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    ++lineno;
    return true;
  }
};

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

int old_style_charge(int code) {
  switch (code) {
    case 1: return 3;
    case 2: return 2;
    case 3: return 1;
    case 5: return -1;
    case 6: return -2;
    case 7: return -3;
    default: return 0;
  }
}

void skip_to_delimiter(LineReader& lr) {
  std::string line;
  while (lr.next(line))
    if (line.rfind("$$$$", 0) == 0) return;
}

bool all_whitespace(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

SdfResult read_sdf(std::istream& in) {
  SdfResult result;
  LineReader lr{in};
  std::string line;

  while (true) {
    std::string title;
    // tolerate stray blank lines between records
    bool have_title = false;
    while (lr.next(title)) {
      if (!all_whitespace(title) || in.peek() != EOF) {
        have_title = true;
        break;
      }
    }
    if (!have_title) break;
    if (all_whitespace(title) && in.peek() == EOF) break;

    std::string program, comment, counts;
    if (!lr.next(program) || !lr.next(comment) || !lr.next(counts)) {
      result.errors.push_back({lr.lineno, "truncated header block"});
      break;
    }
    std::size_t counts_line = lr.lineno;
    int natoms = -1, nbonds = -1;
    if (counts.size() >= 6 && counts.find("V2000") != std::string::npos) {
      try {
        natoms = std::stoi(counts.substr(0, 3));
        nbonds = std::stoi(counts.substr(3, 3));
      } catch (...) {
        natoms = -1;
      }
    }
    if (natoms < 0 || nbonds < 0) {
      result.errors.push_back({counts_line, "malformed counts line"});
      skip_to_delimiter(lr);
      continue;
    }

    std::vector<int> elements, charges;
    std::vector<Vec3> coords;
    struct RawBond {
      int a, b, type;
    };
    std::vector<RawBond> raw_bonds;
    bool block_ok = true;
    std::string err;
    std::size_t err_line = 0;
    auto fail = [&](const std::string& what) {
      block_ok = false;
      err = what;
      err_line = lr.lineno;
    };

    for (int i = 0; i < natoms && block_ok; ++i) {
      if (!lr.next(line)) {
        fail("truncated atom block");
        break;
      }
      auto tok = tokens(line);
      if (tok.size() < 4) {
        fail("malformed atom line");
        break;
      }
      try {
        coords.push_back({std::stod(tok[0]), std::stod(tok[1]), std::stod(tok[2])});
        int element = elem::from_symbol(tok[3]);
        if (element == 0) {
          fail("unknown element symbol " + tok[3]);
          break;
        }
        elements.push_back(element);
        charges.push_back(tok.size() >= 6 ? old_style_charge(std::stoi(tok[5]))
                                          : 0);
      } catch (const std::exception&) {
        fail("malformed atom line");
      }
    }

    for (int i = 0; i < nbonds && block_ok; ++i) {
      if (!lr.next(line)) {
        fail("truncated bond block");
        break;
      }
      int a = -1, b = -1, type = -1;
      if (line.size() >= 9) {
        try {
          a = std::stoi(line.substr(0, 3));
          b = std::stoi(line.substr(3, 3));
          type = std::stoi(line.substr(6, 3));
        } catch (...) {
          a = -1;
        }
      }
      if (a < 1 || b < 1 || a > natoms || b > natoms || a == b) {
        fail("malformed bond line");
        break;
      }
      if (type < 1 || type > 4) {
        fail("unsupported bond type " + std::to_string(type));
        break;
      }
      raw_bonds.push_back({a - 1, b - 1, type});
    }

    bool saw_chg = false;
    std::vector<std::pair<int, int>> chg;
    while (block_ok) {
      if (!lr.next(line)) {
        fail("truncated block (no M END)");
        break;
      }
      if (line.rfind("M  END", 0) == 0) break;
      if (line.rfind("M  CHG", 0) == 0) {
        auto tok = tokens(line);
        saw_chg = true;
        for (std::size_t k = 3; k + 1 < tok.size(); k += 2) {
          try {
            chg.emplace_back(std::stoi(tok[k]) - 1, std::stoi(tok[k + 1]));
          } catch (...) {
          }
        }
      }
    }

    std::map<std::string, std::string> fields;
    bool saw_delim = false;
    while (block_ok) {
      if (!lr.next(line)) break;  // EOF right after M END: accept
      if (line.rfind("$$$$", 0) == 0) {
        saw_delim = true;
        break;
      }
      if (!line.empty() && line[0] == '>') {
        std::size_t lt = line.find('<');
        std::size_t gt = lt == std::string::npos ? std::string::npos
                                                 : line.find('>', lt);
        std::string key;
        if (lt != std::string::npos && gt != std::string::npos && gt > lt)
          key = line.substr(lt + 1, gt - lt - 1);
        std::string value, vline;
        bool first = true;
        while (lr.next(vline)) {
          if (vline.empty()) break;
          if (vline.rfind("$$$$", 0) == 0) {
            saw_delim = true;
            break;
          }
          if (!first) value += "\n";
          value += vline;
          first = false;
        }
        if (!key.empty()) fields[key] = value;
        if (saw_delim) break;
      }
    }

    if (!block_ok) {
      result.errors.push_back({err_line, err});
      if (!saw_delim) skip_to_delimiter(lr);
      continue;
    }

    if (saw_chg) {
      std::fill(charges.begin(), charges.end(), 0);
      for (auto [idx, q] : chg)
        if (idx >= 0 && idx < static_cast<int>(charges.size()))
          charges[idx] = q;
    }

    try {
      MoleculeBuilder builder;
      for (std::size_t i = 0; i < elements.size(); ++i) {
        Atom a;
        a.element = elements[i];
        a.formal_charge = charges[i];
        bool auto_h =
            charges[i] == 0 && elem::is_organic_subset(elements[i]);
        builder.add_atom(a, auto_h);
      }
      for (const RawBond& rb : raw_bonds) {
        BondOrder order = BondOrder::Single;
        switch (rb.type) {
          case 1: order = BondOrder::Single; break;
          case 2: order = BondOrder::Double; break;
          case 3: order = BondOrder::Triple; break;
          case 4: order = BondOrder::Aromatic; break;
        }
        builder.add_bond(rb.a, rb.b, order);
      }
      builder.set_coords(std::move(coords));
      builder.set_name(title);
      // aromatic-flag seed for code-4 bonds; perception keeps in-ring ones
      // (MoleculeBuilder derives atom flags from surviving aromatic bonds,
      // so pre-set them here)
      try {
        long long cid = std::stoll(title);
        builder.set_source_cid(cid);
      } catch (...) {
      }
      SdfRecord rec;
      rec.mol = builder.finish();
      if (!comment.empty()) fields["COMMENT"] = comment;
      rec.fields = std::move(fields);
      result.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      result.errors.push_back({counts_line, e.what()});
    }
  }
  return result;
}

SdfResult read_sdf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open SDF file: " + path);
  return read_sdf(in);
}

void write_sdf(std::ostream& out, const Molecule& mol,
               const std::map<std::string, std::string>& fields) {
  out << mol.name() << "\n  vsbench\n\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%3d%3d  0  0  0  0  0  0  0  0999 V2000\n",
                mol.atom_count(), mol.bond_count());
  out << buf;
  for (int i = 0; i < mol.atom_count(); ++i) {
    Vec3 p = mol.has_coords() ? mol.coords()[i] : Vec3{};
    std::snprintf(buf, sizeof(buf), "%10.4f%10.4f%10.4f %-3s 0  0  0  0  0\n",
                  p.x, p.y, p.z, elem::symbol(mol.atom(i).element).c_str());
    out << buf;
  }
  for (const Bond& b : mol.bonds()) {
    int type = 1;
    switch (b.order) {
      case BondOrder::Single: type = 1; break;
      case BondOrder::Double: type = 2; break;
      case BondOrder::Triple: type = 3; break;
      case BondOrder::Aromatic: type = 4; break;
    }
    std::snprintf(buf, sizeof(buf), "%3d%3d%3d  0\n", b.a + 1, b.b + 1, type);
    out << buf;
  }
  std::vector<std::pair<int, int>> chg;
  for (int i = 0; i < mol.atom_count(); ++i)
    if (mol.atom(i).formal_charge != 0)
      chg.emplace_back(i + 1, mol.atom(i).formal_charge);
  for (std::size_t k = 0; k < chg.size(); k += 8) {
    std::size_t m = std::min(chg.size(), k + 8);
    out << "M  CHG" << std::setw(3) << (m - k);
    for (std::size_t j = k; j < m; ++j) {
      std::snprintf(buf, sizeof(buf), "%4d%4d", chg[j].first, chg[j].second);
      out << buf;
    }
    out << "\n";
  }
  out << "M  END\n";
  for (const auto& [k, v] : fields) out << "> <" << k << ">\n" << v << "\n\n";
  out << "$$$$\n";
}

}  // namespace vsb
