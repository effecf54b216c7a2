#include "vsb/element.hpp"

#include <array>
#include <map>

namespace vsb {
namespace elem {
namespace {

constexpr int kMaxZ = 103;

const char* kSymbols[kMaxZ + 1] = {
    "?",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr"};

// Conventional (abridged IUPAC 2021) atomic weights.
const double kWeights[kMaxZ + 1] = {
    0.0,     1.008,   4.0026,  6.94,    9.0122,  10.81,   12.011,  14.007,
    15.999,  18.998,  20.180,  22.990,  24.305,  26.982,  28.085,  30.974,
    32.06,   35.45,   39.95,   39.098,  40.078,  44.956,  47.867,  50.942,
    51.996,  54.938,  55.845,  58.933,  58.693,  63.546,  65.38,   69.723,
    72.630,  74.922,  78.971,  79.904,  83.798,  85.468,  87.62,   88.906,
    91.224,  92.906,  95.95,   97.0,    101.07,  102.91,  106.42,  107.87,
    112.41,  114.82,  118.71,  121.76,  127.60,  126.90,  131.29,  132.91,
    137.33,  138.91,  140.12,  140.91,  144.24,  145.0,   150.36,  151.96,
    157.25,  158.93,  162.50,  164.93,  167.26,  168.93,  173.05,  174.97,
    178.49,  180.95,  183.84,  186.21,  190.23,  192.22,  195.08,  196.97,
    200.59,  204.38,  207.2,   208.98,  209.0,   210.0,   222.0,   223.0,
    226.0,   227.0,   232.04,  231.04,  238.03,  237.0,   244.0,   243.0,
    247.0,   247.0,   251.0,   252.0,   257.0,   258.0,   259.0,   262.0};

// Bondi vdW radii (Å); 0 = untabulated, callers fall back to 1.7.
const std::map<int, double> kVdw = {
    {1, 1.20},  {2, 1.40},  {5, 1.92},  {6, 1.70},  {7, 1.55},  {8, 1.52},
    {9, 1.47},  {10, 1.54}, {11, 2.27}, {12, 1.73}, {14, 2.10}, {15, 1.80},
    {16, 1.80}, {17, 1.75}, {18, 1.88}, {19, 2.75}, {20, 2.31}, {30, 1.39},
    {31, 1.87}, {33, 1.85}, {34, 1.90}, {35, 1.85}, {36, 2.02}, {50, 2.17},
    {52, 2.06}, {53, 1.98}, {54, 2.16}};

}  // namespace

int from_symbol(std::string_view symbol) {
  static const std::map<std::string, int, std::less<>>* lookup = [] {
    auto* m = new std::map<std::string, int, std::less<>>();
    for (int z = 1; z <= kMaxZ; ++z) (*m)[kSymbols[z]] = z;
    return m;
  }();
  auto it = lookup->find(symbol);
  return it == lookup->end() ? 0 : it->second;
}

const std::string& symbol(int z) {
  static const std::array<std::string, kMaxZ + 1>* syms = [] {
    auto* a = new std::array<std::string, kMaxZ + 1>();
    for (int i = 0; i <= kMaxZ; ++i) (*a)[i] = kSymbols[i];
    return a;
  }();
  if (z < 1 || z > kMaxZ) return (*syms)[0];
  return (*syms)[z];
}

double atomic_weight(int z) {
  if (z < 1 || z > kMaxZ) return 0.0;
  return kWeights[z];
}

double vdw_radius(int z) {
  auto it = kVdw.find(z);
  return it == kVdw.end() ? 0.0 : it->second;
}

int valence_electrons(int z) {
  if (z <= 2) return z;
  if (z <= 18) {
    int n = (z - 2) % 8;
    return n == 0 ? 8 : n;
  }
  // Main groups of periods 4-6; transition metals get a crude fallback.
  static const std::map<int, int> mains = {
      {19, 1}, {20, 2}, {31, 3}, {32, 4}, {33, 5}, {34, 6}, {35, 7}, {36, 8},
      {37, 1}, {38, 2}, {49, 3}, {50, 4}, {51, 5}, {52, 6}, {53, 7}, {54, 8},
      {55, 1}, {56, 2}, {81, 3}, {82, 4}, {83, 5}, {84, 6}, {85, 7}, {86, 8}};
  auto it = mains.find(z);
  if (it != mains.end()) return it->second;
  return 2;
}

int principal_quantum_number(int z) {
  if (z <= 2) return 1;
  if (z <= 10) return 2;
  if (z <= 18) return 3;
  if (z <= 36) return 4;
  if (z <= 54) return 5;
  if (z <= 86) return 6;
  return 7;
}

bool is_organic_subset(int z) {
  switch (z) {
    case B: case C: case N: case O: case P: case S:
    case F: case Cl: case Br: case I:
      return true;
    default:
      return false;
  }
}

bool can_be_aromatic(int z) {
  switch (z) {
    case B: case C: case N: case O: case P: case S: case 34:
      return true;
    default:
      return false;
  }
}

int standard_valences(int z, int out[3]) {
  switch (z) {
    case B: out[0] = 3; return 1;
    case C: out[0] = 4; return 1;
    case N: out[0] = 3; out[1] = 5; return 2;
    case O: out[0] = 2; return 1;
    case P: out[0] = 3; out[1] = 5; return 2;
    case S: out[0] = 2; out[1] = 4; out[2] = 6; return 3;
    case F: case Cl: case Br: case I: out[0] = 1; return 1;
    case H: out[0] = 1; return 1;
    default: return 0;
  }
}

}  // namespace elem
}  // namespace vsb
