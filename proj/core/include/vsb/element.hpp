#pragma once

#include <string>
#include <string_view>

namespace vsb {

// Periodic-table lookups. Data tables live in element.cpp.
namespace elem {

constexpr int H = 1, B = 5, C = 6, N = 7, O = 8, F = 9, Si = 14, P = 15,
              S = 16, Cl = 17, Br = 35, I = 53;

// 0 if the symbol is unknown. Case-sensitive ("Cl", not "CL").
int from_symbol(std::string_view symbol);
const std::string& symbol(int atomic_number);

double atomic_weight(int atomic_number);

// van der Waals radius (Bondi), Å; 0 if untabulated.
double vdw_radius(int atomic_number);

// Valence electrons of the neutral atom (main groups; d-block returns
// group-count fallback).
int valence_electrons(int atomic_number);

// Principal quantum number of the valence shell.
int principal_quantum_number(int atomic_number);

bool is_organic_subset(int atomic_number);    // B C N O P S F Cl Br I
bool can_be_aromatic(int atomic_number);      // B C N O P S Se

// Allowed valences for implicit-H resolution; returns count, fills out[].
int standard_valences(int atomic_number, int out[3]);

}  // namespace elem
}  // namespace vsb
