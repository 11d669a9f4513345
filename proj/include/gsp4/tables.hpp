#pragma once

#include <string>

#include "gsp4/roots.hpp"

namespace gsp4::tables {

// Double-coset degree tables for one choice of Q, covering the three stratum
// types Sigma in the fixed order P, P*, B.  Every row is computed from
// double_cosets and degree_stats, never hardcoded.
//
// TSV layout: comment header, then one block per Sigma with columns
//   sigma  w  q_prime  q
// Rows follow the canonical element order [id, -id, s2, -s2, s1, -s1,
// s1s2, s2s1] restricted to the class representatives.
std::string tsv_table(Parabolic Q);

// Same data as JSON: {"schema":"gsp4/1","q":...,"tables":[{"sigma":...,
// "rows":[{"w":...,"q_prime":...,"q":...},...]},...]}.
std::string json_table(Parabolic Q);

}  // namespace gsp4::tables
