#include "gsp4/roots.hpp"

#include <stdexcept>

namespace gsp4 {

std::string parabolic_name(Parabolic q) {
  switch (q) {
    case Parabolic::Borel: return "B";
    case Parabolic::Siegel: return "P";
    case Parabolic::Klingen: return "P*";
    case Parabolic::Full: return "G";
  }
  return "?";
}

Parabolic parabolic_from_name(const std::string& s) {
  if (s == "B") return Parabolic::Borel;
  if (s == "P") return Parabolic::Siegel;
  if (s == "P*" || s == "Pstar" || s == "P^*") return Parabolic::Klingen;
  if (s == "G") return Parabolic::Full;
  throw std::invalid_argument("unknown parabolic: " + s);
}

const std::array<Root, 4>& positive_roots() {
  static const std::array<Root, 4> r = {Root{1, -1}, Root{0, 2}, Root{1, 1}, Root{2, 0}};
  return r;
}

std::string root_name(const Root& r) {
  const char* names[4] = {"a1", "a2", "a1+a2", "2a1+a2"};
  for (int i = 0; i < 4; ++i) {
    if (r == positive_roots()[static_cast<size_t>(i)]) return names[i];
    if (-r == positive_roots()[static_cast<size_t>(i)]) return std::string("-(") + names[i] + ")";
  }
  return "?";
}

int pos_root_index(const Root& r) {
  for (int i = 0; i < 4; ++i) {
    if (r == positive_roots()[static_cast<size_t>(i)]) return i;
    if (-r == positive_roots()[static_cast<size_t>(i)]) return i;
  }
  return -1;
}

const std::vector<Root>& nilradical_roots(Parabolic q) {
  static const std::vector<Root> borel = {Root{1, -1}, Root{0, 2}, Root{1, 1}, Root{2, 0}};
  static const std::vector<Root> siegel = {Root{0, 2}, Root{1, 1}, Root{2, 0}};
  static const std::vector<Root> klingen = {Root{1, -1}, Root{1, 1}, Root{2, 0}};
  static const std::vector<Root> none;
  switch (q) {
    case Parabolic::Borel: return borel;
    case Parabolic::Siegel: return siegel;
    case Parabolic::Klingen: return klingen;
    case Parabolic::Full: return none;
  }
  return none;
}

const std::vector<Root>& levi_roots(Parabolic q) {
  static const std::vector<Root> none;
  static const std::vector<Root> siegel = {Root{1, -1}};
  static const std::vector<Root> klingen = {Root{0, 2}};
  static const std::vector<Root> full = {Root{1, -1}, Root{0, 2}, Root{1, 1}, Root{2, 0}};
  switch (q) {
    case Parabolic::Borel: return none;
    case Parabolic::Siegel: return siegel;
    case Parabolic::Klingen: return klingen;
    case Parabolic::Full: return full;
  }
  return none;
}

}  // namespace gsp4
