#pragma once

// Catalog of the screw-motion space groups of S^2 x R with rotation point
// groups, and enumeration of their elements.
//
// Point-group families and generator conventions:
//   1q  cyclic [q]       g1: q-fold about z
//   3q  dihedral [2,2,q] g1: half turn about x, g2: half turn about an axis in
//                        the [x,y] plane at angle pi/q; g1 g2 is the q-fold
//                        rotation about z. Relations g1^2 = g2^2 = (g1 g2)^q = 1.
//   8   [2,3,3]  9 [2,3,4]  10 [2,3,5]
//                        g1: half turn about x, g2: 3-fold about an axis in
//                        the [x,y] plane; g1 g2 has order 3, 4, 5.
// Translation parts of generators are fractions of the lattice parameter tau.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "s2xr/isometry.hpp"

namespace s2xr {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class UnknownGroup : public GroupError {
 public:
  using GroupError::GroupError;
};
class ClosureOverflow : public GroupError {
 public:
  using GroupError::GroupError;
};
class RelationViolation : public GroupError {
 public:
  using GroupError::GroupError;
};

/// Exact rational number num/den with den > 0, in lowest terms.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(long num, long den);

  long num() const { return num_; }
  long den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Representative in [0, 1).
  Fraction mod1() const;
  bool is_integer() const { return den_ == 1; }
  std::string str() const;

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a);
  friend bool operator==(const Fraction& a, const Fraction& b) = default;

 private:
  long num_ = 0;
  long den_ = 1;
};

enum class Family { Cyclic, Dihedral, Tetrahedral, Octahedral, Icosahedral };

struct Generator {
  Vec3 axis;
  int order = 1;
  Fraction frac;  ///< translation part as a multiple of tau
};

struct SpaceGroupSpec {
  std::string name;
  Family family = Family::Cyclic;
  std::optional<int> q;
  std::optional<int> k;  ///< only for 1q.I.2
  std::string signature;
  std::vector<Generator> generators;
  /// Defining relators as generator-index words; each evaluates to a pure
  /// lattice translation.
  std::vector<std::vector<int>> relators;
  int point_group_order = 1;
  /// Vertices (rotation axes) of the spherical triangle the kernel search runs
  /// over; a fundamental region of the point group's normalizer.
  std::array<Vec3, 3> search_triangle;

  /// Translation parts of the generators, e.g. {0, 1/3}.
  std::vector<Fraction> translation_parts() const;
};

/// Element of the point group with its translation part mod 1.
struct PointGroupElement {
  Mat3 linear;
  Fraction frac;          ///< in [0, 1)
  std::vector<int> word;  ///< generator indices, multiplied left to right with compose()
};

/// Element of the space group: point-group element plus lattice offset m;
/// iso.shift = (frac + m) * tau.
struct GroupElement {
  Isometry iso;
  std::vector<int> word;
  Fraction frac;
  int lattice = 0;

  double shift_units() const { return frac.value() + lattice; }
  bool is_identity() const { return word.empty() && frac.num() == 0 && lattice == 0; }
};

/// A translation-part class of a family together with its group name.
struct TranslationClass {
  std::string name;
  std::vector<Fraction> parts;
};

/// Names of the ten cataloged groups in table order.
const std::vector<std::string>& catalog_names();

/// Builds a cataloged group. q defaults to 3 (4 for 3qe.I.3) and k to 1.
/// Throws UnknownGroup for names outside the catalog or illegal (q, k).
SpaceGroupSpec make_group(std::string_view name, std::optional<int> q = std::nullopt,
                          std::optional<int> k = std::nullopt);

/// Whether the group name carries the parameter q.
bool has_q_parameter(std::string_view name);

/// Closure of the generator rotations, with translation parts reduced mod 1.
/// Throws ClosureOverflow or RelationViolation.
std::vector<PointGroupElement> build_point_group(const SpaceGroupSpec& spec);

/// All elements whose fibre shift (s + m) tau satisfies |s + m| <= k_max,
/// excluding the identity itself.
std::vector<GroupElement> enumerate_elements(const SpaceGroupSpec& spec, double tau, int k_max);

/// Translation-part classes of a family ("1q", "3q", "8", "9", "10").
/// Throws UnknownGroup for other family names.
std::vector<TranslationClass> frobenius_classes(std::string_view family, int q = 3);

/// Isometry of a single generator with its translation part at lattice parameter tau.
Isometry generator_isometry(const SpaceGroupSpec& spec, int index, double tau);

/// Composition of generator isometries along a word (left to right).
Isometry word_isometry(const SpaceGroupSpec& spec, const std::vector<int>& word, double tau);

}  // namespace s2xr
