#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace randmeas {

struct GroupFamily {
  enum class Kind { cyclic, dihedral, affine, heisenberg };
  Kind kind = Kind::cyclic;
  int parameter = 1;

  std::string descriptor() const;  // e.g. "dihedral:4"
  /// Parses "cyclic:12", "dihedral:6", "affine:5", "heisenberg:3".
  static GroupFamily parse(const std::string& text);
};

/// Finite group as a multiplication table over element indices.
/// Supported families: Z_n; D_n of order 2n; the affine group
/// Z_p x| Z_p^* of order p(p-1); the Heisenberg group Z_p^2 x| Z_p of
/// order p^3 (p prime, <= 13). Group axioms are checked at construction
/// (all triples up to order 64, sampled above).
class FiniteGroup {
 public:
  static FiniteGroup make(const GroupFamily& family);

  std::size_t order() const { return names_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const {
    return table_[a * order() + b];
  }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const GroupFamily& family() const { return family_; }
  const std::string& element_name(std::size_t g) const { return names_[g]; }

 private:
  FiniteGroup() = default;
  void finalize();  // inverse table + axiom checks

  GroupFamily family_;
  std::vector<std::size_t> table_;  // row-major order x order
  std::vector<std::size_t> inverse_;
  std::vector<std::string> names_;
  std::size_t identity_ = 0;
};

/// Sorted element-index set, closed under the group operation.
/// Validated on construction.
class Subgroup {
 public:
  Subgroup(const FiniteGroup& group, std::vector<std::size_t> elements);

  const std::vector<std::size_t>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(std::size_t g) const { return member_[g] != 0; }
  bool operator==(const Subgroup& other) const {
    return elements_ == other.elements_;
  }

  /// Short display form like "{0,2,4}".
  std::string to_string() const;

 private:
  std::vector<std::size_t> elements_;
  std::vector<char> member_;
};

/// Smallest subgroup containing the given generators.
Subgroup subgroup_closure(const FiniteGroup& group,
                          const std::vector<std::size_t>& generators);

/// All subgroups, sorted by (order, elements). Exhaustive closure-based
/// lattice search up to order 64; above that, closures of all one- and
/// two-element generating sets (complete for the supported families, whose
/// subgroups are at most 2-generated).
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group);

Subgroup intersection(const FiniteGroup& group, const Subgroup& a, const Subgroup& b);

/// Largest normal subgroup contained in h: the intersection of all
/// conjugates g h g^-1.
Subgroup normal_core(const FiniteGroup& group, const Subgroup& h);

}  // namespace randmeas
