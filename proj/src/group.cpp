#include "randmeas/group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "randmeas/rng.hpp"

namespace randmeas {

namespace {

bool is_small_prime(int p) {
  for (int q : {2, 3, 5, 7, 11, 13}) {
    if (p == q) return true;
  }
  return false;
}

std::string kind_name(GroupFamily::Kind kind) {
  switch (kind) {
    case GroupFamily::Kind::cyclic: return "cyclic";
    case GroupFamily::Kind::dihedral: return "dihedral";
    case GroupFamily::Kind::affine: return "affine";
    case GroupFamily::Kind::heisenberg: return "heisenberg";
  }
  return "?";
}

}  // namespace

std::string GroupFamily::descriptor() const {
  return kind_name(kind) + ":" + std::to_string(parameter);
}

GroupFamily GroupFamily::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon + 1 >= text.size()) {
    throw std::invalid_argument("group descriptor must look like 'dihedral:4': " +
                                text);
  }
  const std::string name = text.substr(0, colon);
  int parameter = 0;
  try {
    parameter = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad group parameter in descriptor: " + text);
  }
  GroupFamily family;
  family.parameter = parameter;
  if (name == "cyclic") family.kind = Kind::cyclic;
  else if (name == "dihedral") family.kind = Kind::dihedral;
  else if (name == "affine") family.kind = Kind::affine;
  else if (name == "heisenberg") family.kind = Kind::heisenberg;
  else throw std::invalid_argument("unknown group family: " + name);
  return family;
}

FiniteGroup FiniteGroup::make(const GroupFamily& family) {
  const int p = family.parameter;
  FiniteGroup g;
  g.family_ = family;

  switch (family.kind) {
    case GroupFamily::Kind::cyclic: {
      if (p < 1) throw std::invalid_argument("cyclic group needs n >= 1");
      const std::size_t n = static_cast<std::size_t>(p);
      g.names_.resize(n);
      g.table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        g.names_[a] = std::to_string(a);
        for (std::size_t b = 0; b < n; ++b) g.table_[a * n + b] = (a + b) % n;
      }
      g.identity_ = 0;
      break;
    }
    case GroupFamily::Kind::dihedral: {
      if (p < 1) throw std::invalid_argument("dihedral group needs n >= 1");
      const std::size_t n = static_cast<std::size_t>(p);
      const std::size_t order = 2 * n;
      g.names_.resize(order);
      g.table_.resize(order * order);
      // Element r^a s^f has index a + n*f; s r s = r^-1.
      auto idx = [n](std::size_t a, std::size_t f) { return a + n * f; };
      for (std::size_t a1 = 0; a1 < n; ++a1) {
        for (std::size_t f1 = 0; f1 < 2; ++f1) {
          g.names_[idx(a1, f1)] =
              (f1 ? "r" + std::to_string(a1) + "s" : "r" + std::to_string(a1));
          for (std::size_t a2 = 0; a2 < n; ++a2) {
            for (std::size_t f2 = 0; f2 < 2; ++f2) {
              const std::size_t a =
                  f1 ? (a1 + n - a2 % n) % n : (a1 + a2) % n;
              g.table_[idx(a1, f1) * order + idx(a2, f2)] = idx(a, f1 ^ f2);
            }
          }
        }
      }
      g.identity_ = 0;
      break;
    }
    case GroupFamily::Kind::affine: {
      if (!is_small_prime(p)) {
        throw std::invalid_argument("affine group needs a prime p <= 13");
      }
      const std::size_t pp = static_cast<std::size_t>(p);
      const std::size_t order = pp * (pp - 1);
      g.names_.resize(order);
      g.table_.resize(order * order);
      // Element (a, b): x -> a x + b with a in [1, p), b in [0, p).
      auto idx = [pp](std::size_t a, std::size_t b) { return (a - 1) * pp + b; };
      for (std::size_t a1 = 1; a1 < pp; ++a1) {
        for (std::size_t b1 = 0; b1 < pp; ++b1) {
          g.names_[idx(a1, b1)] =
              "(a=" + std::to_string(a1) + ",b=" + std::to_string(b1) + ")";
          for (std::size_t a2 = 1; a2 < pp; ++a2) {
            for (std::size_t b2 = 0; b2 < pp; ++b2) {
              const std::size_t a = (a1 * a2) % pp;
              const std::size_t b = (a1 * b2 + b1) % pp;
              g.table_[idx(a1, b1) * order + idx(a2, b2)] = idx(a, b);
            }
          }
        }
      }
      g.identity_ = idx(1, 0);
      break;
    }
    case GroupFamily::Kind::heisenberg: {
      if (!is_small_prime(p)) {
        throw std::invalid_argument("heisenberg group needs a prime p <= 13");
      }
      const std::size_t pp = static_cast<std::size_t>(p);
      const std::size_t order = pp * pp * pp;
      g.names_.resize(order);
      g.table_.resize(order * order);
      // Upper unitriangular (x, y, z):
      // (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2).
      auto idx = [pp](std::size_t x, std::size_t y, std::size_t z) {
        return (x * pp + y) * pp + z;
      };
      for (std::size_t x1 = 0; x1 < pp; ++x1)
        for (std::size_t y1 = 0; y1 < pp; ++y1)
          for (std::size_t z1 = 0; z1 < pp; ++z1) {
            g.names_[idx(x1, y1, z1)] = "(" + std::to_string(x1) + "," +
                                        std::to_string(y1) + "," +
                                        std::to_string(z1) + ")";
            for (std::size_t x2 = 0; x2 < pp; ++x2)
              for (std::size_t y2 = 0; y2 < pp; ++y2)
                for (std::size_t z2 = 0; z2 < pp; ++z2) {
                  g.table_[idx(x1, y1, z1) * order + idx(x2, y2, z2)] =
                      idx((x1 + x2) % pp, (y1 + y2) % pp,
                          (z1 + z2 + x1 * y2) % pp);
                }
          }
      g.identity_ = 0;
      break;
    }
  }

  g.finalize();
  return g;
}

void FiniteGroup::finalize() {
  const std::size_t n = order();

  // Identity and inverse laws, exact.
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (mul(identity_, a) != a || mul(a, identity_) != a) {
      throw std::logic_error("FiniteGroup: identity law violated");
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] == n) {
      throw std::logic_error("FiniteGroup: element without inverse");
    }
  }

  // Associativity: every triple up to order 64, random triples above.
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw std::logic_error("FiniteGroup: associativity violated");
          }
        }
  } else {
    RngStream rng(0, 0);
    for (int trial = 0; trial < 200000; ++trial) {
      const std::size_t a = rng.next_u64() % n;
      const std::size_t b = rng.next_u64() % n;
      const std::size_t c = rng.next_u64() % n;
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
        throw std::logic_error("FiniteGroup: associativity violated");
      }
    }
  }
}

Subgroup::Subgroup(const FiniteGroup& group, std::vector<std::size_t> elements)
    : elements_(std::move(elements)), member_(group.order(), 0) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty() || elements_.back() >= group.order()) {
    throw std::invalid_argument("Subgroup: element index out of range");
  }
  for (std::size_t g : elements_) member_[g] = 1;
  if (!contains(group.identity())) {
    throw std::invalid_argument("Subgroup: identity element missing");
  }
  for (std::size_t a : elements_) {
    if (!contains(group.inverse(a))) {
      throw std::invalid_argument("Subgroup: not closed under inverses");
    }
    for (std::size_t b : elements_) {
      if (!contains(group.mul(a, b))) {
        throw std::invalid_argument("Subgroup: not closed under multiplication");
      }
    }
  }
  if (group.order() % elements_.size() != 0) {
    throw std::invalid_argument("Subgroup: order does not divide the group order");
  }
}

std::string Subgroup::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(elements_[i]);
  }
  out += '}';
  return out;
}

Subgroup subgroup_closure(const FiniteGroup& group,
                          const std::vector<std::size_t>& generators) {
  std::vector<char> member(group.order(), 0);
  std::vector<std::size_t> elements;
  auto add = [&](std::size_t g) {
    if (!member[g]) {
      member[g] = 1;
      elements.push_back(g);
    }
  };
  add(group.identity());
  for (std::size_t g : generators) {
    if (g >= group.order()) {
      throw std::invalid_argument("subgroup_closure: generator out of range");
    }
    add(g);
  }
  // Products of known elements until a fixed point; inverses come for free
  // in a finite group (a^-1 is a power of a).
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      add(group.mul(elements[i], elements[j]));
    }
  }
  return Subgroup(group, elements);
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<Subgroup> found;
  auto add = [&](Subgroup subgroup) {
    if (seen.insert(subgroup.elements()).second) {
      found.push_back(std::move(subgroup));
      return true;
    }
    return false;
  };

  add(Subgroup(group, {group.identity()}));

  if (group.order() <= 64) {
    // Lattice search: extend every known subgroup by every outside element.
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (std::size_t g = 0; g < group.order(); ++g) {
        if (found[i].contains(g)) continue;
        std::vector<std::size_t> gens = found[i].elements();
        gens.push_back(g);
        add(subgroup_closure(group, gens));
      }
    }
  } else {
    for (std::size_t g = 0; g < group.order(); ++g) {
      add(subgroup_closure(group, {g}));
      for (std::size_t h = g + 1; h < group.order(); ++h) {
        add(subgroup_closure(group, {g, h}));
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return found;
}

Subgroup intersection(const FiniteGroup& group, const Subgroup& a, const Subgroup& b) {
  std::vector<std::size_t> elements;
  for (std::size_t g : a.elements()) {
    if (b.contains(g)) elements.push_back(g);
  }
  return Subgroup(group, std::move(elements));
}

Subgroup normal_core(const FiniteGroup& group, const Subgroup& h) {
  std::vector<char> in_core(group.order(), 0);
  for (std::size_t g : h.elements()) in_core[g] = 1;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const std::size_t ginv = group.inverse(g);
    std::vector<char> conj(group.order(), 0);
    for (std::size_t x : h.elements()) {
      conj[group.mul(group.mul(g, x), ginv)] = 1;
    }
    for (std::size_t e = 0; e < group.order(); ++e) {
      if (!conj[e]) in_core[e] = 0;
    }
  }
  std::vector<std::size_t> elements;
  for (std::size_t e = 0; e < group.order(); ++e) {
    if (in_core[e]) elements.push_back(e);
  }
  return Subgroup(group, std::move(elements));
}

}  // namespace randmeas
