#pragma once

#include <cstdint>
#include <vector>

#include "modalagg/errors.hpp"

namespace modalagg {

// Canonical representative of a mod r in [0, r-1]; a may be any integer.
std::uint32_t normalize_value(std::int64_t a, std::int64_t r);

// Modular add/sub for already-canonical operands (a, b < r).
inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t r) {
  std::uint32_t s = a + b;
  return s >= r ? s - r : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t r) {
  return a >= b ? a - b : a + r - b;
}

// An element of Z/rZ. Equality requires equal moduli.
class Residue {
public:
  Residue(std::int64_t a, std::int64_t r);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  Residue operator+(const Residue& other) const;
  Residue operator-(const Residue& other) const;
  Residue operator+(std::int64_t b) const;
  Residue operator-(std::int64_t b) const;

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

private:
  std::uint32_t modulus_;
  std::uint32_t value_;
};

Residue normalize(std::int64_t a, std::int64_t r);

// Immutable subset of Z/rZ. Keeps a dense bitset for O(1) membership and a
// sorted member list for O(|S|) iteration.
class ResidueSet {
public:
  static ResidueSet empty_set(std::int64_t r);
  static ResidueSet full_set(std::int64_t r);
  // Members are normalized; duplicates collapse.
  static ResidueSet from_members(std::int64_t r, const std::vector<std::int64_t>& members);
  // Closed interval {lo, lo+1, ..., hi} taken mod r; saturates at the full set.
  static ResidueSet interval(std::int64_t r, std::int64_t lo, std::int64_t hi);

  std::uint32_t modulus() const { return r_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::int64_t a) const;
  bool contains_canonical(std::uint32_t v) const {
    return (bits_[v >> 6] >> (v & 63)) & 1u;
  }
  const std::vector<std::uint32_t>& members() const { return members_; }

  ResidueSet translated(std::int64_t w) const;
  ResidueSet united(const ResidueSet& other) const;
  ResidueSet complement() const;
  bool subset_of(const ResidueSet& other) const;
  bool intersects(const ResidueSet& other) const;

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.r_ == b.r_ && a.members_ == b.members_;
  }
  friend bool operator!=(const ResidueSet& a, const ResidueSet& b) { return !(a == b); }

private:
  explicit ResidueSet(std::uint32_t r);
  void require_same_modulus(const ResidueSet& other) const;

  std::uint32_t r_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> members_;
};

ResidueSet translate(const ResidueSet& s, std::int64_t w);
ResidueSet translate(const ResidueSet& s, const Residue& w);

// True iff for every a in A, k - a (mod r) is in A. Vacuous for empty A.
bool is_k_symmetric(const ResidueSet& a, std::int64_t k);

enum class FrameKind : int { Frame1 = 1, Frame2 = 2 };

// Parameters of the two cyclic frame families. Frame 1 has an apex world x
// attached to a k-step cycle; Frame 2 is the cycle with steps drawn from A.
class FrameSpec {
public:
  static FrameSpec make(FrameKind kind, std::int64_t r, std::int64_t k,
                        const std::vector<std::int64_t>& a_members);

  FrameKind kind() const { return kind_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t k() const { return k_; }
  const ResidueSet& A() const { return a_; }

  // World id of the apex x in Frame 1; one past the cycle ids.
  std::uint32_t x_world() const { return r_; }
  // World at which agenda formulas are evaluated: x for Frame 1, 0 for Frame 2.
  std::uint32_t designated_world() const;

private:
  FrameSpec(FrameKind kind, std::uint32_t r, std::uint32_t k, ResidueSet a);

  FrameKind kind_;
  std::uint32_t r_;
  std::uint32_t k_;
  ResidueSet a_;
};

// Structural conditions on (r, k, A) under which the covering machinery below
// is guaranteed to produce verified witnesses.
struct ParamReport {
  bool coprime = false;         // gcd(r, k) == 1
  bool k_small = false;         // 3k < r
  bool a_contains_ends = false; // {0, k} subset of A
  bool a_within_window = false; // A subset of [0, k]
  bool k_symmetric = false;     // a in A implies k - a in A
  bool pass = false;            // all of the above required by the frame kind
};

ParamReport check_theorem_params(const FrameSpec& spec);

}  // namespace modalagg
