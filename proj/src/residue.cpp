#include "modalagg/residue.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace modalagg {

namespace {

std::uint32_t check_modulus(std::int64_t r) {
  if (r < 2 || r > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("modulus must satisfy 2 <= r <= 2^32 - 1, got " + std::to_string(r));
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

std::uint32_t normalize_value(std::int64_t a, std::int64_t r) {
  std::uint32_t m = check_modulus(r);
  std::int64_t v = a % static_cast<std::int64_t>(m);
  if (v < 0) v += m;
  return static_cast<std::uint32_t>(v);
}

Residue::Residue(std::int64_t a, std::int64_t r)
    : modulus_(check_modulus(r)), value_(normalize_value(a, r)) {}

Residue Residue::operator+(const Residue& other) const {
  if (modulus_ != other.modulus_) throw ParameterError("residue moduli differ");
  return Residue(static_cast<std::int64_t>(value_) + other.value_, modulus_);
}

Residue Residue::operator-(const Residue& other) const {
  if (modulus_ != other.modulus_) throw ParameterError("residue moduli differ");
  return Residue(static_cast<std::int64_t>(value_) - other.value_, modulus_);
}

Residue Residue::operator+(std::int64_t b) const {
  return Residue(static_cast<std::int64_t>(value_) + b % modulus_, modulus_);
}

Residue Residue::operator-(std::int64_t b) const {
  return Residue(static_cast<std::int64_t>(value_) - b % modulus_, modulus_);
}

Residue normalize(std::int64_t a, std::int64_t r) { return Residue(a, r); }

ResidueSet::ResidueSet(std::uint32_t r) : r_(r), bits_((r + 63) / 64, 0) {}

ResidueSet ResidueSet::empty_set(std::int64_t r) { return ResidueSet(check_modulus(r)); }

ResidueSet ResidueSet::full_set(std::int64_t r) {
  ResidueSet s(check_modulus(r));
  s.members_.resize(s.r_);
  for (std::uint32_t v = 0; v < s.r_; ++v) {
    s.members_[v] = v;
    s.bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  return s;
}

ResidueSet ResidueSet::from_members(std::int64_t r, const std::vector<std::int64_t>& members) {
  ResidueSet s(check_modulus(r));
  for (std::int64_t a : members) {
    std::uint32_t v = normalize_value(a, r);
    s.bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  for (std::uint32_t v = 0; v < s.r_; ++v) {
    if (s.contains_canonical(v)) s.members_.push_back(v);
  }
  return s;
}

ResidueSet ResidueSet::interval(std::int64_t r, std::int64_t lo, std::int64_t hi) {
  std::uint32_t m = check_modulus(r);
  if (hi < lo) throw ParameterError("interval bounds out of order");
  if (hi - lo + 1 >= m) return full_set(r);
  ResidueSet s(m);
  std::uint32_t v = normalize_value(lo, r);
  for (std::int64_t i = lo; i <= hi; ++i) {
    s.bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
    v = add_mod(v, 1, m);
  }
  for (std::uint32_t u = 0; u < m; ++u) {
    if (s.contains_canonical(u)) s.members_.push_back(u);
  }
  return s;
}

bool ResidueSet::contains(std::int64_t a) const {
  return contains_canonical(normalize_value(a, r_));
}

void ResidueSet::require_same_modulus(const ResidueSet& other) const {
  if (r_ != other.r_) throw ParameterError("residue set moduli differ");
}

ResidueSet ResidueSet::translated(std::int64_t w) const {
  std::uint32_t shift = normalize_value(w, r_);
  ResidueSet out(r_);
  for (std::uint32_t v : members_) {
    std::uint32_t u = add_mod(v, shift, r_);
    out.bits_[u >> 6] |= std::uint64_t{1} << (u & 63);
  }
  for (std::uint32_t u = 0; u < r_; ++u) {
    if (out.contains_canonical(u)) out.members_.push_back(u);
  }
  return out;
}

ResidueSet ResidueSet::united(const ResidueSet& other) const {
  require_same_modulus(other);
  ResidueSet out(r_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | other.bits_[i];
  out.members_.reserve(members_.size() + other.members_.size());
  for (std::uint32_t u = 0; u < r_; ++u) {
    if (out.contains_canonical(u)) out.members_.push_back(u);
  }
  return out;
}

ResidueSet ResidueSet::complement() const {
  ResidueSet out(r_);
  out.members_.reserve(r_ - members_.size());
  for (std::uint32_t u = 0; u < r_; ++u) {
    if (!contains_canonical(u)) {
      out.bits_[u >> 6] |= std::uint64_t{1} << (u & 63);
      out.members_.push_back(u);
    }
  }
  return out;
}

bool ResidueSet::subset_of(const ResidueSet& other) const {
  require_same_modulus(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

bool ResidueSet::intersects(const ResidueSet& other) const {
  require_same_modulus(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & other.bits_[i]) return true;
  }
  return false;
}

ResidueSet translate(const ResidueSet& s, std::int64_t w) { return s.translated(w); }

ResidueSet translate(const ResidueSet& s, const Residue& w) {
  if (w.modulus() != s.modulus()) throw ParameterError("residue set and shift moduli differ");
  return s.translated(w.value());
}

bool is_k_symmetric(const ResidueSet& a, std::int64_t k) {
  std::uint32_t r = a.modulus();
  std::uint32_t kk = normalize_value(k, r);
  for (std::uint32_t v : a.members()) {
    if (!a.contains_canonical(sub_mod(kk, v, r))) return false;
  }
  return true;
}

FrameSpec::FrameSpec(FrameKind kind, std::uint32_t r, std::uint32_t k, ResidueSet a)
    : kind_(kind), r_(r), k_(k), a_(std::move(a)) {}

FrameSpec FrameSpec::make(FrameKind kind, std::int64_t r, std::int64_t k,
                          const std::vector<std::int64_t>& a_members) {
  std::uint32_t m = check_modulus(r);
  if (kind != FrameKind::Frame1 && kind != FrameKind::Frame2) {
    throw ParameterError("frame kind must be 1 or 2");
  }
  if (k < 1 || static_cast<std::uint64_t>(k) >= m) {
    throw ParameterError("shift k must satisfy 1 <= k < r, got " + std::to_string(k));
  }
  ResidueSet a = ResidueSet::from_members(r, a_members);
  if (a.empty()) throw ParameterError("successor set A must be nonempty");
  return FrameSpec(kind, m, static_cast<std::uint32_t>(k), std::move(a));
}

std::uint32_t FrameSpec::designated_world() const {
  return kind_ == FrameKind::Frame1 ? x_world() : 0;
}

ParamReport check_theorem_params(const FrameSpec& spec) {
  ParamReport rep;
  std::uint32_t r = spec.r();
  std::uint32_t k = spec.k();
  rep.coprime = std::gcd(r, k) == 1;
  rep.k_small = 3ull * k < r;
  rep.a_contains_ends = spec.A().contains_canonical(0) && spec.A().contains_canonical(k);
  rep.a_within_window = spec.A().subset_of(ResidueSet::interval(r, 0, k));
  rep.k_symmetric = is_k_symmetric(spec.A(), k);
  rep.pass = rep.coprime && rep.k_small && rep.a_contains_ends && rep.a_within_window;
  if (spec.kind() == FrameKind::Frame2) rep.pass = rep.pass && rep.k_symmetric;
  return rep;
}

}  // namespace modalagg
