#include "modalagg/kripke.hpp"

#include <algorithm>

namespace modalagg {

KripkeModel KripkeModel::from_spec(const FrameSpec& spec, const ResidueSet& valuation,
                                   bool p_at_x) {
  if (valuation.modulus() != spec.r()) {
    throw ParameterError("valuation modulus does not match frame");
  }
  KripkeModel m;
  m.frame_backed_ = true;
  m.kind_ = spec.kind();
  m.r_ = spec.r();
  m.k_ = spec.k();
  m.a_members_ = spec.A().members();
  m.world_count_ = spec.kind() == FrameKind::Frame1 ? spec.r() + 1 : spec.r();
  m.p_.assign(m.world_count_, 0);
  for (std::uint32_t v : valuation.members()) m.p_[v] = 1;
  if (spec.kind() == FrameKind::Frame1) m.p_[spec.x_world()] = p_at_x ? 1 : 0;
  return m;
}

KripkeModel KripkeModel::from_graph(
    std::uint32_t worlds, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    const std::vector<std::uint32_t>& valuation) {
  KripkeModel m;
  m.world_count_ = worlds;
  m.p_.assign(worlds, 0);
  for (std::uint32_t v : valuation) {
    if (v >= worlds) throw ParameterError("valuation world out of range");
    m.p_[v] = 1;
  }
  std::vector<std::uint32_t> degree(worlds, 0);
  for (const auto& [from, to] : edges) {
    if (from >= worlds || to >= worlds) throw ParameterError("edge world out of range");
    ++degree[from];
  }
  m.adj_heads_.assign(worlds + 1, 0);
  for (std::uint32_t w = 0; w < worlds; ++w) m.adj_heads_[w + 1] = m.adj_heads_[w] + degree[w];
  m.adj_.resize(edges.size());
  std::vector<std::uint32_t> cursor(m.adj_heads_.begin(), m.adj_heads_.end() - 1);
  for (const auto& [from, to] : edges) m.adj_[cursor[from]++] = to;
  for (std::uint32_t w = 0; w < worlds; ++w) {
    std::sort(m.adj_.begin() + m.adj_heads_[w], m.adj_.begin() + m.adj_heads_[w + 1]);
  }
  return m;
}

void KripkeModel::successors(std::uint32_t w, std::vector<std::uint32_t>& out) const {
  out.clear();
  if (w >= world_count_) throw ParameterError("world id out of range");
  if (!frame_backed_) {
    out.insert(out.end(), adj_.begin() + adj_heads_[w], adj_.begin() + adj_heads_[w + 1]);
    return;
  }
  if (kind_ == FrameKind::Frame1) {
    if (w == r_) {
      out = a_members_;
    } else {
      out.push_back(add_mod(w, k_ % r_, r_));
    }
    return;
  }
  out.reserve(a_members_.size());
  for (std::uint32_t a : a_members_) out.push_back(add_mod(w, a, r_));
}

std::vector<bool> eval_all_worlds(const KripkeModel& model, const ModalFormula& f) {
  const std::uint32_t n = model.world_count();
  const auto& prefix = f.prefix();
  // Backward pass over the operator prefix: level d holds the truth of the
  // suffix starting at operator d, level depth() is the atom itself.
  std::vector<std::uint8_t> cur(n), next(n);
  for (std::uint32_t w = 0; w < n; ++w) cur[w] = model.p_holds(w) ? 1 : 0;
  std::vector<std::uint32_t> succ;
  for (std::size_t d = prefix.size(); d-- > 0;) {
    bool box = prefix[d] == ModalOp::Box;
    for (std::uint32_t w = 0; w < n; ++w) {
      model.successors(w, succ);
      bool value = box;
      for (std::uint32_t s : succ) {
        if (box) {
          if (!cur[s]) {
            value = false;
            break;
          }
        } else {
          if (cur[s]) {
            value = true;
            break;
          }
        }
      }
      next[w] = value ? 1 : 0;
    }
    cur.swap(next);
  }
  std::vector<bool> out(n);
  for (std::uint32_t w = 0; w < n; ++w) out[w] = f.negated() ? !cur[w] : cur[w] != 0;
  return out;
}

bool eval(const KripkeModel& model, std::uint32_t world, const ModalFormula& f) {
  if (world >= model.world_count()) throw ParameterError("world id out of range");
  return eval_all_worlds(model, f)[world];
}

std::pair<Residue, ModalFormula> reduce_step(const FrameSpec& spec, std::int64_t w,
                                             const ModalFormula& f) {
  if (spec.kind() != FrameKind::Frame2) {
    throw ParameterError("reduce_step applies to Frame 2 only");
  }
  if (!is_k_symmetric(spec.A(), spec.k())) {
    throw ParameterError("reduce_step requires a k-symmetric successor set");
  }
  const auto& prefix = f.prefix();
  if (prefix.size() < 3 || prefix[0] != ModalOp::Box || prefix[1] != ModalOp::Diamond ||
      prefix[2] != ModalOp::Box) {
    throw ParameterError("formula prefix must start Box Diamond Box");
  }
  return {Residue(w + spec.k(), spec.r()), f.suffix(2)};
}

IndexedProposition reduce_agenda_formula(const FrameSpec& spec, const ModalFormula& f) {
  const auto& prefix = f.prefix();
  IndexedProposition prop;
  prop.positive = !f.negated();
  if (spec.kind() == FrameKind::Frame1) {
    // B^j p with j >= 1.
    if (prefix.empty()) throw AgendaError("Frame 1 agenda requires at least one box");
    for (ModalOp op : prefix) {
      if (op != ModalOp::Box) throw AgendaError("Frame 1 agenda formulas are box-only");
    }
    std::uint64_t j = prefix.size();
    prop.index = normalize_value(static_cast<std::int64_t>((j - 1) * spec.k()), spec.r());
    return prop;
  }
  if (!is_k_symmetric(spec.A(), spec.k())) {
    throw ParameterError("Frame 2 agenda reduction requires a k-symmetric successor set");
  }
  // (BD)^j B p with j >= 0.
  if (prefix.empty() || prefix.size() % 2 == 0) {
    throw AgendaError("Frame 2 agenda formulas have odd box-diamond prefixes");
  }
  std::uint64_t j = (prefix.size() - 1) / 2;
  for (std::size_t i = 0; i + 1 < prefix.size(); i += 2) {
    if (prefix[i] != ModalOp::Box || prefix[i + 1] != ModalOp::Diamond) {
      throw AgendaError("Frame 2 agenda formulas alternate box then diamond");
    }
  }
  if (prefix.back() != ModalOp::Box) {
    throw AgendaError("Frame 2 agenda formulas end with a box");
  }
  prop.index = normalize_value(static_cast<std::int64_t>(j * spec.k()), spec.r());
  return prop;
}

bool indexed_truth(const FrameSpec& spec, const ResidueSet& v, const IndexedProposition& prop) {
  if (v.modulus() != spec.r()) throw ParameterError("valuation modulus does not match frame");
  bool holds = spec.A().translated(prop.index).subset_of(v);
  return prop.positive ? holds : !holds;
}

}  // namespace modalagg
