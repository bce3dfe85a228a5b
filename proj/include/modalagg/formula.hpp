#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modalagg/errors.hpp"

namespace modalagg {

enum class ModalOp : std::uint8_t { Box, Diamond };

// A formula of the single-proposition modal language: an optional leading
// negation followed by a string of boxes and diamonds applied to p.
// Double negation is identified with the unnegated formula, so `negated`
// is the complete polarity.
class ModalFormula {
public:
  ModalFormula() : negated_(false) {}
  ModalFormula(bool negated, std::vector<ModalOp> prefix)
      : negated_(negated), prefix_(std::move(prefix)) {}

  static ModalFormula atom() { return ModalFormula(); }

  bool negated() const { return negated_; }
  const std::vector<ModalOp>& prefix() const { return prefix_; }
  std::size_t depth() const { return prefix_.size(); }

  ModalFormula negation() const { return ModalFormula(!negated_, prefix_); }
  // Formula with `count` extra operators pushed onto the front.
  ModalFormula prefixed(std::initializer_list<ModalOp> ops) const;
  // Formula with the first `count` operators removed.
  ModalFormula suffix(std::size_t count) const;

  friend bool operator==(const ModalFormula& a, const ModalFormula& b) {
    return a.negated_ == b.negated_ && a.prefix_ == b.prefix_;
  }
  friend bool operator!=(const ModalFormula& a, const ModalFormula& b) { return !(a == b); }

private:
  bool negated_;
  std::vector<ModalOp> prefix_;
};

// Grammar: ['!'] ('B' | 'D')* 'p'. Unicode aliases accepted on input:
// U+00AC for '!', U+25A1 for 'B', U+25C7 for 'D'.
ModalFormula parse(std::string_view text);

// Canonical ASCII form, e.g. "!BDp"; parse(render(f)) == f.
std::string render(const ModalFormula& f);

}  // namespace modalagg
