#include "modalagg/formula.hpp"

namespace modalagg {

ModalFormula ModalFormula::prefixed(std::initializer_list<ModalOp> ops) const {
  std::vector<ModalOp> p;
  p.reserve(prefix_.size() + ops.size());
  p.insert(p.end(), ops.begin(), ops.end());
  p.insert(p.end(), prefix_.begin(), prefix_.end());
  return ModalFormula(negated_, std::move(p));
}

ModalFormula ModalFormula::suffix(std::size_t count) const {
  if (count > prefix_.size()) throw ParameterError("suffix longer than operator prefix");
  return ModalFormula(negated_, std::vector<ModalOp>(prefix_.begin() + count, prefix_.end()));
}

namespace {

// Decodes one token at byte offset i, advancing i. Returns '\0' at end.
// Tokens: '!', 'B', 'D', 'p'; the UTF-8 aliases map onto the same letters.
char next_token(std::string_view text, std::size_t& i) {
  if (i >= text.size()) return '\0';
  unsigned char c = static_cast<unsigned char>(text[i]);
  if (c == '!' || c == 'B' || c == 'D' || c == 'p') {
    ++i;
    return static_cast<char>(c);
  }
  auto has = [&](std::size_t at, unsigned char want) {
    return at < text.size() && static_cast<unsigned char>(text[at]) == want;
  };
  if (c == 0xC2 && has(i + 1, 0xAC)) {  // U+00AC NOT SIGN
    i += 2;
    return '!';
  }
  if (c == 0xE2 && has(i + 1, 0x96) && has(i + 2, 0xA1)) {  // U+25A1 WHITE SQUARE
    i += 3;
    return 'B';
  }
  if (c == 0xE2 && has(i + 1, 0x97) && has(i + 2, 0x87)) {  // U+25C7 WHITE DIAMOND
    i += 3;
    return 'D';
  }
  throw ParseError("unexpected character", i);
}

}  // namespace

ModalFormula parse(std::string_view text) {
  std::size_t i = 0;
  bool negated = false;
  std::size_t start = i;
  char t = next_token(text, i);
  if (t == '!') {
    negated = true;
    start = i;
    t = next_token(text, i);
  }
  std::vector<ModalOp> prefix;
  while (t == 'B' || t == 'D') {
    prefix.push_back(t == 'B' ? ModalOp::Box : ModalOp::Diamond);
    start = i;
    t = next_token(text, i);
  }
  if (t != 'p') throw ParseError("expected proposition letter 'p'", start);
  if (i != text.size()) throw ParseError("trailing input after formula", i);
  return ModalFormula(negated, std::move(prefix));
}

std::string render(const ModalFormula& f) {
  std::string out;
  out.reserve(f.depth() + 2);
  if (f.negated()) out.push_back('!');
  for (ModalOp op : f.prefix()) out.push_back(op == ModalOp::Box ? 'B' : 'D');
  out.push_back('p');
  return out;
}

}  // namespace modalagg
