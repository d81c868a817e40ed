#include "steinhaus/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "steinhaus/error.hpp"
#include "steinhaus/steinhaus.hpp"
#include "steinhaus/thick_lemma.hpp"

namespace steinhaus {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect_word(std::string_view word) {
    if (!accept_word(word)) fail("expected '" + std::string(word) + "'");
  }
  std::uint64_t number() {
    skip_space();
    std::uint64_t value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail("expected a decimal number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

CyclicSet read_set(Cursor& cur, std::uint32_t cap) {
  const std::uint64_t n = cur.number();
  if (n == 0 || n > cap) cur.fail("modulus must lie in [1, " + std::to_string(cap) + "]");
  cur.expect(':');
  cur.expect('{');
  CyclicSet s(static_cast<std::uint32_t>(n));
  if (!cur.accept('}')) {
    do {
      const std::uint64_t r = cur.number();
      if (r >= n) cur.fail("residue " + std::to_string(r) + " outside Z_" + std::to_string(n));
      s.insert(static_cast<Residue>(r));
    } while (cur.accept(','));
    cur.expect('}');
  }
  return s;
}

std::vector<CyclicSet> read_set_list(Cursor& cur, std::uint32_t cap) {
  std::vector<CyclicSet> out;
  cur.expect('[');
  if (cur.accept(']')) return out;
  do {
    out.push_back(read_set(cur, cap));
  } while (cur.accept(';'));
  cur.expect(']');
  return out;
}

std::vector<std::uint32_t> read_index_set(Cursor& cur) {
  std::vector<std::uint32_t> out;
  cur.expect('{');
  if (cur.accept('}')) return out;
  do {
    const std::uint64_t v = cur.number();
    if (v > 0xFFFFFFFFu) cur.fail("index too large");
    out.push_back(static_cast<std::uint32_t>(v));
  } while (cur.accept(','));
  cur.expect('}');
  return out;
}

template <class T, class Fmt>
std::string join(const std::vector<T>& items, std::string_view sep, Fmt&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += sep;
    out += fmt(items[i]);
  }
  return out;
}

}  // namespace

CyclicSet parse_set(std::string_view text, std::uint32_t modulus_cap) {
  Cursor cur(text);
  CyclicSet s = read_set(cur, modulus_cap);
  if (!cur.at_end()) cur.fail("trailing characters");
  return s;
}

std::string format_set(const CyclicSet& a) {
  return std::to_string(a.modulus()) + ":{" +
         join(a.residues(), ",", [](Residue r) { return std::to_string(r); }) + "}";
}

SignVector parse_signs(std::string_view text) {
  Cursor cur(text);
  std::vector<int> signs;
  const bool paren = cur.accept('(');
  while (true) {
    int s;
    if (cur.accept('+')) {
      s = 1;
    } else if (cur.accept('-')) {
      s = -1;
    } else {
      break;
    }
    // "+1" and "+" are both accepted.
    cur.accept_word("1");
    cur.accept(',');
    signs.push_back(s);
  }
  if (paren) cur.expect(')');
  if (!cur.at_end() || signs.empty()) cur.fail("expected a sign vector such as +1,-1");
  return SignVector(std::move(signs));
}

std::string format_signs(const SignVector& eps) {
  return "(" + join(eps.values(), ",", [](int s) { return std::string(s > 0 ? "+1" : "-1"); }) + ")";
}

SeqSpec parse_seq_spec(std::string_view text, std::uint32_t modulus_cap) {
  Cursor cur(text);
  std::vector<CyclicSet> prefix;
  if (cur.accept_word("prefix")) {
    cur.expect('=');
    prefix = read_set_list(cur, modulus_cap);
  }
  cur.expect_word("cycle");
  cur.expect('=');
  std::vector<CyclicSet> cycle = read_set_list(cur, modulus_cap);
  if (!cur.at_end()) cur.fail("trailing characters");
  try {
    return SeqSpec(std::move(prefix), std::move(cycle));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string format_seq_spec(const SeqSpec& spec) {
  auto list = [](const std::vector<CyclicSet>& sets) { return "[" + join(sets, ";", format_set) + "]"; };
  std::string out;
  if (!spec.prefix.empty()) out += "prefix=" + list(spec.prefix) + " ";
  return out + "cycle=" + list(spec.cycle);
}

ThickFamilySpec parse_thick_spec(std::string_view text) {
  Cursor cur(text);
  cur.expect_word("sets");
  cur.expect('=');
  cur.expect('[');
  std::vector<std::vector<std::uint32_t>> sets;
  if (!cur.accept(']')) {
    do {
      sets.push_back(read_index_set(cur));
    } while (cur.accept(','));
    cur.expect(']');
  }
  std::uint64_t a_max = 5;
  if (cur.accept_word("a_max")) {
    cur.expect('=');
    a_max = cur.number();
  }
  if (!cur.at_end()) cur.fail("trailing characters");
  try {
    return ThickFamilySpec(std::move(sets), static_cast<std::uint32_t>(std::min<std::uint64_t>(a_max, 1000)));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string format_thick_spec(const ThickFamilySpec& spec) {
  auto set = [](const std::vector<std::uint32_t>& s) {
    return "{" + join(s, ",", [](std::uint32_t a) { return std::to_string(a); }) + "}";
  };
  return "sets=[" + join(spec.index_sets, ",", set) + "] a_max=" + std::to_string(spec.a_max);
}

std::uint64_t parse_unsigned(std::string_view text) {
  Cursor cur(text);
  const std::uint64_t v = cur.number();
  if (!cur.at_end()) cur.fail("trailing characters");
  return v;
}

}  // namespace steinhaus
