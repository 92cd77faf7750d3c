#include "qlab/cli/symbol_parser.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "qlab/errors.hpp"

namespace qlab::cli {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("symbol parse error at position " + std::to_string(i) + ": " + what +
                          " in '" + s + "'");
  }
};

int parse_index(Cursor& c, int n, int fallback) {
  if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
    int idx = c.s[c.i++] - '0';
    if (idx < 1 || idx > n) c.fail("component index out of range");
    return idx - 1;
  }
  return fallback;
}

double parse_number(Cursor& c) {
  c.skip_ws();
  char* end = nullptr;
  const double v = std::strtod(c.s.c_str() + c.i, &end);
  if (end == c.s.c_str() + c.i) c.fail("expected a number");
  c.i = static_cast<std::size_t>(end - c.s.c_str());
  return v;
}

// sin(...) | cos(...) with body [k] p [index]
weylrn::SymbolRn parse_trig(Cursor& c, int n, bool is_sin) {
  if (!c.accept('(')) c.fail("expected '('");
  int k = 1;
  if (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '-') {
    k = static_cast<int>(parse_number(c));
    c.accept('*');
  }
  if (!c.accept('p')) c.fail("expected 'p'");
  const int axis = parse_index(c, n, 0);
  if (!c.accept(')')) c.fail("expected ')'");
  std::vector<int> mode(static_cast<std::size_t>(n), 0);
  mode[static_cast<std::size_t>(axis)] = k;
  return weylrn::SymbolRn::base_coefficient(is_sin ? TrigPoly::sine(mode) : TrigPoly::cosine(mode));
}

weylrn::SymbolRn parse_factor(Cursor& c, int n) {
  const char ch = c.peek();
  if (ch == 'X') {
    ++c.i;
    const int axis = parse_index(c, n, 0);
    int power = 1;
    if (c.accept('^')) {
      if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected an exponent");
      power = 0;
      while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        power = power * 10 + (c.s[c.i++] - '0');
    }
    weylrn::SymbolRn f = weylrn::SymbolRn::constant(n, cplx(1.0, 0.0));
    const auto x = weylrn::SymbolRn::fiber_coordinate(n, axis);
    for (int e = 0; e < power; ++e) f = weylrn::symbol_mul(f, x);
    return f;
  }
  if (c.s.compare(c.i, 3, "sin") == 0) {
    c.i += 3;
    return parse_trig(c, n, true);
  }
  if (c.s.compare(c.i, 3, "cos") == 0) {
    c.i += 3;
    return parse_trig(c, n, false);
  }
  if (ch == '(') {
    c.fail("parentheses are only used inside sin(..)/cos(..)");
  }
  return weylrn::SymbolRn::constant(n, cplx(parse_number(c), 0.0));
}

weylrn::SymbolRn parse_term(Cursor& c, int n) {
  weylrn::SymbolRn t = parse_factor(c, n);
  while (c.accept('*')) t = weylrn::symbol_mul(t, parse_factor(c, n));
  return t;
}

}  // namespace

weylrn::SymbolRn parse_symbol(const std::string& text, int n) {
  if (n < 1) throw InvalidArgument("parse_symbol: n must be >= 1");
  Cursor c{text};
  if (c.done()) c.fail("empty symbol");
  bool negate = c.accept('-');
  weylrn::SymbolRn sum = parse_term(c, n);
  if (negate) sum = weylrn::symbol_scale(sum, cplx(-1.0, 0.0));
  while (!c.done()) {
    if (c.accept('+')) {
      sum = weylrn::symbol_add(sum, parse_term(c, n));
    } else if (c.accept('-')) {
      sum = weylrn::symbol_add(sum, weylrn::symbol_scale(parse_term(c, n), cplx(-1.0, 0.0)));
    } else {
      c.fail("expected '+' or '-'");
    }
  }
  return sum;
}

TrigPoly parse_mode_list(const std::string& text, int n) {
  TrigPoly out(n);
  std::istringstream items(text);
  std::string item;
  while (std::getline(items, item, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw InvalidArgument("mode list: expected 'r1,..,rn:re,im' in '" + item + "'");
    std::vector<int> r;
    {
      std::istringstream comps(item.substr(0, colon));
      std::string c;
      while (std::getline(comps, c, ',')) r.push_back(std::stoi(c));
    }
    if (static_cast<int>(r.size()) != n)
      throw DimensionMismatch("mode list: mode '" + item + "' does not have " + std::to_string(n) +
                              " components");
    double re = 0.0, im = 0.0;
    {
      std::istringstream vals(item.substr(colon + 1));
      std::string c;
      if (!std::getline(vals, c, ',')) throw InvalidArgument("mode list: missing coefficient");
      re = std::stod(c);
      if (std::getline(vals, c, ',')) im = std::stod(c);
    }
    out.add_to(r, cplx(re, im));
  }
  if (out.dim() != n) throw DimensionMismatch("mode list: empty list");
  return out;
}

}  // namespace qlab::cli
