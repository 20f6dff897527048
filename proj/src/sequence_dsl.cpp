#include "ddsim/sequence_dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace ddsim {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

struct Token {
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(const std::string& text, int& end_line,
                            int& end_col) {
  std::vector<Token> tokens;
  int line = 1, col = 1;
  Token cur;
  bool in_token = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) {
        tokens.push_back(cur);
        in_token = false;
      }
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      continue;
    }
    if (!in_token) {
      cur = Token{"", line, col};
      in_token = true;
    }
    cur.text.push_back(c);
    ++col;
  }
  if (in_token) tokens.push_back(cur);
  end_line = line;
  end_col = col;
  return tokens;
}

double parse_number(const std::string& s, size_t offset, const Token& tok,
                    const char* what) {
  const char* first = s.data() + offset;
  const char* last = s.data() + s.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ParseError(std::string("malformed ") + what + " '" + tok.text + "'",
                     tok.line, tok.col);
  if (!std::isfinite(value))
    throw ParseError(std::string(what) + " out of range in '" + tok.text + "'",
                     tok.line, tok.col);
  return value;
}

struct Parser {
  const std::vector<Token>& tokens;
  size_t pos = 0;
  int end_line, end_col;

  bool at_end() const { return pos == tokens.size(); }
  const Token& peek() const { return tokens[pos]; }

  [[noreturn]] void fail_here(const std::string& msg) {
    if (at_end()) throw ParseError(msg, end_line, end_col);
    throw ParseError(msg, peek().line, peek().col);
  }

  // Parses term+ until "]" (inside a group) or end of input.
  std::vector<SequenceElement> parse_seq(bool inside_group) {
    std::vector<SequenceElement> out;
    while (!at_end() && peek().text != "]") parse_term(out);
    if (inside_group) {
      if (at_end()) fail_here("unterminated group; expected ']'");
      ++pos;  // consume "]"
    } else if (!at_end()) {
      fail_here("unmatched ']'");
    }
    if (out.empty()) fail_here("expected at least one sequence term");
    return out;
  }

  void parse_term(std::vector<SequenceElement>& out) {
    const Token tok = tokens[pos];
    const std::string& t = tok.text;
    if (t == "X") {
      out.push_back(SequenceElement::make_pulse(0.0));
    } else if (t == "Y") {
      out.push_back(SequenceElement::make_pulse(std::numbers::pi / 2));
    } else if (t == "-X") {
      out.push_back(SequenceElement::make_pulse(std::numbers::pi));
    } else if (t == "-Y") {
      out.push_back(SequenceElement::make_pulse(3 * std::numbers::pi / 2));
    } else if (t.size() > 1 && t[0] == 'd') {
      double dur = parse_number(t, 1, tok, "delay duration");
      if (dur < 0.0)
        throw ParseError("delay duration must be nonnegative", tok.line,
                         tok.col);
      out.push_back(SequenceElement::make_delay(dur));
    } else if (t.size() > 1 && t[0] == 'P') {
      double deg = parse_number(t, 1, tok, "pulse phase");
      out.push_back(SequenceElement::make_pulse(deg / kDegPerRad));
    } else if (!t.empty() && std::isdigit(static_cast<unsigned char>(t[0]))) {
      parse_group(tok, out);
      return;  // parse_group advances pos itself
    } else {
      fail_here("unrecognized token '" + t + "'");
    }
    ++pos;
  }

  void parse_group(const Token& tok, std::vector<SequenceElement>& out) {
    const std::string& t = tok.text;
    size_t i = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    long count = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + i, count);
    if (ec != std::errc{} || ptr != t.data() + i)
      throw ParseError("malformed repeat count '" + t + "'", tok.line,
                       tok.col);
    // The opener is either one token "3x[" or two tokens "3x" "[".
    std::string rest = t.substr(i);
    if (rest != "x" && rest != "x[")
      throw ParseError("expected 'Nx[' group opener, got '" + t + "'",
                       tok.line, tok.col);
    ++pos;
    if (rest == "x") {
      if (at_end() || peek().text != "[")
        fail_here("expected '[' after repeat count");
      ++pos;
    }
    if (count < 1)
      throw ParseError("repeat count must be at least 1", tok.line, tok.col);
    std::vector<SequenceElement> body = parse_seq(/*inside_group=*/true);
    for (long r = 0; r < count; ++r)
      out.insert(out.end(), body.begin(), body.end());
  }
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

PulseSequence parse_sequence(const std::string& text) {
  int end_line = 1, end_col = 1;
  std::vector<Token> tokens = tokenize(text, end_line, end_col);
  Parser parser{tokens, 0, end_line, end_col};
  PulseSequence s;
  s.elements = parser.parse_seq(/*inside_group=*/false);
  return s;
}

std::string format_sequence(const PulseSequence& s) {
  constexpr double kAxisTol = 1e-12;
  const double axes[4] = {0.0, std::numbers::pi / 2, std::numbers::pi,
                          3 * std::numbers::pi / 2};
  const char* names[4] = {"X", "Y", "-X", "-Y"};
  std::string out;
  for (const auto& e : s.elements) {
    if (!out.empty()) out.push_back(' ');
    if (e.is_delay()) {
      out += "d" + fmt_double(e.duration);
      continue;
    }
    int hit = -1;
    for (int a = 0; a < 4; ++a)
      if (std::abs(e.phase - axes[a]) <= kAxisTol) hit = a;
    if (hit >= 0)
      out += names[hit];
    else
      out += "P" + fmt_double(e.phase * kDegPerRad);
  }
  return out;
}

}  // namespace ddsim
