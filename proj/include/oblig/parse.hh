#pragma once

// Recursive-descent parser for the textual LTL syntax.
//
//   equiv  := impl (('<->' | 'xor') impl)*        left-associative
//   impl   := or ('->' impl)?                      right-associative
//   or     := and ('|' and)*
//   and    := tbin ('&' tbin)*
//   tbin   := unary (('U' | 'W' | 'R' | 'M') tbin)?  right-associative
//   unary  := ('!' | 'X' | 'F' | 'G') unary | primary
//   primary:= atom | '1' | '0' | 'true' | 'false' | '(' equiv ')'
//
// An identifier made only of the letters X, F and G (e.g. "GF") is read
// as a sequence of unary operators, so "GFa" is not accepted but "GF a" is
// G(F(a)).

#include <oblig/formula.hh>

#include <cctype>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oblig {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t position, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class undeclared_proposition : public std::runtime_error {
 public:
  undeclared_proposition(std::size_t position, const std::string& name)
      : std::runtime_error("undeclared proposition '" + name + "' at position " +
                           std::to_string(position)),
        name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

namespace detail {

class parser {
 public:
  parser(formula_store& fs, std::string_view text, const std::set<std::string>* declared)
      : fs_(fs), text_(text), declared_(declared) {
    tokenize();
  }

  formula run() {
    formula f = parse_equiv();
    if (peek().kind != tok::end)
      throw parse_error(peek().pos, "unexpected '" + peek().text + "'");
    return f;
  }

 private:
  enum class tok {
    end,
    lparen,
    rparen,
    ident,
    tt,
    ff,
    not_,
    and_,
    or_,
    implies,
    equiv,
    xor_,
    next,
    eventually,
    always,
    until,
    weak_until,
    release,
    strong_release,
  };

  struct token {
    tok kind;
    std::size_t pos;
    std::string text;
  };

  void tokenize() {
    std::size_t i = 0, n = text_.size();
    auto push = [&](tok k, std::size_t pos, std::string t) { tokens_.push_back({k, pos, std::move(t)}); };
    while (i < n) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      auto starts = [&](std::string_view s) { return text_.substr(i, s.size()) == s; };
      if (c == '(') { push(tok::lparen, i++, "("); continue; }
      if (c == ')') { push(tok::rparen, i++, ")"); continue; }
      if (c == '!' || c == '~') { push(tok::not_, i++, std::string(1, c)); continue; }
      if (starts("<->")) { push(tok::equiv, i, "<->"); i += 3; continue; }
      if (starts("<=>")) { push(tok::equiv, i, "<=>"); i += 3; continue; }
      if (starts("->")) { push(tok::implies, i, "->"); i += 2; continue; }
      if (starts("=>")) { push(tok::implies, i, "=>"); i += 2; continue; }
      if (starts("&&")) { push(tok::and_, i, "&&"); i += 2; continue; }
      if (starts("||")) { push(tok::or_, i, "||"); i += 2; continue; }
      if (c == '&') { push(tok::and_, i++, "&"); continue; }
      if (c == '|') { push(tok::or_, i++, "|"); continue; }
      if (c == '^') { push(tok::xor_, i++, "^"); continue; }
      if (c == '0' || c == '1') {
        if (i + 1 < n && (std::isalnum(static_cast<unsigned char>(text_[i + 1])) || text_[i + 1] == '_'))
          throw parse_error(i, "malformed constant");
        push(c == '1' ? tok::tt : tok::ff, i++, std::string(1, c));
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i < n && (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_')) ++i;
        std::string word(text_.substr(start, i - start));
        classify_word(word, start);
        continue;
      }
      throw parse_error(i, std::string("unexpected character '") + c + "'");
    }
    tokens_.push_back({tok::end, n, "end of input"});
  }

  void classify_word(const std::string& w, std::size_t pos) {
    if (w == "true") return tokens_.push_back({tok::tt, pos, w});
    if (w == "false") return tokens_.push_back({tok::ff, pos, w});
    if (w == "xor") return tokens_.push_back({tok::xor_, pos, w});
    if (w == "U") return tokens_.push_back({tok::until, pos, w});
    if (w == "W") return tokens_.push_back({tok::weak_until, pos, w});
    if (w == "R") return tokens_.push_back({tok::release, pos, w});
    if (w == "M") return tokens_.push_back({tok::strong_release, pos, w});
    if (w.find_first_not_of("XFG") == std::string::npos) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        tok t = w[k] == 'X' ? tok::next : w[k] == 'F' ? tok::eventually : tok::always;
        tokens_.push_back({t, pos + k, std::string(1, w[k])});
      }
      return;
    }
    tokens_.push_back({tok::ident, pos, w});
  }

  const token& peek() const { return tokens_[cur_]; }
  const token& advance() { return tokens_[cur_++]; }

  formula parse_equiv() {
    formula left = parse_impl();
    while (peek().kind == tok::equiv || peek().kind == tok::xor_) {
      bool is_equiv = advance().kind == tok::equiv;
      formula right = parse_impl();
      left = is_equiv ? fs_.equiv(left, right) : fs_.xor_(left, right);
    }
    return left;
  }

  formula parse_impl() {
    formula left = parse_or();
    if (peek().kind == tok::implies) {
      advance();
      formula right = parse_impl();
      return fs_.implies(left, right);
    }
    return left;
  }

  formula parse_or() {
    formula left = parse_and();
    while (peek().kind == tok::or_) {
      advance();
      left = fs_.or_(left, parse_and());
    }
    return left;
  }

  formula parse_and() {
    formula left = parse_tbin();
    while (peek().kind == tok::and_) {
      advance();
      left = fs_.and_(left, parse_tbin());
    }
    return left;
  }

  formula parse_tbin() {
    formula left = parse_unary();
    switch (peek().kind) {
      case tok::until: advance(); return fs_.until(left, parse_tbin());
      case tok::weak_until: advance(); return fs_.weak_until(left, parse_tbin());
      case tok::release: advance(); return fs_.release(left, parse_tbin());
      case tok::strong_release: advance(); return fs_.strong_release(left, parse_tbin());
      default: return left;
    }
  }

  formula parse_unary() {
    switch (peek().kind) {
      case tok::not_: advance(); return fs_.not_(parse_unary());
      case tok::next: advance(); return fs_.next(parse_unary());
      case tok::eventually: advance(); return fs_.eventually(parse_unary());
      case tok::always: advance(); return fs_.always(parse_unary());
      default: return parse_primary();
    }
  }

  formula parse_primary() {
    const token& t = advance();
    switch (t.kind) {
      case tok::tt: return formula::tt();
      case tok::ff: return formula::ff();
      case tok::ident:
        if (declared_ && !declared_->contains(t.text)) throw undeclared_proposition(t.pos, t.text);
        return fs_.ap(t.text);
      case tok::lparen: {
        formula f = parse_equiv();
        if (peek().kind != tok::rparen) throw parse_error(peek().pos, "expected ')'");
        advance();
        return f;
      }
      case tok::end: throw parse_error(t.pos, "unexpected end of input");
      default: throw parse_error(t.pos, "unexpected '" + t.text + "'");
    }
  }

  formula_store& fs_;
  std::string_view text_;
  const std::set<std::string>* declared_;
  std::vector<token> tokens_;
  std::size_t cur_ = 0;
};

}  // namespace detail

/// Parses `text` into `fs`.  When `declared` is given, every atom must be
/// one of its members.
inline formula parse(formula_store& fs, std::string_view text,
                     const std::optional<std::set<std::string>>& declared = std::nullopt) {
  detail::parser p(fs, text, declared ? &*declared : nullptr);
  return p.run();
}

}  // namespace oblig
