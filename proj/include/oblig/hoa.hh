#pragma once

// HOA v1 output for deterministic weak automata with state-based Büchi
// acceptance, and a reader for the same subset.

#include <oblig/explicit.hh>

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oblig {

class hoa_error : public std::runtime_error {
 public:
  hoa_error(std::size_t line, const std::string& what)
      : std::runtime_error("HOA line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// "0&!1", or "t" for the empty cube.
inline std::string cube_to_hoa(const cube& c, unsigned nvars) {
  if (c.care == 0) return "t";
  std::string s;
  for (unsigned v = 0; v < nvars && v < 64; ++v) {
    if (!((c.care >> v) & 1)) continue;
    if (!s.empty()) s += '&';
    if (!((c.value >> v) & 1)) s += '!';
    s += std::to_string(v);
  }
  return s;
}

inline std::string label_to_hoa(const std::vector<cube>& label, unsigned nvars) {
  if (label.empty()) return "f";
  std::string s;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) s += " | ";
    s += cube_to_hoa(label[i], nvars);
  }
  return s;
}

inline std::string quote_hoa(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + '"';
}

inline void write_hoa(const explicit_automaton& e, std::ostream& os) {
  const auto nv = static_cast<unsigned>(e.aps.size());
  os << "HOA: v1\n";
  if (e.name) os << "name: " << quote_hoa(*e.name) << '\n';
  os << "States: " << e.num_states << '\n';
  os << "Start: " << e.initial << '\n';
  os << "AP: " << e.aps.size();
  for (const auto& p : e.aps) os << ' ' << quote_hoa(p);
  os << '\n';
  os << "acc-name: Buchi\n";
  os << "Acceptance: 1 Inf(0)\n";
  os << "properties: deterministic complete state-acc weak\n";
  os << "--BODY--\n";
  std::vector<std::vector<const explicit_edge*>> by_src(e.num_states);
  for (const auto& ed : e.edges) by_src.at(ed.src).push_back(&ed);
  for (std::uint32_t s = 0; s < e.num_states; ++s) {
    os << "State: " << s;
    if (e.accepting[s]) os << " {0}";
    os << '\n';
    for (const explicit_edge* ed : by_src[s]) os << '[' << label_to_hoa(ed->label, nv) << "] " << ed->dst << '\n';
  }
  os << "--END--\n";
  if (!os) throw std::runtime_error("failed to write HOA output");
}

inline std::string to_hoa(const explicit_automaton& e) {
  std::ostringstream os;
  write_hoa(e, os);
  return os.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string collapse_spaces(const std::string& s) {
  std::string r;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !r.empty()) r += ' ';
    space = false;
    r += c;
  }
  return r;
}

inline std::uint32_t parse_uint(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw hoa_error(line, "expected a number, got '" + s + "'");
  return static_cast<std::uint32_t>(std::stoul(s));
}

/// Parses a DNF label over AP indices: "t", "f" or cubes of [!]n joined by
/// '&', separated by '|'.
inline std::vector<cube> parse_label(const std::string& text, unsigned nvars, std::size_t line) {
  std::vector<cube> res;
  std::string t = trim(text);
  if (t == "f") return res;
  if (t.find_first_of("()") != std::string::npos)
    throw hoa_error(line, "parenthesized labels are not supported");
  std::stringstream alts(t);
  std::string alt;
  while (std::getline(alts, alt, '|')) {
    alt = trim(alt);
    cube c;
    if (alt == "t") {
      res.push_back(c);
      continue;
    }
    std::stringstream lits(alt);
    std::string lit;
    bool contradictory = false;
    while (std::getline(lits, lit, '&')) {
      lit = trim(lit);
      bool neg = !lit.empty() && lit[0] == '!';
      if (neg) lit = trim(lit.substr(1));
      unsigned v = parse_uint(lit, line);
      if (v >= nvars) throw hoa_error(line, "AP index " + lit + " out of range");
      letter bit = letter{1} << v;
      if ((c.care & bit) && (((c.value & bit) != 0) == neg)) contradictory = true;
      c = c.with(v, !neg);
    }
    if (!contradictory) res.push_back(c);
  }
  return res;
}

}  // namespace detail

/// Reads the HOA subset produced by write_hoa().
inline explicit_automaton read_hoa(std::istream& is) {
  explicit_automaton e;
  std::string raw;
  std::size_t lineno = 0;
  bool in_body = false, done = false, ended = false;
  bool have_states = false, have_start = false, have_ap = false, have_acc = false;
  std::optional<std::uint32_t> cur;

  auto next_line = [&](std::string& out) {
    while (std::getline(is, raw)) {
      ++lineno;
      out = detail::trim(raw);
      if (!out.empty()) return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line) || detail::collapse_spaces(line) != "HOA: v1")
    throw hoa_error(lineno, "expected 'HOA: v1'");
  while (!done && next_line(line)) {
    if (!in_body) {
      if (line == "--BODY--") {
        if (!have_states) throw hoa_error(lineno, "missing States:");
        if (!have_start) throw hoa_error(lineno, "missing Start:");
        if (!have_acc) throw hoa_error(lineno, "missing Acceptance:");
        if (!have_ap) throw hoa_error(lineno, "missing AP:");
        e.accepting.assign(e.num_states, false);
        in_body = true;
        continue;
      }
      auto colon = line.find(':');
      if (colon == std::string::npos) throw hoa_error(lineno, "malformed header item");
      std::string key = line.substr(0, colon);
      std::string val = detail::trim(line.substr(colon + 1));
      if (key == "States") {
        e.num_states = detail::parse_uint(val, lineno);
        have_states = true;
      } else if (key == "Start") {
        if (have_start) throw hoa_error(lineno, "multiple initial states are not supported");
        e.initial = detail::parse_uint(val, lineno);
        have_start = true;
      } else if (key == "AP") {
        std::size_t i = 0;
        while (i < val.size() && std::isdigit(static_cast<unsigned char>(val[i]))) ++i;
        unsigned n = detail::parse_uint(val.substr(0, i), lineno);
        while (i < val.size()) {
          if (std::isspace(static_cast<unsigned char>(val[i]))) {
            ++i;
            continue;
          }
          if (val[i] != '"') throw hoa_error(lineno, "expected quoted AP name");
          std::string name;
          ++i;
          while (i < val.size() && val[i] != '"') {
            if (val[i] == '\\' && i + 1 < val.size()) ++i;
            name += val[i++];
          }
          if (i == val.size()) throw hoa_error(lineno, "unterminated AP name");
          ++i;
          e.aps.push_back(name);
        }
        if (e.aps.size() != n) throw hoa_error(lineno, "AP count does not match names");
        have_ap = true;
      } else if (key == "Acceptance") {
        if (detail::collapse_spaces(val) != "1 Inf(0)")
          throw hoa_error(lineno, "unsupported acceptance condition '" + val + "'");
        have_acc = true;
      } else if (key == "name") {
        if (val.size() < 2 || val.front() != '"' || val.back() != '"')
          throw hoa_error(lineno, "expected quoted name");
        e.name = val.substr(1, val.size() - 2);
      } else if (key == "acc-name" || key == "properties" || key == "tool") {
        // informative only
      } else {
        throw hoa_error(lineno, "unsupported header item '" + key + "'");
      }
      continue;
    }
    if (line == "--END--") {
      done = ended = true;
      break;
    }
    if (line.rfind("State:", 0) == 0) {
      std::string rest = detail::trim(line.substr(6));
      std::size_t i = 0;
      while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
      std::uint32_t s = detail::parse_uint(rest.substr(0, i), lineno);
      if (s >= e.num_states) throw hoa_error(lineno, "state out of range");
      std::string tail = detail::trim(rest.substr(i));
      if (!tail.empty() && tail.front() == '"') {
        auto q = tail.find('"', 1);
        if (q == std::string::npos) throw hoa_error(lineno, "unterminated state name");
        tail = detail::trim(tail.substr(q + 1));
      }
      if (tail == "{0}") {
        e.accepting[s] = true;
      } else if (!tail.empty()) {
        throw hoa_error(lineno, "unsupported state acceptance '" + tail + "'");
      }
      cur = s;
      continue;
    }
    if (line.front() == '[') {
      if (!cur) throw hoa_error(lineno, "edge before first State:");
      auto close = line.find(']');
      if (close == std::string::npos) throw hoa_error(lineno, "unterminated label");
      auto label = detail::parse_label(line.substr(1, close - 1), static_cast<unsigned>(e.aps.size()), lineno);
      std::string dst = detail::trim(line.substr(close + 1));
      if (dst.find('{') != std::string::npos)
        throw hoa_error(lineno, "transition-based acceptance is not supported");
      std::uint32_t d = detail::parse_uint(dst, lineno);
      if (d >= e.num_states) throw hoa_error(lineno, "destination out of range");
      e.edges.push_back({*cur, d, std::move(label)});
      continue;
    }
    throw hoa_error(lineno, "unexpected '" + line + "'");
  }
  if (!in_body) throw hoa_error(lineno, "missing --BODY--");
  if (!ended) throw hoa_error(lineno, "missing --END--");
  return e;
}

inline explicit_automaton read_hoa(const std::string& text) {
  std::istringstream is(text);
  return read_hoa(is);
}

}  // namespace oblig
