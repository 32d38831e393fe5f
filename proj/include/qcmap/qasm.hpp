#pragma once

// OpenQASM 2.0 subset reader/writer and the plain-text coupling format.
//
// Supported statements: OPENQASM/include headers, one qreg, creg, and the
// gates rz, rx, h, cx plus the aliases u1 (-> rz) and x (-> rx(pi)). Angle
// expressions: numeric literal, pi, pi/INT, INT*pi/INT, each optionally
// negated. barrier and measure are dropped with a warning; anything else is
// an error. Operands must be indexed (q[i]); whole-register broadcast is not
// part of the subset.
//
// emit() with expand=true produces output this parser accepts (swaps and
// bridges flattened to CNOTs); with expand=false, swap/bridge ops appear as a
// `swap` statement and a commented CNOT quartet for human consumption.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qcmap/circuit.hpp"
#include "qcmap/coupling.hpp"

namespace qcmap {

struct ParseDiagnostic {
  enum class Severity { warning, error };
  Severity severity = Severity::error;
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::optional<Circuit> circuit;  // empty when any error was recorded
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return circuit.has_value(); }
};

namespace detail {

struct Statement {
  std::string text;
  int line = 0;
};

// Strips // comments, splits on ';', remembers the line each statement starts on.
inline std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::string cur;
  int line = 1;
  int cur_line = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      --i;
      continue;
    }
    if (ch == '\n') {
      ++line;
      cur += ' ';
      continue;
    }
    if (ch == ';') {
      out.push_back({cur, cur_line});
      cur.clear();
      cur_line = 0;
      continue;
    }
    if (cur_line == 0 && !std::isspace(static_cast<unsigned char>(ch))) cur_line = line;
    cur += ch;
  }
  // Trailing junk without ';' surfaces as a statement so the parser can flag it.
  for (char ch : cur)
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      out.push_back({cur, cur_line});
      break;
    }
  return out;
}

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

inline bool parse_uint(std::string_view s, long& out) {
  if (s.empty()) return false;
  long v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    v = v * 10 + (ch - '0');
    if (v > 1'000'000'000L) return false;
  }
  out = v;
  return true;
}

// Angle grammar; returns nullopt on anything outside it.
inline std::optional<double> parse_angle(std::string_view raw) {
  std::string s = strip_spaces(raw);
  double sign = 1.0;
  if (!s.empty() && s[0] == '-') {
    sign = -1.0;
    s.erase(0, 1);
  }
  if (s.empty()) return std::nullopt;
  const double pi = 3.14159265358979323846;
  if (s == "pi") return sign * pi;
  long a = 0, b = 0;
  if (s.rfind("pi/", 0) == 0) {
    if (!parse_uint(std::string_view(s).substr(3), b) || b == 0) return std::nullopt;
    return sign * pi / static_cast<double>(b);
  }
  const size_t star = s.find("*pi/");
  if (star != std::string::npos) {
    if (!parse_uint(std::string_view(s).substr(0, star), a)) return std::nullopt;
    if (!parse_uint(std::string_view(s).substr(star + 4), b) || b == 0) return std::nullopt;
    return sign * static_cast<double>(a) * pi / static_cast<double>(b);
  }
  // Plain numeric literal; must consume the whole token.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return sign * v;
}

// "name[index]" with the register name checked by the caller.
inline bool parse_operand(std::string_view s, std::string& name, long& index) {
  const size_t lb = s.find('[');
  const size_t rb = s.find(']');
  if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb || rb + 1 != s.size())
    return false;
  name = trim(s.substr(0, lb));
  return !name.empty() && parse_uint(strip_spaces(s.substr(lb + 1, rb - lb - 1)), index);
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::string format_angle(double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", a);
  return buf;
}

}  // namespace detail

inline ParseResult parse(std::string_view text) {
  using detail::trim;
  ParseResult res;
  auto error = [&](int line, std::string msg) {
    res.diagnostics.push_back({ParseDiagnostic::Severity::error, line, std::move(msg)});
  };
  auto warn = [&](int line, std::string msg) {
    res.diagnostics.push_back({ParseDiagnostic::Severity::warning, line, std::move(msg)});
  };

  std::optional<Circuit> circ;
  std::string qreg_name;
  bool failed = false;

  for (const detail::Statement& st : detail::split_statements(text)) {
    const std::string body = trim(st.text);
    if (body.empty()) continue;

    // First word selects the statement form.
    size_t wend = 0;
    while (wend < body.size() && !std::isspace(static_cast<unsigned char>(body[wend])) &&
           body[wend] != '(')
      ++wend;
    const std::string head = body.substr(0, wend);
    const std::string rest = trim(body.substr(wend));

    if (head == "OPENQASM") {
      if (rest != "2.0") warn(st.line, "expected OPENQASM 2.0, got '" + rest + "'");
      continue;
    }
    if (head == "include") continue;
    if (head == "creg") continue;
    if (head == "barrier") {
      warn(st.line, "barrier dropped");
      continue;
    }
    if (head == "measure") {
      warn(st.line, "measurement dropped");
      continue;
    }
    if (head == "qreg") {
      const size_t lb = rest.find('[');
      const size_t rb = rest.find(']');
      long n = 0;
      if (lb == std::string::npos || rb == std::string::npos || rb < lb ||
          !detail::parse_uint(detail::strip_spaces(std::string_view(rest).substr(lb + 1, rb - lb - 1)), n)) {
        error(st.line, "malformed qreg declaration");
        failed = true;
        continue;
      }
      if (circ) {
        error(st.line, "multiple qreg declarations are not supported");
        failed = true;
        continue;
      }
      qreg_name = trim(rest.substr(0, lb));
      circ.emplace(static_cast<int>(n));
      continue;
    }

    // Gate statement: head is the gate name, with an optional (angle).
    std::string gate = head;
    std::string operands = rest;
    std::optional<double> angle;
    const size_t paren = body.find('(');
    if (paren != std::string::npos && paren <= wend) {
      const size_t close = body.find(')', paren);
      if (close == std::string::npos) {
        error(st.line, "unbalanced parenthesis");
        failed = true;
        continue;
      }
      gate = trim(body.substr(0, paren));
      angle = detail::parse_angle(body.substr(paren + 1, close - paren - 1));
      if (!angle) {
        error(st.line, "unsupported angle expression '" +
                           trim(body.substr(paren + 1, close - paren - 1)) + "'");
        failed = true;
        continue;
      }
      operands = trim(body.substr(close + 1));
    }

    const bool takes_angle = gate == "rz" || gate == "rx" || gate == "u1";
    const bool known = takes_angle || gate == "h" || gate == "x" || gate == "cx";
    if (!known) {
      error(st.line, "unknown gate '" + gate + "'");
      failed = true;
      continue;
    }
    if (takes_angle && !angle) {
      error(st.line, "gate '" + gate + "' requires an angle");
      failed = true;
      continue;
    }
    if (!takes_angle && angle) {
      error(st.line, "gate '" + gate + "' takes no angle");
      failed = true;
      continue;
    }
    if (!circ) {
      error(st.line, "gate before qreg declaration");
      failed = true;
      continue;
    }

    std::vector<long> wires;
    bool ops_ok = true;
    for (const std::string& part : detail::split_on(operands, ',')) {
      std::string name;
      long idx = 0;
      if (!detail::parse_operand(trim(part), name, idx)) {
        error(st.line, "malformed operand '" + trim(part) + "' (indexed form required)");
        ops_ok = false;
        break;
      }
      if (name != qreg_name) {
        error(st.line, "unknown register '" + name + "'");
        ops_ok = false;
        break;
      }
      if (idx >= circ->num_qubits()) {
        error(st.line, "qubit index " + std::to_string(idx) + " out of range");
        ops_ok = false;
        break;
      }
      wires.push_back(idx);
    }
    if (!ops_ok) {
      failed = true;
      continue;
    }
    const size_t want = gate == "cx" ? 2 : 1;
    if (wires.size() != want) {
      error(st.line, "gate '" + gate + "' expects " + std::to_string(want) + " operand(s)");
      failed = true;
      continue;
    }

    const double pi = 3.14159265358979323846;
    if (gate == "cx") {
      if (wires[0] == wires[1]) {
        error(st.line, "cx with identical operands");
        failed = true;
        continue;
      }
      circ->add_cx(static_cast<int>(wires[0]), static_cast<int>(wires[1]));
    } else if (gate == "h") {
      circ->add_h(static_cast<int>(wires[0]));
    } else if (gate == "x") {
      circ->add_rx(static_cast<int>(wires[0]), pi);
    } else if (gate == "rx") {
      circ->add_rx(static_cast<int>(wires[0]), *angle);
    } else {  // rz, u1
      circ->add_rz(static_cast<int>(wires[0]), *angle);
    }
  }

  if (!circ && !failed) {
    res.diagnostics.push_back({ParseDiagnostic::Severity::error, 0, "no qreg declaration found"});
    failed = true;
  }
  if (!failed) res.circuit = std::move(circ);
  return res;
}

inline std::string emit_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << c.num_qubits() << "];\n";
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::rz:
        out << "rz(" << detail::format_angle(g.angle) << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::rx:
        out << "rx(" << detail::format_angle(g.angle) << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::h:
        out << "h q[" << g.q0 << "];\n";
        break;
      case GateKind::cx:
        out << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n";
        break;
    }
  }
  return out.str();
}

/// Routed emission. The boundary permutations ride along as header comments,
/// one `// layout b<i> -> q<j>` line per logical qubit under an
/// `// initial layout` and a `// final layout` marker.
inline std::string emit(const RoutedCircuit& r, bool expand) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  auto layout_block = [&](const char* tag, const Layout& l) {
    out << "// " << tag << " layout\n";
    for (int b = 0; b < l.num_qubits(); ++b)
      out << "// layout b" << b << " -> q" << l.phys(b) << "\n";
  };
  layout_block("initial", r.initial_layout);
  layout_block("final", r.final_layout);
  out << "qreg q[" << r.num_physical << "];\n";

  auto put_cx = [&](const PhysCx& cx) { out << "cx q[" << cx.control << "],q[" << cx.target << "];\n"; };
  for (const RoutedOp& op : r.ops) {
    if (const auto* o = std::get_if<OriginalOp>(&op)) {
      switch (o->gate.kind) {
        case GateKind::rz:
          out << "rz(" << detail::format_angle(o->gate.angle) << ") q[" << o->p0 << "];\n";
          break;
        case GateKind::rx:
          out << "rx(" << detail::format_angle(o->gate.angle) << ") q[" << o->p0 << "];\n";
          break;
        case GateKind::h:
          out << "h q[" << o->p0 << "];\n";
          break;
        case GateKind::cx:
          put_cx({o->p0, o->p1});
          break;
      }
    } else if (const auto* s = std::get_if<SwapOp>(&op)) {
      if (expand) {
        for (const PhysCx& cx : expand_swap(s->p, s->q)) put_cx(cx);
      } else {
        out << "swap q[" << s->p << "],q[" << s->q << "];\n";
      }
    } else {
      const auto& b = std::get<BridgeOp>(op);
      if (!expand)
        out << "// bridge gate " << b.gate_id << ": q[" << b.control << "] -> q[" << b.target
            << "] via q[" << b.middle << "]\n";
      for (const PhysCx& cx : expand_bridge(b.control, b.middle, b.target)) put_cx(cx);
    }
  }
  return out.str();
}

struct RoutedFileParse {
  std::optional<Circuit> circuit;  // physical gate stream
  std::optional<Layout> initial_layout;
  std::optional<Layout> final_layout;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return circuit && initial_layout && final_layout; }
};

/// Reads back a file produced by emit(): the physical circuit plus the two
/// layout header blocks (`// layout b<i> -> q<j>` lines).
inline RoutedFileParse parse_routed(std::string_view text) {
  RoutedFileParse out;
  ParseResult base = parse(text);
  out.diagnostics = std::move(base.diagnostics);
  if (!base.circuit) return out;
  out.circuit = std::move(base.circuit);
  const int n = out.circuit->num_qubits();

  std::vector<int> initial(static_cast<size_t>(n), -1), final_map(static_cast<size_t>(n), -1);
  std::vector<int>* active = nullptr;
  int line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string line;
  bool bad = false;
  while (std::getline(lines, line) && !bad) {
    ++line_no;
    const std::string body = detail::trim(line);
    if (body == "// initial layout") {
      active = &initial;
      continue;
    }
    if (body == "// final layout") {
      active = &final_map;
      continue;
    }
    long b = 0, q = 0;
    if (body.rfind("// layout b", 0) == 0) {
      const size_t arrow = body.find(" -> q");
      if (!active || arrow == std::string::npos ||
          !detail::parse_uint(std::string_view(body).substr(11, arrow - 11), b) ||
          !detail::parse_uint(std::string_view(body).substr(arrow + 5), q) || b >= n || q >= n) {
        out.diagnostics.push_back(
            {ParseDiagnostic::Severity::error, line_no, "malformed layout comment"});
        bad = true;
        break;
      }
      (*active)[static_cast<size_t>(b)] = static_cast<int>(q);
    }
  }
  auto finish = [&](std::vector<int>& fwd, const char* tag) -> std::optional<Layout> {
    if (bad) return std::nullopt;
    try {
      return Layout::from_forward(fwd);
    } catch (const std::invalid_argument&) {
      out.diagnostics.push_back({ParseDiagnostic::Severity::error, 0,
                                 std::string(tag) + " layout header missing or not a permutation"});
      return std::nullopt;
    }
  };
  out.initial_layout = finish(initial, "initial");
  out.final_layout = finish(final_map, "final");
  return out;
}

struct CouplingParseResult {
  std::optional<CouplingGraph> graph;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return graph.has_value(); }
};

/// Plain-text device format: one `a b` edge per line, with an optional
/// `n <count>` header pinning the node count (otherwise 1 + max index).
/// `#` starts a comment. Duplicate edges warn; bad indices or self-loops are
/// errors. Connectivity is NOT enforced here (the routers reject disconnected
/// devices themselves).
inline CouplingParseResult parse_coupling(std::string_view text) {
  CouplingParseResult res;
  int n = -1;  // -1: derive from the edges
  int max_index = -1;
  std::vector<std::pair<int, int>> edges;
  bool failed = false;
  bool first_line = true;
  int line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    std::istringstream iss(body);
    if (first_line) {
      first_line = false;
      std::string word, num, extra;
      std::istringstream probe(body);
      probe >> word >> num;
      long count = 0;
      if (word == "n") {
        if (!detail::parse_uint(num, count) || count == 0 || (probe >> extra)) {
          res.diagnostics.push_back(
              {ParseDiagnostic::Severity::error, line_no, "malformed 'n <count>' header"});
          failed = true;
          break;
        }
        n = static_cast<int>(count);
        continue;
      }
    }
    std::string sa, sb, extra;
    long a = 0, b = 0;
    iss >> sa >> sb;
    if (!detail::parse_uint(sa, a) || !detail::parse_uint(sb, b) || (iss >> extra)) {
      res.diagnostics.push_back({ParseDiagnostic::Severity::error, line_no, "expected 'a b' edge line"});
      failed = true;
      continue;
    }
    if (n >= 0 && (a >= n || b >= n)) {
      res.diagnostics.push_back(
          {ParseDiagnostic::Severity::error, line_no, "edge endpoint out of range"});
      failed = true;
      continue;
    }
    if (a == b) {
      res.diagnostics.push_back({ParseDiagnostic::Severity::error, line_no, "self-loop"});
      failed = true;
      continue;
    }
    max_index = std::max(max_index, static_cast<int>(std::max(a, b)));
    const auto e = std::make_pair(static_cast<int>(std::min(a, b)), static_cast<int>(std::max(a, b)));
    if (std::find(edges.begin(), edges.end(), e) != edges.end()) {
      res.diagnostics.push_back({ParseDiagnostic::Severity::warning, line_no, "duplicate edge"});
      continue;
    }
    edges.push_back(e);
  }
  if (!failed && n < 0) {
    if (max_index < 0) {
      res.diagnostics.push_back({ParseDiagnostic::Severity::error, 0, "no edges and no 'n' header"});
      failed = true;
    } else {
      n = max_index + 1;
    }
  }
  if (!failed) res.graph = CouplingGraph(n, edges);
  return res;
}

}  // namespace qcmap
