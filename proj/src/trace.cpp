#include "pse/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace pse {

std::int64_t TraceLog::add_terminal(BigCount w) {
  nodes.push_back(TraceNode{TraceKind::kTerminal, std::move(w), 0, -1, -1, {}});
  return static_cast<std::int64_t>(nodes.size()) - 1;
}

std::int64_t TraceLog::add_decision(Var v, std::int64_t lo, std::int64_t hi) {
  nodes.push_back(TraceNode{TraceKind::kDecision, 0, v, lo, hi, {}});
  return static_cast<std::int64_t>(nodes.size()) - 1;
}

std::int64_t TraceLog::add_conj(std::vector<std::int64_t> ch) {
  nodes.push_back(TraceNode{TraceKind::kConj, 0, 0, -1, -1, std::move(ch)});
  return static_cast<std::int64_t>(nodes.size()) - 1;
}

void write_trace(std::ostream& out, const TraceLog& log) {
  out << "pse-trace 1\n";
  out << "order";
  for (Var v : log.order) out << " " << v;
  out << " 0\n";
  for (std::size_t i = 0; i < log.nodes.size(); ++i) {
    const TraceNode& n = log.nodes[i];
    switch (n.kind) {
      case TraceKind::kTerminal:
        out << "t " << i << " " << big_str(n.weight) << "\n";
        break;
      case TraceKind::kDecision:
        out << "d " << i << " " << n.var << " " << n.lo << " " << n.hi << "\n";
        break;
      case TraceKind::kConj:
        out << "a " << i << " " << n.children.size();
        for (std::int64_t c : n.children) out << " " << c;
        out << "\n";
        break;
    }
  }
  out << "root " << log.root << "\n";
}

TraceLog read_trace(std::istream& in) {
  TraceLog log;
  std::string line;
  if (!std::getline(in, line) || line.rfind("pse-trace", 0) != 0)
    throw ParseError("trace: missing header");
  bool root_seen = false;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    auto want_id = [&](std::int64_t id) {
      if (id != static_cast<std::int64_t>(log.nodes.size()))
        throw ParseError("trace: node ids must be sequential");
    };
    auto check_child = [&](std::int64_t c) {
      if (c < 0 || c >= static_cast<std::int64_t>(log.nodes.size()))
        throw ParseError("trace: child referenced before definition");
    };
    if (tag == "order") {
      long v;
      bool done = false;
      while (ss >> v) {
        if (v == 0) {
          done = true;
          break;
        }
        if (v < 0) throw ParseError("trace: bad order entry");
        log.order.push_back(static_cast<Var>(v));
      }
      if (!done) throw ParseError("trace: order not terminated by 0");
    } else if (tag == "t") {
      std::int64_t id;
      std::string w;
      if (!(ss >> id >> w)) throw ParseError("trace: bad terminal line");
      want_id(id);
      log.add_terminal(BigCount(w));
    } else if (tag == "d") {
      std::int64_t id, lo, hi;
      long v;
      if (!(ss >> id >> v >> lo >> hi) || v <= 0)
        throw ParseError("trace: bad decision line");
      want_id(id);
      check_child(lo);
      check_child(hi);
      log.add_decision(static_cast<Var>(v), lo, hi);
    } else if (tag == "a") {
      std::int64_t id, k;
      if (!(ss >> id >> k) || k < 0) throw ParseError("trace: bad conj line");
      want_id(id);
      std::vector<std::int64_t> ch;
      for (std::int64_t i = 0; i < k; ++i) {
        std::int64_t c;
        if (!(ss >> c)) throw ParseError("trace: truncated conj line");
        check_child(c);
        ch.push_back(c);
      }
      log.add_conj(std::move(ch));
    } else if (tag == "root") {
      if (!(ss >> log.root) || log.root < 0 ||
          log.root >= static_cast<std::int64_t>(log.nodes.size()))
        throw ParseError("trace: bad root");
      root_seen = true;
    } else if (tag != "c") {
      throw ParseError("trace: unknown line tag '" + tag + "'");
    }
  }
  if (!root_seen) throw ParseError("trace: missing root");
  return log;
}

}  // namespace pse
