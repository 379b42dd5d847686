// fil :: Veltman model well-formedness, evaluation, and text form
#include "fil/veltman.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace fil {

namespace {

std::uint32_t full_mask(int n) {
  return n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
}

}  // namespace

bool check_wf(const VeltmanModel& m) {
  const int n = m.n;
  if (n < 1 || n > 32) return false;
  if (static_cast<int>(m.R.size()) != n || static_cast<int>(m.S.size()) != n) return false;
  const std::uint32_t full = full_mask(n);
  for (int w = 0; w < n; ++w) {
    if (m.R[w] & ~full) return false;
    if ((m.R[w] >> w) & 1u) return false;  // irreflexive
    if (static_cast<int>(m.S[w].size()) != n) return false;
  }
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      if ((m.R[w] >> u) & 1u)
        if (m.R[u] & ~m.R[w]) return false;  // transitive
  for (int w = 0; w < n; ++w) {
    const std::uint32_t rw = m.R[w];
    for (int u = 0; u < n; ++u) {
      const std::uint32_t row = m.S[w][u];
      if (!((rw >> u) & 1u)) {
        if (row) return false;  // S_w confined to R[w] x R[w]
        continue;
      }
      if (row & ~rw) return false;
      if (!((row >> u) & 1u)) return false;  // reflexive on R[w]
      if (m.R[u] & ~row) return false;       // wRuRv forces u S_w v
      for (int x = 0; x < n; ++x)
        if ((row >> x) & 1u)
          if (m.S[w][x] & ~row) return false;  // S_w transitive
    }
  }
  for (const auto& kv : m.val)
    if (kv.second & ~full) return false;
  return true;
}

std::uint32_t eval_all(const VeltmanModel& m, const FormulaPtr& f) {
  const std::uint32_t full = full_mask(m.n);
  switch (f->kind) {
    case Kind::Var: {
      auto it = m.val.find(f->name);
      return it == m.val.end() ? 0u : (it->second & full);
    }
    case Kind::Top:
      return full;
    case Kind::Bot:
      return 0u;
    case Kind::Neg:
      return full & ~eval_all(m, f->lhs);
    case Kind::And:
      return eval_all(m, f->lhs) & eval_all(m, f->rhs);
    case Kind::Or:
      return eval_all(m, f->lhs) | eval_all(m, f->rhs);
    case Kind::Impl:
      return (full & ~eval_all(m, f->lhs)) | eval_all(m, f->rhs);
    case Kind::Box: {
      if (!f->label.empty())
        throw std::invalid_argument("eval: formula carries a nonempty label");
      const std::uint32_t a = eval_all(m, f->lhs);
      std::uint32_t out = 0;
      for (int w = 0; w < m.n; ++w)
        if (!(m.R[w] & ~a)) out |= 1u << w;
      return out;
    }
    case Kind::Rhd: {
      if (!f->label.empty())
        throw std::invalid_argument("eval: formula carries a nonempty label");
      const std::uint32_t a = eval_all(m, f->lhs);
      const std::uint32_t b = eval_all(m, f->rhs);
      std::uint32_t out = 0;
      for (int w = 0; w < m.n; ++w) {
        std::uint32_t need = m.R[w] & a;
        bool ok = true;
        for (int u = 0; u < m.n && ok; ++u)
          if ((need >> u) & 1u)
            if (!(m.S[w][u] & b)) ok = false;
        if (ok) out |= 1u << w;
      }
      return out;
    }
  }
  throw std::logic_error("eval: unknown formula kind");
}

bool eval(const VeltmanModel& m, int w, const FormulaPtr& f) {
  if (w < 0 || w >= m.n) throw std::invalid_argument("eval: world out of range");
  return (eval_all(m, f) >> w) & 1u;
}

std::string format_model(const VeltmanModel& m) {
  std::ostringstream os;
  os << "worlds " << m.n << "\n";
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if ((m.R[i] >> j) & 1u) os << "R: " << i << " " << j << "\n";
  for (int w = 0; w < m.n; ++w)
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j)
        if ((m.S[w][i] >> j) & 1u) os << "S " << w << ": " << i << " " << j << "\n";
  for (const auto& kv : m.val) {
    os << "val " << kv.first << ":";
    for (int i = 0; i < m.n; ++i)
      if ((kv.second >> i) & 1u) os << " " << i;
    os << "\n";
  }
  return os.str();
}

namespace {

[[noreturn]] void bad_model(int line, const std::string& what) {
  throw std::invalid_argument("model line " + std::to_string(line) + ": " + what);
}

int parse_world(const std::string& tok, int n, int line) {
  std::size_t pos = 0;
  int v;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    bad_model(line, "expected a world number, got '" + tok + "'");
  }
  if (pos != tok.size()) bad_model(line, "expected a world number, got '" + tok + "'");
  if (v < 0 || v >= n) bad_model(line, "world " + tok + " out of range");
  return v;
}

}  // namespace

VeltmanModel parse_model(const std::string& text) {
  VeltmanModel m;
  bool have_worlds = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pc = line.find('%'); pc != std::string::npos) line.erase(pc);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;  // blank
    if (head == "worlds") {
      if (have_worlds) bad_model(lineno, "duplicate worlds line");
      int n;
      if (!(ls >> n)) bad_model(lineno, "missing world count");
      if (n < 1 || n > 32) bad_model(lineno, "world count must be between 1 and 32");
      std::string extra;
      if (ls >> extra) bad_model(lineno, "trailing tokens after world count");
      m.n = n;
      m.R.assign(n, 0);
      m.S.assign(n, std::vector<std::uint32_t>(n, 0));
      have_worlds = true;
      continue;
    }
    if (!have_worlds) bad_model(lineno, "expected 'worlds N' first");
    if (head == "R:") {
      std::string a, b, extra;
      if (!(ls >> a >> b)) bad_model(lineno, "R line needs two worlds");
      if (ls >> extra) bad_model(lineno, "trailing tokens on R line");
      int i = parse_world(a, m.n, lineno), j = parse_world(b, m.n, lineno);
      m.R[i] |= 1u << j;
      continue;
    }
    if (head == "S") {
      std::string wtok;
      if (!(ls >> wtok)) bad_model(lineno, "S line needs a world");
      if (wtok.empty() || wtok.back() != ':') bad_model(lineno, "expected 'S w:'");
      int w = parse_world(wtok.substr(0, wtok.size() - 1), m.n, lineno);
      std::string a, b, extra;
      if (!(ls >> a >> b)) bad_model(lineno, "S line needs two worlds");
      if (ls >> extra) bad_model(lineno, "trailing tokens on S line");
      int i = parse_world(a, m.n, lineno), j = parse_world(b, m.n, lineno);
      m.S[w][i] |= 1u << j;
      continue;
    }
    if (head == "val") {
      std::string name;
      if (!(ls >> name)) bad_model(lineno, "val line needs a letter");
      if (name.empty() || name.back() != ':') bad_model(lineno, "expected 'val p:'");
      name.pop_back();
      if (name.empty()) bad_model(lineno, "empty letter name");
      std::uint32_t mask = m.val.count(name) ? m.val[name] : 0u;
      std::string tok;
      while (ls >> tok) mask |= 1u << parse_world(tok, m.n, lineno);
      m.val[name] = mask;
      continue;
    }
    bad_model(lineno, "unrecognized line '" + head + "'");
  }
  if (!have_worlds) throw std::invalid_argument("model: missing 'worlds N' line");
  return m;
}

}  // namespace fil
