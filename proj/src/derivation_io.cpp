// fil :: derivation text format — `INDEX . [HYPS] |- FORMULA ; RULE ARGS`
#include <cctype>
#include <sstream>

#include "fil/proof.hpp"

namespace fil {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Re-anchor a fragment-relative parse error to its position in the file.
FormulaPtr parse_fragment(const std::string& frag, int file_line, int col_base) {
  try {
    return parse(frag);
  } catch (const ParseError& e) {
    int col = e.line == 1 ? col_base + e.col - 1 : e.col;
    throw ParseError(e.what(), file_line, col);
  }
}

// Same label syntax and `id` normalization as in formulas.
Label parse_label_token(const std::string& tok, int file_line) {
  if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
    throw ParseError("expected label, got '" + tok + "'", file_line, 1);
  std::string inner = tok.substr(1, tok.size() - 2);
  Label la;
  int saw_id = 0;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    std::size_t comma = inner.find(',', pos);
    std::string name = trim(inner.substr(pos, comma == std::string::npos
                                                  ? std::string::npos
                                                  : comma - pos));
    if (name.empty())
      throw ParseError("empty name in label '" + tok + "'", file_line, 1);
    if (name == "id")
      ++saw_id;
    else
      la.push_back(name);
    if (comma == std::string::npos) break;
    pos = comma + 1;
    if (pos == inner.size())
      throw ParseError("trailing comma in label '" + tok + "'", file_line, 1);
  }
  if (saw_id && !la.empty())
    throw ParseError("'id' cannot appear inside a nonempty label", file_line, 1);
  if (saw_id > 1) throw ParseError("duplicate 'id' in label", file_line, 1);
  if (!label_ok(la))
    throw ParseError("label variables must be distinct: " + tok, file_line, 1);
  return la;
}

long parse_long(const std::string& tok, int file_line, const char* what) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", file_line, 1);
  }
}

bool ident_ok(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

Justification parse_rule(const std::string& text, int file_line) {
  std::istringstream in(text);
  std::vector<std::string> w;
  std::string tok;
  while (in >> tok) w.push_back(tok);
  if (w.empty()) throw ParseError("missing rule", file_line, 1);
  auto need = [&](std::size_t n) {
    if (w.size() != n)
      throw ParseError("rule '" + w[0] + "' takes " + std::to_string(n - 1) +
                           " argument(s)",
                       file_line, 1);
  };
  Justification js;
  if (w[0] == "assume") {
    need(1);
    js.tag = Justification::Tag::Assume;
  } else if (w[0] == "taut") {
    need(1);
    js.tag = Justification::Tag::Taut;
  } else if (w[0] == "ax") {
    need(2);
    js.tag = Justification::Tag::Ax;
    auto s = schema_by_name(w[1]);
    if (!s) throw ParseError("unknown schema '" + w[1] + "'", file_line, 1);
    js.schema = *s;
  } else if (w[0] == "mp") {
    need(3);
    js.tag = Justification::Tag::MP;
    js.i = parse_long(w[1], file_line, "line index");
    js.j = parse_long(w[2], file_line, "line index");
  } else if (w[0] == "nec") {
    need(3);
    js.tag = Justification::Tag::Nec;
    js.a = parse_label_token(w[1], file_line);
    js.i = parse_long(w[2], file_line, "line index");
  } else if (w[0] == "ded-in" || w[0] == "ded-out") {
    need(2);
    js.tag = w[0] == "ded-in" ? Justification::Tag::DedIn : Justification::Tag::DedOut;
    js.i = parse_long(w[1], file_line, "line index");
  } else if (w[0] == "p-rule") {
    need(5);
    js.tag = Justification::Tag::PRule;
    js.a = parse_label_token(w[1], file_line);
    js.b = parse_label_token(w[2], file_line);
    if (!ident_ok(w[3]) || w[3] == "id")
      throw ParseError("bad interpretation variable '" + w[3] + "'", file_line, 1);
    js.k = w[3];
    js.i = parse_long(w[4], file_line, "line index");
  } else {
    throw ParseError("unknown rule '" + w[0] + "'", file_line, 1);
  }
  return js;
}

// Split on commas at bracket/paren depth zero.
std::vector<std::string> split_hyps(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  if (out.size() == 1 && trim(out[0]).empty()) out.clear();
  return out;
}

}  // namespace

Derivation parse_derivation(const std::string& text, Mode mode) {
  Derivation d;
  d.mode = mode;
  std::istringstream in(text);
  std::string raw;
  int file_line = 0;
  while (std::getline(in, raw)) {
    ++file_line;
    std::size_t cut = raw.find('%');
    std::string s = cut == std::string::npos ? raw : raw.substr(0, cut);
    if (trim(s).empty()) continue;

    std::size_t dot = s.find('.');
    if (dot == std::string::npos) throw ParseError("expected 'INDEX .'", file_line, 1);
    Line ln;
    ln.index = parse_long(trim(s.substr(0, dot)), file_line, "line index");

    std::size_t p = s.find('[', dot + 1);
    if (p == std::string::npos ||
        !trim(s.substr(dot + 1, p - dot - 1)).empty())
      throw ParseError("expected '[' after index", file_line, static_cast<int>(dot) + 2);
    int depth = 1;
    std::size_t q = p + 1;
    for (; q < s.size() && depth > 0; ++q) {
      if (s[q] == '[') ++depth;
      if (s[q] == ']') --depth;
    }
    if (depth != 0) throw ParseError("unterminated hypothesis list", file_line, (int)p + 1);
    std::string hyps_text = s.substr(p + 1, q - p - 2);

    std::size_t ts = s.find("|-", q);
    if (ts == std::string::npos || !trim(s.substr(q, ts - q)).empty())
      throw ParseError("expected '|-'", file_line, static_cast<int>(q) + 1);
    std::size_t semi = s.find(';', ts + 2);
    if (semi == std::string::npos)
      throw ParseError("expected ';' before the rule", file_line,
                       static_cast<int>(s.size()));

    Context ctx;
    std::size_t frag_col = p + 2;
    for (const std::string& h : split_hyps(hyps_text)) {
      std::string ht = trim(h);
      if (ht.empty())
        throw ParseError("empty hypothesis", file_line, static_cast<int>(frag_col));
      ctx.push_back(parse_fragment(ht, file_line, static_cast<int>(frag_col)));
      frag_col += h.size() + 1;
    }
    ln.judgment.context = canon_context(std::move(ctx));

    std::string ftext = trim(s.substr(ts + 2, semi - ts - 2));
    if (ftext.empty()) throw ParseError("missing formula", file_line, (int)ts + 3);
    ln.judgment.conclusion = parse_fragment(ftext, file_line, static_cast<int>(ts) + 3);

    ln.just = parse_rule(trim(s.substr(semi + 1)), file_line);
    d.lines.push_back(std::move(ln));
  }
  return d;
}

std::string format_derivation(const Derivation& d) {
  std::ostringstream out;
  for (const Line& ln : d.lines) {
    out << ln.index << ". [";
    for (std::size_t i = 0; i < ln.judgment.context.size(); ++i) {
      if (i) out << ", ";
      out << print(ln.judgment.context[i]);
    }
    out << "] |- " << print(ln.judgment.conclusion) << " ; ";
    const Justification& js = ln.just;
    auto lab = [](const Label& la) { return la.empty() ? std::string("[]") : label_str(la); };
    switch (js.tag) {
      case Justification::Tag::Assume: out << "assume"; break;
      case Justification::Tag::Taut: out << "taut"; break;
      case Justification::Tag::Ax: out << "ax " << schema_name(js.schema); break;
      case Justification::Tag::MP: out << "mp " << js.i << " " << js.j; break;
      case Justification::Tag::Nec: out << "nec " << lab(js.a) << " " << js.i; break;
      case Justification::Tag::DedIn: out << "ded-in " << js.i; break;
      case Justification::Tag::DedOut: out << "ded-out " << js.i; break;
      case Justification::Tag::PRule:
        out << "p-rule " << lab(js.a) << " " << lab(js.b) << " " << js.k << " " << js.i;
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fil
