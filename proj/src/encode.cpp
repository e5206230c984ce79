#include "relay/encode.hpp"

#include <algorithm>
#include <cmath>

#include "textio.hpp"

namespace relay {
namespace {

constexpr size_t kLpWrapCol = 240;

std::string signed_int(long long v) {
  return (v < 0 ? "-" : "+") + fmt_int(v < 0 ? -v : v);
}

std::string signed_real(double v) {
  return (v < 0 ? "-" : "+") + fmt_real(v < 0 ? -v : v);
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::LE: return "<=";
    case Sense::GE: return ">=";
    case Sense::EQ: return "=";
  }
  return "=";
}

void emit_wrapped(std::string& out, const std::vector<std::string>& tokens) {
  size_t col = 0;
  for (const auto& t : tokens) {
    if (col > 0 && col + 1 + t.size() > kLpWrapCol) {
      out += "\n ";
      col = 1;
    }
    out += ' ';
    out += t;
    col += 1 + t.size();
  }
  out += '\n';
}

std::string fallback_name(int column) { return "x" + std::to_string(column + 1); }

long long scaled_cost(double coef) {
  const double scaled = coef * kCostScale;
  const double rounded = std::nearbyint(scaled);  // ties to even
  if (std::fabs(scaled - rounded) > 1e-6)
    throw EncodeError("objective coefficient " + fmt_real(coef) +
                      " is not integral after scaling by 10^4");
  return static_cast<long long>(rounded);
}

}  // namespace

std::vector<std::string> model_var_names(const Model01LP& m) {
  std::vector<std::string> names(m.num_vars);
  if (static_cast<long long>(m.var_table.size()) == m.num_vars) {
    for (const auto& v : m.var_table) names[v.column] = var_name(v);
  } else {
    for (long long c = 0; c < m.num_vars; ++c)
      names[c] = fallback_name(static_cast<int>(c));
  }
  return names;
}

std::string encode_lp(const Model01LP& m) {
  const auto names = model_var_names(m);
  std::string out = "Minimize\n";

  std::vector<std::string> obj_tokens{"obj:"};
  if (m.objective && !m.objective->empty()) {
    for (const auto& [coef, col] : *m.objective) {
      obj_tokens.push_back(signed_real(coef));
      obj_tokens.push_back(names[col]);
    }
  } else {
    obj_tokens.push_back("0");
  }
  emit_wrapped(out, obj_tokens);

  out += "Subject To\n";
  std::map<std::string, int> family_count;
  for (const auto& c : m.constraints) {
    std::vector<std::string> tokens;
    tokens.push_back(c.family + "_" + std::to_string(family_count[c.family]++) + ":");
    if (c.terms.empty()) {
      if (m.num_vars == 0)
        throw EncodeError("constraint without terms in a model without variables");
      tokens.push_back("+0");
      tokens.push_back(names[0]);
    }
    for (const auto& [coef, col] : c.terms) {
      tokens.push_back(signed_int(coef));
      tokens.push_back(names[col]);
    }
    tokens.push_back(sense_text(c.sense));
    tokens.push_back(fmt_int(c.rhs));
    emit_wrapped(out, tokens);
  }

  out += "Binary\n";
  for (const auto& n : names) {
    out += ' ';
    out += n;
    out += '\n';
  }
  out += "End\n";
  return out;
}

std::string encode_opb(const Model01LP& m) {
  // One >=-form line per inequality; equalities contribute two lines, and
  // the header constraint count reflects that.
  const bool minimize = m.objective && !m.objective->empty();
  long long rows = 0;
  for (const auto& c : m.constraints) rows += c.sense == Sense::EQ ? 2 : 1;

  std::string body;
  if (minimize) {
    body += "min:";
    for (const auto& [coef, col] : *m.objective) {
      const long long k = scaled_cost(coef);
      if (k == 0) continue;
      body += ' ';
      body += signed_int(k);
      body += " x" + std::to_string(col + 1);
    }
    body += " ;\n";
  }
  auto emit_ge = [&m, &body](const std::vector<std::pair<int, int>>& terms,
                             long long rhs, bool negate) {
    if (terms.empty()) {
      if (m.num_vars == 0)
        throw EncodeError("constraint without terms in a model without variables");
      body += "+0 x1";
    }
    for (size_t k = 0; k < terms.size(); ++k) {
      if (k) body += ' ';
      body += signed_int(negate ? -terms[k].first : terms[k].first);
      body += " x" + std::to_string(terms[k].second + 1);
    }
    body += " >= " + fmt_int(negate ? -rhs : rhs) + " ;\n";
  };
  for (const auto& c : m.constraints) {
    switch (c.sense) {
      case Sense::GE: emit_ge(c.terms, c.rhs, false); break;
      case Sense::LE: emit_ge(c.terms, c.rhs, true); break;
      case Sense::EQ:
        emit_ge(c.terms, c.rhs, false);
        emit_ge(c.terms, c.rhs, true);
        break;
    }
  }

  std::string out = "* #variable= " + fmt_int(m.num_vars) +
                    " #constraint= " + fmt_int(rows) + "\n";
  out += body;
  return out;
}

namespace {

std::string smt_int(long long v) {
  return v < 0 ? "(- " + fmt_int(-v) + ")" : fmt_int(v);
}

std::string smt_coef(double v) {
  const bool integral = v == std::floor(v) && std::fabs(v) < 1e15;
  if (v < 0)
    return "(- " + (integral ? fmt_int(static_cast<long long>(-v)) : fmt_real(-v)) + ")";
  return integral ? fmt_int(static_cast<long long>(v)) : fmt_real(v);
}

std::string smt_term(double coef, const std::string& name) {
  if (coef == 1) return name;
  if (coef == -1) return "(- " + name + ")";
  return "(* " + smt_coef(coef) + " " + name + ")";
}

std::string smt_sum(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) {
    s += ' ';
    s += t;
  }
  s += ')';
  return s;
}

}  // namespace

std::string encode_smt2(const Model01LP& m) {
  const auto names = model_var_names(m);
  std::string out = "(set-logic QF_LIA)\n";
  for (const auto& n : names) out += "(declare-fun " + n + " () Int)\n";
  for (const auto& n : names)
    out += "(assert (and (<= 0 " + n + ") (<= " + n + " 1)))\n";

  for (const auto& c : m.constraints) {
    std::vector<std::string> terms;
    terms.reserve(c.terms.size());
    for (const auto& [coef, col] : c.terms)
      terms.push_back(smt_term(coef, names[col]));
    const char* op = c.sense == Sense::LE ? "<=" : c.sense == Sense::GE ? ">=" : "=";
    out += "(assert (" + std::string(op) + " " + smt_sum(terms) + " " +
           smt_int(c.rhs) + "))\n";
  }

  const bool minimize = m.objective && !m.objective->empty();
  if (minimize) {
    std::vector<std::string> terms;
    for (const auto& [coef, col] : *m.objective)
      terms.push_back(smt_term(coef, names[col]));
    out += "(minimize " + smt_sum(terms) + ")\n";
  }
  out += "(check-sat)\n";
  if (minimize) out += "(get-objectives)\n";
  out += "(get-model)\n";
  return out;
}

std::string varmap_csv(const Model01LP& m) {
  const auto names = model_var_names(m);
  std::string out = "name,column\n";
  for (long long c = 0; c < m.num_vars; ++c)
    out += names[c] + "," + fmt_int(c) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Instance parsing (the emitted subsets only)

namespace {

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) out.push_back({cur, line});
      cur.clear();
      if (ch == '\n') ++line;
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back({cur, line});
  return out;
}

// "+12" / "-3" / "17"; from_chars alone rejects a leading '+'.
std::optional<long long> parse_signed(std::string_view t) {
  if (t.empty()) return std::nullopt;
  bool neg = false;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    t.remove_prefix(1);
  }
  if (t.empty() || t[0] == '+' || t[0] == '-') return std::nullopt;
  auto v = parse_int(t);
  if (!v) return std::nullopt;
  return neg ? -*v : *v;
}

std::optional<double> parse_signed_real(std::string_view t) {
  if (t.empty()) return std::nullopt;
  bool neg = false;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    t.remove_prefix(1);
  }
  if (t.empty() || t[0] == '+' || t[0] == '-') return std::nullopt;
  auto v = parse_real(t);
  if (!v) return std::nullopt;
  return neg ? -*v : *v;
}

std::string strip_row_index(const std::string& row_name) {
  const size_t us = row_name.rfind('_');
  if (us == std::string::npos) return row_name;
  if (parse_int(std::string_view(row_name).substr(us + 1)))
    return row_name.substr(0, us);
  return row_name;
}

Model01LP parse_lp(std::string_view text) {
  const auto toks = tokenize(text);
  size_t i = 0;
  auto err = [&](const std::string& what) -> ModelParseError {
    const int line = i < toks.size() ? toks[i].line
                     : toks.empty()  ? 1
                                     : toks.back().line;
    return ModelParseError(line, what);
  };
  auto need = [&](const char* word) {
    if (i >= toks.size() || toks[i].text != word)
      throw err(std::string("expected '") + word + "'");
    ++i;
  };
  auto peek = [&](const char* word) {
    return i < toks.size() && toks[i].text == word;
  };

  need("Minimize");
  need("obj:");

  struct RawTerm {
    double coef;
    std::string name;
    int line;
  };
  std::vector<RawTerm> obj_terms;
  bool feasibility = false;
  if (peek("0") && i + 1 < toks.size() && toks[i + 1].text == "Subject") {
    feasibility = true;
    ++i;
  }
  while (!peek("Subject")) {
    if (i + 1 >= toks.size()) throw err("unterminated objective");
    auto coef = parse_signed_real(toks[i].text);
    if (!coef) throw err("bad objective coefficient '" + toks[i].text + "'");
    obj_terms.push_back({*coef, toks[i + 1].text, toks[i].line});
    i += 2;
  }
  need("Subject");
  need("To");

  struct RawRow {
    std::string family;
    std::vector<RawTerm> terms;
    Sense sense = Sense::GE;
    long long rhs = 0;
  };
  std::vector<RawRow> rows;
  while (!peek("Binary")) {
    if (i >= toks.size()) throw err("missing Binary section");
    std::string row_name = toks[i].text;
    if (row_name.empty() || row_name.back() != ':')
      throw err("expected a row label, got '" + row_name + "'");
    row_name.pop_back();
    ++i;
    RawRow row;
    row.family = strip_row_index(row_name);
    for (;;) {
      if (i >= toks.size()) throw err("unterminated row " + row_name);
      const std::string& t = toks[i].text;
      if (t == "<=" || t == ">=" || t == "=") {
        row.sense = t == "<=" ? Sense::LE : t == ">=" ? Sense::GE : Sense::EQ;
        ++i;
        if (i >= toks.size()) throw err("missing right-hand side in " + row_name);
        auto rhs = parse_signed(toks[i].text);
        if (!rhs) throw err("bad right-hand side '" + toks[i].text + "'");
        row.rhs = *rhs;
        ++i;
        break;
      }
      if (i + 1 >= toks.size()) throw err("unterminated row " + row_name);
      auto coef = parse_signed(t);
      if (!coef) throw err("bad coefficient '" + t + "'");
      row.terms.push_back({static_cast<double>(*coef), toks[i + 1].text, toks[i].line});
      i += 2;
    }
    rows.push_back(std::move(row));
  }
  need("Binary");

  Model01LP m;
  std::map<std::string, int> column_of;
  while (!peek("End")) {
    if (i >= toks.size()) throw err("missing End");
    const std::string& name = toks[i].text;
    if (column_of.count(name)) throw err("duplicate variable " + name);
    auto ref = parse_var_name(name);
    if (!ref) throw err("unrecognized variable name '" + name + "'");
    ref->column = static_cast<int>(m.var_table.size());
    column_of[name] = ref->column;
    m.var_table.push_back(*ref);
    ++i;
  }
  need("End");
  m.num_vars = static_cast<long long>(m.var_table.size());

  auto column = [&column_of](const RawTerm& t) {
    auto it = column_of.find(t.name);
    if (it == column_of.end())
      throw ModelParseError(t.line, "unknown variable '" + t.name + "'");
    return it->second;
  };
  if (!feasibility) {
    std::vector<std::pair<double, int>> obj;
    for (const auto& t : obj_terms)
      if (t.coef != 0) obj.emplace_back(t.coef, column(t));
    m.objective = std::move(obj);
  }
  for (auto& row : rows) {
    LinearConstraint c;
    c.family = row.family;
    c.sense = row.sense;
    c.rhs = row.rhs;
    for (const auto& t : row.terms)
      if (t.coef != 0) c.terms.emplace_back(static_cast<int>(t.coef), column(t));
    m.constraints.push_back(std::move(c));
  }
  return m;
}

Model01LP parse_opb(std::string_view text) {
  Model01LP m;
  long long declared_vars = -1;
  int line_no = 0;
  size_t pos = 0;
  bool saw_min = false;

  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    auto fields = [&] {
      std::vector<std::string_view> out;
      size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
          ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
          ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
      }
      return out;
    }();
    if (fields.empty()) continue;

    if (fields[0][0] == '*') {
      for (size_t k = 0; k + 1 < fields.size(); ++k)
        if (fields[k] == "#variable=")
          if (auto v = parse_int(fields[k + 1])) declared_vars = *v;
      continue;
    }
    if (declared_vars < 0)
      throw ModelParseError(line_no, "missing '* #variable= N' header");

    auto var_column = [&](std::string_view t) -> int {
      if (t.size() < 2 || t[0] != 'x')
        throw ModelParseError(line_no, "expected a variable, got '" + std::string(t) + "'");
      auto v = parse_int(t.substr(1));
      if (!v || *v < 1 || *v > declared_vars)
        throw ModelParseError(line_no, "variable '" + std::string(t) +
                                           "' out of range 1.." +
                                           std::to_string(declared_vars));
      return static_cast<int>(*v - 1);
    };

    size_t f = 0;
    const bool is_min = fields[0] == "min:";
    if (is_min) {
      if (saw_min) throw ModelParseError(line_no, "duplicate min: line");
      saw_min = true;
      f = 1;
    }

    std::vector<std::pair<long long, int>> terms;
    Sense sense = Sense::GE;
    long long rhs = 0;
    bool has_rhs = false;
    while (f < fields.size()) {
      if (fields[f] == ";") {
        ++f;
        break;
      }
      if (fields[f] == ">=") {
        if (is_min) throw ModelParseError(line_no, "relational operator in objective");
        if (f + 1 >= fields.size())
          throw ModelParseError(line_no, "missing right-hand side");
        auto v = parse_signed(fields[f + 1]);
        if (!v)
          throw ModelParseError(line_no,
                                "bad right-hand side '" + std::string(fields[f + 1]) + "'");
        rhs = *v;
        has_rhs = true;
        f += 2;
        continue;
      }
      if (fields[f] == "<=" || fields[f] == "=")
        throw ModelParseError(line_no, "only >= constraints are supported");
      if (f + 1 >= fields.size())
        throw ModelParseError(line_no, "dangling term '" + std::string(fields[f]) + "'");
      auto coef = parse_signed(fields[f]);
      if (!coef)
        throw ModelParseError(line_no, "bad coefficient '" + std::string(fields[f]) + "'");
      terms.emplace_back(*coef, var_column(fields[f + 1]));
      f += 2;
    }
    if (f != fields.size())
      throw ModelParseError(line_no, "trailing tokens after ';'");

    if (is_min) {
      std::vector<std::pair<double, int>> obj;
      for (const auto& [k, col] : terms)
        if (k != 0) obj.emplace_back(static_cast<double>(k) / kCostScale, col);
      m.objective = std::move(obj);
    } else {
      if (!has_rhs) throw ModelParseError(line_no, "constraint without '>='");
      LinearConstraint c;
      c.family = "opb";
      c.sense = sense;
      c.rhs = rhs;
      for (const auto& [k, col] : terms)
        if (k != 0) c.terms.emplace_back(static_cast<int>(k), col);
      m.constraints.push_back(std::move(c));
    }
  }

  if (declared_vars < 0) throw ModelParseError(1, "missing '* #variable= N' header");
  m.num_vars = declared_vars;
  return m;
}

}  // namespace

Model01LP parse_model(std::string_view text, InstanceFormat format) {
  return format == InstanceFormat::LP ? parse_lp(text) : parse_opb(text);
}

}  // namespace relay
