#include "conflab/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace conflab {

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::optional<VarId> variable_named(const std::string& s) {
  if (s == "d") return kPartial;
  if (s == "t") return kDefParam;
  if (s.size() > 1 && s[0] == 'x' && std::all_of(s.begin() + 1, s.end(), ::isdigit))
    return VarId::slot(static_cast<unsigned>(std::stoul(s.substr(1))));
  return std::nullopt;
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t col = 0;  // 1-based
};

std::vector<Token> lex(const std::string& s, std::size_t col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.col = col0 + i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Number;
      t.text = s.substr(i, j - i);
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = s.substr(i, j - i);
      i = j;
    } else {
      t.text = std::string(1, c);
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        default: t.kind = Tok::Bad; break;
      }
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.col = col0 + s.size();
  out.push_back(end);
  return out;
}

// Scalar or element value during evaluation.
struct Value {
  bool is_element = false;
  MultiPoly scalar;
  LambdaExpr element;
};

class ExprParser {
 public:
  ExprParser(const std::string& text, std::size_t line, std::size_t col0, const std::vector<std::string>* basis)
      : toks_(lex(text, col0)), line_(line), basis_(basis) {}

  Value parse_all() {
    Value v = expr();
    expect(Tok::End, {"operator", "end of expression"});
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& t, std::vector<std::string> expected) const {
    throw SyntaxError(line_, t.col, t.kind == Tok::End ? "end of input" : "'" + t.text + "'", std::move(expected));
  }

  void expect(Tok k, std::vector<std::string> expected) {
    if (peek().kind != k) fail(peek(), std::move(expected));
    ++pos_;
  }

  Value make_scalar(MultiPoly p) const {
    Value v;
    v.scalar = std::move(p);
    return v;
  }

  Value add(Value a, const Value& b, bool subtract, const Token& at) const {
    if (a.is_element != b.is_element) {
      // a bare 0 is accepted in element context
      if (!a.is_element && a.scalar.is_zero()) return subtract ? negate(b) : b;
      if (!b.is_element && b.scalar.is_zero()) return a;
      fail(at, {"basis element term"});
    }
    if (a.is_element) {
      if (subtract)
        a.element -= b.element;
      else
        a.element += b.element;
    } else {
      a.scalar = subtract ? a.scalar - b.scalar : a.scalar + b.scalar;
    }
    return a;
  }

  static Value negate(Value v) {
    if (v.is_element)
      v.element = -v.element;
    else
      v.scalar = -v.scalar;
    return v;
  }

  Value mul(Value a, const Value& b, const Token& at) const {
    if (a.is_element && b.is_element) fail(at, {"scalar factor"});
    if (a.is_element) {
      a.element *= b.scalar;
      return a;
    }
    if (b.is_element) {
      Value r = b;
      r.element *= a.scalar;
      return r;
    }
    a.scalar = a.scalar * b.scalar;
    return a;
  }

  Value expr() {
    Value v = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token op = take();
      v = add(std::move(v), term(), op.kind == Tok::Minus, op);
    }
    return v;
  }

  Value term() {
    Value v = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = take();
      const Token at = peek();
      Value rhs = unary();
      if (op.kind == Tok::Star) {
        v = mul(std::move(v), rhs, op);
      } else {
        if (rhs.is_element || !rhs.scalar.is_constant() || rhs.scalar.is_zero()) fail(at, {"nonzero constant divisor"});
        Value inv = make_scalar(MultiPoly(Rational(1) / rhs.scalar.constant_term()));
        v = mul(std::move(v), inv, op);
      }
    }
    return v;
  }

  Value unary() {
    if (peek().kind == Tok::Minus) {
      take();
      return negate(unary());
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (peek().kind == Tok::Caret) {
      const Token op = take();
      if (peek().kind != Tok::Number) fail(peek(), {"integer exponent"});
      const unsigned long e = std::stoul(take().text);
      if (base.is_element) fail(op, {"scalar base"});
      MultiPoly r(1L);
      for (unsigned long i = 0; i < e; ++i) r = r * base.scalar;
      base.scalar = std::move(r);
    }
    return base;
  }

  Value atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number:
        take();
        return make_scalar(MultiPoly(Rational(mpz_class(t.text))));
      case Tok::Ident: {
        take();
        if (auto v = variable_named(t.text)) return make_scalar(MultiPoly::var(*v));
        if (basis_) {
          auto it = std::find(basis_->begin(), basis_->end(), t.text);
          if (it != basis_->end()) {
            Value v;
            v.is_element = true;
            v.element = LambdaExpr::basis(basis_->size(), static_cast<std::size_t>(it - basis_->begin()));
            return v;
          }
        }
        throw UndeclaredBasis("line " + std::to_string(line_) + ":" + std::to_string(t.col) +
                              ": undeclared basis element '" + t.text + "'");
      }
      case Tok::LParen: {
        take();
        Value v = expr();
        expect(Tok::RParen, {"')'", "operator"});
        return v;
      }
      default:
        fail(t, {"number", "identifier", "'('", "'-'"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const std::vector<std::string>* basis_;
};

LambdaExpr to_element(Value v, std::size_t rank) {
  if (!v.is_element) {
    if (!v.scalar.is_zero()) throw Error("expected a combination of basis elements");
    return LambdaExpr(rank);
  }
  return std::move(v.element);
}

// Sectioned file reader.
struct Line {
  std::size_t number;
  std::string text;  // trimmed, comment removed
  std::size_t col0;  // column of text[0]
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::size_t lead = 0;
    while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
    std::string t = trim(raw);
    if (!t.empty()) out.push_back(Line{n, t, lead + 1});
  }
  return out;
}

[[noreturn]] void line_error(const Line& l, const std::string& msg) {
  throw Error("line " + std::to_string(l.number) + ": " + msg);
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void validate_names(const Line& l, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& n = names[i];
    if (n.empty() || !is_ident_start(n[0]) || !std::all_of(n.begin(), n.end(), is_ident_char))
      line_error(l, "invalid basis name '" + n + "'");
    if (variable_named(n)) line_error(l, "basis name '" + n + "' is reserved for a variable");
    if (std::find(names.begin(), names.begin() + static_cast<long>(i), n) != names.begin() + static_cast<long>(i))
      line_error(l, "duplicate basis name '" + n + "'");
  }
}

std::size_t index_of(const Line& l, const std::string& tok, const std::vector<std::string>& names) {
  if (!tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit)) {
    const unsigned long i = std::stoul(tok);
    if (i < 1 || i > names.size())
      throw RankError("line " + std::to_string(l.number) + ": index " + tok + " out of range 1.." +
                      std::to_string(names.size()));
    return i - 1;
  }
  auto it = std::find(names.begin(), names.end(), tok);
  if (it == names.end())
    throw UndeclaredBasis("line " + std::to_string(l.number) + ": undeclared basis element '" + tok + "'");
  return static_cast<std::size_t>(it - names.begin());
}

struct Entry {
  std::vector<std::string> lhs;
  std::string rhs;
  std::size_t rhs_col;
};

Entry split_entry(const Line& l, std::size_t lhs_count) {
  const auto arrow = l.text.find("->");
  if (arrow == std::string::npos)
    throw SyntaxError(l.number, l.col0 + l.text.size(), "end of line", {"'->'"});
  Entry e;
  e.lhs = split_names(l.text.substr(0, arrow));
  if (e.lhs.size() != lhs_count)
    throw SyntaxError(l.number, l.col0, "'" + trim(l.text.substr(0, arrow)) + "'",
                      {std::to_string(lhs_count) + " index" + (lhs_count > 1 ? "es" : "")});
  e.rhs = l.text.substr(arrow + 2);
  e.rhs_col = l.col0 + arrow + 2;
  return e;
}

LambdaExpr parse_rhs(const Line& l, const Entry& e, const std::vector<std::string>& basis) {
  ExprParser p(e.rhs, l.number, e.rhs_col, &basis);
  Value v = p.parse_all();
  if (!v.is_element && !v.scalar.is_zero())
    throw SyntaxError(l.number, e.rhs_col, "scalar expression", {"combination of basis elements"});
  return to_element(std::move(v), basis.size());
}

void require_vars(const Line& l, const LambdaExpr& x, bool allow_slot) {
  for (std::size_t c = 0; c < x.rank(); ++c)
    for (const auto& [m, q] : x[c].terms()) {
      const auto& e = m.exponents();
      for (std::size_t f = 0; f < e.size(); ++f) {
        if (e[f] == 0) continue;
        const VarId v = VarId::from_flat(static_cast<unsigned>(f));
        if (v == kPartial || v == kDefParam) continue;
        if (allow_slot && v == VarId::slot(0)) continue;
        line_error(l, "variable " + v.name() + " is not allowed here");
      }
    }
}

std::pair<std::string, std::string> key_value(const Line& l) {
  const auto eq = l.text.find('=');
  if (eq == std::string::npos) throw SyntaxError(l.number, l.col0 + l.text.size(), "end of line", {"'='"});
  return {trim(l.text.substr(0, eq)), trim(l.text.substr(eq + 1))};
}

struct ModuleDraft {
  std::string name;
  std::vector<std::string> basis;
  std::map<std::size_t, LambdaExpr> beta;
  std::map<std::pair<std::size_t, std::size_t>, LambdaExpr> action;
};

PolyMatrix matrix_from_columns(std::size_t n, const std::map<std::size_t, LambdaExpr>& cols) {
  PolyMatrix m = PolyMatrix::identity(n);
  for (const auto& [j, x] : cols) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = x[i];
  }
  return m;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& found,
                         std::vector<std::string> expected)
    : Error("line " + std::to_string(line) + ":" + std::to_string(column) + ": syntax error at " + found +
            ", expected " + join(expected, " or ")),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

MultiPoly parse_poly(const std::string& text) {
  ExprParser p(text, 1, 1, nullptr);
  Value v = p.parse_all();
  return v.scalar;
}

LambdaExpr parse_element(const std::string& text, const std::vector<std::string>& basis) {
  ExprParser p(text, 1, 1, &basis);
  return to_element(p.parse_all(), basis.size());
}

DefinitionFile parse_definition(const std::string& text) {
  std::string name;
  std::vector<std::string> basis;
  std::optional<std::size_t> declared_rank;
  bool have_basis = false;
  std::map<std::size_t, LambdaExpr> alpha;
  std::map<std::pair<std::size_t, std::size_t>, LambdaExpr> bracket;
  std::vector<ModuleDraft> modules;
  std::string section;

  for (const Line& l : split_lines(text)) {
    if (l.text.front() == '[') {
      if (l.text.back() != ']') throw SyntaxError(l.number, l.col0 + l.text.size(), "end of line", {"']'"});
      const std::string head = trim(l.text.substr(1, l.text.size() - 2));
      const auto words = split_names(head);
      if (words.empty()) line_error(l, "empty section header");
      if (words[0] == "module") {
        if (!have_basis) line_error(l, "[module] before [algebra] basis");
        ModuleDraft m;
        m.name = words.size() > 1 ? words[1] : "M" + std::to_string(modules.size() + 1);
        modules.push_back(std::move(m));
        section = "module";
      } else if (words[0] == "algebra" || words[0] == "alpha" || words[0] == "bracket" || words[0] == "beta" ||
                 words[0] == "action") {
        section = words[0];
        if (section != "algebra" && !have_basis) line_error(l, "[" + section + "] before [algebra] basis");
        if ((section == "beta" || section == "action") && modules.empty())
          line_error(l, "[" + section + "] outside a module");
      } else {
        line_error(l, "unknown section [" + head + "]");
      }
      continue;
    }
    if (section.empty()) line_error(l, "content before the first section");
    if (section == "algebra") {
      const auto [k, v] = key_value(l);
      if (k == "name") {
        name = v;
      } else if (k == "basis") {
        basis = split_names(v);
        validate_names(l, basis);
        have_basis = true;
      } else if (k == "rank") {
        declared_rank = std::stoul(v);
      } else {
        line_error(l, "unknown key '" + k + "'");
      }
    } else if (section == "module") {
      const auto [k, v] = key_value(l);
      if (k == "basis") {
        modules.back().basis = split_names(v);
        validate_names(l, modules.back().basis);
      } else if (k == "name") {
        modules.back().name = v;
      } else {
        line_error(l, "unknown key '" + k + "'");
      }
    } else if (section == "alpha") {
      const Entry e = split_entry(l, 1);
      const std::size_t j = index_of(l, e.lhs[0], basis);
      LambdaExpr x = parse_rhs(l, e, basis);
      require_vars(l, x, false);
      if (!alpha.emplace(j, std::move(x)).second) line_error(l, "duplicate alpha entry");
    } else if (section == "bracket") {
      const Entry e = split_entry(l, 2);
      const auto key = std::make_pair(index_of(l, e.lhs[0], basis), index_of(l, e.lhs[1], basis));
      LambdaExpr x = parse_rhs(l, e, basis);
      require_vars(l, x, true);
      if (!bracket.emplace(key, std::move(x)).second) line_error(l, "duplicate bracket entry");
    } else if (section == "beta") {
      ModuleDraft& m = modules.back();
      const Entry e = split_entry(l, 1);
      const std::size_t j = index_of(l, e.lhs[0], m.basis);
      LambdaExpr x = parse_rhs(l, e, m.basis);
      require_vars(l, x, false);
      if (!m.beta.emplace(j, std::move(x)).second) line_error(l, "duplicate beta entry");
    } else if (section == "action") {
      ModuleDraft& m = modules.back();
      const Entry e = split_entry(l, 2);
      const auto key = std::make_pair(index_of(l, e.lhs[0], basis), index_of(l, e.lhs[1], m.basis));
      LambdaExpr x = parse_rhs(l, e, m.basis);
      require_vars(l, x, true);
      if (!m.action.emplace(key, std::move(x)).second) line_error(l, "duplicate action entry");
    }
  }
  if (!have_basis) throw Error("missing [algebra] basis");
  if (declared_rank && *declared_rank != basis.size())
    throw RankError("declared rank " + std::to_string(*declared_rank) + " but " + std::to_string(basis.size()) +
                    " basis names");
  const std::size_t r = basis.size();
  StructureTable table(r, std::vector<LambdaExpr>(r, LambdaExpr(r)));
  for (auto& [key, x] : bracket) table[key.first][key.second] = std::move(x);
  DefinitionFile def;
  def.algebra = HomConformalAlgebra(name, basis, std::move(table), matrix_from_columns(r, alpha));
  for (auto& m : modules) {
    const std::size_t n = m.basis.size();
    StructureTable act(r, std::vector<LambdaExpr>(n, LambdaExpr(n)));
    for (auto& [key, x] : m.action) act[key.first][key.second] = std::move(x);
    def.modules.emplace_back(m.name, m.basis, std::move(act), matrix_from_columns(n, m.beta));
  }
  return def;
}

namespace {

std::string column_string(const PolyMatrix& M, std::size_t j, const std::vector<std::string>& names) {
  LambdaExpr x(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i) x[i] = M(i, j);
  return x.to_string(names);
}

}  // namespace

std::string print_algebra(const HomConformalAlgebra& A) {
  return print_definition(DefinitionFile{A, {}});
}

std::string print_definition(const DefinitionFile& def) {
  const HomConformalAlgebra& A = def.algebra;
  const auto& names = A.basis_names();
  std::ostringstream os;
  os << "[algebra]\nname = " << A.name() << "\nbasis = " << join(names, " ") << "\n\n[alpha]\n";
  for (std::size_t j = 0; j < A.rank(); ++j) os << names[j] << " -> " << column_string(A.alpha(), j, names) << "\n";
  os << "\n[bracket]\n";
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j)
      if (!A.structure(i, j).is_zero())
        os << names[i] << " " << names[j] << " -> " << A.structure(i, j).to_string(names) << "\n";
  for (const auto& M : def.modules) {
    const auto& mn = M.basis_names();
    os << "\n[module " << M.name() << "]\nbasis = " << join(mn, " ") << "\n\n[beta]\n";
    for (std::size_t j = 0; j < M.rank(); ++j) os << mn[j] << " -> " << column_string(M.beta(), j, mn) << "\n";
    os << "\n[action]\n";
    for (std::size_t i = 0; i < M.algebra_rank(); ++i)
      for (std::size_t u = 0; u < M.rank(); ++u)
        if (!M.action(i, u).is_zero()) os << names[i] << " " << mn[u] << " -> " << M.action(i, u).to_string(mn) << "\n";
  }
  return os.str();
}

EndoFile parse_endo(const std::string& text, const std::vector<std::string>& basis) {
  ExtensionRule rule = ExtensionRule::ConformalLinear;
  int level = 0;
  std::map<std::string, std::map<std::size_t, LambdaExpr>> maps;
  std::string section;
  for (const Line& l : split_lines(text)) {
    if (l.text.front() == '[') {
      if (l.text.back() != ']') throw SyntaxError(l.number, l.col0 + l.text.size(), "end of line", {"']'"});
      section = trim(l.text.substr(1, l.text.size() - 2));
      if (section != "endo" && section != "map" && section != "witness" && section != "witness2")
        line_error(l, "unknown section [" + section + "]");
      if (section != "endo") maps[section];
      continue;
    }
    if (section.empty()) line_error(l, "content before the first section");
    if (section == "endo") {
      const auto [k, v] = key_value(l);
      if (k == "extension") {
        if (v == "linear")
          rule = ExtensionRule::ConformalLinear;
        else if (v == "antilinear")
          rule = ExtensionRule::CochainAntilinear;
        else
          line_error(l, "extension must be linear or antilinear");
      } else if (k == "level") {
        level = std::stoi(v);
      } else {
        line_error(l, "unknown key '" + k + "'");
      }
      continue;
    }
    const Entry e = split_entry(l, 1);
    const std::size_t i = index_of(l, e.lhs[0], basis);
    LambdaExpr x = parse_rhs(l, e, basis);
    require_vars(l, x, true);
    if (!maps[section].emplace(i, std::move(x)).second) line_error(l, "duplicate map entry");
  }
  auto build = [&](const std::string& key) -> std::optional<ConformalMap> {
    auto it = maps.find(key);
    if (it == maps.end()) return std::nullopt;
    ConformalMap m = ConformalMap::zero(basis.size(), rule, level);
    for (auto& [i, x] : it->second) m.image(i) = x;
    return m;
  };
  auto main = build("map");
  if (!main) throw Error("missing [map] section");
  return EndoFile{*main, build("witness"), build("witness2")};
}

std::string print_endo(const EndoFile& e, const std::vector<std::string>& basis) {
  std::ostringstream os;
  os << "[endo]\nextension = " << to_string(e.map.rule()) << "\nlevel = " << e.map.level() << "\n";
  auto section = [&](const char* name, const ConformalMap& m) {
    const ConformalMap mm = m.with_slot(VarId::slot(0));
    os << "\n[" << name << "]\n";
    for (std::size_t i = 0; i < mm.rank(); ++i)
      if (!mm.image(i).is_zero()) os << basis[i] << " -> " << mm.image(i).to_string(basis) << "\n";
  };
  section("map", e.map);
  if (e.witness) section("witness", *e.witness);
  if (e.witness2) section("witness2", *e.witness2);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace conflab
