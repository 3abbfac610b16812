#include "specfile.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace nilred {

namespace {

enum class TokKind { Ident, Number, Punct, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::size_t line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    tok_ = {};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = TokKind::End;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = TokKind::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        tok_.text += text_[pos_++];
        ++col_;
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = TokKind::Number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        tok_.text += text_[pos_++];
        ++col_;
      }
    } else {
      tok_.kind = TokKind::Punct;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
  Token tok_;
};

[[noreturn]] void fail(const Token& at, const std::string& msg) {
  std::ostringstream os;
  os << "line " << at.line << ", column " << at.col << ": " << msg;
  throw ParseError(os.str(), at.line, at.col);
}

[[noreturn]] void invalid(const Token& at, const std::string& msg) {
  std::ostringstream os;
  os << "line " << at.line << ", column " << at.col << ": " << msg;
  throw ValidationError(os.str());
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  std::vector<AlgebraSpec> parse_file() {
    std::vector<AlgebraSpec> specs;
    std::set<std::string> names;
    while (lex_.peek().kind != TokKind::End) {
      AlgebraSpec spec = parse_algebra();
      if (!names.insert(spec.name).second)
        invalid(lex_.peek(), "duplicate algebra name '" + spec.name + "'");
      specs.push_back(std::move(spec));
    }
    return specs;
  }

 private:
  Token expect_punct(const std::string& p) {
    Token t = lex_.next();
    if (t.kind != TokKind::Punct || t.text != p)
      fail(t, "expected '" + p + "', found '" + shown(t) + "'");
    return t;
  }

  static std::string shown(const Token& t) {
    return t.kind == TokKind::End ? "end of input" : t.text;
  }

  struct Value {
    Token at;
    std::optional<std::string> ident;
    std::optional<Rational> scalar;
    std::optional<QMatrix> matrix;
  };

  Rational parse_scalar() {
    Token t = lex_.next();
    bool neg = false;
    if (t.kind == TokKind::Punct && t.text == "-") {
      neg = true;
      t = lex_.next();
    }
    if (t.kind != TokKind::Number) fail(t, "expected a number, found '" + shown(t) + "'");
    if (lex_.peek().kind == TokKind::Punct && lex_.peek().text == ".")
      fail(lex_.peek(), "decimal literals are not supported; write rationals as a/b");
    BigInt num(t.text);
    BigInt den(1);
    if (lex_.peek().kind == TokKind::Punct && lex_.peek().text == "/") {
      lex_.next();
      Token d = lex_.next();
      if (d.kind != TokKind::Number)
        fail(d, "expected a denominator, found '" + shown(d) + "'");
      den = BigInt(d.text);
      if (den == 0) fail(d, "zero denominator");
    }
    Rational r(num, den);
    return neg ? Rational(-r) : r;
  }

  QMatrix parse_matrix() {
    Token open = expect_punct("[");
    std::vector<QVec> rows;
    while (true) {
      expect_punct("[");
      QVec row;
      while (true) {
        row.push_back(parse_scalar());
        Token t = lex_.next();
        if (t.kind == TokKind::Punct && t.text == ",") continue;
        if (t.kind == TokKind::Punct && t.text == "]") break;
        fail(t, "expected ',' or ']' in a matrix row, found '" + shown(t) + "'");
      }
      rows.push_back(std::move(row));
      Token t = lex_.next();
      if (t.kind == TokKind::Punct && t.text == ",") continue;
      if (t.kind == TokKind::Punct && t.text == "]") break;
      fail(t, "expected ',' or ']' after a matrix row, found '" + shown(t) + "'");
    }
    for (const auto& r : rows)
      if (r.size() != rows.front().size()) invalid(open, "ragged matrix rows");
    QMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    return m;
  }

  Value parse_value() {
    Value v;
    v.at = lex_.peek();
    const Token& t = lex_.peek();
    if (t.kind == TokKind::Ident) {
      v.ident = lex_.next().text;
    } else if (t.kind == TokKind::Punct && t.text == "[") {
      v.matrix = parse_matrix();
    } else {
      v.scalar = parse_scalar();
    }
    return v;
  }

  static std::optional<Family> family_from(const std::string& s) {
    if (s == "C" || s == "c" || s == "complex") return Family::Complex;
    if (s == "H" || s == "h" || s == "quaternion") return Family::Quaternion;
    if (s == "O" || s == "o" || s == "octonion") return Family::Octonion;
    return std::nullopt;
  }

  static std::size_t count_from(const Value& v, const std::string& key) {
    if (!v.scalar || *v.scalar < 0 ||
        boost::multiprecision::denominator(*v.scalar) != 1)
      invalid(v.at, key + " must be a non-negative integer");
    BigInt n = boost::multiprecision::numerator(*v.scalar);
    if (n > 1000000) invalid(v.at, key + " is implausibly large");
    return n.convert_to<std::size_t>();
  }

  AlgebraSpec parse_algebra() {
    Token kw = lex_.next();
    if (kw.kind != TokKind::Ident || kw.text != "algebra")
      fail(kw, "expected 'algebra', found '" + shown(kw) + "'");
    Token name = lex_.next();
    if (name.kind != TokKind::Ident)
      fail(name, "expected an algebra name, found '" + shown(name) + "'");
    expect_punct("{");

    std::map<std::string, Value> kv;
    std::vector<std::string> order;
    while (!(lex_.peek().kind == TokKind::Punct && lex_.peek().text == "}")) {
      Token key = lex_.next();
      if (key.kind != TokKind::Ident)
        fail(key, "expected a key, found '" + shown(key) + "'");
      expect_punct("=");
      Value val = parse_value();
      expect_punct(";");
      if (!kv.emplace(key.text, std::move(val)).second)
        invalid(key, "duplicate key '" + key.text + "'");
      order.push_back(key.text);
    }
    expect_punct("}");

    AlgebraSpec spec;
    spec.name = name.text;
    bool has_family = kv.count("family") > 0;
    bool has_raw = kv.count("dim_v") > 0 || kv.count("dim_z") > 0;
    for (const auto& k : order)
      if (k.size() > 1 && k[0] == 'J') has_raw = true;
    if (has_family && has_raw)
      invalid(name, "algebra '" + spec.name + "' mixes constructor and raw keys");

    if (has_family) {
      spec.body = parse_constructor(name, kv, order);
    } else if (has_raw) {
      spec.body = parse_raw(name, kv, order);
    } else {
      invalid(name, "algebra '" + spec.name +
                        "' needs either 'family' or 'dim_v'/'dim_z'/'J<k>' keys");
    }
    return spec;
  }

  ConstructorSpec parse_constructor(const Token& name, std::map<std::string, Value>& kv,
                                    const std::vector<std::string>& order) {
    ConstructorSpec cs;
    for (const auto& k : order)
      if (k != "family" && k != "p" && k != "q")
        invalid(name, "unknown key '" + k + "' in a constructor algebra");
    const Value& fam = kv.at("family");
    if (!fam.ident) invalid(fam.at, "family must be one of C, H, O");
    auto f = family_from(*fam.ident);
    if (!f) invalid(fam.at, "unknown family '" + *fam.ident + "' (expected C, H or O)");
    cs.family = *f;
    if (kv.count("p")) cs.p = count_from(kv.at("p"), "p");
    if (kv.count("q")) cs.q = count_from(kv.at("q"), "q");
    if (cs.p + cs.q == 0) invalid(name, "p + q >= 1 required");
    if (cs.p + cs.q > 256) invalid(name, "p + q exceeds the supported limit (256)");
    return cs;
  }

  RawSpec parse_raw(const Token& name, std::map<std::string, Value>& kv,
                    const std::vector<std::string>& order) {
    RawSpec rs;
    if (!kv.count("dim_v")) invalid(name, "raw algebra requires dim_v");
    if (!kv.count("dim_z")) invalid(name, "raw algebra requires dim_z");
    rs.dim_v = count_from(kv.at("dim_v"), "dim_v");
    rs.dim_z = count_from(kv.at("dim_z"), "dim_z");
    if (rs.dim_v > 1024 || rs.dim_z > 1024)
      invalid(name, "dimension exceeds the supported limit (1024)");
    rs.j_mats.assign(rs.dim_z, QMatrix(rs.dim_v, rs.dim_v));
    std::vector<bool> seen(rs.dim_z, false);
    for (const auto& k : order) {
      if (k == "dim_v" || k == "dim_z") continue;
      const Value& v = kv.at(k);
      if (k.size() < 2 || k.size() > 8 || k[0] != 'J' ||
          k.find_first_not_of("0123456789", 1) != std::string::npos)
        invalid(v.at, "unknown key '" + k + "' in a raw algebra");
      std::size_t idx = std::stoul(k.substr(1));
      if (idx < 1 || idx > rs.dim_z) {
        std::ostringstream os;
        os << "matrix index " << k << " out of range 1.." << rs.dim_z;
        invalid(v.at, os.str());
      }
      if (!v.matrix) invalid(v.at, k + " must be a matrix");
      if (v.matrix->rows() != rs.dim_v || v.matrix->cols() != rs.dim_v) {
        std::ostringstream os;
        os << k << " has shape " << v.matrix->rows() << "x" << v.matrix->cols()
           << ", expected " << rs.dim_v << "x" << rs.dim_v;
        invalid(v.at, os.str());
      }
      std::pair<std::size_t, std::size_t> bad;
      if (!v.matrix->is_skew_symmetric(&bad)) {
        std::ostringstream os;
        os << k << " is not skew-symmetric: entries (" << bad.first + 1 << ","
           << bad.second + 1 << ") and (" << bad.second + 1 << "," << bad.first + 1
           << ") do not negate";
        invalid(v.at, os.str());
      }
      rs.j_mats[idx - 1] = *v.matrix;
      seen[idx - 1] = true;
    }
    for (std::size_t a = 0; a < rs.dim_z && rs.dim_v > 0; ++a)
      if (!seen[a]) {
        std::ostringstream os;
        os << "missing matrix J" << a + 1 << " (dim_z = " << rs.dim_z << ")";
        invalid(name, os.str());
      }
    return rs;
  }

  Lexer lex_;
};

}  // namespace

std::vector<AlgebraSpec> parse_spec(const std::string& text) {
  return Parser(text).parse_file();
}

std::string export_spec_dsl(const AlgebraSpec& spec) {
  std::ostringstream os;
  os << "algebra " << spec.name << " {\n";
  const RawSpec* raw = std::get_if<RawSpec>(&spec.body);
  RawSpec expanded;
  if (!raw) {
    const auto& cs = std::get<ConstructorSpec>(spec.body);
    BuiltHType built = build_j_pq({cs.family, cs.p, cs.q});
    expanded.dim_v = built.j.dim_v;
    expanded.dim_z = built.j.dim_z;
    expanded.j_mats = built.j.mats;
    raw = &expanded;
  }
  os << "  dim_v = " << raw->dim_v << ";\n";
  os << "  dim_z = " << raw->dim_z << ";\n";
  for (std::size_t a = 0; a < raw->j_mats.size(); ++a) {
    os << "  J" << a + 1 << " = [";
    const QMatrix& m = raw->j_mats[a];
    for (std::size_t r = 0; r < m.rows(); ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < m.cols(); ++c)
        os << (c ? "," : "") << to_string(m.at(r, c));
      os << "]";
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace nilred
