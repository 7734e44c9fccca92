#include "malcev/sigterm.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

namespace malcev {

Signature Signature::make(int ell, int n) {
  if (ell < 0 || n < 0)
    throw SignatureError("signature counts must be non-negative");
  if (ell > n)
    throw SignatureError("signature requires l <= n (got l=" +
                         std::to_string(ell) + ", n=" + std::to_string(n) +
                         ")");
  return Signature{ell, n};
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term::Term(Kind kind, int index, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->index = index;
  node->max_var = kind == Kind::Var ? index : 0;
  node->depth = 1;
  node->size = 1;
  node->max_unary = kind == Kind::U ? index : 0;
  node->max_binary = kind == Kind::R ? index : 0;
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1,
                      static_cast<std::size_t>(index));
  for (const Term& a : args) {
    node->max_var = std::max(node->max_var, a.max_var());
    node->depth = std::max(node->depth, a.depth() + 1);
    node->size += a.size();
    node->max_unary = std::max(node->max_unary, a.max_unary());
    node->max_binary = std::max(node->max_binary, a.max_binary());
    h = mix(h, a.hash());
  }
  node->hash = h;
  node->args = std::move(args);
  node_ = std::move(node);
}

Term Term::var(int index) {
  if (index < 1) throw Error("variable index must be >= 1");
  return Term(Kind::Var, index, {});
}

Term Term::z() {
  static const Term zero(Kind::Z, 0, {});
  return zero;
}

Term Term::u(int symbol, Term arg) {
  if (symbol < 1) throw SignatureError("unary symbol index must be >= 1");
  return Term(Kind::U, symbol, {std::move(arg)});
}

Term Term::r(int symbol, Term first, Term second) {
  if (symbol < 1) throw SignatureError("binary symbol index must be >= 1");
  return Term(Kind::R, symbol, {std::move(first), std::move(second)});
}

Term Term::m(Term a, Term b, Term c) {
  return Term(Kind::M, 0, {std::move(a), std::move(b), std::move(c)});
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.index() != b.index() ||
      a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.arg(i) == b.arg(i))) return false;
  return true;
}

int Identity::max_var() const { return std::max(lhs.max_var(), rhs.max_var()); }

GeneralSignature::GeneralSignature(std::vector<GeneralSymbol> symbols)
    : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw SignatureError("empty symbol name");
    if (s.arity < 0)
      throw SignatureError("negative arity for symbol '" + s.name + "'");
    if (!seen.insert(s.name).second)
      throw SignatureError("duplicate symbol '" + s.name + "'");
  }
}

const GeneralSymbol* GeneralSignature::find(std::string_view name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return &s;
  return nullptr;
}

bool GeneralSignature::is_finite() const {
  return std::none_of(symbols_.begin(), symbols_.end(),
                      [](const GeneralSymbol& s) { return s.family; });
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig)
      : text_(text), sig_(sig) {}

  Term parse_all() {
    Term t = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

  Term parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of term");
    char c = text_[pos_];
    if (c == 'z') {
      ++pos_;
      expect_boundary();
      return Term::z();
    }
    if (c == 'x') {
      ++pos_;
      int i = parse_int();
      if (i < 1) fail("variable index must be >= 1");
      expect_boundary();
      return Term::var(i);
    }
    if (c != '(') fail("expected term");
    ++pos_;
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of term");
    char op = text_[pos_++];
    expect_boundary();
    Term result = Term::z();
    if (op == 'u') {
      std::size_t at = pos_;
      int i = parse_int();
      if (i < 1 || i > sig_.ell)
        throw SignatureError("unary symbol u" + std::to_string(i) +
                             " out of signature bounds (l=" +
                             std::to_string(sig_.ell) + ") at offset " +
                             std::to_string(at));
      Term a = parse();
      result = Term::u(i, std::move(a));
    } else if (op == 'r') {
      std::size_t at = pos_;
      int i = parse_int();
      if (i < 1 || i > sig_.n)
        throw SignatureError("binary symbol r" + std::to_string(i) +
                             " out of signature bounds (n=" +
                             std::to_string(sig_.n) + ") at offset " +
                             std::to_string(at));
      Term a = parse();
      Term b = parse();
      result = Term::r(i, std::move(a), std::move(b));
    } else if (op == 'm') {
      Term a = parse();
      Term b = parse();
      Term c3 = parse();
      result = Term::m(std::move(a), std::move(b), std::move(c3));
    } else {
      --pos_;
      fail(std::string("unknown operation '") + op + "'");
    }
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  void expect_boundary() {
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c != ' ' && c != '\t' && c != ')' && c != '(' && c != '\n' &&
          c != '\r')
        fail("unexpected character");
    }
  }

  int parse_int() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    int value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    expect_boundary();
    return value;
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Z:
      out += 'z';
      return;
    case Term::Kind::Var:
      out += 'x';
      out += std::to_string(t.index());
      return;
    case Term::Kind::U:
      out += "(u ";
      out += std::to_string(t.index());
      out += ' ';
      print_into(t.arg(0), out);
      out += ')';
      return;
    case Term::Kind::R:
      out += "(r ";
      out += std::to_string(t.index());
      out += ' ';
      print_into(t.arg(0), out);
      out += ' ';
      print_into(t.arg(1), out);
      out += ')';
      return;
    case Term::Kind::M:
      out += "(m ";
      print_into(t.arg(0), out);
      out += ' ';
      print_into(t.arg(1), out);
      out += ' ';
      print_into(t.arg(2), out);
      out += ')';
      return;
  }
}

Term rebuild(const Term& t, const std::function<Term(const Term&)>& leaf) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Z:
      return leaf(t);
    case Term::Kind::U:
      return Term::u(t.index(), rebuild(t.arg(0), leaf));
    case Term::Kind::R:
      return Term::r(t.index(), rebuild(t.arg(0), leaf),
                     rebuild(t.arg(1), leaf));
    case Term::Kind::M:
      return Term::m(rebuild(t.arg(0), leaf), rebuild(t.arg(1), leaf),
                     rebuild(t.arg(2), leaf));
  }
  return t;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) {
  return TermParser(text, sig).parse_all();
}

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

Term substitute(const Term& t, const std::map<int, Term>& bindings,
                const Term& z_image) {
  return rebuild(t, [&](const Term& leaf) {
    if (leaf.kind() == Term::Kind::Z) return z_image;
    auto it = bindings.find(leaf.index());
    if (it == bindings.end())
      throw Error("unbound variable x" + std::to_string(leaf.index()));
    return it->second;
  });
}

Term slice(const Term& t, int i, int k) {
  if (i < 0) throw Error("slice index must be >= 0");
  if (k < t.max_var())
    throw Error("slice arity " + std::to_string(k) +
                " smaller than the term's variable support");
  if (i > k)
    throw Error("slice index " + std::to_string(i) + " exceeds arity " +
                std::to_string(k));
  const Term x1 = Term::var(1);
  return rebuild(t, [&](const Term& leaf) {
    if (leaf.kind() == Term::Kind::Var && leaf.index() == i) return x1;
    return Term::z();
  });
}

Identity parse_identity(std::string_view line, const Signature& sig) {
  // The separator is the '=' at parenthesis depth zero.
  int depth = 0;
  std::size_t split = std::string_view::npos;
  for (std::size_t p = 0; p < line.size(); ++p) {
    char c = line[p];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '=' && depth == 0) {
      if (split != std::string_view::npos)
        throw ParseError("more than one '=' in identity", p);
      split = p;
    }
  }
  if (split == std::string_view::npos)
    throw ParseError("identity is missing '='", line.size());
  std::string_view left = line.substr(0, split);
  std::string_view right = line.substr(split + 1);
  Term lhs = Term::z();
  Term rhs = Term::z();
  try {
    lhs = parse_term(trim(left), sig);
  } catch (const ParseError& e) {
    throw ParseError(std::string("left side: ") + e.what(), e.position());
  }
  try {
    rhs = parse_term(trim(right), sig);
  } catch (const ParseError& e) {
    throw ParseError(std::string("right side: ") + e.what(),
                     split + 1 + e.position());
  }
  return {std::move(lhs), std::move(rhs)};
}

std::string print_identity(const Identity& id) {
  return print_term(id.lhs) + " = " + print_term(id.rhs);
}

IdentityFile parse_identity_file(std::string_view text) {
  IdentityFile file;
  bool have_header = false;
  std::size_t line_start = 0;
  int line_no = 0;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(line_start, end - line_start));
    ++line_no;
    std::size_t offset = line_start;
    line_start = end + 1;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!have_header) {
      if (line.substr(0, 4) != "sig ")
        throw ParseError("line " + std::to_string(line_no) +
                             ": expected header 'sig l=<int> n=<int>'",
                         offset);
      int ell = -1;
      int n = -1;
      std::istringstream in{std::string(line.substr(4))};
      std::string field;
      while (in >> field) {
        if (field.rfind("l=", 0) == 0) {
          ell = std::stoi(field.substr(2));
        } else if (field.rfind("n=", 0) == 0) {
          n = std::stoi(field.substr(2));
        } else {
          throw ParseError("line " + std::to_string(line_no) +
                               ": unknown header field '" + field + "'",
                           offset);
        }
      }
      if (ell < 0 || n < 0)
        throw ParseError("line " + std::to_string(line_no) +
                             ": header needs both l= and n=",
                         offset);
      file.sig = Signature::make(ell, n);
      have_header = true;
    } else if (line.substr(0, 4) == "sig ") {
      throw SignatureError("line " + std::to_string(line_no) +
                           ": second signature header");
    } else {
      try {
        file.ids.push_back(parse_identity(line, file.sig));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                         offset + e.position());
      } catch (const SignatureError& e) {
        throw SignatureError("line " + std::to_string(line_no) + ": " +
                             e.what());
      }
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError("missing signature header", 0);
  return file;
}

std::string print_identity_file(const IdentityFile& file) {
  std::string out = "sig l=" + std::to_string(file.sig.ell) +
                    " n=" + std::to_string(file.sig.n) + "\n";
  for (const auto& id : file.ids) {
    out += print_identity(id);
    out += '\n';
  }
  return out;
}

}  // namespace malcev
