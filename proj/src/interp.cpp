#include "malcev/interp.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace malcev {

GeneralTerm GeneralTerm::variable(int i) {
  if (i < 1) throw Error("variable index must be >= 1");
  GeneralTerm t;
  t.var = i;
  return t;
}

GeneralTerm GeneralTerm::apply(std::string op, std::vector<GeneralTerm> args) {
  if (op.empty()) throw Error("empty operation name");
  GeneralTerm t;
  t.op = std::move(op);
  t.args = std::move(args);
  return t;
}

int GeneralTerm::max_var() const {
  int m = var;
  for (const auto& a : args) m = std::max(m, a.max_var());
  return m;
}

namespace {

bool is_variable_token(std::string_view s) {
  return s.size() >= 2 && s[0] == 'x' &&
         std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class GeneralParser {
 public:
  GeneralParser(std::string_view text, const GeneralSignature& gs)
      : text_(text), gs_(gs) {}

  GeneralTerm parse() {
    GeneralTerm t = term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view atom() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a symbol or variable");
    return text_.substr(start, pos_ - start);
  }

  const GeneralSymbol& symbol(std::string_view name) const {
    const GeneralSymbol* s = gs_.find(name);
    if (!s) throw SignatureError("unknown symbol '" + std::string(name) + "'");
    if (s->family)
      throw SignatureError("symbol family '" + std::string(name) +
                           "' cannot occur in terms");
    return *s;
  }

  GeneralTerm term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') {
      std::string_view a = atom();
      if (is_variable_token(a)) return GeneralTerm::variable(std::stoi(std::string(a.substr(1))));
      const GeneralSymbol& s = symbol(a);
      if (s.arity != 0)
        throw SignatureError("symbol '" + s.name + "' needs " +
                             std::to_string(s.arity) + " arguments");
      return GeneralTerm::apply(s.name);
    }
    ++pos_;
    std::string name(atom());
    const GeneralSymbol& s = symbol(name);
    std::vector<GeneralTerm> args;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') break;
      args.push_back(term());
    }
    ++pos_;
    if (static_cast<int>(args.size()) != s.arity)
      throw SignatureError("symbol '" + name + "' has arity " +
                           std::to_string(s.arity) + ", got " +
                           std::to_string(args.size()) + " arguments");
    return GeneralTerm::apply(std::move(name), std::move(args));
  }

  std::string_view text_;
  const GeneralSignature& gs_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

GeneralTerm parse_general_term(std::string_view text, const GeneralSignature& gs) {
  return GeneralParser(text, gs).parse();
}

std::string print_general_term(const GeneralTerm& t) {
  if (t.is_var()) return "x" + std::to_string(t.var);
  if (t.args.empty()) return t.op;
  std::string out = "(" + t.op;
  for (const auto& a : t.args) out += " " + print_general_term(a);
  return out + ")";
}

GeneralTerm substitute(const GeneralTerm& t, const std::vector<GeneralTerm>& bindings) {
  if (t.is_var()) {
    if (t.var > static_cast<int>(bindings.size()))
      throw Error("unbound variable x" + std::to_string(t.var));
    return bindings[static_cast<std::size_t>(t.var - 1)];
  }
  GeneralTerm out = GeneralTerm::apply(t.op);
  for (const auto& a : t.args) out.args.push_back(substitute(a, bindings));
  return out;
}

GeneralPresentation parse_general_presentation(std::string_view text) {
  GeneralPresentation gp;
  std::vector<GeneralSymbol> symbols;
  bool sealed = false;
  bool have_malcev = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto seal = [&] {
    if (!sealed) gp.gsig = GeneralSignature(symbols);
    sealed = true;
  };
  auto where = [&](const std::string& what) {
    return "line " + std::to_string(line_no) + ": " + what;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream words{std::string(line)};
    std::string head;
    words >> head;
    try {
      if (head == "op" || head == "family") {
        if (sealed) throw ParseError(where("symbol declared after terms"), 0);
        GeneralSymbol s;
        if (!(words >> s.name >> s.arity))
          throw ParseError(where("expected '" + head + " <name> <arity>'"), 0);
        if (s.name.find_first_of("()=") != std::string::npos || is_variable_token(s.name))
          throw ParseError(where("invalid symbol name '" + s.name + "'"), 0);
        s.family = head == "family";
        symbols.push_back(std::move(s));
      } else if (head == "malcev") {
        seal();
        if (have_malcev) throw ParseError(where("second malcev line"), 0);
        gp.malcev_term = parse_general_term(line.substr(6), gp.gsig);
        if (gp.malcev_term.max_var() > 3)
          throw SignatureError(where("malcev term may only use x1, x2, x3"));
        have_malcev = true;
      } else {
        seal();
        int depth = 0;
        std::size_t split = std::string_view::npos;
        for (std::size_t p = 0; p < line.size(); ++p) {
          if (line[p] == '(') ++depth;
          if (line[p] == ')') --depth;
          if (line[p] == '=' && depth == 0) {
            if (split != std::string_view::npos)
              throw ParseError(where("more than one '='"), p);
            split = p;
          }
        }
        if (split == std::string_view::npos)
          throw ParseError(where("expected '<term> = <term>'"), 0);
        gp.ids.push_back({parse_general_term(line.substr(0, split), gp.gsig),
                          parse_general_term(line.substr(split + 1), gp.gsig)});
      }
    } catch (const ParseError& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) != 0) msg = where(msg);
      throw ParseError(msg, e.position());
    } catch (const SignatureError& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) != 0) msg = where(msg);
      throw SignatureError(msg);
    }
  }
  seal();
  if (!have_malcev) throw ParseError("missing 'malcev <term>' line", 0);
  return gp;
}

std::string print_general_presentation(const GeneralPresentation& gp) {
  std::string out;
  for (const auto& s : gp.gsig.symbols())
    out += (s.family ? "family " : "op ") + s.name + " " + std::to_string(s.arity) + "\n";
  out += "malcev " + print_general_term(gp.malcev_term) + "\n";
  for (const auto& id : gp.ids)
    out += print_general_term(id.lhs) + " = " + print_general_term(id.rhs) + "\n";
  return out;
}

const SymbolImage* InterpretationMap::find(std::string_view name) const {
  for (const auto& s : symbols)
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

GeneralTerm x(int i) { return GeneralTerm::variable(i); }

GeneralTerm malcev_of(const GeneralTerm& m, GeneralTerm a, GeneralTerm b, GeneralTerm c) {
  return substitute(m, {std::move(a), std::move(b), std::move(c)});
}

/// f(x1, ..., x1)
GeneralTerm diagonal(const GeneralSymbol& f) {
  return GeneralTerm::apply(f.name, std::vector<GeneralTerm>(
                                        static_cast<std::size_t>(f.arity), x(1)));
}

/// f(x2, ..., x1 at position i, ..., x2)
GeneralTerm binary_slice(const GeneralSymbol& f, int i) {
  std::vector<GeneralTerm> args(static_cast<std::size_t>(f.arity), x(2));
  args[static_cast<std::size_t>(i)] = x(1);
  return GeneralTerm::apply(f.name, std::move(args));
}

int intern(std::vector<GeneralTerm>& pool, std::map<std::string, int>& index,
           const GeneralTerm& t) {
  std::string key = print_general_term(t);
  auto it = index.find(key);
  if (it != index.end()) return it->second;
  pool.push_back(t);
  int id = static_cast<int>(pool.size());
  index.emplace(std::move(key), id);
  return id;
}

}  // namespace

Term translate_term(const InterpretationMap& im, const GeneralTerm& t) {
  if (t.is_var()) return Term::var(t.var);
  const SymbolImage* s = im.find(t.op);
  if (!s) throw Error("unknown symbol '" + t.op + "'");
  if (static_cast<int>(t.args.size()) != s->arity)
    throw SignatureError("symbol '" + t.op + "' applied to the wrong number of arguments");
  const Term t0 = Term::u(s->unary, Term::z());
  if (s->arity == 0) return t0;
  auto slice_term = [&](std::size_t i) {
    Term arg = translate_term(im, t.args[i]);
    return Term::m(Term::r(s->binary[i], std::move(arg), Term::z()), Term::z(), t0);
  };
  Term acc = slice_term(0);
  for (std::size_t i = 1; i < t.args.size(); ++i) acc = Term::m(acc, t0, slice_term(i));
  return acc;
}

Canonicalization canonicalize(const GeneralPresentation& gp) {
  if (!gp.gsig.is_finite())
    throw Error("infinite type: no equivalent finite canonical presentation");
  InterpretationMap im;
  im.malcev_term = gp.malcev_term;
  std::map<std::string, int> unary_index;
  std::map<std::string, int> binary_index;
  std::vector<GeneralTerm> idempotent_parts;

  for (const auto& f : gp.gsig.symbols()) {
    SymbolImage img{f.name, f.arity, 0, {}};
    img.unary = intern(im.unary_terms, unary_index, diagonal(f));
    im.symbols.push_back(std::move(img));
  }
  // The partner r_j = m(u_j(x), u_j(z), z) of every unary symbol comes first.
  for (const auto& u : im.unary_terms)
    intern(im.binary_terms, binary_index,
           malcev_of(gp.malcev_term, substitute(u, {x(1)}), substitute(u, {x(2)}), x(2)));
  for (std::size_t k = 0; k < im.symbols.size(); ++k) {
    const GeneralSymbol& f = gp.gsig.symbols()[k];
    for (int i = 0; i < f.arity; ++i) {
      GeneralTerm part = malcev_of(gp.malcev_term, binary_slice(f, i),
                                   substitute(diagonal(f), {x(2)}), x(2));
      im.symbols[k].binary.push_back(intern(im.binary_terms, binary_index, part));
    }
  }
  im.sig = Signature::make(static_cast<int>(im.unary_terms.size()),
                           static_cast<int>(im.binary_terms.size()));

  VarietyPresentation vp{im.sig, {}};
  for (const auto& id : gp.ids)
    vp.ids.push_back({translate_term(im, id.lhs), translate_term(im, id.rhs)});
  const GeneralTerm& m = gp.malcev_term;
  vp.ids.push_back({translate_term(im, malcev_of(m, x(1), x(1), x(2))), Term::var(2)});
  vp.ids.push_back({translate_term(im, malcev_of(m, x(2), x(1), x(1))), Term::var(2)});
  for (std::size_t j = 0; j < im.unary_terms.size(); ++j)
    vp.ids.push_back({Term::u(static_cast<int>(j + 1), Term::var(1)),
                      translate_term(im, im.unary_terms[j])});
  for (std::size_t j = 0; j < im.binary_terms.size(); ++j)
    vp.ids.push_back({Term::r(static_cast<int>(j + 1), Term::var(1), Term::var(2)),
                      translate_term(im, im.binary_terms[j])});
  vp.ids.push_back({Term::m(Term::var(1), Term::var(2), Term::var(3)),
                    translate_term(im, m)});
  return {std::move(im), std::move(vp)};
}

TableModel cyclic_group_model(int q, const std::string& plus,
                              const std::string& minus, const std::string& zero) {
  TableModel a;
  a.size = q;
  auto& add = a.ops[plus];
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) add.push_back((i + j) % q);
  auto& neg = a.ops[minus];
  for (int i = 0; i < q; ++i) neg.push_back((q - i) % q);
  a.ops[zero] = {0};
  return a;
}

int eval_general(const TableModel& a, const GeneralSignature& gs,
                 const GeneralTerm& t, const std::vector<int>& env) {
  if (t.is_var()) {
    if (t.var >= static_cast<int>(env.size()))
      throw Error("unassigned variable x" + std::to_string(t.var));
    return env[static_cast<std::size_t>(t.var)];
  }
  const GeneralSymbol* s = gs.find(t.op);
  auto it = a.ops.find(t.op);
  if (!s || it == a.ops.end()) throw Error("table model lacks symbol '" + t.op + "'");
  std::size_t pos = 0;
  for (const auto& arg : t.args)
    pos = pos * static_cast<std::size_t>(a.size) +
          static_cast<std::size_t>(eval_general(a, gs, arg, env));
  if (pos >= it->second.size())
    throw Error("table for '" + t.op + "' is too short");
  return it->second[pos];
}

namespace {

constexpr double kExhaustiveLimit = 1e6;
constexpr int kSamples = 4096;

/// Calls f on env vectors indexed 0..k (0 used for z), over every assignment
/// or a deterministic sample. Stops at the first false.
template <class F>
bool for_assignments(int size, int k, F&& f) {
  std::vector<int> env(static_cast<std::size_t>(k + 1), 0);
  double total = 1;
  for (int i = 0; i <= k; ++i) total *= size;
  if (total <= kExhaustiveLimit) {
    while (true) {
      if (!f(env)) return false;
      std::size_t p = 0;
      while (p < env.size() && ++env[p] == size) env[p++] = 0;
      if (p == env.size()) return true;
    }
  }
  std::mt19937_64 rng(0);
  for (int s = 0; s < kSamples; ++s) {
    for (auto& v : env) v = static_cast<int>(rng() % static_cast<std::uint64_t>(size));
    if (!f(env)) return false;
  }
  return true;
}

std::string show_env(const std::vector<int>& env) {
  std::string out = "z=" + std::to_string(env[0]);
  for (std::size_t i = 1; i < env.size(); ++i)
    out += " x" + std::to_string(i) + "=" + std::to_string(env[i]);
  return out;
}

int eval_canonical(const InterpretationMap& im, const GeneralPresentation& gp,
                   const TableModel& a, const Term& t, const std::vector<int>& env) {
  auto ev = [&](const GeneralTerm& g, std::vector<int> args) {
    args.insert(args.begin(), 0);
    return eval_general(a, gp.gsig, g, args);
  };
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.index() >= static_cast<int>(env.size()))
        throw Error("unassigned variable x" + std::to_string(t.index()));
      return env[static_cast<std::size_t>(t.index())];
    case Term::Kind::Z:
      return env[0];
    case Term::Kind::U:
      return ev(im.unary_terms[static_cast<std::size_t>(t.index() - 1)],
                {eval_canonical(im, gp, a, t.arg(0), env)});
    case Term::Kind::R:
      return ev(im.binary_terms[static_cast<std::size_t>(t.index() - 1)],
                {eval_canonical(im, gp, a, t.arg(0), env),
                 eval_canonical(im, gp, a, t.arg(1), env)});
    case Term::Kind::M:
      return ev(im.malcev_term, {eval_canonical(im, gp, a, t.arg(0), env),
                                 eval_canonical(im, gp, a, t.arg(1), env),
                                 eval_canonical(im, gp, a, t.arg(2), env)});
  }
  return 0;
}

int max_var(const Identity& id) { return id.max_var(); }

}  // namespace

bool EquivalenceReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const EquivalenceCheck& c) { return c.passed; });
}

EquivalenceReport verify_equivalence(const InterpretationMap& im,
                                     const GeneralPresentation& gp,
                                     const VarietyPresentation& vp,
                                     const SearchParams& params,
                                     const std::vector<TableModel>& tables) {
  EquivalenceReport report;

  std::vector<Identity> translated;
  for (const auto& id : gp.ids)
    translated.push_back({translate_term(im, id.lhs), translate_term(im, id.rhs)});
  {
    EquivalenceCheck check{"translated identities in affine models of the canonical basis",
                           true, ""};
    ModelStream stream(vp.sig, params);
    while (auto model = stream.next()) {
      bool is_model = std::all_of(vp.ids.begin(), vp.ids.end(), [&](const Identity& id) {
        return holds_exactly(*model, id);
      });
      if (!is_model) continue;
      ++report.affine_models;
      for (const auto& id : translated)
        if (!holds_exactly(*model, id)) {
          check.passed = false;
          check.detail = "fails " + print_identity(id);
        }
    }
    if (check.passed)
      check.detail = std::to_string(report.affine_models) + " models among " +
                     std::to_string(stream.produced()) + " candidates";
    report.checks.push_back(std::move(check));
  }

  for (std::size_t mi = 0; mi < tables.size(); ++mi) {
    const TableModel& a = tables[mi];
    const std::string tag = "table model " + std::to_string(mi + 1) + ": ";
    const GeneralTerm& m = gp.malcev_term;
    auto mv = [&](int p, int q, int r) { return eval_general(a, gp.gsig, m, {0, p, q, r}); };

    auto run = [&](std::string name, int k, auto&& pred) {
      EquivalenceCheck check{tag + name, true, ""};
      for_assignments(a.size, k, [&](const std::vector<int>& env) {
        if (pred(env)) return true;
        check.passed = false;
        check.detail = "counterexample " + show_env(env);
        return false;
      });
      report.checks.push_back(std::move(check));
    };

    run("Mal'cev laws", 2, [&](const std::vector<int>& e) {
      return mv(e[1], e[1], e[2]) == e[2] && mv(e[2], e[1], e[1]) == e[2];
    });
    for (const auto& f : gp.gsig.symbols()) {
      if (f.arity == 0) continue;
      const int k = f.arity;
      run("m commutes with " + f.name, 3 * k, [&](const std::vector<int>& e) {
        std::vector<int> env{0};
        for (int i = 0; i < k; ++i) {
          env.push_back(mv(e[static_cast<std::size_t>(3 * i + 1)],
                           e[static_cast<std::size_t>(3 * i + 2)],
                           e[static_cast<std::size_t>(3 * i + 3)]));
        }
        std::vector<GeneralTerm> vars;
        for (int i = 1; i <= k; ++i) vars.push_back(x(i));
        GeneralTerm fx = GeneralTerm::apply(f.name, vars);
        int lhs = eval_general(a, gp.gsig, fx, env);
        int vals[3];
        for (int c = 0; c < 3; ++c) {
          std::vector<int> col{0};
          for (int i = 0; i < k; ++i) col.push_back(e[static_cast<std::size_t>(3 * i + 1 + c)]);
          vals[c] = eval_general(a, gp.gsig, fx, col);
        }
        return lhs == mv(vals[0], vals[1], vals[2]);
      });
    }
    for (const auto& id : gp.ids)
      run("identity " + print_general_term(id.lhs) + " = " + print_general_term(id.rhs),
          std::max(id.lhs.max_var(), id.rhs.max_var()), [&](const std::vector<int>& e) {
            return eval_general(a, gp.gsig, id.lhs, e) == eval_general(a, gp.gsig, id.rhs, e);
          });
    std::vector<Identity> canonical = ambient_axioms(vp.sig);
    canonical.insert(canonical.end(), vp.ids.begin(), vp.ids.end());
    {
      EquivalenceCheck check{tag + "canonical axioms and basis hold in A^E", true, ""};
      for (const auto& id : canonical) {
        bool ok = for_assignments(a.size, max_var(id), [&](const std::vector<int>& e) {
          return eval_canonical(im, gp, a, id.lhs, e) == eval_canonical(im, gp, a, id.rhs, e);
        });
        if (!ok) {
          check.passed = false;
          check.detail = "fails " + print_identity(id);
          break;
        }
      }
      if (check.passed) check.detail = std::to_string(canonical.size()) + " identities";
      report.checks.push_back(std::move(check));
    }
    for (const auto& f : gp.gsig.symbols()) {
      std::vector<GeneralTerm> vars;
      for (int i = 1; i <= f.arity; ++i) vars.push_back(x(i));
      GeneralTerm fx = GeneralTerm::apply(f.name, vars);
      Term d = translate_term(im, fx);
      run("A^ED = A on " + f.name, f.arity, [&](const std::vector<int>& e) {
        return eval_canonical(im, gp, a, d, e) == eval_general(a, gp.gsig, fx, e);
      });
    }
  }
  return report;
}

}  // namespace malcev
