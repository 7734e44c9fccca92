#include "malcev/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace malcev {

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += 'r';
    out += std::to_string(w[i]);
    if (j - i > 1) {
      out += '^';
      out += std::to_string(j - i);
    }
    i = j;
  }
  return out;
}

NCPoly NCPoly::constant(const mpz_class& c) { return monomial({}, c); }

NCPoly NCPoly::generator(int i) {
  if (i < 1) throw SignatureError("generator index must be >= 1");
  return monomial({i});
}

NCPoly NCPoly::monomial(Word w, const mpz_class& c) {
  NCPoly p;
  if (c != 0) p.terms_.emplace(std::move(w), c);
  return p;
}

int NCPoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

int NCPoly::low_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.size());
}

bool NCPoly::is_homogeneous() const { return degree() == low_degree(); }

int NCPoly::max_generator() const {
  int g = 0;
  for (const auto& [w, c] : terms_)
    for (int s : w) g = std::max(g, s);
  return g;
}

mpz_class NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void NCPoly::add_term(const Word& w, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NCPoly operator-(const NCPoly& a) {
  NCPoly r = a;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  Word w;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      w.assign(wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  }
  return r;
}

NCPoly operator*(const mpz_class& c, const NCPoly& p) {
  if (c == 0) return {};
  NCPoly r = p;
  for (auto& [w, coeff] : r.terms_) coeff *= c;
  return r;
}

NCPoly poly_add(const NCPoly& p, const NCPoly& q) { return p + q; }
NCPoly poly_neg(const NCPoly& p) { return -p; }
NCPoly poly_mul(const NCPoly& p, const NCPoly& q) { return p * q; }

NCPoly homogeneous_component(const NCPoly& p, int d) {
  if (d < 0) throw Error("degree must be >= 0");
  NCPoly r;
  for (const auto& [w, c] : p.terms())
    if (static_cast<int>(w.size()) == d) r.add_term(w, c);
  return r;
}

ModuleVec ModuleVec::generator(int ell, int i) {
  if (i < 1 || i > ell)
    throw SignatureError("module generator u" + std::to_string(i) +
                         " out of bounds (l=" + std::to_string(ell) + ")");
  ModuleVec v(ell);
  v.slots_[static_cast<std::size_t>(i - 1)] = NCPoly::one();
  return v;
}

bool ModuleVec::is_zero() const {
  return std::all_of(slots_.begin(), slots_.end(),
                     [](const NCPoly& p) { return p.is_zero(); });
}

int ModuleVec::degree() const {
  int d = -1;
  for (const auto& p : slots_) d = std::max(d, p.degree());
  return d;
}

bool ModuleVec::is_homogeneous() const {
  int d = degree();
  return std::all_of(slots_.begin(), slots_.end(), [d](const NCPoly& p) {
    return p.is_zero() || (p.is_homogeneous() && p.degree() == d);
  });
}

int ModuleVec::max_generator() const {
  int g = 0;
  for (const auto& p : slots_) g = std::max(g, p.max_generator());
  return g;
}

void ModuleVec::check_same(const ModuleVec& other) const {
  if (slots_.size() != other.slots_.size())
    throw SignatureError("module dimension mismatch (" +
                         std::to_string(slots_.size()) + " vs " +
                         std::to_string(other.slots_.size()) + ")");
}

ModuleVec& ModuleVec::operator+=(const ModuleVec& other) {
  check_same(other);
  for (std::size_t k = 0; k < slots_.size(); ++k) slots_[k] += other.slots_[k];
  return *this;
}

ModuleVec& ModuleVec::operator-=(const ModuleVec& other) {
  check_same(other);
  for (std::size_t k = 0; k < slots_.size(); ++k) slots_[k] -= other.slots_[k];
  return *this;
}

ModuleVec operator-(const ModuleVec& v) {
  ModuleVec r = v;
  for (auto& p : r.slots_) p = -p;
  return r;
}

ModuleVec operator*(const NCPoly& p, const ModuleVec& v) {
  ModuleVec r(v.ell());
  for (std::size_t k = 0; k < v.slots_.size(); ++k)
    r.slots_[k] = p * v.slots_[k];
  return r;
}

ModuleVec mod_add(const ModuleVec& v, const ModuleVec& w) { return v + w; }
ModuleVec mod_scale(const NCPoly& p, const ModuleVec& v) { return p * v; }

namespace {

struct PolyTerm {
  mpz_class coeff;
  Word word;
  int module_gen = 0;
};

class PolyParser {
 public:
  PolyParser(std::string_view text, bool module) : text_(text), module_(module) {}

  std::vector<PolyTerm> parse() {
    std::vector<PolyTerm> out;
    skip();
    if (pos_ < text_.size() && text_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == text_.size()) return out;
      pos_ = save;
    }
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      out.push_back(parse_term(sign));
      skip();
      if (pos_ == text_.size()) break;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  long parse_int() {
    skip();
    const char* begin = text_.data() + pos_;
    long v = 0;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc() || ptr == begin) fail("expected integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  mpz_class parse_big() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  PolyTerm parse_term(int sign) {
    PolyTerm t;
    t.coeff = sign;
    skip();
    bool have_factor = false;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      t.coeff *= parse_big();
      have_factor = true;
      skip();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        have_factor = false;
      } else {
        return t;
      }
    }
    while (true) {
      skip();
      if (pos_ >= text_.size()) {
        if (!have_factor) fail("expected factor");
        break;
      }
      char c = text_[pos_];
      if (c == 'r') {
        if (t.module_gen != 0) fail("ring factor after module generator");
        ++pos_;
        long i = parse_int();
        if (i < 1) fail("generator index must be >= 1");
        long power = 1;
        skip();
        if (pos_ < text_.size() && text_[pos_] == '^') {
          ++pos_;
          power = parse_int();
          if (power < 0) fail("negative exponent");
        }
        for (long k = 0; k < power; ++k) t.word.push_back(static_cast<int>(i));
      } else if (c == 'u') {
        if (!module_) fail("module generator in ring polynomial");
        if (t.module_gen != 0) fail("two module generators in one monomial");
        ++pos_;
        long i = parse_int();
        if (i < 1) fail("generator index must be >= 1");
        t.module_gen = static_cast<int>(i);
      } else {
        if (!have_factor) fail("expected factor");
        break;
      }
      have_factor = true;
      skip();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        have_factor = false;
        continue;
      }
      break;
    }
    if (module_ && t.module_gen == 0) fail("module monomial needs a generator u<i>");
    return t;
  }

  std::string_view text_;
  bool module_;
  std::size_t pos_ = 0;
};

std::string signed_terms(const std::vector<std::pair<std::string, mpz_class>>& parts) {
  if (parts.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : parts) {
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace

NCPoly parse_poly(std::string_view text) {
  NCPoly p;
  for (auto& t : PolyParser(text, false).parse()) p.add_term(t.word, t.coeff);
  return p;
}

ModuleVec parse_module_vec(std::string_view text, int ell) {
  ModuleVec v(ell);
  for (auto& t : PolyParser(text, true).parse()) {
    if (t.module_gen > ell)
      throw SignatureError("module generator u" + std::to_string(t.module_gen) +
                           " out of bounds (l=" + std::to_string(ell) + ")");
    v[static_cast<std::size_t>(t.module_gen - 1)].add_term(t.word, t.coeff);
  }
  return v;
}

std::string print_poly(const NCPoly& p) {
  std::vector<std::pair<std::string, mpz_class>> parts;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    parts.emplace_back(it->first.empty() ? "" : word_to_string(it->first),
                       it->second);
  return signed_terms(parts);
}

std::string print_module_vec(const ModuleVec& v) {
  std::vector<std::pair<std::string, mpz_class>> parts;
  for (std::size_t k = 0; k < v.slots().size(); ++k) {
    std::string gen = "u" + std::to_string(k + 1);
    const auto& terms = v[k].terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
      parts.emplace_back(
          it->first.empty() ? gen : word_to_string(it->first) + "*" + gen,
          it->second);
  }
  return signed_terms(parts);
}

}  // namespace malcev
