#include "malcev/membership.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace malcev {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "Yes";
    case Verdict::NoHomogeneous:
      return "NoHomogeneous";
    case Verdict::NotAtBound:
      return "NotAtBound";
  }
  return "?";
}

namespace {

/// A monomial of the free module (slot >= 1) or of the ring (slot 0).
struct Key {
  int slot;
  Word word;
};

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    if (a.word != b.word) return a.word < b.word;
    return a.slot < b.slot;
  }
};

using SparseVec = std::map<Key, mpz_class, KeyLess>;
using Combo = std::map<std::size_t, mpz_class>;

template <class K, class Cmp>
void add_scaled(std::map<K, mpz_class, Cmp>& acc,
                const std::map<K, mpz_class, Cmp>& v, const mpz_class& c) {
  if (c == 0) return;
  for (const auto& [k, x] : v) {
    auto [it, inserted] = acc.try_emplace(k, c * x);
    if (!inserted) {
      it->second += c * x;
      if (it->second == 0) acc.erase(it);
    }
  }
}

void add_poly(SparseVec& acc, const NCPoly& p, int slot) {
  for (const auto& [w, c] : p.terms()) {
    auto [it, inserted] = acc.try_emplace(Key{slot, w}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) acc.erase(it);
    }
  }
}

struct Row {
  SparseVec vec;
  Combo combo;
};

/// Echelon basis of an integer lattice of sparse vectors. Pivots are the
/// deg-lex-largest keys and are pairwise distinct, so greedy reduction of a
/// vector decides lattice membership exactly.
class LatticeEchelon {
 public:
  void insert(Row row) {
    while (!row.vec.empty()) {
      const Key lead = row.vec.rbegin()->first;
      auto it = basis_.find(lead);
      if (it == basis_.end()) {
        if (row.vec.rbegin()->second < 0) negate(row);
        basis_.emplace(lead, std::move(row));
        return;
      }
      Row& pivot = it->second;
      const mpz_class a = pivot.vec.rbegin()->second;
      const mpz_class b = row.vec.rbegin()->second;
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        mpz_class q = b / a;
        axpy(row, pivot, -q);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      if (g < 0) {
        g = -g;
        s = -s;
        t = -t;
      }
      // Unimodular step [[s, t], [-b/g, a/g]] on (pivot, row).
      Row new_pivot;
      axpy(new_pivot, pivot, s);
      axpy(new_pivot, row, t);
      Row rest;
      axpy(rest, row, a / g);
      axpy(rest, pivot, -(b / g));
      pivot = std::move(new_pivot);
      row = std::move(rest);
    }
  }

  std::optional<Combo> solve(SparseVec target) const {
    Combo combo;
    while (!target.empty()) {
      const auto& [lead, c] = *target.rbegin();
      auto it = basis_.find(lead);
      if (it == basis_.end()) return std::nullopt;
      const mpz_class a = it->second.vec.rbegin()->second;
      if (!mpz_divisible_p(c.get_mpz_t(), a.get_mpz_t())) return std::nullopt;
      mpz_class q = c / a;
      add_scaled(target, it->second.vec, mpz_class(-q));
      add_scaled(combo, it->second.combo, q);
    }
    return combo;
  }

 private:
  static void negate(Row& row) {
    for (auto& [k, c] : row.vec) c = -c;
    for (auto& [k, c] : row.combo) c = -c;
  }
  static void axpy(Row& acc, const Row& x, const mpz_class& c) {
    add_scaled(acc.vec, x.vec, c);
    add_scaled(acc.combo, x.combo, c);
  }

  std::map<Key, Row, KeyLess> basis_;
};

struct Product {
  CertificateEntry entry;
  SparseVec vec;
};

/// Generates every cofactor product, within the level bound, that shares a
/// monomial with the target or (transitively) with another generated product.
class ProductClosure {
 public:
  ProductClosure(std::span<const ModuleVec> mod_gens,
                 std::span<const NCPoly> ideal_gens, int level,
                 std::size_t max_products)
      : mod_gens_(mod_gens),
        ideal_gens_(ideal_gens),
        level_(level),
        max_products_(max_products) {}

  /// Returns false if the product limit was exceeded.
  bool build(const SparseVec& target) {
    for (const auto& [k, c] : target) visit(k);
    while (!queue_.empty()) {
      Key key = std::move(queue_.front());
      queue_.pop_front();
      expand(key);
      if (products_.size() > max_products_) return false;
    }
    return true;
  }

  const std::vector<Product>& products() const { return products_; }

 private:
  void visit(const Key& k) {
    if (visited_.insert(k).second) queue_.push_back(k);
  }

  void add(CertificateEntry entry, SparseVec vec) {
    auto id = std::make_tuple(static_cast<int>(entry.kind), entry.generator,
                              entry.left, entry.right, entry.slot);
    if (!seen_.insert(std::move(id)).second) return;
    for (const auto& [k, c] : vec) visit(k);
    products_.push_back(Product{std::move(entry), std::move(vec)});
  }

  void expand(const Key& key) {
    const Word& w = key.word;
    for (std::size_t gi = 0; gi < ideal_gens_.size(); ++gi) {
      const NCPoly& g = ideal_gens_[gi];
      const int dg = g.degree();
      for (const auto& [m, c] : g.terms()) {
        if (m.size() > w.size()) continue;
        const std::size_t extra = w.size() - m.size();
        if (static_cast<int>(extra) + dg > level_) continue;
        for (std::size_t p = 0; p + m.size() <= w.size(); ++p) {
          if (!std::equal(m.begin(), m.end(), w.begin() + static_cast<long>(p)))
            continue;
          Word left(w.begin(), w.begin() + static_cast<long>(p));
          Word right(w.begin() + static_cast<long>(p + m.size()), w.end());
          NCPoly prod =
              NCPoly::monomial(left) * g * NCPoly::monomial(right);
          SparseVec vec;
          add_poly(vec, prod, key.slot);
          CertificateEntry e;
          e.kind = CertificateEntry::Kind::Ideal;
          e.left = std::move(left);
          e.generator = static_cast<int>(gi);
          e.right = std::move(right);
          e.slot = key.slot;
          e.multiplier = 1;
          add(std::move(e), std::move(vec));
        }
      }
    }
    if (key.slot == 0) return;
    const std::size_t s = static_cast<std::size_t>(key.slot - 1);
    for (std::size_t j = 0; j < mod_gens_.size(); ++j) {
      const ModuleVec& v = mod_gens_[j];
      const int dv = v.degree();
      for (const auto& [m, c] : v[s].terms()) {
        if (m.size() > w.size()) continue;
        const std::size_t extra = w.size() - m.size();
        if (static_cast<int>(extra) + dv > level_) continue;
        if (!std::equal(m.begin(), m.end(),
                        w.begin() + static_cast<long>(extra)))
          continue;
        Word left(w.begin(), w.begin() + static_cast<long>(extra));
        ModuleVec prod = NCPoly::monomial(left) * v;
        SparseVec vec;
        for (std::size_t k = 0; k < prod.slots().size(); ++k)
          add_poly(vec, prod[k], static_cast<int>(k + 1));
        CertificateEntry e;
        e.kind = CertificateEntry::Kind::Module;
        e.left = std::move(left);
        e.generator = static_cast<int>(j);
        e.multiplier = 1;
        add(std::move(e), std::move(vec));
      }
    }
  }

  std::span<const ModuleVec> mod_gens_;
  std::span<const NCPoly> ideal_gens_;
  int level_;
  std::size_t max_products_;
  std::set<Key, KeyLess> visited_;
  std::deque<Key> queue_;
  std::set<std::tuple<int, int, Word, Word, int>> seen_;
  std::vector<Product> products_;
};

struct LevelOutcome {
  bool solved = false;
  bool aborted = false;
  std::vector<CertificateEntry> certificate;
  std::size_t products = 0;
};

LevelOutcome solve_level(const SparseVec& target,
                         std::span<const ModuleVec> mod_gens,
                         std::span<const NCPoly> ideal_gens, int level,
                         const MembershipOptions& opts) {
  LevelOutcome out;
  ProductClosure closure(mod_gens, ideal_gens, level, opts.max_products);
  if (!closure.build(target)) {
    out.aborted = true;
    out.products = closure.products().size();
    return out;
  }
  const auto& products = closure.products();
  out.products = products.size();
  LatticeEchelon echelon;
  for (std::size_t i = 0; i < products.size(); ++i)
    echelon.insert(Row{products[i].vec, Combo{{i, mpz_class(1)}}});
  auto combo = echelon.solve(target);
  if (!combo) return out;
  out.solved = true;
  for (const auto& [i, c] : *combo) {
    CertificateEntry e = products[i].entry;
    e.multiplier = c;
    out.certificate.push_back(std::move(e));
  }
  return out;
}

MembershipResult run_levels(const SparseVec& target, int target_degree,
                            bool homogeneous,
                            std::span<const ModuleVec> mod_gens,
                            std::span<const NCPoly> ideal_gens, int bound,
                            const MembershipOptions& opts) {
  MembershipResult result;
  if (target.empty()) {
    result.verdict = Verdict::Yes;
    return result;
  }
  if (bound < target_degree)
    throw Error("degree bound " + std::to_string(bound) +
                " is below the target degree " + std::to_string(target_degree));
  const int first = target_degree;
  const int last = homogeneous ? target_degree : bound;
  for (int level = first; level <= last; ++level) {
    LevelOutcome lo = solve_level(target, mod_gens, ideal_gens, level, opts);
    result.degree_used = level;
    result.products = lo.products;
    if (lo.solved) {
      result.verdict = Verdict::Yes;
      result.certificate = std::move(lo.certificate);
      return result;
    }
    if (lo.aborted) {
      result.verdict = Verdict::NotAtBound;
      return result;
    }
  }
  result.verdict = homogeneous ? Verdict::NoHomogeneous : Verdict::NotAtBound;
  return result;
}

std::vector<NCPoly> nonzero(std::span<const NCPoly> gens,
                            std::vector<std::size_t>& index) {
  std::vector<NCPoly> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    out.push_back(gens[i]);
    index.push_back(i);
  }
  return out;
}

}  // namespace

MembershipResult ideal_member(const NCPoly& target, std::span<const NCPoly> gens,
                              int bound, const MembershipOptions& opts) {
  std::vector<std::size_t> index;
  std::vector<NCPoly> live = nonzero(gens, index);
  bool homogeneous = target.is_homogeneous() &&
                     std::all_of(live.begin(), live.end(), [](const NCPoly& g) {
                       return g.is_homogeneous();
                     });
  SparseVec t;
  add_poly(t, target, 0);
  MembershipResult r =
      run_levels(t, target.degree(), homogeneous, {}, live, bound, opts);
  for (auto& e : r.certificate)
    e.generator = static_cast<int>(index[static_cast<std::size_t>(e.generator)]);
  return r;
}

MembershipResult submodule_member(const ModuleVec& target,
                                  std::span<const ModuleVec> mod_gens,
                                  std::span<const NCPoly> ideal_gens, int bound,
                                  const MembershipOptions& opts) {
  std::vector<std::size_t> ideal_index;
  std::vector<NCPoly> live_ideal = nonzero(ideal_gens, ideal_index);
  std::vector<ModuleVec> live_mod;
  std::vector<std::size_t> mod_index;
  for (std::size_t j = 0; j < mod_gens.size(); ++j) {
    if (mod_gens[j].ell() != target.ell())
      throw SignatureError("module generator dimension mismatch");
    if (mod_gens[j].is_zero()) continue;
    live_mod.push_back(mod_gens[j]);
    mod_index.push_back(j);
  }
  bool homogeneous =
      target.is_homogeneous() &&
      std::all_of(live_mod.begin(), live_mod.end(),
                  [](const ModuleVec& v) { return v.is_homogeneous(); }) &&
      std::all_of(live_ideal.begin(), live_ideal.end(),
                  [](const NCPoly& g) { return g.is_homogeneous(); });
  SparseVec t;
  for (std::size_t k = 0; k < target.slots().size(); ++k)
    add_poly(t, target[k], static_cast<int>(k + 1));
  MembershipResult r = run_levels(t, target.degree(), homogeneous, live_mod,
                                  live_ideal, bound, opts);
  for (auto& e : r.certificate) {
    auto g = static_cast<std::size_t>(e.generator);
    e.generator = static_cast<int>(e.kind == CertificateEntry::Kind::Module
                                       ? mod_index[g]
                                       : ideal_index[g]);
  }
  return r;
}

NCPoly expand_certificate(std::span<const CertificateEntry> cert,
                          std::span<const NCPoly> gens) {
  NCPoly sum;
  for (const auto& e : cert) {
    if (e.kind != CertificateEntry::Kind::Ideal || e.slot != 0)
      throw Error("not a ring certificate");
    const NCPoly& g = gens[static_cast<std::size_t>(e.generator)];
    sum += e.multiplier *
           (NCPoly::monomial(e.left) * g * NCPoly::monomial(e.right));
  }
  return sum;
}

ModuleVec expand_certificate(std::span<const CertificateEntry> cert,
                             std::span<const ModuleVec> mod_gens,
                             std::span<const NCPoly> ideal_gens, int ell) {
  ModuleVec sum(ell);
  for (const auto& e : cert) {
    const auto g = static_cast<std::size_t>(e.generator);
    if (e.kind == CertificateEntry::Kind::Module) {
      sum += e.multiplier * NCPoly::monomial(e.left) * mod_gens[g];
    } else {
      if (e.slot < 1 || e.slot > ell) throw Error("certificate slot out of range");
      NCPoly p = e.multiplier *
                 (NCPoly::monomial(e.left) * ideal_gens[g] *
                  NCPoly::monomial(e.right));
      sum += p * ModuleVec::generator(ell, e.slot);
    }
  }
  return sum;
}

int default_bound(const NCPoly& target, std::span<const NCPoly> gens) {
  int d = std::max(0, target.degree());
  for (const auto& g : gens) d = std::max(d, g.degree());
  return 2 * d + 2;
}

int default_bound(const ModuleVec& target, std::span<const ModuleVec> mod_gens,
                  std::span<const NCPoly> ideal_gens) {
  int d = std::max(0, target.degree());
  for (const auto& v : mod_gens) d = std::max(d, v.degree());
  for (const auto& g : ideal_gens) d = std::max(d, g.degree());
  return 2 * d + 2;
}

}  // namespace malcev
