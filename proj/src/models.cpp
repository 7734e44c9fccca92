#include "malcev/models.hpp"

#include <algorithm>

#include "malcev/presentation.hpp"

namespace malcev {

Matrix Matrix::zero(int dim) {
  return Matrix{dim, std::vector<std::int64_t>(static_cast<std::size_t>(dim * dim), 0)};
}

Matrix Matrix::identity(int dim) {
  Matrix m = zero(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

AffineModel::AffineModel(std::int64_t q, int d, std::vector<Matrix> r_mats,
                         std::vector<Vec> u_shifts)
    : q_(q), d_(d), r_mats_(std::move(r_mats)), u_shifts_(std::move(u_shifts)) {
  if (q_ < 2) throw Error("model modulus must be >= 2");
  if (d_ < 1) throw Error("model dimension must be >= 1");
  if (u_shifts_.size() > r_mats_.size())
    throw SignatureError("model has more unary than binary symbols");
  for (auto& m : r_mats_) {
    if (m.dim != d_ || m.a.size() != static_cast<std::size_t>(d_ * d_))
      throw Error("model matrix has wrong dimension");
    for (auto& x : m.a) x = reduce(x);
  }
  for (auto& v : u_shifts_) {
    if (v.size() != static_cast<std::size_t>(d_))
      throw Error("model translation vector has wrong dimension");
    for (auto& x : v) x = reduce(x);
  }
}

Vec AffineModel::mul(const Matrix& m, const Vec& v) const {
  Vec out(static_cast<std::size_t>(d_), 0);
  for (int i = 0; i < d_; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < d_; ++j) s += m.at(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = reduce(s);
  }
  return out;
}

Matrix AffineModel::mul(const Matrix& x, const Matrix& y) const {
  Matrix out = Matrix::zero(d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) {
      std::int64_t a = x.at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < d_; ++j) out.at(i, j) += a * y.at(k, j);
    }
  for (auto& v : out.a) v = reduce(v);
  return out;
}

namespace {

void check_term(const AffineModel& model, const Term& t) {
  if (!t.fits(model.signature()))
    throw SignatureError("term " + print_term(t) + " uses symbols outside the model");
}

void check_vec(const AffineModel& model, const Vec& v) {
  if (v.size() != static_cast<std::size_t>(model.dim()))
    throw Error("assignment vector has wrong dimension");
}

Vec eval_rec(const AffineModel& model, const Term& t, const Assignment& a) {
  const std::size_t d = static_cast<std::size_t>(model.dim());
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = a.vars.find(t.index());
      if (it == a.vars.end())
        throw Error("unassigned variable x" + std::to_string(t.index()));
      check_vec(model, it->second);
      return it->second;
    }
    case Term::Kind::Z:
      check_vec(model, a.z);
      return a.z;
    case Term::Kind::M: {
      Vec x = eval_rec(model, t.arg(0), a);
      Vec y = eval_rec(model, t.arg(1), a);
      Vec w = eval_rec(model, t.arg(2), a);
      for (std::size_t i = 0; i < d; ++i) x[i] = model.reduce(x[i] - y[i] + w[i]);
      return x;
    }
    case Term::Kind::R: {
      Vec x = eval_rec(model, t.arg(0), a);
      Vec y = eval_rec(model, t.arg(1), a);
      for (std::size_t i = 0; i < d; ++i) x[i] = model.reduce(x[i] - y[i]);
      Vec ax = model.mul(model.r_mats()[static_cast<std::size_t>(t.index() - 1)], x);
      for (std::size_t i = 0; i < d; ++i) ax[i] = model.reduce(ax[i] + y[i]);
      return ax;
    }
    case Term::Kind::U: {
      Vec x = eval_rec(model, t.arg(0), a);
      Vec ax = model.mul(model.u_matrix(t.index()), x);
      const Vec& c = model.u_shifts()[static_cast<std::size_t>(t.index() - 1)];
      for (std::size_t i = 0; i < d; ++i) ax[i] = model.reduce(ax[i] + c[i]);
      return ax;
    }
  }
  return {};
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t draw(std::mt19937_64& rng, std::int64_t q) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
}

Matrix random_matrix(std::int64_t q, int d, std::mt19937_64& rng) {
  Matrix m = Matrix::zero(d);
  for (auto& x : m.a) x = draw(rng, q);
  return m;
}

/// Mixture of matrix shapes so that candidates can satisfy nilpotency or
/// idempotency relations.
Matrix structured_matrix(std::int64_t q, int d, std::mt19937_64& rng) {
  switch (rng() % 7) {
    case 0:
      return Matrix::zero(d);
    case 1:
      return Matrix::identity(d);
    case 2: {
      Matrix m = Matrix::zero(d);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) m.at(i, j) = draw(rng, q);
      return m;
    }
    case 3: {
      Matrix m = Matrix::zero(d);
      for (int i = 0; i < d; ++i) m.at(i, i) = static_cast<std::int64_t>(rng() % 2);
      return m;
    }
    default:
      return random_matrix(q, d, rng);
  }
}

}  // namespace

Vec eval(const AffineModel& model, const Term& t, const Assignment& a) {
  check_term(model, t);
  return eval_rec(model, t, a);
}

AffineMap affine_var(const AffineModel& model, int index) {
  AffineMap m;
  m.lin.emplace(index, Matrix::identity(model.dim()));
  m.c.assign(static_cast<std::size_t>(model.dim()), 0);
  return m;
}

namespace {

void add_into(const AffineModel& model, AffineMap& acc, const AffineMap& x,
              int sign) {
  for (const auto& [j, mx] : x.lin) {
    auto [it, inserted] = acc.lin.try_emplace(j, Matrix::zero(model.dim()));
    auto& dst = it->second.a;
    for (std::size_t k = 0; k < dst.size(); ++k)
      dst[k] = model.reduce(dst[k] + sign * mx.a[k]);
  }
  for (std::size_t k = 0; k < acc.c.size(); ++k)
    acc.c[k] = model.reduce(acc.c[k] + sign * x.c[k]);
}

void drop_zero(AffineMap& m) {
  for (auto it = m.lin.begin(); it != m.lin.end();) {
    bool zero = std::all_of(it->second.a.begin(), it->second.a.end(),
                            [](std::int64_t v) { return v == 0; });
    it = zero ? m.lin.erase(it) : std::next(it);
  }
}

AffineMap left_mul(const AffineModel& model, const Matrix& a, const AffineMap& x) {
  AffineMap out;
  for (const auto& [j, mx] : x.lin) out.lin.emplace(j, model.mul(a, mx));
  out.c = model.mul(a, x.c);
  return out;
}

}  // namespace

AffineMap affine_m(const AffineModel& model, const AffineMap& a,
                   const AffineMap& b, const AffineMap& c) {
  AffineMap out;
  out.c.assign(static_cast<std::size_t>(model.dim()), 0);
  add_into(model, out, a, 1);
  add_into(model, out, b, -1);
  add_into(model, out, c, 1);
  drop_zero(out);
  return out;
}

AffineMap affine_r(const AffineModel& model, int i, const AffineMap& a,
                   const AffineMap& b) {
  AffineMap diff;
  diff.c.assign(static_cast<std::size_t>(model.dim()), 0);
  add_into(model, diff, a, 1);
  add_into(model, diff, b, -1);
  AffineMap out =
      left_mul(model, model.r_mats()[static_cast<std::size_t>(i - 1)], diff);
  add_into(model, out, b, 1);
  drop_zero(out);
  return out;
}

AffineMap affine_u(const AffineModel& model, int i, const AffineMap& a) {
  AffineMap out = left_mul(model, model.u_matrix(i), a);
  const Vec& c = model.u_shifts()[static_cast<std::size_t>(i - 1)];
  for (std::size_t k = 0; k < out.c.size(); ++k)
    out.c[k] = model.reduce(out.c[k] + c[k]);
  drop_zero(out);
  return out;
}

AffineMap affine_eval(const AffineModel& model, const Term& t) {
  check_term(model, t);
  switch (t.kind()) {
    case Term::Kind::Var:
      return affine_var(model, t.index());
    case Term::Kind::Z:
      return affine_var(model, 0);
    case Term::Kind::M:
      return affine_m(model, affine_eval(model, t.arg(0)),
                      affine_eval(model, t.arg(1)), affine_eval(model, t.arg(2)));
    case Term::Kind::R:
      return affine_r(model, t.index(), affine_eval(model, t.arg(0)),
                      affine_eval(model, t.arg(1)));
    case Term::Kind::U:
      return affine_u(model, t.index(), affine_eval(model, t.arg(0)));
  }
  return {};
}

bool holds_exactly(const AffineModel& model, const Identity& id) {
  return affine_eval(model, id.lhs) == affine_eval(model, id.rhs);
}

bool satisfies(const AffineModel& model, const Identity& id, bool exhaustive,
               int trials, std::uint64_t seed) {
  check_term(model, id.lhs);
  check_term(model, id.rhs);
  const int k = id.max_var();
  const std::size_t d = static_cast<std::size_t>(model.dim());
  const std::size_t slots = d * static_cast<std::size_t>(k + 1);
  if (exhaustive) {
    double total = 1;
    for (std::size_t i = 0; i < slots; ++i) total *= static_cast<double>(model.q());
    if (total > 1e5) return holds_exactly(model, id);
    std::vector<std::int64_t> digits(slots, 0);
    Assignment a;
    while (true) {
      a.z.assign(digits.begin(), digits.begin() + static_cast<long>(d));
      for (int j = 1; j <= k; ++j)
        a.vars[j].assign(digits.begin() + static_cast<long>(d * static_cast<std::size_t>(j)),
                         digits.begin() + static_cast<long>(d * static_cast<std::size_t>(j + 1)));
      if (eval_rec(model, id.lhs, a) != eval_rec(model, id.rhs, a)) return false;
      std::size_t pos = 0;
      while (pos < slots && ++digits[pos] == model.q()) digits[pos++] = 0;
      if (pos == slots) return true;
    }
  }
  std::mt19937_64 rng(seed);
  Assignment a;
  for (int trial = 0; trial < trials; ++trial) {
    a.z.resize(d);
    for (auto& x : a.z) x = draw(rng, model.q());
    for (int j = 1; j <= k; ++j) {
      auto& v = a.vars[j];
      v.resize(d);
      for (auto& x : v) x = draw(rng, model.q());
    }
    if (eval_rec(model, id.lhs, a) != eval_rec(model, id.rhs, a)) return false;
  }
  return true;
}

std::optional<Assignment> separating_assignment(const AffineModel& model,
                                                const Term& s, const Term& t) {
  AffineMap ms = affine_eval(model, s);
  AffineMap mt = affine_eval(model, t);
  if (ms == mt) return std::nullopt;
  const std::size_t d = static_cast<std::size_t>(model.dim());
  const int k = std::max(s.max_var(), t.max_var());
  Assignment a;
  a.z.assign(d, 0);
  for (int j = 1; j <= k; ++j) a.vars[j].assign(d, 0);
  if (ms.c != mt.c) return a;
  const Matrix zero = Matrix::zero(model.dim());
  for (int j = 0; j <= k; ++j) {
    auto is = ms.lin.find(j);
    auto it = mt.lin.find(j);
    const Matrix& a1 = is == ms.lin.end() ? zero : is->second;
    const Matrix& a2 = it == mt.lin.end() ? zero : it->second;
    if (a1 == a2) continue;
    for (int col = 0; col < model.dim(); ++col) {
      bool differs = false;
      for (int row = 0; row < model.dim(); ++row)
        differs = differs || a1.at(row, col) != a2.at(row, col);
      if (!differs) continue;
      Vec& target = j == 0 ? a.z : a.vars[j];
      target[static_cast<std::size_t>(col)] = 1;
      return a;
    }
  }
  return std::nullopt;
}

AffineModel random_model(const Signature& sig, std::int64_t q, int d,
                         std::mt19937_64& rng) {
  std::vector<Matrix> mats;
  for (int i = 0; i < sig.n; ++i) mats.push_back(random_matrix(q, d, rng));
  std::vector<Vec> shifts;
  for (int i = 0; i < sig.ell; ++i) {
    Vec v(static_cast<std::size_t>(d));
    for (auto& x : v) x = draw(rng, q);
    shifts.push_back(std::move(v));
  }
  return AffineModel(q, d, std::move(mats), std::move(shifts));
}

ModelStream::ModelStream(Signature sig, SearchParams params)
    : sig_(sig), params_(params) {}

AffineModel ModelStream::candidate(const Signature& sig, std::int64_t q, int d,
                                   int trial, std::uint64_t seed) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix(state);
  state = mixed ^ (static_cast<std::uint64_t>(q) << 40) ^
          (static_cast<std::uint64_t>(d) << 24) ^ static_cast<std::uint64_t>(trial);
  std::mt19937_64 rng(splitmix(state));
  std::vector<Matrix> mats;
  for (int i = 0; i < sig.n; ++i) {
    // The first candidate of every (q, d) is fully random.
    mats.push_back(trial == 0 ? random_matrix(q, d, rng)
                              : structured_matrix(q, d, rng));
  }
  std::vector<Vec> shifts;
  for (int i = 0; i < sig.ell; ++i) {
    Vec v(static_cast<std::size_t>(d), 0);
    if (trial == 0 || rng() % 4 != 0)
      for (auto& x : v) x = draw(rng, q);
    shifts.push_back(std::move(v));
  }
  return AffineModel(q, d, std::move(mats), std::move(shifts));
}

std::optional<AffineModel> ModelStream::next() {
  if (params_.trials < 1 || params_.max_dim < 1 || q_ > params_.max_q)
    return std::nullopt;
  AffineModel m = candidate(sig_, q_, d_, trial_, params_.seed);
  ++produced_;
  if (++trial_ == params_.trials) {
    trial_ = 0;
    if (++d_ > params_.max_dim) {
      d_ = 1;
      ++q_;
    }
  }
  return m;
}

std::optional<Separation> find_separating_model(const Term& s, const Term& t,
                                                const VarietyPresentation& vp,
                                                const SearchParams& params) {
  if (s == t) return std::nullopt;
  ModelStream stream(vp.sig, params);
  while (auto model = stream.next()) {
    auto witness = separating_assignment(*model, s, t);
    if (!witness) continue;
    bool ok = std::all_of(vp.ids.begin(), vp.ids.end(), [&](const Identity& id) {
      return holds_exactly(*model, id);
    });
    if (ok) return Separation{std::move(*model), std::move(*witness)};
  }
  return std::nullopt;
}

namespace {

template <class F>
bool all_triples(const AffineModel& model, F&& f) {
  const std::size_t d = static_cast<std::size_t>(model.dim());
  double total = 1;
  for (std::size_t i = 0; i < 3 * d; ++i) total *= static_cast<double>(model.q());
  Assignment a;
  a.z.assign(d, 0);
  if (total <= 1e6) {
    std::vector<std::int64_t> digits(3 * d, 0);
    while (true) {
      for (int j = 0; j < 3; ++j)
        a.vars[j + 1].assign(digits.begin() + static_cast<long>(d * static_cast<std::size_t>(j)),
                             digits.begin() + static_cast<long>(d * static_cast<std::size_t>(j + 1)));
      if (!f(a)) return false;
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == model.q()) digits[pos++] = 0;
      if (pos == digits.size()) return true;
    }
  }
  std::mt19937_64 rng(0);
  for (int trial = 0; trial < 4096; ++trial) {
    for (int j = 1; j <= 3; ++j) {
      auto& v = a.vars[j];
      v.resize(d);
      for (auto& x : v) x = draw(rng, model.q());
    }
    if (!f(a)) return false;
  }
  return true;
}

}  // namespace

bool check_malcev_uniqueness(const AffineModel& model, const Term& m_prime) {
  check_term(model, m_prime);
  if (m_prime.max_var() > 3) throw Error("candidate Mal'cev term uses more than x1..x3");
  const Term m = Term::m(Term::var(1), Term::var(2), Term::var(3));
  return all_triples(model, [&](const Assignment& a) {
    return eval_rec(model, m, a) == eval_rec(model, m_prime, a);
  });
}

bool is_malcev_term(const AffineModel& model, const Term& m_prime) {
  check_term(model, m_prime);
  const Term xxy = substitute(m_prime, {{1, Term::var(1)}, {2, Term::var(1)}, {3, Term::var(2)}},
                              Term::z());
  const Term yxx = substitute(m_prime, {{1, Term::var(2)}, {2, Term::var(1)}, {3, Term::var(1)}},
                              Term::z());
  return holds_exactly(model, {xxy, Term::var(2)}) &&
         holds_exactly(model, {yxx, Term::var(2)});
}

std::uint64_t count_models(const Signature& sig, std::int64_t q, int d,
                           std::uint64_t cap) {
  const std::uint64_t exponent =
      static_cast<std::uint64_t>(sig.n) * static_cast<std::uint64_t>(d * d) +
      static_cast<std::uint64_t>(sig.ell) * static_cast<std::uint64_t>(d);
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    count *= static_cast<std::uint64_t>(q);
    if (count >= cap) return cap;
  }
  return count;
}

std::vector<AffineModel> all_models(const Signature& sig, std::int64_t q, int d) {
  const std::size_t dd = static_cast<std::size_t>(d * d);
  const std::size_t slots = static_cast<std::size_t>(sig.n) * dd +
                            static_cast<std::size_t>(sig.ell) * static_cast<std::size_t>(d);
  if (count_models(sig, q, d, 1u << 20) >= (1u << 20))
    throw Error("too many models to enumerate");
  std::vector<AffineModel> out;
  std::vector<std::int64_t> digits(slots, 0);
  while (true) {
    std::vector<Matrix> mats;
    for (int i = 0; i < sig.n; ++i) {
      Matrix m = Matrix::zero(d);
      std::copy_n(digits.begin() + static_cast<long>(static_cast<std::size_t>(i) * dd),
                  dd, m.a.begin());
      mats.push_back(std::move(m));
    }
    std::vector<Vec> shifts;
    for (int i = 0; i < sig.ell; ++i) {
      auto begin = digits.begin() +
                   static_cast<long>(static_cast<std::size_t>(sig.n) * dd +
                                     static_cast<std::size_t>(i * d));
      shifts.emplace_back(begin, begin + d);
    }
    out.emplace_back(q, d, std::move(mats), std::move(shifts));
    std::size_t pos = 0;
    while (pos < slots && ++digits[pos] == q) digits[pos++] = 0;
    if (pos == slots) return out;
  }
}

}  // namespace malcev
