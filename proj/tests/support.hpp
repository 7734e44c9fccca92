#pragma once

#include <random>
#include <vector>

#include "malcev/models.hpp"
#include "malcev/ncpoly.hpp"
#include "malcev/sigterm.hpp"

namespace malcev::test {

/// Random term of depth <= max_depth (atoms have depth 1) in x1..xk, z.
inline Term random_term(std::mt19937_64& rng, const Signature& sig, int k,
                        int max_depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  if (max_depth <= 1 || pick(4) == 0) {
    int v = pick(k + 1);
    return v == 0 ? Term::z() : Term::var(v);
  }
  std::vector<int> kinds{2};
  if (sig.n > 0) kinds.push_back(1);
  if (sig.ell > 0) kinds.push_back(0);
  switch (kinds[static_cast<std::size_t>(pick(static_cast<int>(kinds.size())))]) {
    case 0:
      return Term::u(1 + pick(sig.ell), random_term(rng, sig, k, max_depth - 1));
    case 1:
      return Term::r(1 + pick(sig.n), random_term(rng, sig, k, max_depth - 1),
                     random_term(rng, sig, k, max_depth - 1));
    default:
      return Term::m(random_term(rng, sig, k, max_depth - 1),
                     random_term(rng, sig, k, max_depth - 1),
                     random_term(rng, sig, k, max_depth - 1));
  }
}

inline NCPoly random_poly(std::mt19937_64& rng, int n, int max_deg, int terms,
                          int coeff = 3) {
  NCPoly p;
  for (int t = 0; t < terms; ++t) {
    int d = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
    Word w;
    for (int i = 0; i < d; ++i) w.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
    long c = static_cast<long>(rng() % static_cast<unsigned>(2 * coeff + 1)) - coeff;
    p.add_term(w, c);
  }
  return p;
}

inline ModuleVec random_vec(std::mt19937_64& rng, int ell, int n, int max_deg, int terms) {
  ModuleVec v(ell);
  for (int i = 0; i < ell; ++i) v[static_cast<std::size_t>(i)] = random_poly(rng, n, max_deg, terms);
  return v;
}

inline Assignment random_assignment(std::mt19937_64& rng, const AffineModel& m, int k) {
  auto vec = [&] {
    Vec v(static_cast<std::size_t>(m.dim()));
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m.q()));
    return v;
  };
  Assignment a;
  a.z = vec();
  for (int i = 1; i <= k; ++i) a.vars[i] = vec();
  return a;
}

}  // namespace malcev::test
