#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "malcev/sigterm.hpp"

namespace malcev {

struct VarietyPresentation;

using Vec = std::vector<std::int64_t>;

/// Square matrix over Z_q, row-major.
struct Matrix {
  int dim = 0;
  std::vector<std::int64_t> a;

  static Matrix zero(int dim);
  static Matrix identity(int dim);
  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }
  std::int64_t at(int i, int j) const {
    return a[static_cast<std::size_t>(i * dim + j)];
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// A module Z_q^d with m(a,b,c) = a - b + c, r_i(a,b) = A_i a + (1 - A_i) b
/// and u_i(a) = A_i a + c_i. The linear part of u_i is always A_i.
class AffineModel {
 public:
  /// Throws Error on inconsistent dimensions or q < 2, d < 1.
  AffineModel(std::int64_t q, int d, std::vector<Matrix> r_mats,
              std::vector<Vec> u_shifts);

  std::int64_t q() const { return q_; }
  int dim() const { return d_; }
  Signature signature() const {
    return Signature{static_cast<int>(u_shifts_.size()),
                     static_cast<int>(r_mats_.size())};
  }
  const std::vector<Matrix>& r_mats() const { return r_mats_; }
  const std::vector<Vec>& u_shifts() const { return u_shifts_; }
  const Matrix& u_matrix(int i) const {
    return r_mats_[static_cast<std::size_t>(i - 1)];
  }

  std::int64_t reduce(std::int64_t v) const {
    v %= q_;
    return v < 0 ? v + q_ : v;
  }
  Vec mul(const Matrix& m, const Vec& v) const;
  Matrix mul(const Matrix& x, const Matrix& y) const;

  friend bool operator==(const AffineModel&, const AffineModel&) = default;

 private:
  std::int64_t q_;
  int d_;
  std::vector<Matrix> r_mats_;
  std::vector<Vec> u_shifts_;
};

struct Assignment {
  std::map<int, Vec> vars;
  Vec z;
};

/// Point evaluation by structural recursion. Throws Error if the term uses
/// symbols outside the model, or a variable is unassigned, or a vector has
/// the wrong dimension.
Vec eval(const AffineModel& model, const Term& t, const Assignment& a);

/// The term operation as an affine map: value = sum_j lin[j] * x_j + c, with
/// index 0 standing for z.
struct AffineMap {
  std::map<int, Matrix> lin;
  Vec c;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

AffineMap affine_var(const AffineModel& model, int index);  // 0 is z
AffineMap affine_m(const AffineModel& model, const AffineMap& a,
                   const AffineMap& b, const AffineMap& c);
AffineMap affine_r(const AffineModel& model, int i, const AffineMap& a,
                   const AffineMap& b);
AffineMap affine_u(const AffineModel& model, int i, const AffineMap& a);
AffineMap affine_eval(const AffineModel& model, const Term& t);

/// Exact validity of id in the model, comparing the affine maps of both sides.
bool holds_exactly(const AffineModel& model, const Identity& id);

/// Exhaustive mode enumerates every assignment of x1..xk, z when
/// q^(d(k+1)) <= 10^5 and otherwise falls back to the (equally definitive)
/// affine-map comparison. Sampled mode draws `trials` random assignments.
bool satisfies(const AffineModel& model, const Identity& id, bool exhaustive,
               int trials = 64, std::uint64_t seed = 0);

/// An assignment on which s and t differ, if any.
std::optional<Assignment> separating_assignment(const AffineModel& model,
                                                const Term& s, const Term& t);

struct SearchParams {
  std::int64_t max_q = 5;
  int max_dim = 3;
  /// Random candidate models per (q, d).
  int trials = 24;
  std::uint64_t seed = 0;
};

/// Deterministic stream of candidate models for a signature: q ascending
/// from 2 to max_q, d ascending from 1 to max_dim, `trials` models each.
/// Every candidate depends only on (seed, q, d, trial index).
class ModelStream {
 public:
  ModelStream(Signature sig, SearchParams params);
  std::optional<AffineModel> next();
  std::size_t produced() const { return produced_; }

  static AffineModel candidate(const Signature& sig, std::int64_t q, int d,
                               int trial, std::uint64_t seed);

 private:
  Signature sig_;
  SearchParams params_;
  std::int64_t q_ = 2;
  int d_ = 1;
  int trial_ = 0;
  std::size_t produced_ = 0;
};

struct Separation {
  AffineModel model;
  Assignment assignment;
};

/// First candidate of the stream that satisfies every identity of vp and
/// violates s = t, together with a witnessing assignment.
std::optional<Separation> find_separating_model(const Term& s, const Term& t,
                                                const VarietyPresentation& vp,
                                                const SearchParams& params);

/// True iff the candidate term (in x1, x2, x3) agrees with m everywhere.
bool check_malcev_uniqueness(const AffineModel& model, const Term& m_prime);

/// Every assignment to x1..x3 when affordable, else `samples` random ones.
bool is_malcev_term(const AffineModel& model, const Term& m_prime);

/// Random model of the signature with every matrix drawn uniformly.
AffineModel random_model(const Signature& sig, std::int64_t q, int d,
                         std::mt19937_64& rng);

/// Every model of the signature over Z_q^d; only sensible when tiny.
std::vector<AffineModel> all_models(const Signature& sig, std::int64_t q,
                                    int d);

/// Number of models all_models would return, saturating at `cap`.
std::uint64_t count_models(const Signature& sig, std::int64_t q, int d,
                           std::uint64_t cap);

}  // namespace malcev
