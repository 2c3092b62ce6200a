#pragma once

// Integer-coefficient linear systems over T with per-variable closed-ball
// constraints. solve_torus_system decides feasibility exactly and returns a
// rational solution when one exists; verify_star cross-checks it against an
// exhaustive bounded-denominator search.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonrn/group.hpp"

namespace nonrn {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

// b == u * s * v with u, v unimodular and s diagonal, diagonal entries
// nonnegative and each dividing the next. u_inv and v_inv are the exact
// inverses, so u_inv * b * v_inv == s.
struct SmithDecomposition {
  IntMatrix u, s, v;
  IntMatrix u_inv, v_inv;
  std::size_t rank = 0;
};

SmithDecomposition smith_normal_form(const IntMatrix& b);

// Equations sum_j coefficients(i, j) * x_j = constants[i] (mod 1), with x_j
// in constraints[j]. Constraints are closed balls.
struct LinearSystem {
  IntMatrix coefficients;
  std::vector<Q1> constants;
  std::vector<Ball> constraints;

  // Throws MalformedSystem on dimension mismatches or open constraints.
  void check() const;
};

// Substitutes x and tests every equation and every ball exactly.
bool satisfies(const LinearSystem& sys, std::span<const Q1> x);

// Simplest rational (smallest denominator, then smallest magnitude) in
// [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

// Exact solver. Returns a rational solution inside the balls if any real
// solution exists there, std::nullopt otherwise. Deterministic.
std::optional<std::vector<Q1>> solve_torus_system(const LinearSystem& sys);

// Exhaustive search over points p/q with q <= max_den, independent of the
// Smith-form route. Returns the first hit in lexicographic order.
std::optional<std::vector<Q1>> brute_force_torus_solution(const LinearSystem& sys,
                                                          long max_den);

struct StarParams {
  std::size_t instances = 100;
  std::size_t max_vars = 3;
  std::size_t max_equations = 3;
  long max_coefficient = 10;
  long max_denominator = 48;
  std::uint64_t seed = 1;
};

struct StarReport {
  std::size_t instances = 0;
  std::size_t solver_sat = 0;
  std::size_t oracle_sat = 0;
  std::size_t disagreements = 0;  // oracle found a solution, solver did not
  std::size_t unsound = 0;        // solver output failed substitution
  std::vector<std::string> failures;

  bool ok() const { return disagreements == 0 && unsound == 0; }
};

// Random systems, half of them planted with a known solution, checked
// against the brute-force oracle.
StarReport verify_star(const StarParams& params);

}  // namespace nonrn
