#include "nonrn/linsolve.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "nonrn/error.hpp"

namespace nonrn {

// --- matrices ---------------------------------------------------------------

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Integer(1);
  IntMatrix a = m;
  Integer prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Integer(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// --- Smith normal form ------------------------------------------------------

namespace {

// Elementary operations on s, mirrored into the accumulated transforms:
// p * b * q == s, p_inv == p^-1, q_inv == q^-1.
struct SmithState {
  IntMatrix s, p, p_inv, q, q_inv;

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s(a, j), s(b, j));
    for (std::size_t j = 0; j < p.cols(); ++j) std::swap(p(a, j), p(b, j));
    for (std::size_t i = 0; i < p_inv.rows(); ++i) std::swap(p_inv(i, a), p_inv(i, b));
  }
  // row b += k * row a
  void add_row(std::size_t b, std::size_t a, const Integer& k) {
    for (std::size_t j = 0; j < s.cols(); ++j) s(b, j) += k * s(a, j);
    for (std::size_t j = 0; j < p.cols(); ++j) p(b, j) += k * p(a, j);
    for (std::size_t i = 0; i < p_inv.rows(); ++i) p_inv(i, a) -= k * p_inv(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < s.cols(); ++j) s(a, j) = -s(a, j);
    for (std::size_t j = 0; j < p.cols(); ++j) p(a, j) = -p(a, j);
    for (std::size_t i = 0; i < p_inv.rows(); ++i) p_inv(i, a) = -p_inv(i, a);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s(i, a), s(i, b));
    for (std::size_t i = 0; i < q.rows(); ++i) std::swap(q(i, a), q(i, b));
    for (std::size_t j = 0; j < q_inv.cols(); ++j) std::swap(q_inv(a, j), q_inv(b, j));
  }
  // col b += k * col a
  void add_col(std::size_t b, std::size_t a, const Integer& k) {
    for (std::size_t i = 0; i < s.rows(); ++i) s(i, b) += k * s(i, a);
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, b) += k * q(i, a);
    for (std::size_t j = 0; j < q_inv.cols(); ++j) q_inv(a, j) -= k * q_inv(b, j);
  }
};

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& b) {
  const std::size_t m = b.rows(), n = b.cols();
  SmithState st{b, IntMatrix::identity(m), IntMatrix::identity(m),
                IntMatrix::identity(n), IntMatrix::identity(n)};
  std::size_t rank = 0;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (st.s(i, j) != 0 &&
              (pi == m || mpz_cmpabs(st.s(i, j).get_mpz_t(), st.s(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      if (pi != t) st.swap_rows(pi, t);
      if (pj != t) st.swap_cols(pj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (st.s(i, t) != 0) {
          st.add_row(i, t, -floor_div(st.s(i, t), st.s(t, t)));
          clean = clean && st.s(i, t) == 0;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (st.s(t, j) != 0) {
          st.add_col(j, t, -floor_div(st.s(t, j), st.s(t, t)));
          clean = clean && st.s(t, j) == 0;
        }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(st.s(i, j).get_mpz_t(), st.s(t, t).get_mpz_t())) {
            st.add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (st.s(t, t) == 0) break;
    if (st.s(t, t) < 0) st.negate_row(t);
    rank = t + 1;
  }
  return SmithDecomposition{st.p_inv, st.s, st.q_inv, st.p, st.q, rank};
}

// --- systems ----------------------------------------------------------------

void LinearSystem::check() const {
  const std::size_t m = coefficients.rows(), n = coefficients.cols();
  if (m == 0 || n == 0) throw MalformedSystem("system needs at least one equation and one unknown");
  if (constants.size() != m)
    throw MalformedSystem("expected " + std::to_string(m) + " constants, got " +
                          std::to_string(constants.size()));
  if (constraints.size() != n)
    throw MalformedSystem("expected " + std::to_string(n) + " ball constraints, got " +
                          std::to_string(constraints.size()));
  for (const auto& b : constraints)
    if (b.is_open()) throw MalformedSystem("ball constraints must be closed");
}

bool satisfies(const LinearSystem& sys, std::span<const Q1> x) {
  const std::size_t m = sys.coefficients.rows(), n = sys.coefficients.cols();
  if (x.size() != n) return false;
  for (std::size_t j = 0; j < n; ++j)
    if (!sys.constraints[j].contains(x[j])) return false;
  for (std::size_t i = 0; i < m; ++i) {
    Rational lhs(0);
    for (std::size_t j = 0; j < n; ++j) lhs += sys.coefficients(i, j) * x[j].value();
    if (Q1(lhs) != sys.constants[i]) return false;
  }
  return true;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("simplest_between: empty interval");
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
  const Integer fl = floor_of(lo);
  if (fl == lo) return lo;
  if (fl + 1 <= hi) return Rational(fl + 1);
  const Rational flr(fl);
  Rational inner = simplest_between(1 / (hi - flr), 1 / (lo - flr));
  Rational out = flr + 1 / inner;
  out.canonicalize();
  return out;
}

namespace {

// Fourier-Motzkin over rationals: a . y <= b.
struct Ineq {
  std::vector<Rational> a;
  Rational b;
};

void normalize(Ineq& q) {
  Rational scale(0);
  for (const auto& c : q.a)
    if (sgn(c) != 0) {
      scale = abs(c);
      break;
    }
  if (sgn(scale) == 0) return;
  for (auto& c : q.a) c /= scale;
  q.b /= scale;
}

std::string key_of(const Ineq& q) {
  std::string k;
  for (const auto& c : q.a) k += to_string(c) + ",";
  return k;
}

// Keeps only the tightest right-hand side per normalized direction.
// Returns false when a constant row is violated.
bool tidy(std::vector<Ineq>& rows) {
  std::map<std::string, Ineq> best;
  for (auto& q : rows) {
    normalize(q);
    const bool constant = std::all_of(q.a.begin(), q.a.end(),
                                      [](const Rational& c) { return sgn(c) == 0; });
    if (constant) {
      if (sgn(q.b) < 0) return false;
      continue;
    }
    auto [it, inserted] = best.emplace(key_of(q), q);
    if (!inserted && q.b < it->second.b) it->second.b = q.b;
  }
  rows.clear();
  for (auto& [k, q] : best) rows.push_back(std::move(q));
  return true;
}

std::optional<std::vector<Rational>> fourier_motzkin(std::vector<Ineq> rows,
                                                     std::size_t dims) {
  std::vector<std::vector<Ineq>> levels(dims + 1);
  if (!tidy(rows)) return std::nullopt;
  levels[dims] = rows;
  for (std::size_t v = dims; v-- > 0;) {
    const auto& cur = levels[v + 1];
    std::vector<Ineq> next, pos, neg;
    for (const auto& q : cur) {
      const int s = sgn(q.a[v]);
      if (s == 0)
        next.push_back(q);
      else if (s > 0)
        pos.push_back(q);
      else
        neg.push_back(q);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        // p.a[v] > 0, n.a[v] < 0: scale so the v coefficients cancel.
        const Rational sp = -n.a[v], sn = p.a[v];
        Ineq c{std::vector<Rational>(dims), sp * p.b + sn * n.b};
        for (std::size_t u = 0; u < dims; ++u) c.a[u] = sp * p.a[u] + sn * n.a[u];
        c.a[v] = 0;
        next.push_back(std::move(c));
      }
    if (!tidy(next)) return std::nullopt;
    levels[v] = std::move(next);
  }

  std::vector<Rational> y(dims);
  for (std::size_t v = 0; v < dims; ++v) {
    std::optional<Rational> lo, hi;
    for (const auto& q : levels[v + 1]) {
      if (sgn(q.a[v]) == 0) continue;
      Rational rhs = q.b;
      for (std::size_t u = 0; u < v; ++u) rhs -= q.a[u] * y[u];
      const Rational bound = rhs / q.a[v];
      if (sgn(q.a[v]) > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    // Every variable is boxed by the caller, so both bounds exist.
    if (!lo || !hi || *hi < *lo) throw std::logic_error("Fourier-Motzkin back-substitution failed");
    if (*lo == *hi) {
      y[v] = *lo;
    } else {
      // Snap the midpoint: simplest rational in the central quarter.
      const Rational mid = (*lo + *hi) / 2, eighth = (*hi - *lo) / 8;
      y[v] = simplest_between(mid - eighth, mid + eighth);
    }
  }
  return y;
}

// Odometer over a mixed-radix range, most significant digit first.
bool advance(std::vector<Integer>& digits, const std::vector<Integer>& lo,
             const std::vector<Integer>& hi) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] < hi[i]) {
      ++digits[i];
      return true;
    }
    digits[i] = lo[i];
  }
  return false;
}

}  // namespace

std::optional<std::vector<Q1>> solve_torus_system(const LinearSystem& sys) {
  sys.check();
  const std::size_t m = sys.coefficients.rows(), n = sys.coefficients.cols();
  const SmithDecomposition snf = smith_normal_form(sys.coefficients);
  const std::size_t rank = snf.rank;

  // S y = t (mod 1) with y = V x and t = U^-1 r.
  std::vector<Rational> t(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < m; ++j) acc += snf.u_inv(i, j) * sys.constants[j].value();
    t[i] = floor_frac(acc);
  }
  for (std::size_t i = rank; i < m; ++i)
    if (sgn(t[i]) != 0) return std::nullopt;

  const IntMatrix& w = snf.v_inv;  // x = W y
  const std::size_t free_dims = n - rank;
  const Rational half(1, 2);

  std::vector<std::size_t> bounded_rows;  // rows whose ball is not all of T
  for (std::size_t k = 0; k < n; ++k)
    if (sys.constraints[k].radius() < half) bounded_rows.push_back(k);

  std::vector<Integer> j_lo(rank, Integer(0)), j_hi(rank), j(rank, Integer(0));
  for (std::size_t i = 0; i < rank; ++i) j_hi[i] = snf.s(i, i) - 1;

  std::vector<Rational> y(n);
  do {
    for (std::size_t i = 0; i < rank; ++i) y[i] = (t[i] + j[i]) / snf.s(i, i);

    // Fixed part a_k of each coordinate; rows without free variables are
    // checked directly.
    std::vector<Rational> fixed(n);
    bool ok = true;
    std::vector<std::size_t> coupled;
    for (std::size_t k : bounded_rows) {
      Rational acc(0);
      for (std::size_t i = 0; i < rank; ++i) acc += w(k, i) * y[i];
      fixed[k] = acc;
      bool has_free = false;
      for (std::size_t f = rank; f < n; ++f) has_free = has_free || w(k, f) != 0;
      if (has_free) {
        coupled.push_back(k);
      } else if (!sys.constraints[k].contains(Q1(acc))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    std::vector<Integer> z_lo(coupled.size()), z_hi(coupled.size());
    for (std::size_t c = 0; c < coupled.size() && ok; ++c) {
      const std::size_t k = coupled[c];
      Rational lo = fixed[k], hi = fixed[k];
      for (std::size_t f = rank; f < n; ++f) {
        if (sgn(w(k, f)) < 0) lo += w(k, f);
        else hi += w(k, f);
      }
      const Rational& ctr = sys.constraints[k].center().value();
      const Rational& eps = sys.constraints[k].radius();
      z_lo[c] = ceil_of(lo - ctr - eps);
      z_hi[c] = floor_of(hi - ctr + eps);
      ok = z_lo[c] <= z_hi[c];
    }
    if (!ok) continue;

    std::vector<Integer> z = z_lo;
    do {
      std::vector<Ineq> rows;
      for (std::size_t f = 0; f < free_dims; ++f) {
        Ineq up{std::vector<Rational>(free_dims), Rational(1)};
        up.a[f] = 1;
        Ineq down{std::vector<Rational>(free_dims), Rational(0)};
        down.a[f] = -1;
        rows.push_back(std::move(up));
        rows.push_back(std::move(down));
      }
      for (std::size_t c = 0; c < coupled.size(); ++c) {
        const std::size_t k = coupled[c];
        const Rational base = Rational(z[c]) - fixed[k] + sys.constraints[k].center().value();
        const Rational& eps = sys.constraints[k].radius();
        Ineq up{std::vector<Rational>(free_dims), base + eps};
        Ineq down{std::vector<Rational>(free_dims), -(base - eps)};
        for (std::size_t f = 0; f < free_dims; ++f) {
          up.a[f] = w(k, rank + f);
          down.a[f] = -up.a[f];
        }
        rows.push_back(std::move(up));
        rows.push_back(std::move(down));
      }
      const auto free_values = fourier_motzkin(std::move(rows), free_dims);
      if (!free_values) continue;
      for (std::size_t f = 0; f < free_dims; ++f) y[rank + f] = (*free_values)[f];

      std::vector<Q1> x(n);
      for (std::size_t k = 0; k < n; ++k) {
        Rational acc(0);
        for (std::size_t i = 0; i < n; ++i) acc += w(k, i) * y[i];
        x[k] = Q1(acc);
      }
      if (!satisfies(sys, x)) throw std::logic_error("torus solver produced a non-solution");
      return x;
    } while (advance(z, z_lo, z_hi));
  } while (advance(j, j_lo, j_hi));
  return std::nullopt;
}

// --- sampled check of the density property ----------------------------------

StarReport verify_star(const StarParams& params) {
  std::mt19937_64 eng(params.seed);
  auto uniform = [&](long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto random_q1 = [&]() {
    const long q = uniform(1, params.max_denominator);
    return Q1(uniform(0, q - 1), static_cast<unsigned long>(q));
  };

  StarReport report;
  for (std::size_t inst = 0; inst < params.instances; ++inst) {
    const auto n = static_cast<std::size_t>(uniform(1, static_cast<long>(params.max_vars)));
    const auto m = static_cast<std::size_t>(uniform(1, static_cast<long>(params.max_equations)));
    LinearSystem sys;
    sys.coefficients = IntMatrix(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k)
        sys.coefficients(i, k) = uniform(-params.max_coefficient, params.max_coefficient);

    const bool planted = eng() % 2 == 0;
    std::vector<Q1> hidden(n);
    for (auto& h : hidden) h = random_q1();
    for (std::size_t k = 0; k < n; ++k) {
      const long rad_num = uniform(1, 8);
      const Rational radius(rad_num, 64);
      Q1 center = random_q1();
      if (planted) center = hidden[k] + Q1(uniform(-rad_num, rad_num), 64);
      sys.constraints.emplace_back(center, radius, false);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (planted) {
        Rational acc(0);
        for (std::size_t k = 0; k < n; ++k) acc += sys.coefficients(i, k) * hidden[k].value();
        sys.constants.emplace_back(acc);
      } else {
        sys.constants.push_back(random_q1());
      }
    }

    ++report.instances;
    const auto sol = solve_torus_system(sys);
    const auto oracle = brute_force_torus_solution(sys, params.max_denominator);
    if (sol) {
      ++report.solver_sat;
      if (!satisfies(sys, *sol)) {
        ++report.unsound;
        report.failures.push_back("instance " + std::to_string(inst) + ": solver output fails substitution");
      }
    }
    if (oracle) {
      ++report.oracle_sat;
      if (!sol) {
        ++report.disagreements;
        report.failures.push_back("instance " + std::to_string(inst) + ": oracle found a solution, solver did not");
      }
    }
  }
  return report;
}

}  // namespace nonrn
