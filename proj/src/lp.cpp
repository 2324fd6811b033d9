#include "circuit_atlas/lp.hpp"

#include <stdexcept>

namespace circuit_atlas {
namespace {

// Dense tableau for min c.x s.t. T x = rhs, x >= 0. Column `width` holds rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * (cols + 1)) {}

  mpq_class& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  const mpq_class& at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
  mpq_class& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void drop_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                 cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    --rows_;
  }

  void pivot(std::size_t pr, std::size_t pc, std::vector<mpq_class>& reduced) {
    const mpq_class inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (sgn(at(pr, c)) != 0) at(pr, c) *= inv;
    }
    auto eliminate = [&](mpq_class* row) {
      const mpq_class f = row[pc];
      if (sgn(f) == 0) return;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (sgn(at(pr, c)) != 0) row[c] -= f * at(pr, c);
      }
    };
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != pr) eliminate(&at(r, 0));
    }
    eliminate(reduced.data());
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpq_class> cells_;
};

enum class SimplexEnd { optimal, unbounded };

struct SimplexRun {
  SimplexEnd end;
  std::size_t entering = 0;
};

// reduced[c] = cost_c - sum_i cost_{basis_i} T(i,c); reduced[cols] = -objective.
std::vector<mpq_class> reduced_costs(const Tableau& t, const std::vector<std::size_t>& basis,
                                     const std::vector<mpq_class>& cost) {
  std::vector<mpq_class> red(t.cols() + 1);
  for (std::size_t c = 0; c < t.cols(); ++c) red[c] = cost[c];
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const mpq_class& cb = cost[basis[r]];
    if (sgn(cb) == 0) continue;
    for (std::size_t c = 0; c <= t.cols(); ++c) {
      if (sgn(t.at(r, c)) != 0) red[c] -= cb * t.at(r, c);
    }
  }
  return red;
}

// Bland's rule: lowest-index improving column enters; among tied ratios the
// lowest-index basic variable leaves.
SimplexRun run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::vector<mpq_class>& red,
                       const std::vector<bool>& allowed) {
  while (true) {
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (allowed[c] && sgn(red[c]) < 0) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) return {SimplexEnd::optimal};
    std::size_t leave = t.rows();
    mpq_class best;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (sgn(t.at(r, enter)) <= 0) continue;
      mpq_class ratio = t.at(r, t.cols()) / t.at(r, enter);
      if (leave == t.rows() || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = std::move(ratio);
      }
    }
    if (leave == t.rows()) return {SimplexEnd::unbounded, enter};
    t.pivot(leave, enter, red);
    basis[leave] = enter;
  }
}

// Standard-form image of a LinearSystem together with the map back.
struct StandardForm {
  Tableau tableau{0, 0};
  std::vector<std::size_t> basis;
  std::vector<std::size_t> pos_col;
  std::vector<std::optional<std::size_t>> neg_col;
  std::size_t first_artificial = 0;
};

StandardForm standardize(const LinearSystem& sys) {
  StandardForm sf;
  std::size_t col = 0;
  sf.pos_col.resize(sys.num_vars);
  sf.neg_col.resize(sys.num_vars);
  for (std::size_t j = 0; j < sys.num_vars; ++j) {
    sf.pos_col[j] = col++;
    if (!sys.nonneg[j]) sf.neg_col[j] = col++;
  }
  const std::size_t first_slack = col;
  col += sys.le.rows();
  const std::size_t m = sys.eq.rows() + sys.le.rows();

  // Rows that can start with their slack basic need no artificial.
  std::vector<bool> needs_artificial(m, true);
  for (std::size_t i = 0; i < sys.le.rows(); ++i) {
    needs_artificial[sys.eq.rows() + i] = sys.le_rhs[i].sign() < 0;
  }
  sf.first_artificial = col;
  std::size_t artificials = 0;
  for (bool a : needs_artificial) artificials += a ? 1 : 0;
  const std::size_t width = col + artificials;

  sf.tableau = Tableau(m, width);
  sf.basis.assign(m, 0);
  std::size_t next_artificial = sf.first_artificial;
  for (std::size_t r = 0; r < m; ++r) {
    const bool is_eq = r < sys.eq.rows();
    const std::size_t src = is_eq ? r : r - sys.eq.rows();
    const Matrix& M = is_eq ? sys.eq : sys.le;
    const Rational& b = is_eq ? sys.eq_rhs[src] : sys.le_rhs[src];
    const bool flip = b.sign() < 0;
    for (std::size_t j = 0; j < sys.num_vars; ++j) {
      mpq_class a = M(src, j).value();
      if (flip) a = -a;
      sf.tableau.at(r, sf.pos_col[j]) = a;
      if (sf.neg_col[j]) sf.tableau.at(r, *sf.neg_col[j]) = -a;
    }
    if (!is_eq) sf.tableau.at(r, first_slack + src) = flip ? -1 : 1;
    sf.tableau.rhs(r) = flip ? mpq_class(-b.value()) : b.value();
    if (needs_artificial[r]) {
      sf.tableau.at(r, next_artificial) = 1;
      sf.basis[r] = next_artificial++;
    } else {
      sf.basis[r] = first_slack + src;
    }
  }
  return sf;
}

Vector extract(const StandardForm& sf, std::size_t num_vars, const std::vector<mpq_class>& standard) {
  Vector x(num_vars);
  for (std::size_t j = 0; j < num_vars; ++j) {
    mpq_class v = standard[sf.pos_col[j]];
    if (sf.neg_col[j]) v -= standard[*sf.neg_col[j]];
    x[j] = Rational(std::move(v));
  }
  return x;
}

Vector basic_solution(const StandardForm& sf, std::size_t num_vars) {
  std::vector<mpq_class> standard(sf.tableau.cols());
  for (std::size_t r = 0; r < sf.tableau.rows(); ++r) {
    standard[sf.basis[r]] = sf.tableau.at(r, sf.tableau.cols());
  }
  return extract(sf, num_vars, standard);
}

// Phase one. On success the tableau holds a feasible basis free of
// artificial variables, and the returned mask bans artificial columns.
std::optional<std::vector<bool>> phase_one(StandardForm& sf) {
  Tableau& t = sf.tableau;
  std::vector<mpq_class> cost(t.cols());
  for (std::size_t c = sf.first_artificial; c < t.cols(); ++c) cost[c] = 1;
  std::vector<mpq_class> red = reduced_costs(t, sf.basis, cost);
  std::vector<bool> allowed(t.cols(), true);
  run_simplex(t, sf.basis, red, allowed);
  if (sgn(red[t.cols()]) != 0) return std::nullopt;

  for (std::size_t r = 0; r < t.rows();) {
    if (sf.basis[r] < sf.first_artificial) {
      ++r;
      continue;
    }
    std::size_t c = 0;
    while (c < sf.first_artificial && sgn(t.at(r, c)) == 0) ++c;
    if (c == sf.first_artificial) {
      t.drop_row(r);
      sf.basis.erase(sf.basis.begin() + static_cast<std::ptrdiff_t>(r));
      continue;
    }
    t.pivot(r, c, red);
    sf.basis[r] = c;
    ++r;
  }
  for (std::size_t c = sf.first_artificial; c < t.cols(); ++c) allowed[c] = false;
  return allowed;
}

void check_shape(const LinearSystem& sys) {
  if (sys.eq.cols() != sys.num_vars || sys.le.cols() != sys.num_vars || sys.nonneg.size() != sys.num_vars ||
      sys.eq_rhs.size() != sys.eq.rows() || sys.le_rhs.size() != sys.le.rows()) {
    throw std::invalid_argument("linear system has inconsistent dimensions");
  }
}

}  // namespace

LinearSystem::LinearSystem(std::size_t n, bool all_nonneg)
    : num_vars(n), eq(0, n), le(0, n), nonneg(n, all_nonneg) {}

void LinearSystem::add_eq(const Vector& row, const Rational& rhs) {
  eq.append_row(row);
  eq_rhs.push_back(rhs);
}

void LinearSystem::add_le(const Vector& row, const Rational& rhs) {
  le.append_row(row);
  le_rhs.push_back(rhs);
}

bool LinearSystem::satisfied_by(const Vector& x) const {
  if (x.size() != num_vars) return false;
  for (std::size_t j = 0; j < num_vars; ++j) {
    if (nonneg[j] && x[j].sign() < 0) return false;
  }
  const Vector ex = eq * x;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (ex[i] != eq_rhs[i]) return false;
  }
  const Vector lx = le * x;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (lx[i] > le_rhs[i]) return false;
  }
  return true;
}

LpOutcome feasible(const LinearSystem& sys) {
  check_shape(sys);
  StandardForm sf = standardize(sys);
  LpOutcome out;
  if (!phase_one(sf)) return out;
  out.status = LpStatus::feasible;
  out.witness = basic_solution(sf, sys.num_vars);
  return out;
}

LpOutcome maximize(const LinearSystem& sys, const Vector& objective) {
  check_shape(sys);
  if (objective.size() != sys.num_vars) throw std::invalid_argument("objective has wrong length");
  StandardForm sf = standardize(sys);
  LpOutcome out;
  auto allowed = phase_one(sf);
  if (!allowed) return out;

  Tableau& t = sf.tableau;
  std::vector<mpq_class> cost(t.cols());
  for (std::size_t j = 0; j < sys.num_vars; ++j) {
    cost[sf.pos_col[j]] = -objective[j].value();
    if (sf.neg_col[j]) cost[*sf.neg_col[j]] = objective[j].value();
  }
  std::vector<mpq_class> red = reduced_costs(t, sf.basis, cost);
  const SimplexRun run = run_simplex(t, sf.basis, red, *allowed);
  out.witness = basic_solution(sf, sys.num_vars);
  if (run.end == SimplexEnd::unbounded) {
    out.status = LpStatus::unbounded;
    std::vector<mpq_class> dir(t.cols());
    dir[run.entering] = 1;
    for (std::size_t r = 0; r < t.rows(); ++r) dir[sf.basis[r]] = -t.at(r, run.entering);
    out.ray = extract(sf, sys.num_vars, dir);
    return out;
  }
  out.status = LpStatus::feasible;
  out.optimum = dot(objective, out.witness);
  return out;
}

std::optional<Vector> strictly_positive_solution(const LinearSystem& sys, const std::vector<std::size_t>& vars) {
  LinearSystem base = sys;
  for (auto i : vars) {
    if (i >= base.num_vars) throw std::invalid_argument("strictly_positive_solution: variable out of range");
    base.nonneg[i] = true;
  }
  const LpOutcome first = feasible(base);
  if (first.status == LpStatus::infeasible) return std::nullopt;

  std::vector<Vector> witnesses{first.witness};
  for (auto i : vars) {
    bool covered = false;
    for (const auto& w : witnesses) covered = covered || w[i].sign() > 0;
    if (covered) continue;
    LinearSystem capped = base;
    capped.add_le(unit_vector(base.num_vars, i), 1);
    const LpOutcome best = maximize(capped, unit_vector(base.num_vars, i));
    if (best.status != LpStatus::feasible || best.optimum->sign() <= 0) return std::nullopt;
    witnesses.push_back(best.witness);
  }
  Vector avg = zeros(base.num_vars);
  for (const auto& w : witnesses) avg = avg + w;
  return Rational(1, static_cast<long>(witnesses.size())) * avg;
}

}  // namespace circuit_atlas
