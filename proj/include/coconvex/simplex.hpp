#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "coconvex/errors.hpp"

namespace coconvex {

// One inequality row: coeffs . x <= rhs.
struct LpConstraint {
    std::vector<double> coeffs;
    double rhs = 0.0;
};

// min objective . x  subject to the rows, x_j >= 0 unless free_var[j].
// Free variables are split into positive parts internally.
struct LpProblem {
    std::vector<double> objective;
    std::vector<LpConstraint> rows;
    std::vector<bool> free_var;  // empty means all nonnegative
};

struct LpSolution {
    std::vector<double> x;
    double objective = 0.0;
};

namespace detail {

constexpr double kLpCostTol = 1e-9;    // reduced-cost threshold
constexpr double kLpPivotTol = 1e-11;  // pivot element threshold
constexpr double kLpFeasTol = 1e-7;    // phase-1 optimum above this => infeasible
constexpr int kLpRefactorEvery = 40;   // pivots between exact refactorizations
constexpr int kLpMaxPivots = 200000;

// Dictionary-form primal simplex, Bland's rule on both the entering and
// leaving choices, minimization, all variables nonnegative.
//
// Each basic row keeps x_B[i] = val[i] + sum_j tab[i][j] * x_N[j]; the
// objective row is maintained the same way. Rounding error accumulated by
// pivoting is discharged by periodically rebuilding the dictionary
// exactly from the original data: with few structural columns the basis
// is the identity on all but at most n columns, so a refactorization is
// one small dense solve.
class Dictionary {
public:
    Dictionary(const std::vector<double>& c, const std::vector<LpConstraint>& rows)
        : n_(c.size()), m_(rows.size()), b_(m_), cost_(c) {
        A_.assign(m_, std::vector<double>(n_, 0.0));
        for (std::size_t i = 0; i < m_; ++i) {
            b_[i] = rows[i].rhs;
            for (std::size_t j = 0; j < n_ && j < rows[i].coeffs.size(); ++j)
                A_[i][j] = rows[i].coeffs[j];
        }
        reset_to_slack_basis();
    }

    // Returns false when infeasible.
    bool solve() {
        if (!phase_one()) return false;
        phase_ = Phase::Main;
        if (!refactor()) rebuild_objective();
        optimize();
        return true;
    }

    double value_of(std::size_t var) const {
        for (std::size_t i = 0; i < basic_.size(); ++i)
            if (basic_[i] == static_cast<int>(var)) return val_[i];
        return 0.0;
    }

    double objective_value() const { return obj_val_; }

private:
    enum class Phase { Aux, Main };

    std::size_t n_, m_;
    std::vector<std::vector<double>> A_;
    std::vector<double> b_;
    std::vector<double> cost_;

    std::vector<std::vector<double>> tab_;
    std::vector<double> val_;
    std::vector<int> basic_, nonbasic_;
    std::vector<double> obj_row_;
    double obj_val_ = 0.0;
    Phase phase_ = Phase::Main;
    bool artificial_active_ = false;
    int pivots_since_refactor_ = 0;
    long total_pivots_ = 0;

    static constexpr int kArtificial = -1;

    std::size_t rows() const { return basic_.size(); }
    std::size_t cols() const { return nonbasic_.size(); }

    bool is_slack(int label) const { return label >= static_cast<int>(n_); }
    std::size_t slack_row(int label) const { return static_cast<std::size_t>(label) - n_; }

    // equation coefficient of variable `label` in original row r:
    // s_r + sum_v a(r, v) x_v = b_r
    double eq_coeff(std::size_t r, int label) const {
        if (label == kArtificial) return -1.0;
        return A_[r][static_cast<std::size_t>(label)];
    }

    double phase_cost(int label) const {
        if (phase_ == Phase::Aux) return label == kArtificial ? 1.0 : 0.0;
        if (label >= 0 && label < static_cast<int>(n_))
            return cost_[static_cast<std::size_t>(label)];
        return 0.0;
    }

    void reset_to_slack_basis() {
        basic_.resize(m_);
        nonbasic_.resize(n_);
        val_ = b_;
        tab_.assign(m_, std::vector<double>(n_, 0.0));
        for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = static_cast<int>(j);
        for (std::size_t i = 0; i < m_; ++i) {
            basic_[i] = static_cast<int>(n_ + i);
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = -A_[i][j];
        }
    }

    void pivot(std::size_t r, std::size_t e) {
        if (++total_pivots_ > kLpMaxPivots) throw Error("simplex pivot limit exceeded");
        ++pivots_since_refactor_;
        const double inv = 1.0 / tab_[r][e];
        std::vector<double>& rr = tab_[r];
        double new_val = -val_[r] * inv;
        for (std::size_t j = 0; j < rr.size(); ++j) rr[j] = -rr[j] * inv;
        rr[e] = inv;
        val_[r] = new_val;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r) continue;
            double g = tab_[i][e];
            if (g == 0.0) continue;
            val_[i] += g * val_[r];
            for (std::size_t j = 0; j < rr.size(); ++j)
                tab_[i][j] = (j == e) ? g * rr[e] : tab_[i][j] + g * rr[j];
        }
        if (!obj_row_.empty()) {
            double g = obj_row_[e];
            if (g != 0.0) {
                obj_val_ += g * val_[r];
                for (std::size_t j = 0; j < rr.size(); ++j)
                    obj_row_[j] = (j == e) ? g * rr[e] : obj_row_[j] + g * rr[j];
            }
        }
        std::swap(basic_[r], nonbasic_[e]);
    }

    // Rebuild the dictionary exactly from the original data for the
    // current basis. The structural basic variables are recovered from
    // the tight rows (those whose slack is nonbasic) by one small dense
    // solve; everything else is substitution.
    bool refactor() {
        std::vector<std::size_t> tight;       // original rows with nonbasic slack
        std::vector<int> basic_structs;       // structural (or artificial) basic labels
        for (int label : nonbasic_)
            if (is_slack(label)) tight.push_back(slack_row(label));
        for (int label : basic_)
            if (!is_slack(label)) basic_structs.push_back(label);
        const std::size_t k = basic_structs.size();
        if (tight.size() != k) return false;  // inconsistent basis bookkeeping

        // x_S = alpha + G * x_N over the nonbasic vector (all cols() of them):
        // rows T give  M x_S = b_T - s_T - A_{T,N} x_N, where s_T and the
        // structural nonbasics both live in the nonbasic vector.
        std::vector<std::vector<double>> M(k, std::vector<double>(k, 0.0));
        std::vector<std::vector<double>> R(k, std::vector<double>(cols() + 1, 0.0));
        for (std::size_t ti = 0; ti < k; ++ti) {
            std::size_t r = tight[ti];
            for (std::size_t sj = 0; sj < k; ++sj)
                M[ti][sj] = eq_coeff(r, basic_structs[sj]);
            R[ti][cols()] = b_[r];
            for (std::size_t j = 0; j < cols(); ++j) {
                int label = nonbasic_[j];
                if (is_slack(label))
                    R[ti][j] = slack_row(label) == r ? -1.0 : 0.0;
                else
                    R[ti][j] = -eq_coeff(r, label);
            }
        }
        const std::vector<std::vector<double>> M_orig = M;
        const std::vector<std::vector<double>> R_orig = R;

        // Gaussian elimination with partial pivoting on [M | R]
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t piv = col;
            for (std::size_t i = col + 1; i < k; ++i)
                if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
            if (std::abs(M[piv][col]) < 1e-13) return false;  // degenerate basis
            std::swap(M[col], M[piv]);
            std::swap(R[col], R[piv]);
            double inv = 1.0 / M[col][col];
            for (std::size_t j = col; j < k; ++j) M[col][j] *= inv;
            for (std::size_t j = 0; j <= cols(); ++j) R[col][j] *= inv;
            for (std::size_t i = 0; i < k; ++i) {
                if (i == col) continue;
                double g = M[i][col];
                if (g == 0.0) continue;
                for (std::size_t j = col; j < k; ++j) M[i][j] -= g * M[col][j];
                for (std::size_t j = 0; j <= cols(); ++j) R[i][j] -= g * R[col][j];
            }
        }
        // now R[sj] holds the expansion of x_{basic_structs[sj]}; reject the
        // rebuild when the solve lost too much accuracy in any column
        for (std::size_t col = 0; col <= cols(); ++col) {
            double scale = 1.0;
            for (std::size_t ti = 0; ti < k; ++ti)
                scale = std::max(scale, std::abs(R_orig[ti][col]));
            for (std::size_t ti = 0; ti < k; ++ti) {
                double lhs = 0.0;
                for (std::size_t sj = 0; sj < k; ++sj) lhs += M_orig[ti][sj] * R[sj][col];
                if (!std::isfinite(lhs) || std::abs(lhs - R_orig[ti][col]) > 1e-6 * scale)
                    return false;
            }
        }

        std::vector<std::vector<double>> new_tab(rows(), std::vector<double>(cols(), 0.0));
        std::vector<double> new_val(rows(), 0.0);
        for (std::size_t i = 0; i < rows(); ++i) {
            int label = basic_[i];
            if (!is_slack(label)) {
                std::size_t sj = 0;
                while (basic_structs[sj] != label) ++sj;
                for (std::size_t j = 0; j < cols(); ++j) new_tab[i][j] = R[sj][j];
                new_val[i] = R[sj][cols()];
                continue;
            }
            // s_r = b_r - sum_S a(r,v) x_v - sum_{nonbasic structural} a(r,v) x_v
            std::size_t r = slack_row(label);
            new_val[i] = b_[r];
            for (std::size_t sj = 0; sj < k; ++sj) {
                double a = eq_coeff(r, basic_structs[sj]);
                if (a == 0.0) continue;
                new_val[i] -= a * R[sj][cols()];
                for (std::size_t j = 0; j < cols(); ++j) new_tab[i][j] -= a * R[sj][j];
            }
            for (std::size_t j = 0; j < cols(); ++j) {
                int nb = nonbasic_[j];
                if (!is_slack(nb)) new_tab[i][j] -= eq_coeff(r, nb);
            }
        }
        tab_ = std::move(new_tab);
        val_ = std::move(new_val);
        for (double& v : val_)
            if (v < 0.0 && v > -1e-9) v = 0.0;  // clamp refactor jitter
        rebuild_objective();
        pivots_since_refactor_ = 0;
        return true;
    }

    void rebuild_objective() {
        obj_row_.assign(cols(), 0.0);
        obj_val_ = 0.0;
        for (std::size_t j = 0; j < cols(); ++j) obj_row_[j] = phase_cost(nonbasic_[j]);
        for (std::size_t i = 0; i < rows(); ++i) {
            double c = phase_cost(basic_[i]);
            if (c == 0.0) continue;
            obj_val_ += c * val_[i];
            for (std::size_t j = 0; j < cols(); ++j) obj_row_[j] += c * tab_[i][j];
        }
    }

    // Bland: entering = smallest-label improving column; leaving = row
    // with the tightest ratio, ties broken by smallest basic label.
    // Returns true when the current dictionary shows no improving column.
    bool run() {
        for (;;) {
            if (pivots_since_refactor_ >= kLpRefactorEvery) refactor();
            std::size_t e = cols();
            int best_label = 0;
            for (std::size_t j = 0; j < cols(); ++j) {
                if (obj_row_[j] < -kLpCostTol &&
                    (e == cols() || nonbasic_[j] < best_label)) {
                    best_label = nonbasic_[j];
                    e = j;
                }
            }
            if (e == cols()) return true;

            std::size_t r = rows();
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (tab_[i][e] < -kLpPivotTol) {
                    double ratio = val_[i] / (-tab_[i][e]);
                    if (r == rows() || ratio < best_ratio - 1e-12 ||
                        (std::abs(ratio - best_ratio) <= 1e-12 && basic_[i] < basic_[r])) {
                        r = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (r == rows()) throw Unbounded();
            pivot(r, e);
        }
    }

    // Pivot until a freshly refactorized dictionary certifies optimality.
    void optimize() {
        for (int round = 0; round < 64; ++round) {
            run();
            bool exact = refactor();
            bool clean = true;
            for (std::size_t j = 0; j < cols() && clean; ++j)
                if (obj_row_[j] < -kLpCostTol) clean = false;
            if (clean || !exact) return;
        }
    }

    bool phase_one() {
        double worst = 0.0;
        std::size_t worst_row = m_;
        for (std::size_t i = 0; i < rows(); ++i)
            if (val_[i] < worst) {
                worst = val_[i];
                worst_row = i;
            }
        if (worst_row == m_) return true;

        artificial_active_ = true;
        phase_ = Phase::Aux;
        for (std::size_t i = 0; i < rows(); ++i) tab_[i].push_back(1.0);
        nonbasic_.push_back(kArtificial);
        rebuild_objective();
        pivot(worst_row, cols() - 1);
        optimize();
        if (obj_val_ > kLpFeasTol) return false;

        // pivot the artificial variable out, or drop its redundant row
        for (std::size_t i = 0; i < rows(); ++i) {
            if (basic_[i] != kArtificial) continue;
            std::size_t e = cols();
            for (std::size_t j = 0; j < cols(); ++j)
                if (std::abs(tab_[i][j]) > kLpPivotTol &&
                    (e == cols() || nonbasic_[j] < nonbasic_[e]))
                    e = j;
            if (e < cols()) {
                pivot(i, e);
            } else {
                // the row is a linear combination of others; remove it,
                // together with its original-data counterpart bookkeeping
                tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
                val_.erase(val_.begin() + static_cast<std::ptrdiff_t>(i));
                basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(i));
            }
            break;
        }

        std::size_t col = cols();
        for (std::size_t j = 0; j < cols(); ++j)
            if (nonbasic_[j] == kArtificial) col = j;
        if (col < cols()) {
            for (std::size_t i = 0; i < rows(); ++i)
                tab_[i].erase(tab_[i].begin() + static_cast<std::ptrdiff_t>(col));
            nonbasic_.erase(nonbasic_.begin() + static_cast<std::ptrdiff_t>(col));
        }
        artificial_active_ = false;
        return true;
    }
};

}  // namespace detail

// Dense primal simplex for the small minimax programs in this project.
// Deterministic (Bland's rule); throws Infeasible or Unbounded.
inline LpSolution solve_linear_program(const LpProblem& prob) {
    const std::size_t n = prob.objective.size();
    std::vector<bool> free_var = prob.free_var;
    free_var.resize(n, false);

    // map each variable to one or two nonnegative columns
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = ncols++;
        if (free_var[j]) neg_col[j] = ncols++;
    }

    std::vector<double> c(ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        c[pos_col[j]] = prob.objective[j];
        if (neg_col[j] != SIZE_MAX) c[neg_col[j]] = -prob.objective[j];
    }
    std::vector<LpConstraint> rows(prob.rows.size());
    for (std::size_t i = 0; i < prob.rows.size(); ++i) {
        rows[i].rhs = prob.rows[i].rhs;
        rows[i].coeffs.assign(ncols, 0.0);
        for (std::size_t j = 0; j < n && j < prob.rows[i].coeffs.size(); ++j) {
            double a = prob.rows[i].coeffs[j];
            rows[i].coeffs[pos_col[j]] = a;
            if (neg_col[j] != SIZE_MAX) rows[i].coeffs[neg_col[j]] = -a;
        }
    }

    detail::Dictionary dict(c, rows);
    if (!dict.solve()) throw Infeasible();

    LpSolution sol;
    sol.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double v = dict.value_of(pos_col[j]);
        if (neg_col[j] != SIZE_MAX) v -= dict.value_of(neg_col[j]);
        sol.x[j] = v;
    }
    sol.objective = dict.objective_value();
    return sol;
}

}  // namespace coconvex
