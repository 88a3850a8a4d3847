#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "medigraph/ilp.hpp"
#include "medigraph/rational.hpp"

namespace mg {
namespace detail {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Bounded-variable revised simplex over exact rationals with an explicit
// dense basis inverse and sparse columns. Phase one uses one artificial per
// row. Re-optimization after bound changes runs the dual simplex from the
// current basis, repairing nonbasic statuses first so the start is dual
// feasible. Dantzig pricing switches to Bland's rule after a pivot-count
// threshold, which rules out cycling.
class SimplexEngine {
public:
    struct Bnd {
        bool finite = false;
        Rat value;
    };

    explicit SimplexEngine(const IlpModel& model) {
        n_struct_ = (int)model.variables.size();
        negate_objective_ = model.objective.sense == ObjSense::Max;
        obj_constant_ = model.objective.constant;

        cols_.resize(n_struct_);
        lo_.resize(n_struct_);
        hi_.resize(n_struct_);
        cost_.assign(n_struct_, Rat(0));
        is_artificial_.assign(n_struct_, 0);
        for (int j = 0; j < n_struct_; ++j) {
            lo_[j] = {true, model.variables[j].lb};
            hi_[j] = {true, model.variables[j].ub};
        }
        for (const auto& [v, c] : model.objective.coeffs)
            cost_[v] = negate_objective_ ? Rat(-c) : c;
        for (const auto& row : model.constraints)
            append_row(row.coeffs, row.sense, row.rhs);
        basis_valid_ = false;
    }

    int num_structural() const { return n_struct_; }
    int num_rows() const { return m_; }
    long pivots() const { return pivot_count_; }

    void set_bounds(int var, const Rat& lb, const Rat& ub) {
        lo_[var] = {true, lb};
        hi_[var] = {true, ub};
        state_dirty_ = true;
    }

    void get_bounds(int var, Rat& lb, Rat& ub) const {
        lb = lo_[var].value;
        ub = hi_[var].value;
    }

    // Appends a row; if a basis is active its slack joins the basis so the
    // factorization extends in place and dual feasibility is preserved.
    void add_row(const std::map<int, Rat>& coeffs, Sense sense, const Rat& rhs) {
        int slack = append_row(coeffs, sense, rhs);
        if (!basis_valid_) return;
        int i = m_ - 1;
        for (auto& row : binv_) row.push_back(Rat(0));
        std::vector<Rat> newrow(m_, Rat(0));
        newrow[i] = Rat(1);
        for (int k = 0; k < i; ++k) {
            Rat ab(0);
            auto it = coeffs.find(basic_[k]);
            if (it != coeffs.end()) ab = it->second;
            if (ab != 0)
                for (int t = 0; t < i; ++t)
                    if (binv_[k][t] != 0) newrow[t] -= ab * binv_[k][t];
        }
        binv_.push_back(std::move(newrow));
        basic_.push_back(slack);
        pos_[slack] = i;
        xb_.push_back(Rat(0));
        state_dirty_ = true;
    }

    // Full primal solve from the artificial basis (two phases).
    LpStatus solve_from_scratch() {
        reset_basis_to_artificials();
        if (!phase_one()) return LpStatus::Infeasible;
        in_phase_one_ = false;
        return primal_loop();
    }

    // Warm re-optimization after bound changes; falls back to a fresh solve
    // when no basis is active.
    LpStatus reoptimize() {
        if (!basis_valid_) return solve_from_scratch();
        in_phase_one_ = false;
        repair_dual_feasibility();
        LpStatus st = dual_loop();
        if (st != LpStatus::Optimal) return st;
        return primal_loop();  // usually a no-op pass confirming optimality
    }

    Rat objective_value() const {
        Rat lin(0);
        for (int j = 0; j < (int)cols_.size(); ++j)
            if (cost_[j] != 0) lin += cost_[j] * value_of(j);
        if (negate_objective_) lin = -lin;
        return obj_constant_ + lin;
    }

    Rat value_of(int var) const {
        if (pos_[var] >= 0) return xb_[pos_[var]];
        return nonbasic_value(var);
    }

    std::vector<Rat> structural_values() const {
        std::vector<Rat> out((std::size_t)n_struct_);
        for (int j = 0; j < n_struct_; ++j) out[j] = value_of(j);
        return out;
    }

private:
    int n_struct_ = 0, m_ = 0;
    bool negate_objective_ = false;
    Rat obj_constant_;
    std::vector<std::vector<std::pair<int, Rat>>> cols_;
    std::vector<Bnd> lo_, hi_;
    std::vector<Rat> cost_;  // minimization costs
    std::vector<Rat> rhs_;
    std::vector<Rat> phase1_cost_;
    std::vector<char> is_artificial_;
    std::vector<int> art_of_row_;

    std::vector<int> basic_;  // var per row
    std::vector<int> pos_;    // row of var, -1 if nonbasic
    std::vector<char> at_upper_;
    std::vector<std::vector<Rat>> binv_;
    std::vector<Rat> xb_;
    bool basis_valid_ = false;
    bool in_phase_one_ = false;
    bool state_dirty_ = true;
    long pivot_count_ = 0;

    int append_row(const std::map<int, Rat>& coeffs, Sense sense, const Rat& rhs) {
        int i = m_++;
        for (const auto& [v, c] : coeffs)
            if (c != 0) cols_[v].push_back({i, c});
        int slack = (int)cols_.size();
        cols_.emplace_back(std::vector<std::pair<int, Rat>>{{i, Rat(1)}});
        switch (sense) {
            case Sense::Le: lo_.push_back({true, Rat(0)}); hi_.push_back({false, Rat(0)}); break;
            case Sense::Ge: lo_.push_back({false, Rat(0)}); hi_.push_back({true, Rat(0)}); break;
            case Sense::Eq: lo_.push_back({true, Rat(0)}); hi_.push_back({true, Rat(0)}); break;
        }
        cost_.push_back(Rat(0));
        is_artificial_.push_back(0);
        int art = (int)cols_.size();
        cols_.emplace_back(std::vector<std::pair<int, Rat>>{{i, Rat(1)}});
        lo_.push_back({true, Rat(0)});
        hi_.push_back({true, Rat(0)});  // pinned except during phase one
        cost_.push_back(Rat(0));
        is_artificial_.push_back(1);
        art_of_row_.push_back(art);
        rhs_.push_back(rhs);
        pos_.resize(cols_.size(), -1);
        at_upper_.resize(cols_.size(), 0);
        return slack;
    }

    bool movable(int j) const {
        if (lo_[j].finite && hi_[j].finite && lo_[j].value == hi_[j].value) return false;
        return true;
    }

    Rat nonbasic_value(int j) const {
        if (at_upper_[j] && hi_[j].finite) return hi_[j].value;
        if (lo_[j].finite) return lo_[j].value;
        return hi_[j].finite ? hi_[j].value : Rat(0);
    }

    const Rat& current_cost(int j) const { return in_phase_one_ ? phase1_cost_[j] : cost_[j]; }

    void reset_basis_to_artificials() {
        basic_.resize(m_);
        pos_.assign(cols_.size(), -1);
        at_upper_.assign(cols_.size(), 0);
        binv_.assign(m_, std::vector<Rat>(m_, Rat(0)));
        xb_.assign(m_, Rat(0));
        for (int i = 0; i < m_; ++i) {
            basic_[i] = art_of_row_[i];
            pos_[basic_[i]] = i;
            binv_[i][i] = Rat(1);
        }
        for (int j = 0; j < (int)cols_.size(); ++j)
            if (pos_[j] < 0) at_upper_[j] = !lo_[j].finite;
        basis_valid_ = true;
        state_dirty_ = true;
    }

    void recompute_xb() {
        if (!state_dirty_) return;
        std::vector<Rat> resid = rhs_;
        for (int j = 0; j < (int)cols_.size(); ++j) {
            if (pos_[j] >= 0) continue;
            Rat v = nonbasic_value(j);
            if (v == 0) continue;
            for (const auto& [i, c] : cols_[j]) resid[i] -= c * v;
        }
        for (int k = 0; k < m_; ++k) {
            Rat acc(0);
            const auto& row = binv_[k];
            for (int i = 0; i < m_; ++i)
                if (row[i] != 0 && resid[i] != 0) acc += row[i] * resid[i];
            xb_[k] = acc;
        }
        state_dirty_ = false;
    }

    std::vector<Rat> dual_prices() const {
        std::vector<Rat> y(m_, Rat(0));
        for (int k = 0; k < m_; ++k) {
            const Rat& cb = current_cost(basic_[k]);
            if (cb == 0) continue;
            const auto& row = binv_[k];
            for (int i = 0; i < m_; ++i)
                if (row[i] != 0) y[i] += cb * row[i];
        }
        return y;
    }

    Rat reduced_cost(int j, const std::vector<Rat>& y) const {
        Rat d = current_cost(j);
        for (const auto& [i, c] : cols_[j])
            if (y[i] != 0) d -= y[i] * c;
        return d;
    }

    std::vector<Rat> ftran(int j) const {
        std::vector<Rat> w(m_, Rat(0));
        for (const auto& [i, c] : cols_[j])
            for (int k = 0; k < m_; ++k)
                if (binv_[k][i] != 0) w[k] += binv_[k][i] * c;
        return w;
    }

    void update_inverse(int row, const std::vector<Rat>& w) {
        const Rat piv = w[row];
        assert(piv != 0);
        if (piv != 1) {
            Rat inv = Rat(1) / piv;
            for (auto& e : binv_[row]) e *= inv;
        }
        for (int k = 0; k < m_; ++k) {
            if (k == row || w[k] == 0) continue;
            const Rat& f = w[k];
            auto& dst = binv_[k];
            const auto& src = binv_[row];
            for (int i = 0; i < m_; ++i)
                if (src[i] != 0) dst[i] -= f * src[i];
        }
        ++pivot_count_;
    }

    // After relaxing bounds (e.g. backtracking in branch and bound) a
    // nonbasic variable may sit at a bound whose reduced-cost sign is wrong;
    // flipping it to the opposite finite bound restores dual feasibility.
    void repair_dual_feasibility() {
        std::vector<Rat> y = dual_prices();
        for (int j = 0; j < (int)cols_.size(); ++j) {
            if (pos_[j] >= 0 || !movable(j)) continue;
            Rat d = reduced_cost(j, y);
            if (d < 0 && !at_upper_[j] && hi_[j].finite) {
                at_upper_[j] = 1;
                state_dirty_ = true;
            } else if (d > 0 && at_upper_[j] && lo_[j].finite) {
                at_upper_[j] = 0;
                state_dirty_ = true;
            }
        }
    }

    bool phase_one() {
        in_phase_one_ = true;
        phase1_cost_.assign(cols_.size(), Rat(0));
        std::vector<Rat> resid = rhs_;
        for (int j = 0; j < (int)cols_.size(); ++j) {
            if (pos_[j] >= 0) continue;
            Rat v = nonbasic_value(j);
            if (v == 0) continue;
            for (const auto& [i, c] : cols_[j]) resid[i] -= c * v;
        }
        for (int i = 0; i < m_; ++i) {
            int a = art_of_row_[i];
            if (resid[i] >= 0) {
                lo_[a] = {true, Rat(0)};
                hi_[a] = {false, Rat(0)};
                phase1_cost_[a] = Rat(1);
            } else {
                lo_[a] = {false, Rat(0)};
                hi_[a] = {true, Rat(0)};
                phase1_cost_[a] = Rat(-1);
            }
        }
        state_dirty_ = true;
        LpStatus st = primal_loop();
        if (st == LpStatus::Unbounded) throw std::logic_error("phase one unbounded");
        Rat infeas(0);
        for (int k = 0; k < m_; ++k)
            if (is_artificial_[basic_[k]]) infeas += abs(xb_[k]);
        for (int i = 0; i < m_; ++i) {
            int a = art_of_row_[i];
            lo_[a] = {true, Rat(0)};
            hi_[a] = {true, Rat(0)};
            if (pos_[a] < 0) at_upper_[a] = 0;
        }
        in_phase_one_ = false;
        return infeas == 0;
    }

    LpStatus primal_loop() {
        recompute_xb();
        long local = 0;
        while (true) {
            if (++local > 5000000L) throw std::runtime_error("simplex pivot limit exceeded");
            bool bland = local > bland_threshold();
            std::vector<Rat> y = dual_prices();
            int enter = -1;
            bool enter_increase = true;
            Rat best(0);
            for (int j = 0; j < (int)cols_.size(); ++j) {
                if (pos_[j] >= 0 || !movable(j)) continue;
                Rat d = reduced_cost(j, y);
                if (!at_upper_[j] && d < 0) {
                    if (bland) { enter = j; enter_increase = true; break; }
                    if (enter < 0 || -d > best) { enter = j; enter_increase = true; best = -d; }
                } else if (at_upper_[j] && d > 0) {
                    if (bland) { enter = j; enter_increase = false; break; }
                    if (enter < 0 || d > best) { enter = j; enter_increase = false; best = d; }
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            const int sigma = enter_increase ? 1 : -1;
            std::vector<Rat> w = ftran(enter);
            bool limited = false;
            Rat tmax(0);
            int leave = -1;
            bool leave_to_upper = false;
            for (int k = 0; k < m_; ++k) {
                if (w[k] == 0) continue;
                Rat rate = Rat(sigma) * w[k];
                int bv = basic_[k];
                if (rate > 0 && lo_[bv].finite) {
                    Rat t = (xb_[k] - lo_[bv].value) / rate;
                    if (!limited || t < tmax || (t == tmax && bv < basic_[leave])) {
                        limited = true; tmax = t; leave = k; leave_to_upper = false;
                    }
                } else if (rate < 0 && hi_[bv].finite) {
                    Rat t = (hi_[bv].value - xb_[k]) / (-rate);
                    if (!limited || t < tmax || (t == tmax && bv < basic_[leave])) {
                        limited = true; tmax = t; leave = k; leave_to_upper = true;
                    }
                }
            }
            bool flip = false;
            if (lo_[enter].finite && hi_[enter].finite) {
                Rat range = hi_[enter].value - lo_[enter].value;
                if (!limited || range <= tmax) {
                    flip = true;
                    tmax = range;
                    limited = true;
                }
            }
            if (!limited) return LpStatus::Unbounded;

            if (tmax != 0)
                for (int k = 0; k < m_; ++k)
                    if (w[k] != 0) xb_[k] -= Rat(sigma) * tmax * w[k];
            if (flip) {
                at_upper_[enter] = !at_upper_[enter];
                continue;
            }
            Rat enter_val = nonbasic_value(enter) + Rat(sigma) * tmax;
            int out_var = basic_[leave];
            basic_[leave] = enter;
            pos_[enter] = leave;
            pos_[out_var] = -1;
            at_upper_[out_var] = leave_to_upper;
            update_inverse(leave, w);
            xb_[leave] = enter_val;
        }
    }

    LpStatus dual_loop() {
        recompute_xb();
        long local = 0;
        while (true) {
            if (++local > 5000000L) throw std::runtime_error("dual simplex pivot limit exceeded");
            bool bland = local > bland_threshold();
            int row = -1;
            bool below = false;
            Rat worst(0);
            for (int k = 0; k < m_; ++k) {
                int bv = basic_[k];
                if (lo_[bv].finite && xb_[k] < lo_[bv].value) {
                    if (bland) { if (row < 0 || bv < basic_[row]) { row = k; below = true; } }
                    else {
                        Rat v = lo_[bv].value - xb_[k];
                        if (row < 0 || v > worst) { row = k; below = true; worst = v; }
                    }
                } else if (hi_[bv].finite && xb_[k] > hi_[bv].value) {
                    if (bland) { if (row < 0 || bv < basic_[row]) { row = k; below = false; } }
                    else {
                        Rat v = xb_[k] - hi_[bv].value;
                        if (row < 0 || v > worst) { row = k; below = false; worst = v; }
                    }
                }
            }
            if (row < 0) return LpStatus::Optimal;

            std::vector<Rat> y = dual_prices();
            const std::vector<Rat>& rho = binv_[row];
            int enter = -1;
            Rat best_num(0), best_den(1);
            for (int j = 0; j < (int)cols_.size(); ++j) {
                if (pos_[j] >= 0 || !movable(j)) continue;
                Rat alpha(0);
                for (const auto& [i, c] : cols_[j])
                    if (rho[i] != 0) alpha += rho[i] * c;
                if (alpha == 0) continue;
                bool eligible = below
                                    ? ((!at_upper_[j] && alpha < 0) || (at_upper_[j] && alpha > 0))
                                    : ((!at_upper_[j] && alpha > 0) || (at_upper_[j] && alpha < 0));
                if (!eligible) continue;
                Rat dn = abs(reduced_cost(j, y)), da = abs(alpha);
                if (enter < 0 || dn * best_den < best_num * da ||
                    (dn * best_den == best_num * da && j < enter)) {
                    enter = j;
                    best_num = dn;
                    best_den = da;
                }
            }
            if (enter < 0) return LpStatus::Infeasible;

            std::vector<Rat> w = ftran(enter);
            const Rat alpha = w[row];
            int out_var = basic_[row];
            Rat target = below ? lo_[out_var].value : hi_[out_var].value;
            Rat delta = (target - xb_[row]) / (-alpha);
            Rat enter_val = nonbasic_value(enter) + delta;
            if (delta != 0)
                for (int k = 0; k < m_; ++k)
                    if (w[k] != 0) xb_[k] -= delta * w[k];
            basic_[row] = enter;
            pos_[enter] = row;
            pos_[out_var] = -1;
            at_upper_[out_var] = !below;
            update_inverse(row, w);
            xb_[row] = enter_val;
        }
    }

    long bland_threshold() const { return 4L * (m_ + (long)cols_.size()) + 400; }
};

}  // namespace detail
}  // namespace mg
