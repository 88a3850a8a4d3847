#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "medigraph/rational.hpp"

namespace mg {

enum class VarKind { Binary, Continuous };
enum class Sense { Le, Eq, Ge };
enum class ObjSense { Min, Max };
enum class SolveStatus { Optimal, Infeasible, Unbounded, LimitReached };
enum class BranchRule { MostFractional, LowestIndex };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    Rat lb;  // Binary defaults to [0,1]; bounds may pin a binary to a value.
    Rat ub;
};

struct LinearConstraint {
    std::map<int, Rat> coeffs;
    Sense sense = Sense::Le;
    Rat rhs;
};

struct Objective {
    ObjSense sense = ObjSense::Min;
    std::map<int, Rat> coeffs;
    Rat constant;
};

// Mixed 0/1 linear model with exact rational data.
struct IlpModel {
    std::vector<Variable> variables;
    std::vector<LinearConstraint> constraints;
    Objective objective;

    int add_binary(const std::string& name) {
        variables.push_back({name, VarKind::Binary, Rat(0), Rat(1)});
        return (int)variables.size() - 1;
    }

    int add_continuous(const std::string& name, const Rat& lb, const Rat& ub) {
        if (lb > ub) throw std::invalid_argument("variable bounds lb > ub: " + name);
        variables.push_back({name, VarKind::Continuous, lb, ub});
        return (int)variables.size() - 1;
    }

    void fix(int var, const Rat& value) {
        check_var(var);
        if (variables[var].kind == VarKind::Binary && value != 0 && value != 1)
            throw std::invalid_argument("binary fixed to non 0/1 value");
        variables[var].lb = value;
        variables[var].ub = value;
    }

    void add_constraint(std::map<int, Rat> coeffs, Sense sense, Rat rhs) {
        for (const auto& [v, c] : coeffs) check_var(v);
        constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
    }

    void set_objective(ObjSense sense, std::map<int, Rat> coeffs, Rat constant = Rat(0)) {
        for (const auto& [v, c] : coeffs) check_var(v);
        objective = {sense, std::move(coeffs), std::move(constant)};
    }

    void check_var(int v) const {
        if (v < 0 || v >= (int)variables.size())
            throw std::invalid_argument("constraint references undeclared variable");
    }
};

struct SolveStats {
    long nodes = 0;
    long pivots = 0;
};

struct IlpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    Rat objective;
    std::vector<Rat> assignment;  // empty unless an incumbent exists
    SolveStats stats;
};

struct SolveConfig {
    std::optional<long> node_limit;
    std::optional<double> time_limit;  // seconds
    BranchRule branch_rule = BranchRule::MostFractional;
    long deterministic_seed = 0;  // recorded for reproducibility; search is deterministic

    SolveConfig() {
        if (node_limit && *node_limit <= 0) throw std::invalid_argument("node_limit must be positive");
    }
};

// Appends the standard no-good cut sum(ones) <= |ones|-1, excluding the
// all-ones assignment of the given binaries from future solutions.
inline void add_nogood(IlpModel& model, const std::set<int>& ones) {
    if (ones.empty()) throw std::invalid_argument("no-good cut over empty variable set");
    std::map<int, Rat> coeffs;
    for (int v : ones) {
        model.check_var(v);
        if (model.variables[v].kind != VarKind::Binary)
            throw std::invalid_argument("no-good cut over non-binary variable");
        coeffs[v] = Rat(1);
    }
    model.add_constraint(std::move(coeffs), Sense::Le, Rat((long)ones.size() - 1));
}

namespace detail {

inline std::string lp_safe_name(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (std::isalnum((unsigned char)c) || c == '_') out += c;
        else if (c == '-') out += 'm';
        else out += '_';
    }
    if (out.empty() || std::isdigit((unsigned char)out[0])) out.insert(out.begin(), 'v');
    return out;
}

inline void lp_write_terms(std::ostream& os, const IlpModel& m, const std::map<int, Rat>& coeffs) {
    bool first = true;
    for (const auto& [v, c] : coeffs) {
        if (c == 0) continue;
        std::string mag = rat_to_decimal(abs(c));
        os << (first ? (c < 0 ? "- " : "") : (c < 0 ? " - " : " + "));
        if (mag != "1") os << mag << " ";
        os << lp_safe_name(m.variables[v].name);
        first = false;
    }
    if (first) os << "0";
}

}  // namespace detail

// Industry-standard LP text rendering. Coefficients appear as decimal
// strings; values without a finite decimal expansion carry their exact
// numerator/denominator in a leading comment block.
inline std::string export_lp(const IlpModel& m, const std::string& name = "model") {
    std::ostringstream os;
    os << "\\ Problem: " << name << "\n";
    std::ostringstream exact;
    auto note = [&](const std::string& where, const std::string& label, const Rat& q) {
        if (!has_finite_decimal(q))
            exact << "\\   " << where << " " << label << " = " << rat_to_string(q) << "\n";
    };
    note("objective", "constant", m.objective.constant);
    for (const auto& [v, c] : m.objective.coeffs)
        note("objective", detail::lp_safe_name(m.variables[v].name), c);
    for (std::size_t i = 0; i < m.constraints.size(); ++i) {
        const auto& row = m.constraints[i];
        std::string rowname = "c" + std::to_string(i);
        for (const auto& [v, c] : row.coeffs)
            note(rowname, detail::lp_safe_name(m.variables[v].name), c);
        note(rowname, "rhs", row.rhs);
    }
    for (const auto& var : m.variables) {
        note("bound", detail::lp_safe_name(var.name) + ".lb", var.lb);
        note("bound", detail::lp_safe_name(var.name) + ".ub", var.ub);
    }
    if (!exact.str().empty())
        os << "\\ Exact rational values for inexact decimals below:\n" << exact.str();

    os << (m.objective.sense == ObjSense::Min ? "Minimize" : "Maximize") << "\n obj: ";
    detail::lp_write_terms(os, m, m.objective.coeffs);
    if (m.objective.constant != 0) {
        const Rat& k = m.objective.constant;
        os << (k < 0 ? " - " : " + ") << rat_to_decimal(abs(k));
    }
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < m.constraints.size(); ++i) {
        const auto& row = m.constraints[i];
        os << " c" << i << ": ";
        detail::lp_write_terms(os, m, row.coeffs);
        os << (row.sense == Sense::Le ? " <= " : row.sense == Sense::Eq ? " = " : " >= ");
        os << rat_to_decimal(row.rhs) << "\n";
    }
    os << "Bounds\n";
    for (const auto& var : m.variables) {
        std::string vn = detail::lp_safe_name(var.name);
        if (var.lb == var.ub)
            os << " " << vn << " = " << rat_to_decimal(var.lb) << "\n";
        else if (var.kind == VarKind::Continuous || var.lb != 0 || var.ub != 1)
            os << " " << rat_to_decimal(var.lb) << " <= " << vn << " <= "
               << rat_to_decimal(var.ub) << "\n";
    }
    bool any_bin = false;
    for (const auto& var : m.variables) any_bin |= (var.kind == VarKind::Binary);
    if (any_bin) {
        os << "Binaries\n";
        for (const auto& var : m.variables)
            if (var.kind == VarKind::Binary) os << " " << detail::lp_safe_name(var.name) << "\n";
    }
    os << "End\n";
    return os.str();
}

}  // namespace mg
