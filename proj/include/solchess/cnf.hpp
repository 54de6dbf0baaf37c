#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace solchess {

/// Literal of a 3-CNF clause: 1-based variable index plus sign.
struct Literal {
    int var = 0;
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Exactly three literals; duplicates within a clause are permitted.
struct Clause {
    std::array<Literal, 3> literals;

    friend bool operator==(const Clause&, const Clause&) = default;
};

struct CnfInstance {
    int num_vars = 0;
    std::vector<Clause> clauses;

    friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

/// Total truth assignment over variables 1..num_vars (index 0 unused).
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int num_vars) : values_(static_cast<std::size_t>(num_vars) + 1, false) {}

    int num_vars() const { return static_cast<int>(values_.size()) - 1; }
    bool value(int var) const { return values_.at(static_cast<std::size_t>(var)); }
    void set(int var, bool v) { values_.at(static_cast<std::size_t>(var)) = v; }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<bool> values_;
};

inline bool satisfies(const Literal& lit, const Assignment& a) {
    return a.value(lit.var) == lit.positive;
}

inline bool satisfies(const Clause& c, const Assignment& a) {
    for (const Literal& lit : c.literals)
        if (satisfies(lit, a)) return true;
    return false;
}

inline bool satisfies(const CnfInstance& cnf, const Assignment& a) {
    for (const Clause& c : cnf.clauses)
        if (!satisfies(c, a)) return false;
    return true;
}

/// Single-clause instances are duplicated to two clauses before reduction;
/// satisfiability is unchanged. Instances with more clauses pass through.
inline CnfInstance pad_single_clause(const CnfInstance& cnf) {
    if (cnf.clauses.size() != 1) return cnf;
    CnfInstance padded = cnf;
    padded.clauses.push_back(cnf.clauses.front());
    return padded;
}

}  // namespace solchess
