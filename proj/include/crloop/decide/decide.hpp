#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crloop/closedform/closed_form.hpp"
#include "crloop/loop/loop.hpp"
#include "crloop/polyexp/polyexp.hpp"

namespace crl {

/// One guard conjunct after substituting the closed form: t(x, n) (rel) 0.
struct PsiConjunct {
    PolyExp t;
    Rel rel = Rel::Ge;
};
using Psi = std::vector<PsiConjunct>;

struct DecideOptions {
    /// Ceiling on the number of live conjuncts during elimination.
    std::size_t max_conjuncts = 200000;
    /// Ceiling for the unrolling depth when computing the bound.
    std::size_t max_unroll = 10000;
    bool compute_bound = true;
    /// Drop combinations derived from more than k+1 original conjuncts
    /// after k eliminations (redundant by Chernikov's rule).
    bool history_pruning = true;
    /// Forced elimination order; variables not listed follow the heuristic.
    std::vector<std::string> elimination_order;
};

enum class VerdictKind { Constant, NonConstant };

struct Trace {
    bool chained = false;
    std::size_t n0 = 0;
    unsigned long rb = 0;
    ClosedForm closed_form;
    Psi psi;
    std::size_t pi_size = 0;
    std::vector<std::string> elimination_order;
    /// Largest number of conjuncts alive during elimination.
    std::size_t peak_conjuncts = 0;
    /// Variable-free conjuncts remaining after elimination and pruning.
    std::vector<SymIneq> ground;
};

struct Verdict {
    VerdictKind kind = VerdictKind::NonConstant;
    /// Worst-case number of iterations; set iff kind is Constant (and the
    /// bound was requested).
    std::optional<std::size_t> bound;
    Trace trace;
};

/// Decides whether the loop has constant runtime. Throws UnsupportedLoop for
/// non-real eigenvalues and ResourceLimit when a ceiling is hit.
Verdict decide(const Loop& loop, const DecideOptions& options = {});

Psi build_instantiated_guard(const Loop& loop, const ClosedForm& cf);
unsigned long guard_rootbound(const Psi& psi);
/// Conjuncts of psi at n = n0 + j*m for j = 0..rb.
std::vector<SymIneq> build_pi(const Psi& psi, unsigned long rb, std::size_t n0);

/// Eliminates x: combines each conjunct whose x-coefficient is eventually
/// positive with each one whose coefficient is eventually negative.
std::vector<SymIneq> fm_eliminate(const std::vector<SymIneq>& pi, const std::string& x);

/// Drops exact duplicates, variable-free conjuncts whose eventual sign is
/// +1, and the trivially true 0 >= 0.
std::vector<SymIneq> prune(std::vector<SymIneq> pi);

enum class LargeM { Unsat, Sat };
/// Requires a variable-free system.
LargeM final_verdict(const std::vector<SymIneq>& ground);

/// Smallest c such that the c-fold unrolled guard is unsatisfiable. Throws
/// ResourceLimit if c would exceed max_unroll.
std::size_t compute_bound(const Loop& loop, std::size_t max_unroll);

struct SimulationResult {
    std::size_t steps = 0;
    bool halted = false;
};
SimulationResult simulate(const Loop& loop, Vector v, std::size_t max_steps);

/// Brute-force cross-check by unrolling only: the smallest c <= k with an
/// unsatisfiable unrolled guard, or nothing if it is satisfiable through k.
std::optional<std::size_t> unroll_oracle(const Loop& loop, std::size_t k);

}  // namespace crl
