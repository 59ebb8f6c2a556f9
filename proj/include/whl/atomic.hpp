#pragma once

#include <string_view>
#include <vector>

#include "whl/grid.hpp"
#include "whl/martingale.hpp"

namespace whl {

/// Which maximal quantity controls the atoms: s (1), S (2) or M (3).
enum class AtomKind { CondSquare = 1, Square = 2, Maximal = 3 };

std::string_view to_string(AtomKind kind);
/// Accepts "s", "S", "M" (or "1", "2", "3"). Throws std::invalid_argument otherwise.
AtomKind parse_atom_kind(std::string_view name);

struct AtomEntry {
    int k;
    double mu;
    StoppingTime tau;
    Martingale atom;
};

/**
 * Output of a stopping-time atomic decomposition.
 *
 * The decomposition acts on f - E f (atoms have vanishing expectation), so the
 * original terminal is mean + sum_k mu_k a^k.
 */
struct AtomBundle {
    AtomKind kind;
    VariableExponent exponent;
    double mean = 0.0;
    std::vector<AtomEntry> entries;

    GridFunction reconstruct() const;
    /// mean + sum of mu_k a^k over entries with first <= k <= last.
    GridFunction partial_sum(int first, int last) const;
};

/**
 * Canonical decomposition with thresholds 2^k.
 *
 * s:   tau_k = inf{n : s_{n+1}(f) > 2^k}
 * S/M: rho_k = inf{n : g_n > 2^k} with g_n = S_n(f) or |f_n|; F_j^k is the union of the
 *      level-(j-1) atoms meeting {rho_k = j}, and tau_k = inf{n : x in F_{n+1}^k}.
 * mu_k = 3 2^k |chi_{tau_k < inf}|_{p(.)} and a^k = (f^{tau_{k+1}} - f^{tau_k}) / mu_k.
 * Entries whose difference vanishes identically are omitted.
 *
 * For S and M the filtration's regularity constant must not exceed `max_regularity`
 * (std::domain_error otherwise).
 */
AtomBundle decompose(const Martingale& m, const VariableExponent& exp, AtomKind kind,
                     double max_regularity = 1e300);

struct AtomCheck {
    bool passed = false;
    /// max |a_n(x)| over n <= tau(x); should be 0.
    double vanishing_residual = 0.0;
    /// 1/|chi_{tau<inf}|_{p(.)} - |g(a)|_inf; negative means the size bound fails.
    double bound_slack = 0.0;
};

/// Checks both atom conditions with tolerance 1e-9.
AtomCheck verify_atom(const Martingale& a, const StoppingTime& tau, const VariableExponent& exp, AtomKind kind);

struct AtomicNormMode {
    enum class Kind { Sequence, TSum };
    Kind kind;
    /// q in (0, inf] for Sequence, t in (0, underline p) for TSum.
    double param;

    static AtomicNormMode sequence(double q) { return {Kind::Sequence, q}; }
    static AtomicNormMode tsum(double t) { return {Kind::TSum, t}; }
};

/**
 * Sequence mode: |(mu_k)|_{l_q}.
 * TSum mode: |[sum_k (mu_k chi_{tau_k<inf} / |chi_{tau_k<inf}|)^t]^(1/t)|_{p(.)}.
 * Evaluated for this bundle only (no infimum over decompositions).
 */
double atomic_norm(const AtomBundle& bundle, AtomicNormMode mode);

}  // namespace whl
