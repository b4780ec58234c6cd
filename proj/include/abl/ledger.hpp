#pragma once

#include <abl/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace abl {

enum class LedgerMode { Paper, Practical };

// Constants driving the embedding engine. Paper mode derives the dependent
// constants from (C, a, Delta_R, kappa, delta, c, mu, r) verbatim; practical
// mode takes them from the user and validates only positivity and the
// ordering chain xi <= eps <= alpha <= eps' <= lambda <= gamma <= mu, delta.
struct ConstantsLedger {
    LedgerMode mode = LedgerMode::Practical;

    int cap_c = 0;   // C, permissible image restrictions per cluster
    int a = 1;       // arrangeability of the ordering in use
    int delta_r = 2; // strict upper bound on the reduced-graph degree
    int kappa = 1;
    int r = 1;

    long double delta = 0.5; // pair density
    long double c = 1.0;     // relative image-restriction size
    long double mu = 0.1;    // leftover fraction

    long double gamma = 0.0;     // criticality threshold
    long double lambda = 0.0;    // relative size of the protected ending
    long double eps_prime = 0.0; // queue capacity / auxiliary regularity
    long double eps = 0.0;       // pair regularity
    long double alpha = 0.0;     // image-restricted fraction
    long double xi = 0.0;        // degree-bound constant

    long double n0 = 0.0; // max of the three admissibility floors
    bool n0_overflow = false;
    bool chain_ok = false;
    bool eps1_ok = false; // (delta - eps)^a >= 0.9 delta^a
    bool underflow = false;

    double iota = 0.0; // tuple-condition mode when positive

    // Desk-scale tolerances for the two places the algorithm consumes eps
    // directly. They default to eps; practical runs may widen them, and every
    // report records the values actually used.
    double filter_eps = 0.0; // step-1 candidate-splitting conditions
    double init_eps = 0.0;   // initialisation balance check

    double filter_tolerance() const { return filter_eps > 0.0 ? filter_eps : static_cast<double>(eps); }
    double init_tolerance() const { return init_eps > 0.0 ? init_eps : static_cast<double>(eps); }
};

namespace detail {

inline bool chain_holds(const ConstantsLedger& l)
{
    const long double top = std::min(l.mu, l.delta);
    return l.xi > 0 && l.xi <= l.eps && l.eps <= l.alpha && l.alpha <= l.eps_prime &&
           l.eps_prime <= l.lambda && l.lambda <= l.gamma && l.gamma <= top && l.mu <= 1.0L &&
           l.delta <= 1.0L;
}

inline void finish_flags(ConstantsLedger& l)
{
    l.chain_ok = chain_holds(l);
    l.eps1_ok = std::pow(l.delta - l.eps, static_cast<long double>(l.a)) >=
                0.9L * std::pow(l.delta, static_cast<long double>(l.a));
    l.underflow = !(l.xi > 0.0L) || !(l.eps > 0.0L);
}

} // namespace detail

struct PaperLedgerInputs {
    int cap_c = 0;
    int a = 1;
    int delta_r = 2;
    int kappa = 1;
    int r = 1;
    long double delta = 0.5;
    long double c = 1.0;
    long double mu = 0.1;
};

inline ConstantsLedger make_paper_ledger(const PaperLedgerInputs& in)
{
    if (in.a < 1 || in.delta_r < 1 || in.kappa < 1 || in.r < 1 || in.delta <= 0 || in.c <= 0 ||
        in.mu <= 0 || in.cap_c < 0)
        throw ChainViolation("paper-mode base constants must be positive");
    ConstantsLedger l;
    l.mode = LedgerMode::Paper;
    l.cap_c = in.cap_c;
    l.a = in.a;
    l.delta_r = in.delta_r;
    l.kappa = in.kappa;
    l.r = in.r;
    l.delta = in.delta;
    l.c = in.c;
    l.mu = in.mu;

    const long double a = static_cast<long double>(in.a);
    const long double da = std::pow(l.delta, a);
    l.gamma = (l.c / 2.0L) * (l.mu / 10.0L) * da;
    l.lambda = (1.0L / (25.0L * a)) * l.delta * l.gamma;
    const long double pw = std::pow(2.0L, a * a + 1.0L) * std::pow(3.0L, a);
    const long double e1 = l.lambda * da / (6.0L * pw);
    const long double e2 = 7.0L * l.gamma / 30.0L;
    l.eps_prime = std::min(e1 * e1, e2 * e2);
    l.eps = std::min(l.eps_prime / (static_cast<long double>(l.delta_r) *
                                    (1.0L + static_cast<long double>(l.cap_c)) *
                                    std::pow(2.0L, a + 1.0L)),
                     std::pow(l.eps_prime / 3.0L, 36.0L));
    l.alpha = std::sqrt(l.eps) / 6.0L;
    l.xi = 8.0L * l.eps * l.eps /
           (9.0L * l.gamma * l.gamma * static_cast<long double>(l.kappa) * static_cast<long double>(l.r));

    // the three floors on n_0
    const long double kr = static_cast<long double>(l.kappa) * static_cast<long double>(l.r);
    const long double f1r = 48.0L * std::pow(3.0L, a) * std::pow(2.0L, a * a + 1.0L) * a * kr / (l.lambda * da);
    const long double f1 = f1r * f1r;
    long double f2 = 1.0L;
    {
        const long double coeff = 60.0L * kr / (l.eps * l.eps * l.delta * l.mu);
        for (int it = 0; it < 256; ++it) {
            long double next = coeff * std::log(12.0L * f2 * f2);
            if (!std::isfinite(next) || next <= f2) break;
            f2 = next;
        }
        f2 = std::max(f2, 1.0L);
    }
    const long double f3 = std::exp(36.0L * std::pow(2.0L, a * a) * a * a * kr / l.lambda);
    l.n0 = std::max({f1, f2, f3});
    l.n0_overflow = !std::isfinite(l.n0) || l.n0 > 9.22e18L;

    detail::finish_flags(l);
    return l;
}

struct PracticalLedgerInputs {
    int cap_c = 0;
    int a = 1;
    int delta_r = 2;
    int kappa = 1;
    int r = 1;
    long double delta = 0.5;
    long double c = 1.0;
    long double mu = 0.1;
    long double gamma = 0.0;
    long double lambda = 0.0;
    long double eps_prime = 0.0;
    long double eps = 0.0;
    long double alpha = 0.0;
    long double xi = 0.0;
    double iota = 0.0;
    double filter_eps = 0.0;
    double init_eps = 0.0;
};

inline ConstantsLedger make_practical_ledger(const PracticalLedgerInputs& in)
{
    ConstantsLedger l;
    l.mode = LedgerMode::Practical;
    l.cap_c = in.cap_c;
    l.a = in.a;
    l.delta_r = in.delta_r;
    l.kappa = in.kappa;
    l.r = in.r;
    l.delta = in.delta;
    l.c = in.c;
    l.mu = in.mu;
    l.gamma = in.gamma;
    l.lambda = in.lambda;
    l.eps_prime = in.eps_prime;
    l.eps = in.eps;
    l.alpha = in.alpha;
    l.xi = in.xi;
    l.iota = in.iota;
    l.filter_eps = in.filter_eps;
    l.init_eps = in.init_eps;

    if (l.a < 1 || l.delta_r < 1 || l.kappa < 1 || l.r < 1 || l.cap_c < 0)
        throw ChainViolation("integer constants must be positive");
    if (!(l.delta > 0 && l.c > 0 && l.mu > 0 && l.gamma > 0 && l.lambda > 0 && l.eps_prime > 0 &&
          l.eps > 0 && l.alpha > 0 && l.xi > 0))
        throw ChainViolation("all constants must be positive");
    detail::finish_flags(l);
    if (!l.chain_ok)
        throw ChainViolation("ordering chain xi <= eps <= alpha <= eps' <= lambda <= gamma <= mu,delta <= 1 violated");
    return l;
}

} // namespace abl
