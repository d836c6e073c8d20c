#pragma once

// Ansatz assembly and kernel search: the second half of compose.hpp.

#include <algorithm>
#include <optional>

#include "dfc/compose.hpp"

namespace dfc {

/// One point of an order-degree curve, optionally with the operator that
/// realizes it (witnesses are oracle-verified before being attached).
struct CurvePoint {
    int order = 0;
    long degree = 0;
    std::optional<DiffOp> witness;
};

/// One row of a curve scan; degree absent when the cap was exceeded.
struct CurveRow {
    int order = 0;
    std::optional<long> degree;
};

enum class SolveMode { exact, modular_then_lift };

namespace detail {

/// Caches derivative expansions and u-powers across increasing orders and
/// assembles the per-order coefficient tables of the ansatz system.
class AnsatzBuilder {
public:
    explicit AnsatzBuilder(const CompositionContext& ctx) : ctx_(&ctx) {
        levels_.push_back(expansion_base(ctx));
        upow_.push_back(UniPoly::constant(Rational(1)));
    }

    struct Tables {
        int r = 0;
        int blocks = 0;   // r_P * r_L row blocks, index a * r_L + b
        int maxdeg = 0;   // max x-degree over all entries
        std::vector<std::vector<UniPoly>> F;  // [j <= r][block]
    };

    const CompositionContext& ctx() const { return *ctx_; }

    Tables tables_for(int r) {
        ensure(r);
        int rp = ctx_->r_P(), rl = ctx_->r_L();
        Tables t;
        t.r = r;
        t.blocks = rp * rl;
        t.F.assign(size_t(r) + 1, std::vector<UniPoly>(size_t(t.blocks)));
        for (int j = 0; j <= r; ++j)
            for (int a = 0; a < rp; ++a)
                for (int b = 0; b < rl; ++b) {
                    const UniPoly& e = levels_[size_t(j)].e[size_t(a)][size_t(b)];
                    if (e.is_zero()) continue;
                    UniPoly f = upow_[size_t(r - j)] * e;
                    t.maxdeg = std::max(t.maxdeg, f.degree());
                    t.F[size_t(j)][size_t(a * rl + b)] = std::move(f);
                }
        return t;
    }

private:
    void ensure(int l) {
        while (int(levels_.size()) <= l) {
            levels_.push_back(expansion_step(*ctx_, levels_.back()));
            upow_.push_back(upow_.back() * ctx_->u);
        }
        while (int(upow_.size()) <= l) upow_.push_back(upow_.back() * ctx_->u);
    }
    const CompositionContext* ctx_;
    std::vector<DerivativeExpansion> levels_;
    std::vector<UniPoly> upow_;
};

/// Tables reduced mod one prime.
struct ModTables {
    uint64_t p = 0;
    std::vector<std::vector<std::vector<uint64_t>>> F;  // [j][block][coeff]
};

inline ModTables reduce_tables(const AnsatzBuilder::Tables& t, uint64_t p) {
    ModTables m;
    m.p = p;
    m.F.assign(t.F.size(), {});
    for (size_t j = 0; j < t.F.size(); ++j) {
        m.F[j].resize(t.F[j].size());
        for (size_t b = 0; b < t.F[j].size(); ++b) {
            const UniPoly& f = t.F[j][b];
            std::vector<uint64_t> c(size_t(f.degree() + 1));
            for (int k = 0; k <= f.degree(); ++k) c[size_t(k)] = rational_mod(f.coeff(k), p);
            m.F[j][b] = std::move(c);
        }
    }
    return m;
}

/// Dense column of the ansatz matrix for the monomial x^i D^j.
inline std::vector<uint64_t> mod_column(const ModTables& mt, int blocks, int T, int i, int j) {
    std::vector<uint64_t> col(size_t(blocks) * size_t(T + 1), 0);
    for (int b = 0; b < blocks; ++b) {
        const auto& f = mt.F[size_t(j)][size_t(b)];
        for (size_t k = 0; k < f.size(); ++k)
            col[size_t(b) * size_t(T + 1) + size_t(i) + k] = f[k];
    }
    return col;
}

/// Column-by-column Gaussian sieve mod p: insert() returns true when the
/// new column is dependent on the previous ones, i.e. the kernel of the
/// matrix formed so far just became nontrivial.
class KernelSieve {
public:
    KernelSieve(size_t rowdim, uint64_t p) : p_(p), pivot_at_row_(rowdim, -1) {}

    bool insert(std::vector<uint64_t> col) {
        for (size_t r = 0; r < col.size(); ++r) {
            if (col[r] == 0) continue;
            int k = pivot_at_row_[r];
            if (k < 0) {
                uint64_t inv = fp::inv(col[r], p_);
                for (size_t s = r; s < col.size(); ++s) col[s] = fp::mul(col[s], inv, p_);
                pivot_at_row_[r] = int(pivots_.size());
                pivots_.push_back(std::move(col));
                return false;
            }
            uint64_t f = col[r];
            const auto& piv = pivots_[size_t(k)];
            for (size_t s = r; s < col.size(); ++s)
                col[s] = fp::sub(col[s], fp::mul(f, piv[s], p_), p_);
        }
        return true;
    }

private:
    uint64_t p_;
    std::vector<int> pivot_at_row_;
    std::vector<std::vector<uint64_t>> pivots_;
};

inline void note_bad_prime(SolveReport* report, uint64_t p) {
    if (report) report->bad_primes.push_back(p);
    std::fprintf(stderr, "dfc: skipping bad prime %llu\n", (unsigned long long)p);
}

/// Exact first kernel vector of the (r, d) ansatz system via per-prime
/// kernels, CRT, rational reconstruction, and an exact residual check.
/// Returns nothing when the kernel is trivial (certified by any good
/// prime with trivial kernel).
inline std::optional<std::vector<Rational>> lift_first_kernel_vector(
    const AnsatzBuilder::Tables& tabs, int d, SolveReport* report) {
    int T = d + tabs.maxdeg;
    size_t rowdim = size_t(tabs.blocks) * size_t(T + 1);
    size_t cols = size_t(tabs.r + 1) * size_t(d + 1);
    PrimeStream stream;
    size_t best_rank = 0;
    std::vector<size_t> best_pivots;
    bool have_best = false;
    CrtVector crt;
    const long max_modulus_bits = 200000;
    while (true) {
        uint64_t p = stream.next();
        ModTables mt;
        try {
            mt = reduce_tables(tabs, p);
        } catch (const bad_prime_error&) {
            note_bad_prime(report, p);
            continue;
        }
        // assemble the full matrix mod p, rows (block, t), cols j*(d+1)+i
        std::vector<std::vector<uint64_t>> m(rowdim, std::vector<uint64_t>(cols, 0));
        for (int j = 0; j <= tabs.r; ++j)
            for (int i = 0; i <= d; ++i) {
                size_t c = size_t(j) * size_t(d + 1) + size_t(i);
                for (int b = 0; b < tabs.blocks; ++b) {
                    const auto& f = mt.F[size_t(j)][size_t(b)];
                    for (size_t k = 0; k < f.size(); ++k)
                        m[size_t(b) * size_t(T + 1) + size_t(i) + k][c] = f[k];
                }
            }
        ModNullspace ns = nullspace_mod(std::move(m), cols, p);
        if (report) ++report->primes_used;
        if (ns.kernel_dim == 0) return std::nullopt;  // certified trivial
        bool better = !have_best || ns.rank > best_rank ||
                      (ns.rank == best_rank && ns.pivots < best_pivots);
        if (better) {
            best_rank = ns.rank;
            best_pivots = ns.pivots;
            have_best = true;
            crt = CrtVector();
        } else if (ns.rank != best_rank || ns.pivots != best_pivots) {
            continue;  // unlucky prime relative to the current best group
        }
        crt.add_prime(p, ns.basis[0]);
        if (auto vec = crt.reconstruct()) {
            // exact certificate: sum_j M_j F[j][block] = 0 for every block
            std::vector<UniPoly> mj(size_t(tabs.r) + 1);
            for (int j = 0; j <= tabs.r; ++j) {
                std::vector<Rational> cs(size_t(d) + 1);
                for (int i = 0; i <= d; ++i) cs[size_t(i)] = (*vec)[size_t(j) * size_t(d + 1) + size_t(i)];
                mj[size_t(j)] = UniPoly(std::move(cs));
            }
            bool ok = true;
            for (int b = 0; b < tabs.blocks && ok; ++b) {
                UniPoly acc;
                for (int j = 0; j <= tabs.r; ++j) {
                    if (mj[size_t(j)].is_zero() || tabs.F[size_t(j)][size_t(b)].is_zero()) continue;
                    acc += mj[size_t(j)] * tabs.F[size_t(j)][size_t(b)];
                }
                ok = acc.is_zero();
            }
            if (ok) return primitive_vector(*vec);
        }
        if (mpz_sizeinbase(crt.modulus.get_mpz_t(), 2) > size_t(max_modulus_bits))
            throw internal_error("kernel lift did not stabilize");
    }
}

inline DiffOp operator_from_vector(int r, int d, const std::vector<Rational>& vec) {
    std::vector<UniPoly> cs(size_t(r) + 1);
    for (int j = 0; j <= r; ++j) {
        std::vector<Rational> c(size_t(d) + 1);
        for (int i = 0; i <= d; ++i) c[size_t(i)] = vec[size_t(j) * size_t(d + 1) + size_t(i)];
        cs[size_t(j)] = UniPoly(std::move(c));
    }
    return DiffOp(std::move(cs));
}

/// Oracle gate for operators about to be surfaced; falls back to an exact
/// recomputation when a modular lift slipped through inconsistently.
inline DiffOp surface_operator(AnsatzBuilder& builder, int r, int d,
                               const std::vector<Rational>& vec, SolveMode mode,
                               SolveReport* report);

} // namespace detail

/// The linear system of Theorem-style ansatz at order r and degree d:
/// columns are the coefficients c_(i,j) of x^i D^j, rows are the
/// coefficients of x^t g^a (f^(b) o g) in u^r M(f o g).
inline ExactMatrix build_ansatz_system(const CompositionContext& ctx, int r, int d) {
    if (r < 0 || d < 0) throw error("ansatz system needs r, d >= 0");
    detail::AnsatzBuilder builder(ctx);
    auto tabs = builder.tables_for(r);
    int T = d + tabs.maxdeg;
    size_t rowdim = size_t(tabs.blocks) * size_t(T + 1);
    ExactMatrix m(rowdim, size_t(r + 1) * size_t(d + 1));
    for (int j = 0; j <= r; ++j)
        for (int i = 0; i <= d; ++i) {
            size_t c = size_t(j) * size_t(d + 1) + size_t(i);
            for (int b = 0; b < tabs.blocks; ++b) {
                const UniPoly& f = tabs.F[size_t(j)][size_t(b)];
                for (int k = 0; k <= f.degree(); ++k)
                    m.at(size_t(b) * size_t(T + 1) + size_t(i) + size_t(k), c) = f.coeff(k);
            }
        }
    return m;
}

namespace detail {

inline std::optional<std::vector<Rational>> kernel_vector_at(AnsatzBuilder& builder, int r, int d,
                                                             SolveMode mode, SolveReport* report) {
    if (mode == SolveMode::exact) {
        ExactMatrix m = build_ansatz_system(builder.ctx(), r, d);
        auto basis = nullspace(std::move(m));
        if (report) report->exact_fallback = true;
        if (basis.empty()) return std::nullopt;
        return basis[0];
    }
    auto tabs = builder.tables_for(r);
    return lift_first_kernel_vector(tabs, d, report);
}

inline DiffOp surface_operator(AnsatzBuilder& builder, int r, int d,
                               const std::vector<Rational>& vec, SolveMode mode,
                               SolveReport* report) {
    const CompositionContext& ctx = builder.ctx();
    DiffOp op = primitive_normalize(operator_from_vector(r, d, vec));
    Rational alpha = admissible_points(ctx.L, ctx.P, 1)[0];
    VerificationReport vr = verify_annihilation(op, ctx.L, ctx.P, alpha, default_verification_order(op));
    if (vr.pass) return op;
    if (mode == SolveMode::modular_then_lift) {
        std::fprintf(stderr, "dfc: lift inconsistency at order %d degree %d, recomputing exactly\n", r, d);
        auto exact = kernel_vector_at(builder, r, d, SolveMode::exact, report);
        if (exact) {
            DiffOp op2 = primitive_normalize(operator_from_vector(r, d, *exact));
            VerificationReport vr2 =
                verify_annihilation(op2, ctx.L, ctx.P, alpha, default_verification_order(op2));
            if (vr2.pass) return op2;
        }
    }
    throw internal_error("surfaced operator failed series verification");
}

inline std::optional<CurvePoint> minimal_degree_scan(AnsatzBuilder& builder, int r, long d_cap,
                                                     SolveMode mode, bool attach_witness,
                                                     SolveReport* report) {
    if (d_cap < 0) throw error("negative degree cap");
    const CompositionContext& ctx = builder.ctx();
    auto tabs = builder.tables_for(r);
    std::optional<long> dstar;
    std::optional<std::vector<Rational>> vec;
    if (mode == SolveMode::exact) {
        for (long d = 0; d <= d_cap; ++d) {
            vec = kernel_vector_at(builder, r, int(d), mode, report);
            if (vec) {
                dstar = d;
                break;
            }
        }
    } else {
        int T = int(d_cap) + tabs.maxdeg;
        size_t rowdim = size_t(tabs.blocks) * size_t(T + 1);
        PrimeStream stream;
        auto next_tables = [&](ModTables& out) {
            while (true) {
                uint64_t p = stream.next();
                try {
                    out = reduce_tables(tabs, p);
                    return;
                } catch (const bad_prime_error&) {
                    note_bad_prime(report, p);
                }
            }
        };
        ModTables mtA, mtB;
        next_tables(mtA);
        next_tables(mtB);
        KernelSieve sieveA(rowdim, mtA.p), sieveB(rowdim, mtB.p);
        long firstA = -1, firstB = -1;
        for (long d = 0; d <= d_cap && !dstar; ++d) {
            for (int j = 0; j <= r; ++j) {
                if (sieveA.insert(mod_column(mtA, tabs.blocks, T, int(d), j)) && firstA < 0)
                    firstA = d;
                if (sieveB.insert(mod_column(mtB, tabs.blocks, T, int(d), j)) && firstB < 0)
                    firstB = d;
            }
            if (firstA >= 0 && firstB >= 0) {
                // both primes see a kernel by now; the exact kernel cannot
                // appear before max(firstA, firstB), so decide at d
                vec = lift_first_kernel_vector(tabs, int(d), report);
                if (vec) dstar = d;
            }
        }
    }
    if (!dstar) return std::nullopt;
    CurvePoint pt;
    pt.order = r;
    pt.degree = *dstar;
    if (attach_witness && vec)
        pt.witness = surface_operator(builder, r, int(*dstar), *vec, mode, report);
    return pt;
}

} // namespace detail

/// Deterministic operator at prescribed (order, degree), if one exists:
/// the first canonical kernel vector of the ansatz system, normalized and
/// verified by the series oracle before being returned.
inline std::optional<DiffOp> operator_at(const CompositionContext& ctx, int r, int d,
                                         SolveMode mode = SolveMode::modular_then_lift,
                                         SolveReport* report = nullptr) {
    detail::AnsatzBuilder builder(ctx);
    auto vec = detail::kernel_vector_at(builder, r, d, mode, report);
    if (!vec) return std::nullopt;
    return detail::surface_operator(builder, r, d, *vec, mode, report);
}

/// Smallest degree d <= d_cap with a nontrivial kernel at order r, found by
/// a modular sieve over increasing d and settled by an exact lift.
inline std::optional<CurvePoint> minimal_degree_at_order(const CompositionContext& ctx, int r,
                                                         long d_cap,
                                                         SolveMode mode = SolveMode::modular_then_lift,
                                                         bool attach_witness = true,
                                                         SolveReport* report = nullptr) {
    detail::AnsatzBuilder builder(ctx);
    return detail::minimal_degree_scan(builder, r, d_cap, mode, attach_witness, report);
}

/// The minimal annihilating operator of all compositions, scanning orders
/// 1..r_L r_P with the minimal-operator degree bound as the per-order cap
/// (doubled with a warning if the heuristic cap ever undershoots).
struct MinimalAnnihilator {
    DiffOp op;
    int order = 0;
    long degree = 0;
};
inline MinimalAnnihilator minimal_annihilator(const CompositionContext& ctx,
                                              SolveMode mode = SolveMode::modular_then_lift,
                                              SolveReport* report = nullptr) {
    detail::AnsatzBuilder builder(ctx);
    ProblemShape shape = ctx.shape();
    long rmax = long(ctx.r_L()) * ctx.r_P();
    Integer hard_cap = thm2_degree(shape, rmax);
    for (long mult = 1;; mult *= 2) {
        for (long r = 1; r <= rmax; ++r) {
            Integer cap = mult * thm3_degree(shape, r);
            if (cap > hard_cap) cap = hard_cap;
            auto hit = detail::minimal_degree_scan(builder, int(r), cap.get_si(), mode, true, report);
            if (hit) return {*hit->witness, hit->order, hit->degree};
        }
        if (mult * thm3_degree(shape, rmax) >= hard_cap)
            throw internal_error("no annihilator found within the proven caps");
        std::fprintf(stderr, "dfc: degree caps undershot, doubling and rescanning\n");
    }
}

/// Per-order minimal degrees for r in [r_from, r_to]; rows where the cap
/// was exceeded carry no degree.  Monotonicity (non-increasing d) is
/// asserted across the present rows.
inline std::vector<CurveRow> order_degree_scan(const CompositionContext& ctx, int r_from, int r_to,
                                               long d_cap,
                                               SolveMode mode = SolveMode::modular_then_lift,
                                               SolveReport* report = nullptr) {
    if (r_from > r_to) return {};
    detail::AnsatzBuilder builder(ctx);
    std::vector<CurveRow> rows;
    std::optional<long> last;
    for (int r = r_from; r <= r_to; ++r) {
        auto hit = detail::minimal_degree_scan(builder, r, d_cap, mode, false, report);
        CurveRow row;
        row.order = r;
        if (hit) {
            row.degree = hit->degree;
            if (last && *last < hit->degree)
                throw internal_error("order-degree curve is not monotone");
            last = hit->degree;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace dfc
