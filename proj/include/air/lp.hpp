#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "air/matrix.hpp"
#include "air/rational.hpp"

namespace air {

/// One row a·x ≥ b (or a·x = b for equalities).
struct LinearRow {
    std::vector<Rational> coeffs;
    Rational rhs;
};

/// Exact feasibility of {A_eq x = b_eq, A_ge x ≥ b_ge} over the rationals by Gaussian
/// elimination of the equalities followed by Fourier–Motzkin elimination. Returns a
/// rational solution when one exists. Intended for small systems (a handful of variables).
class FourierMotzkin {
public:
    explicit FourierMotzkin(std::size_t nvars) : n_(nvars) {}

    void add_equality(std::vector<Rational> a, Rational b) { eq_.push_back({std::move(a), std::move(b)}); }
    void add_inequality(std::vector<Rational> a, Rational b) { ge_.push_back({std::move(a), std::move(b)}); }

    std::optional<std::vector<Rational>> solve() const {
        // x = base + param · y  with y the free variables left after the equalities
        Matrix aug(eq_.size(), n_ + 1);
        for (std::size_t i = 0; i < eq_.size(); ++i) {
            for (std::size_t j = 0; j < n_; ++j) aug(i, j) = eq_[i].coeffs[j];
            aug(i, n_) = eq_[i].rhs;
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == n_) return std::nullopt;
        std::vector<bool> is_pivot(n_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::size_t> free_vars;
        for (std::size_t j = 0; j < n_; ++j)
            if (!is_pivot[j]) free_vars.push_back(j);
        const std::size_t m = free_vars.size();
        std::vector<Rational> base(n_);
        std::vector<std::vector<Rational>> param(n_, std::vector<Rational>(m));
        for (std::size_t f = 0; f < m; ++f) param[free_vars[f]][f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::size_t p = pivots[r];
            base[p] = aug(r, n_);
            for (std::size_t f = 0; f < m; ++f) param[p][f] = -aug(r, free_vars[f]);
        }

        std::vector<LinearRow> rows;
        for (const auto& g : ge_) {
            LinearRow row{std::vector<Rational>(m), g.rhs};
            for (std::size_t j = 0; j < n_; ++j) {
                if (g.coeffs[j] == 0) continue;
                row.rhs -= g.coeffs[j] * base[j];
                for (std::size_t f = 0; f < m; ++f) row.coeffs[f] += g.coeffs[j] * param[j][f];
            }
            rows.push_back(std::move(row));
        }

        auto y = eliminate(std::move(rows), m);
        if (!y) return std::nullopt;
        std::vector<Rational> x(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            x[j] = base[j];
            for (std::size_t f = 0; f < m; ++f) x[j] += param[j][f] * (*y)[f];
        }
        return x;
    }

private:
    static std::optional<std::vector<LinearRow>> normalize(std::vector<LinearRow> rows) {
        std::map<std::vector<Rational>, Rational> best;
        for (auto& r : rows) {
            auto it = std::find_if(r.coeffs.begin(), r.coeffs.end(), [](const Rational& c) { return c != 0; });
            if (it == r.coeffs.end()) {
                if (r.rhs > 0) return std::nullopt;
                continue;
            }
            Rational s = abs(*it);
            for (auto& c : r.coeffs) c /= s;
            r.rhs /= s;
            auto [pos, inserted] = best.emplace(r.coeffs, r.rhs);
            if (!inserted && pos->second < r.rhs) pos->second = r.rhs;
        }
        std::vector<LinearRow> out;
        for (auto& [a, b] : best) out.push_back({a, b});
        return out;
    }

    static std::optional<std::vector<Rational>> eliminate(std::vector<LinearRow> rows, std::size_t m) {
        std::vector<std::vector<LinearRow>> stages;
        std::vector<std::size_t> order;
        std::vector<bool> done(m, false);
        auto norm = normalize(std::move(rows));
        if (!norm) return std::nullopt;
        rows = std::move(*norm);
        for (std::size_t step = 0; step < m; ++step) {
            // pick the variable whose elimination creates the fewest new rows
            std::size_t var = m, best_cost = 0;
            for (std::size_t v = 0; v < m; ++v) {
                if (done[v]) continue;
                std::size_t pos = 0, neg = 0;
                for (const auto& r : rows) {
                    if (r.coeffs[v] > 0) ++pos;
                    if (r.coeffs[v] < 0) ++neg;
                }
                std::size_t cost = pos * neg;
                if (var == m || cost < best_cost) var = v, best_cost = cost;
            }
            stages.push_back(rows);
            order.push_back(var);
            done[var] = true;
            std::vector<LinearRow> next, pos, neg;
            for (auto& r : rows) {
                if (r.coeffs[var] > 0) pos.push_back(r);
                else if (r.coeffs[var] < 0) neg.push_back(r);
                else next.push_back(r);
            }
            for (const auto& p : pos)
                for (const auto& q : neg) {
                    Rational wp = -q.coeffs[var], wq = p.coeffs[var];
                    LinearRow c{std::vector<Rational>(m), wp * p.rhs + wq * q.rhs};
                    for (std::size_t j = 0; j < m; ++j) c.coeffs[j] = wp * p.coeffs[j] + wq * q.coeffs[j];
                    c.coeffs[var] = 0;
                    next.push_back(std::move(c));
                }
            auto n2 = normalize(std::move(next));
            if (!n2) return std::nullopt;
            rows = std::move(*n2);
        }
        for (const auto& r : rows)
            if (r.rhs > 0) return std::nullopt;

        std::vector<Rational> y(m);
        for (std::size_t s = order.size(); s-- > 0;) {
            std::size_t var = order[s];
            std::optional<Rational> lo, hi;
            for (const auto& r : stages[s]) {
                const Rational& a = r.coeffs[var];
                if (a == 0) continue;
                Rational rest = r.rhs;
                for (std::size_t j = 0; j < m; ++j)
                    if (j != var) rest -= r.coeffs[j] * y[j];
                Rational bound = rest / a;
                if (a > 0) {
                    if (!lo || bound > *lo) lo = bound;
                } else {
                    if (!hi || bound < *hi) hi = bound;
                }
            }
            y[var] = pick(lo, hi);
        }
        return y;
    }

    // prefer small integers so witnesses stay readable
    static Rational pick(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
        if (lo && hi) {
            mpz_class c;
            mpz_cdiv_q(c.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
            if (Rational(c) <= *hi) return Rational(c);
            Rational mid = (*lo + *hi) / 2;
            return mid;
        }
        if (lo) {
            mpz_class c;
            mpz_cdiv_q(c.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
            return Rational(c);
        }
        if (hi) {
            mpz_class c;
            mpz_fdiv_q(c.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
            return Rational(c);
        }
        return 0;
    }

    std::size_t n_;
    std::vector<LinearRow> eq_;
    std::vector<LinearRow> ge_;
};

}  // namespace air
