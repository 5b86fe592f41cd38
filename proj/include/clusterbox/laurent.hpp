/*
 * laurent.hpp
 * -----------
 * Exact sparse multivariate Laurent polynomials over arbitrary-precision
 * integers (GMP). Terms map exponent vectors (entries may be negative) to
 * nonzero coefficients and are kept in descending graded-lex order, so
 * iteration, printing and equality are deterministic.
 *
 * Multiplication and exact division have two routes:
 *   - small operands: naive sparse convolution / multivariate long division
 *     on the monomial-content-free parts under graded-lex order;
 *   - large operands: Kronecker substitution. Exponents are packed onto a
 *     per-variable lattice (base + step * index), each polynomial becomes one
 *     big integer with one coefficient per fixed-width digit slot, and the
 *     ring operation happens in GMP. Digits are biased by 2^(L-1) on unpack
 *     so mixed-sign coefficients decode without borrow propagation.
 * Kronecker division results are verified by re-multiplication; any failure
 * escalates the digit width and finally falls back to long division, so the
 * fast path can never silently return a wrong quotient.
 */
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace clusterbox {

using ExponentVector = std::vector<std::int32_t>;

class InexactDivisionError : public std::runtime_error {
public:
    explicit InexactDivisionError(const std::string& what) : std::runtime_error(what) {}
};

// Graded lexicographic comparison: total degree first, then lexicographic.
// Returns <0, 0, >0. Works for negative exponents as a total order.
inline int grlex_compare(const ExponentVector& a, const ExponentVector& b) {
    std::int64_t da = 0, db = 0;
    for (auto v : a) da += v;
    for (auto v : b) db += v;
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

struct GrlexGreater {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        return grlex_compare(a, b) > 0;
    }
};

struct LaurentTerm {
    ExponentVector e;
    mpz_class c;
};

class LaurentPolynomial;
LaurentPolynomial add(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial mul(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial pow(const LaurentPolynomial& f, unsigned long e);
LaurentPolynomial exact_div(const LaurentPolynomial& f, const LaurentPolynomial& g);

class LaurentPolynomial {
public:
    explicit LaurentPolynomial(int n) : n_(n) { check_n(n); }

    static LaurentPolynomial zero(int n) { return LaurentPolynomial(n); }

    static LaurentPolynomial constant(int n, mpz_class c) {
        LaurentPolynomial p(n);
        if (c != 0) p.terms_.push_back({ExponentVector(static_cast<size_t>(n), 0), std::move(c)});
        return p;
    }

    static LaurentPolynomial monomial(ExponentVector e, mpz_class c) {
        LaurentPolynomial p(static_cast<int>(e.size()));
        if (c != 0) p.terms_.push_back({std::move(e), std::move(c)});
        return p;
    }

    // The variable x_i (i is 1-based).
    static LaurentPolynomial variable(int n, int i) {
        check_n(n);
        if (i < 1 || i > n) throw std::out_of_range("variable index out of range");
        ExponentVector e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i) - 1] = 1;
        return monomial(std::move(e), 1);
    }

    static LaurentPolynomial from_terms(int n, std::vector<LaurentTerm> terms) {
        check_n(n);
        for (const auto& t : terms) {
            if (static_cast<int>(t.e.size()) != n) throw std::invalid_argument("exponent vector length mismatch");
        }
        LaurentPolynomial p(n);
        p.terms_ = normalize(std::move(terms));
        return p;
    }

    int var_count() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<LaurentTerm>& terms() const { return terms_; }

    ExponentVector min_exponents() const {
        require_nonzero("min_exponents");
        ExponentVector r = terms_.front().e;
        for (const auto& t : terms_)
            for (size_t i = 0; i < r.size(); ++i) r[i] = std::min(r[i], t.e[i]);
        return r;
    }

    ExponentVector max_exponents() const {
        require_nonzero("max_exponents");
        ExponentVector r = terms_.front().e;
        for (const auto& t : terms_)
            for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], t.e[i]);
        return r;
    }

    // Sum of coefficients, the value at x_1 = ... = x_n = 1.
    mpz_class evaluate_at_ones() const {
        mpz_class s = 0;
        for (const auto& t : terms_) s += t.c;
        return s;
    }

    bool all_coefficients_positive() const {
        for (const auto& t : terms_)
            if (t.c <= 0) return false;
        return true;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (size_t idx = 0; idx < terms_.size(); ++idx) {
            const auto& t = terms_[idx];
            const bool neg = t.c < 0;
            if (idx == 0) {
                if (neg) s += "-";
            } else {
                s += neg ? " - " : " + ";
            }
            mpz_class a = ::abs(t.c);
            std::string vars;
            for (size_t i = 0; i < t.e.size(); ++i) {
                if (t.e[i] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += "x" + std::to_string(i + 1);
                if (t.e[i] != 1) vars += "^" + std::to_string(t.e[i]);
            }
            if (vars.empty()) {
                s += a.get_str();
            } else {
                if (a != 1) s += a.get_str() + "*";
                s += vars;
            }
        }
        return s;
    }

    // Total order for canonical sorting and deduplication of polynomials.
    static int compare(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
        const size_t m = std::min(a.terms_.size(), b.terms_.size());
        for (size_t i = 0; i < m; ++i) {
            const int ce = grlex_compare(a.terms_[i].e, b.terms_[i].e);
            if (ce != 0) return ce;
            const int cc = cmp(a.terms_[i].c, b.terms_[i].c);
            if (cc != 0) return cc < 0 ? -1 : 1;
        }
        if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
        return 0;
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return compare(a, b) == 0;
    }
    friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) { return !(a == b); }

    LaurentPolynomial operator-() const {
        LaurentPolynomial r(n_);
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return add(a, b);
    }
    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return add(a, -b);
    }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return mul(a, b);
    }

private:
    static void check_n(int n) {
        if (n < 1) throw std::invalid_argument("variable count must be positive");
    }

    void require_nonzero(const char* op) const {
        if (terms_.empty()) throw std::domain_error(std::string(op) + " undefined for the zero polynomial");
    }

    // Sort descending graded-lex, merge equal exponents, drop zeros.
    static std::vector<LaurentTerm> normalize(std::vector<LaurentTerm> terms) {
        std::sort(terms.begin(), terms.end(), [](const LaurentTerm& a, const LaurentTerm& b) {
            return grlex_compare(a.e, b.e) > 0;
        });
        std::vector<LaurentTerm> out;
        out.reserve(terms.size());
        for (auto& t : terms) {
            if (!out.empty() && out.back().e == t.e) {
                out.back().c += t.c;
                if (out.back().c == 0) out.pop_back();
            } else if (t.c != 0) {
                out.push_back(std::move(t));
            }
        }
        return out;
    }

    int n_;
    std::vector<LaurentTerm> terms_;  // descending graded-lex, no zero coefficients

    friend LaurentPolynomial add(const LaurentPolynomial&, const LaurentPolynomial&);
    friend class KroneckerCodec;
    friend LaurentPolynomial detail_from_sorted(int n, std::vector<LaurentTerm> terms);
};

// Internal: adopt a term list already in canonical form.
inline LaurentPolynomial detail_from_sorted(int n, std::vector<LaurentTerm> terms) {
    LaurentPolynomial p(n);
    p.terms_ = std::move(terms);
    return p;
}

inline void require_same_vars(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.var_count() != b.var_count()) throw std::invalid_argument("variable-count mismatch");
}

inline LaurentPolynomial add(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    require_same_vars(f, g);
    std::vector<LaurentTerm> out;
    out.reserve(f.term_count() + g.term_count());
    auto a = f.terms().begin(), ae = f.terms().end();
    auto b = g.terms().begin(), be = g.terms().end();
    while (a != ae && b != be) {
        const int c = grlex_compare(a->e, b->e);
        if (c > 0) {
            out.push_back(*a++);
        } else if (c < 0) {
            out.push_back(*b++);
        } else {
            mpz_class s = a->c + b->c;
            if (s != 0) out.push_back({a->e, std::move(s)});
            ++a;
            ++b;
        }
    }
    out.insert(out.end(), a, ae);
    out.insert(out.end(), b, be);
    return detail_from_sorted(f.var_count(), std::move(out));
}

namespace laurent_detail {

constexpr size_t kNaiveMulWork = size_t(1) << 16;
constexpr size_t kLongDivisionWork = size_t(1) << 20;
constexpr std::int64_t kKroneckerBitBudget = 1'800'000'000;  // ~225 MB per packed integer

inline LaurentPolynomial mul_naive(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    std::map<ExponentVector, mpz_class, GrlexGreater> acc;
    const int n = f.var_count();
    ExponentVector e(static_cast<size_t>(n));
    for (const auto& tf : f.terms()) {
        for (const auto& tg : g.terms()) {
            for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = tf.e[static_cast<size_t>(i)] + tg.e[static_cast<size_t>(i)];
            auto it = acc.find(e);
            if (it == acc.end()) {
                acc.emplace(e, tf.c * tg.c);
            } else {
                it->second += tf.c * tg.c;
            }
        }
    }
    std::vector<LaurentTerm> out;
    out.reserve(acc.size());
    for (auto& [ev, c] : acc) {
        if (c != 0) out.push_back({ev, std::move(c)});
    }
    return detail_from_sorted(n, std::move(out));
}

// Geometry of a Kronecker packing: per variable, exponents live on
// base + delta * index with 0 <= index < dims. Strides are in digit slots.
struct KroneckerGrid {
    int n = 0;
    std::vector<std::int64_t> delta;
    std::vector<std::int64_t> dims;    // of the result (product/dividend) box
    std::vector<std::int64_t> stride;  // mixed-radix strides over dims
    std::int64_t total_cells = 0;
    size_t digit_bytes = 0;

    size_t digit_bits() const { return digit_bytes * 8; }
    std::int64_t total_bytes() const { return total_cells * static_cast<std::int64_t>(digit_bytes); }
};

inline std::vector<std::int64_t> lattice_steps(const LaurentPolynomial& f, const ExponentVector& base) {
    const int n = f.var_count();
    std::vector<std::int64_t> delta(static_cast<size_t>(n), 0);
    for (const auto& t : f.terms())
        for (int i = 0; i < n; ++i)
            delta[static_cast<size_t>(i)] = std::gcd(delta[static_cast<size_t>(i)],
                                                     static_cast<std::int64_t>(t.e[static_cast<size_t>(i)]) - base[static_cast<size_t>(i)]);
    return delta;
}

inline size_t coeff_bits(const mpz_class& bound) {
    return mpz_sizeinbase(bound.get_mpz_t(), 2);
}

inline mpz_class max_abs_coeff(const LaurentPolynomial& f) {
    mpz_class m = 0;
    for (const auto& t : f.terms()) {
        mpz_class a = ::abs(t.c);
        if (a > m) m = std::move(a);
    }
    return m;
}

inline mpz_class sum_abs_coeff(const LaurentPolynomial& f) {
    mpz_class m = 0;
    for (const auto& t : f.terms()) m += ::abs(t.c);
    return m;
}

class KroneckerCodec {
public:
    // Packs f, shifted so that `base` maps to cell 0, into one integer with
    // one coefficient per digit slot.
    static mpz_class pack(const LaurentPolynomial& f, const ExponentVector& base, const KroneckerGrid& grid) {
        std::vector<unsigned char> pos(static_cast<size_t>(grid.total_bytes()), 0);
        std::vector<unsigned char> neg;
        bool has_neg = false;
        for (const auto& t : f.terms()) {
            std::int64_t cell = 0;
            for (int i = 0; i < grid.n; ++i) {
                const std::int64_t off = static_cast<std::int64_t>(t.e[static_cast<size_t>(i)]) - base[static_cast<size_t>(i)];
                cell += (off / grid.delta[static_cast<size_t>(i)]) * grid.stride[static_cast<size_t>(i)];
            }
            unsigned char* slot;
            if (t.c < 0) {
                if (!has_neg) {
                    neg.assign(static_cast<size_t>(grid.total_bytes()), 0);
                    has_neg = true;
                }
                slot = neg.data() + cell * static_cast<std::int64_t>(grid.digit_bytes);
            } else {
                slot = pos.data() + cell * static_cast<std::int64_t>(grid.digit_bytes);
            }
            mpz_class a = ::abs(t.c);
            if (mpz_sizeinbase(a.get_mpz_t(), 2) > grid.digit_bits()) {
                throw std::logic_error("Kronecker digit width too small for an input coefficient");
            }
            size_t count = 0;
            mpz_export(slot, &count, -1, 1, 0, 0, a.get_mpz_t());
        }
        mpz_class zp, zn = 0;
        mpz_import(zp.get_mpz_t(), pos.size(), -1, 1, 0, 0, pos.data());
        if (has_neg) mpz_import(zn.get_mpz_t(), neg.size(), -1, 1, 0, 0, neg.data());
        return zp - zn;
    }

    // Decodes Z into terms over `base`. Digits are biased by 2^(L-1) so each
    // slot independently holds digit + bias in [0, 2^L); a slot that still
    // equals the bias pattern is a zero coefficient. Returns nullopt when a
    // digit fell outside the representable range (caller enlarges L).
    static std::optional<std::vector<LaurentTerm>> unpack(const mpz_class& z, const ExponentVector& base,
                                                          const KroneckerGrid& grid) {
        const size_t db = grid.digit_bytes;
        const size_t total = static_cast<size_t>(grid.total_bytes());
        mpz_class biased = z + bias_constant(grid);
        if (biased < 0) return std::nullopt;
        if (mpz_sizeinbase(biased.get_mpz_t(), 2) > total * 8) return std::nullopt;
        std::vector<unsigned char> buf(total, 0);
        size_t count = 0;
        mpz_export(buf.data(), &count, -1, 1, 0, 0, biased.get_mpz_t());

        std::vector<unsigned char> bias_pattern(db, 0);
        bias_pattern[db - 1] = 0x80;

        std::vector<LaurentTerm> out;
        mpz_class digit, bias = mpz_class(1) << (grid.digit_bits() - 1);
        for (std::int64_t cell = 0; cell < grid.total_cells; ++cell) {
            const unsigned char* slot = buf.data() + static_cast<size_t>(cell) * db;
            if (std::memcmp(slot, bias_pattern.data(), db) == 0) continue;
            mpz_import(digit.get_mpz_t(), db, -1, 1, 0, 0, slot);
            mpz_class c = digit - bias;
            if (c == 0) continue;
            ExponentVector e(static_cast<size_t>(grid.n));
            std::int64_t rest = cell;
            for (int i = 0; i < grid.n; ++i) {
                const std::int64_t idx = rest % grid.dims[static_cast<size_t>(i)];
                rest /= grid.dims[static_cast<size_t>(i)];
                e[static_cast<size_t>(i)] = static_cast<std::int32_t>(base[static_cast<size_t>(i)] +
                                                                      grid.delta[static_cast<size_t>(i)] * idx);
            }
            out.push_back({std::move(e), std::move(c)});
        }
        std::sort(out.begin(), out.end(),
                  [](const LaurentTerm& a, const LaurentTerm& b) { return grlex_compare(a.e, b.e) > 0; });
        return out;
    }

private:
    static mpz_class bias_constant(const KroneckerGrid& grid) {
        std::vector<unsigned char> buf(static_cast<size_t>(grid.total_bytes()), 0);
        for (std::int64_t cell = 0; cell < grid.total_cells; ++cell) {
            buf[static_cast<size_t>(cell + 1) * grid.digit_bytes - 1] = 0x80;
        }
        mpz_class b;
        mpz_import(b.get_mpz_t(), buf.size(), -1, 1, 0, 0, buf.data());
        return b;
    }
};

struct KroneckerPlan {
    KroneckerGrid grid;
    ExponentVector f_base, g_base, out_base;
    std::vector<std::int64_t> out_dims;  // box of the expected output (product or quotient)
};

// Shared geometry for f (*|/) g. For multiplication the grid box is the sum of
// the operand boxes; for division it is f's own box and the quotient box is
// the per-variable difference. Returns nullopt when the operands do not fit a
// common lattice (division only) or the packed integers would be too big.
inline std::optional<KroneckerPlan> make_plan(const LaurentPolynomial& f, const LaurentPolynomial& g,
                                              bool division, size_t digit_bits) {
    const int n = f.var_count();
    KroneckerPlan plan;
    plan.f_base = f.min_exponents();
    plan.g_base = g.min_exponents();
    const ExponentVector f_max = f.max_exponents(), g_max = g.max_exponents();

    auto df = lattice_steps(f, plan.f_base);
    auto dg = lattice_steps(g, plan.g_base);
    KroneckerGrid& grid = plan.grid;
    grid.n = n;
    grid.delta.resize(static_cast<size_t>(n));
    grid.dims.resize(static_cast<size_t>(n));
    grid.stride.resize(static_cast<size_t>(n));
    plan.out_base.resize(static_cast<size_t>(n));
    plan.out_dims.resize(static_cast<size_t>(n));

    grid.total_cells = 1;
    for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
        std::int64_t delta = std::gcd(df[i], dg[i]);
        if (delta == 0) delta = 1;
        grid.delta[i] = delta;
        const std::int64_t fr = static_cast<std::int64_t>(f_max[i]) - plan.f_base[i];
        const std::int64_t gr = static_cast<std::int64_t>(g_max[i]) - plan.g_base[i];
        const std::int64_t fd = fr / delta + 1;
        const std::int64_t gd = gr / delta + 1;
        if (division) {
            if ((fr - gr) % delta != 0 || fd < gd) return std::nullopt;
            grid.dims[i] = fd;
            plan.out_dims[i] = fd - gd + 1;
            plan.out_base[i] = plan.f_base[i] - plan.g_base[i];
        } else {
            grid.dims[i] = fd + gd - 1;
            plan.out_dims[i] = grid.dims[i];
            plan.out_base[i] = plan.f_base[i] + plan.g_base[i];
        }
        grid.stride[i] = grid.total_cells;
        if (__builtin_mul_overflow(grid.total_cells, grid.dims[i], &grid.total_cells)) return std::nullopt;
        if (grid.total_cells > kKroneckerBitBudget / 8) return std::nullopt;
    }
    grid.digit_bytes = (digit_bits + 7) / 8;
    if (grid.digit_bytes < 2) grid.digit_bytes = 2;
    std::int64_t total_bits = 0;
    if (__builtin_mul_overflow(grid.total_cells, static_cast<std::int64_t>(grid.digit_bytes * 8), &total_bits) ||
        total_bits > kKroneckerBitBudget) {
        return std::nullopt;
    }
    return plan;
}

inline std::optional<LaurentPolynomial> mul_kronecker(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    const mpz_class bound =
        mpz_class(static_cast<unsigned long>(std::min(f.term_count(), g.term_count()))) * max_abs_coeff(f) * max_abs_coeff(g);
    auto plan = make_plan(f, g, false, coeff_bits(bound) + 2);
    if (!plan) return std::nullopt;
    const mpz_class zf = KroneckerCodec::pack(f, plan->f_base, plan->grid);
    const mpz_class zg = KroneckerCodec::pack(g, plan->g_base, plan->grid);
    auto terms = KroneckerCodec::unpack(zf * zg, plan->out_base, plan->grid);
    if (!terms) return std::nullopt;  // cannot happen with a sound bound; stay safe
    return detail_from_sorted(f.var_count(), std::move(*terms));
}

// Long division of the monomial-content-free parts under graded-lex order.
// Exactness forces every leading term of the running remainder to be
// divisible by the divisor's leading term; any failure means f is not
// divisible by g.
inline LaurentPolynomial exact_div_long(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    const int n = f.var_count();
    const ExponentVector f_min = f.min_exponents(), g_min = g.min_exponents();

    std::map<ExponentVector, mpz_class, GrlexGreater> rem;
    for (const auto& t : f.terms()) {
        ExponentVector e(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = t.e[static_cast<size_t>(i)] - f_min[static_cast<size_t>(i)];
        rem.emplace(std::move(e), t.c);
    }
    std::vector<LaurentTerm> ghat(g.terms());
    for (auto& t : ghat)
        for (int i = 0; i < n; ++i) t.e[static_cast<size_t>(i)] -= g_min[static_cast<size_t>(i)];

    const LaurentTerm& glead = ghat.front();
    std::vector<LaurentTerm> quotient;
    ExponentVector qe(static_cast<size_t>(n));
    while (!rem.empty()) {
        const auto& [re, rc] = *rem.begin();
        for (int i = 0; i < n; ++i) {
            const std::int32_t d = re[static_cast<size_t>(i)] - glead.e[static_cast<size_t>(i)];
            if (d < 0) throw InexactDivisionError("inexact division: leading monomial not divisible");
            qe[static_cast<size_t>(i)] = d;
        }
        if (!mpz_divisible_p(rc.get_mpz_t(), glead.c.get_mpz_t())) {
            throw InexactDivisionError("inexact division: leading coefficient not divisible");
        }
        mpz_class qc = rc / glead.c;
        for (const auto& t : ghat) {
            ExponentVector e(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = qe[static_cast<size_t>(i)] + t.e[static_cast<size_t>(i)];
            auto it = rem.find(e);
            if (it == rem.end()) {
                rem.emplace(std::move(e), -(qc * t.c));
            } else {
                it->second -= qc * t.c;
                if (it->second == 0) rem.erase(it);
            }
        }
        ExponentVector shifted(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            shifted[static_cast<size_t>(i)] =
                qe[static_cast<size_t>(i)] + f_min[static_cast<size_t>(i)] - g_min[static_cast<size_t>(i)];
        quotient.push_back({std::move(shifted), std::move(qc)});
    }
    return detail_from_sorted(n, std::move(quotient));
}

inline std::optional<LaurentPolynomial> exact_div_kronecker(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    size_t digit_bits = std::max(coeff_bits(sum_abs_coeff(f)), coeff_bits(sum_abs_coeff(g))) + 8;
    for (int attempt = 0; attempt < 3; ++attempt, digit_bits *= 2) {
        auto plan = make_plan(f, g, true, digit_bits);
        if (!plan) return std::nullopt;
        const mpz_class zf = KroneckerCodec::pack(f, plan->f_base, plan->grid);
        const mpz_class zg = KroneckerCodec::pack(g, plan->g_base, plan->grid);
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), zf.get_mpz_t(), zg.get_mpz_t());
        if (r != 0) throw InexactDivisionError("inexact division: nonzero remainder");
        auto terms = KroneckerCodec::unpack(q, plan->out_base, plan->grid);
        if (!terms) continue;
        bool in_box = true;
        for (const auto& t : *terms) {
            for (int i = 0; i < plan->grid.n && in_box; ++i) {
                const std::int64_t off = static_cast<std::int64_t>(t.e[static_cast<size_t>(i)]) - plan->out_base[static_cast<size_t>(i)];
                in_box = off >= 0 && off / plan->grid.delta[static_cast<size_t>(i)] < plan->out_dims[static_cast<size_t>(i)];
            }
            if (!in_box) break;
        }
        if (!in_box) continue;
        LaurentPolynomial candidate = detail_from_sorted(f.var_count(), std::move(*terms));
        if (mul(candidate, g) == f) return candidate;
    }
    return std::nullopt;  // escalation failed; caller falls back to long division
}

}  // namespace laurent_detail

inline LaurentPolynomial mul(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    require_same_vars(f, g);
    if (f.is_zero() || g.is_zero()) return LaurentPolynomial::zero(f.var_count());
    const size_t work = f.term_count() * g.term_count();
    if (work > laurent_detail::kNaiveMulWork) {
        if (auto r = laurent_detail::mul_kronecker(f, g)) return std::move(*r);
    }
    return laurent_detail::mul_naive(f, g);
}

inline LaurentPolynomial pow(const LaurentPolynomial& f, unsigned long e) {
    LaurentPolynomial result = LaurentPolynomial::constant(f.var_count(), 1);
    if (e == 0) return result;
    LaurentPolynomial base = f;
    while (true) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e == 0) break;
        base = mul(base, base);
    }
    return result;
}

// Exact division in the Laurent ring. The monomial content of g is free to
// divide by; the residual polynomial division must leave no remainder, and a
// non-divisible input raises InexactDivisionError.
inline LaurentPolynomial exact_div(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    require_same_vars(f, g);
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    if (f.is_zero()) return LaurentPolynomial::zero(f.var_count());

    const int n = f.var_count();
    if (g.term_count() == 1) {
        const auto& d = g.terms().front();
        std::vector<LaurentTerm> out;
        out.reserve(f.term_count());
        for (const auto& t : f.terms()) {
            if (!mpz_divisible_p(t.c.get_mpz_t(), d.c.get_mpz_t())) {
                throw InexactDivisionError("inexact division: coefficient not divisible by monomial divisor");
            }
            ExponentVector e(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = t.e[static_cast<size_t>(i)] - d.e[static_cast<size_t>(i)];
            out.push_back({std::move(e), mpz_class(t.c / d.c)});
        }
        return detail_from_sorted(n, std::move(out));
    }

    // Estimate long-division work as (quotient box cells) x (divisor terms).
    const ExponentVector f_min = f.min_exponents(), f_max = f.max_exponents();
    const ExponentVector g_min = g.min_exponents(), g_max = g.max_exponents();
    std::int64_t q_cells = 1;
    bool overflow = false;
    for (int i = 0; i < n && !overflow; ++i) {
        const std::int64_t extent = (static_cast<std::int64_t>(f_max[static_cast<size_t>(i)]) - f_min[static_cast<size_t>(i)]) -
                                    (static_cast<std::int64_t>(g_max[static_cast<size_t>(i)]) - g_min[static_cast<size_t>(i)]);
        if (extent < 0) throw InexactDivisionError("inexact division: divisor box exceeds dividend box");
        overflow = __builtin_mul_overflow(q_cells, extent + 1, &q_cells);
    }
    const bool small = !overflow && q_cells <= static_cast<std::int64_t>(laurent_detail::kLongDivisionWork /
                                                                         std::max<size_t>(g.term_count(), 1));
    if (!small) {
        if (auto r = laurent_detail::exact_div_kronecker(f, g)) return std::move(*r);
    }
    return laurent_detail::exact_div_long(f, g);
}

}  // namespace clusterbox
