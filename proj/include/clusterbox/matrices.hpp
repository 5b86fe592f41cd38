/*
 * matrices.hpp
 * ------------
 * Integer matrices, exchange matrices and the entry-wise operators used by
 * the d-/m-vector recursions: [A]_+, |A|, max(A1,A2), the row/column masks
 * A^{k.} and A^{.k}, and the sign-flip matrix J_k.
 *
 * Convention: mutation directions k (and tree-path letters) are 1-based,
 * matching the usual indexing of seeds; raw row/column accessors are 0-based.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clusterbox {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow in matrix arithmetic (add)");
    }
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow in matrix arithmetic (mul)");
    }
    return r;
}

// Dense row-major integer matrix. Entries are 64-bit with overflow checks on
// all arithmetic; overflow throws instead of wrapping.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be positive");
    }

    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        rows_ = static_cast<int>(rows.size());
        if (rows_ == 0) throw std::invalid_argument("matrix needs at least one row");
        cols_ = static_cast<int>(rows.begin()->size());
        if (cols_ == 0) throw std::invalid_argument("matrix needs at least one column");
        e_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
            e_.insert(e_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix neg_identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = -1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int64_t& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    std::int64_t at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<std::int64_t>& entries() const { return e_; }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < cols_; ++j) {
                if (j) s += ",";
                s += std::to_string(at(i, j));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::int64_t> e_;
};

inline void require_same_shape(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shape mismatch");
    }
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b);
    IntMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = checked_add(a.at(i, j), b.at(i, j));
    return r;
}

inline IntMatrix operator-(const IntMatrix& a) {
    IntMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = checked_mul(a.at(i, j), -1);
    return r;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + (-b); }

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
    IntMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const std::int64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, b.at(k, j)));
        }
    return r;
}

// [A]_+ : clamp negative entries to zero.
inline IntMatrix positive_part(const IntMatrix& a) {
    IntMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = std::max<std::int64_t>(a.at(i, j), 0);
    return r;
}

// |A| entry-wise.
inline IntMatrix abs(const IntMatrix& a) {
    IntMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == INT64_MIN) throw std::overflow_error("integer overflow in matrix abs");
            r.at(i, j) = std::abs(a.at(i, j));
        }
    return r;
}

inline IntMatrix entrywise_max(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b);
    IntMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = std::max(a.at(i, j), b.at(i, j));
    return r;
}

// A^{k.} : zero all rows except row k (k is 1-based).
inline IntMatrix row_mask(const IntMatrix& a, int k) {
    if (k < 1 || k > a.rows()) throw std::out_of_range("row index out of range");
    IntMatrix r(a.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) r.at(k - 1, j) = a.at(k - 1, j);
    return r;
}

// A^{.k} : zero all columns except column k (k is 1-based).
inline IntMatrix col_mask(const IntMatrix& a, int k) {
    if (k < 1 || k > a.cols()) throw std::out_of_range("column index out of range");
    IntMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) r.at(i, k - 1) = a.at(i, k - 1);
    return r;
}

// J_k : identity with the kk-entry replaced by -1 (k is 1-based).
inline IntMatrix j_matrix(int n, int k) {
    if (k < 1 || k > n) throw std::out_of_range("index out of range for J_k");
    IntMatrix r = IntMatrix::identity(n);
    r.at(k - 1, k - 1) = -1;
    return r;
}

inline IntMatrix transpose(const IntMatrix& a) {
    IntMatrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
    return r;
}

// Searches for positive integers d_1..d_n with d_i * b_ij == -d_j * b_ji.
// Ratios are propagated along the graph of nonzero entries; the witness is
// normalized to coprime positive integers, with d = 1 on isolated components.
inline std::optional<std::vector<std::int64_t>> skew_symmetrizer(const IntMatrix& b) {
    if (b.rows() != b.cols()) return std::nullopt;
    const int n = b.rows();
    for (int i = 0; i < n; ++i) {
        if (b.at(i, i) != 0) return std::nullopt;
        for (int j = 0; j < n; ++j) {
            const std::int64_t x = b.at(i, j), y = b.at(j, i);
            if ((x == 0) != (y == 0)) return std::nullopt;
            if (x != 0 && ((x > 0) == (y > 0))) return std::nullopt;
        }
    }

    struct Frac {
        std::int64_t num = 1, den = 1;  // positive, reduced
        void reduce() {
            const std::int64_t g = std::gcd(num, den);
            num /= g;
            den /= g;
        }
    };
    std::vector<Frac> d(n);
    std::vector<int> state(n, 0);  // 0 unseen, 1 assigned
    for (int root = 0; root < n; ++root) {
        if (state[root]) continue;
        state[root] = 1;
        d[root] = Frac{1, 1};
        std::vector<int> stack{root};
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (b.at(i, j) == 0) continue;
                // d_j / d_i = |b_ij| / |b_ji|
                Frac dj;
                dj.num = checked_mul(d[i].num, std::abs(b.at(i, j)));
                dj.den = checked_mul(d[i].den, std::abs(b.at(j, i)));
                dj.reduce();
                if (!state[j]) {
                    state[j] = 1;
                    d[j] = dj;
                    stack.push_back(j);
                } else if (d[j].num != dj.num || d[j].den != dj.den) {
                    return std::nullopt;  // inconsistent cycle
                }
            }
        }
    }

    std::int64_t den_lcm = 1;
    for (const auto& f : d) den_lcm = checked_mul(den_lcm / std::gcd(den_lcm, f.den), f.den);
    std::vector<std::int64_t> witness(n);
    for (int i = 0; i < n; ++i) witness[i] = checked_mul(d[i].num, den_lcm / d[i].den);
    std::int64_t g = 0;
    for (auto w : witness) g = std::gcd(g, w);
    for (auto& w : witness) w /= g;

    // full verification (also catches cross-edge inconsistencies)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (checked_mul(witness[i], b.at(i, j)) != -checked_mul(witness[j], b.at(j, i))) return std::nullopt;
    return witness;
}

inline bool is_skew_symmetrizable(const IntMatrix& b) { return skew_symmetrizer(b).has_value(); }

constexpr int kMaxRank = 12;

// Skew-symmetrizable n x n integer matrix, validated at construction.
// Immutable; mutation returns a fresh value.
class ExchangeMatrix {
public:
    explicit ExchangeMatrix(IntMatrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw std::invalid_argument("exchange matrix must be square");
        if (m_.rows() > kMaxRank) throw std::invalid_argument("rank exceeds supported maximum (12)");
        auto witness = skew_symmetrizer(m_);
        if (!witness) throw std::invalid_argument("matrix is not skew-symmetrizable");
        symmetrizer_ = std::move(*witness);
    }

    ExchangeMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : ExchangeMatrix(IntMatrix(rows)) {}

    int n() const { return m_.rows(); }
    std::int64_t at(int i, int j) const { return m_.at(i, j); }
    const IntMatrix& matrix() const { return m_; }
    const std::vector<std::int64_t>& symmetrizer() const { return symmetrizer_; }

    friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& b) { return a.m_ == b.m_; }
    friend bool operator!=(const ExchangeMatrix& a, const ExchangeMatrix& b) { return !(a == b); }

private:
    IntMatrix m_;
    std::vector<std::int64_t> symmetrizer_;
};

inline void require_direction(const ExchangeMatrix& b, int k) {
    if (k < 1 || k > b.n()) throw std::out_of_range("mutation direction out of range");
}

// Matrix mutation in direction k (1-based):
//   b'_ij = -b_ij                              if i == k or j == k
//   b'_ij = b_ij + sign(b_ik) * [b_ik b_kj]_+  otherwise
inline ExchangeMatrix mutate(const ExchangeMatrix& b, int k) {
    require_direction(b, k);
    const int n = b.n();
    const int kk = k - 1;
    IntMatrix r(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == kk || j == kk) {
                r.at(i, j) = checked_mul(b.at(i, j), -1);
            } else {
                const std::int64_t bik = b.at(i, kk);
                const std::int64_t prod = checked_mul(bik, b.at(kk, j));
                const std::int64_t sign = bik > 0 ? 1 : (bik < 0 ? -1 : 0);
                r.at(i, j) = checked_add(b.at(i, j), checked_mul(sign, std::max<std::int64_t>(prod, 0)));
            }
        }
    }
    return ExchangeMatrix(std::move(r));
}

// Generalized Cartan companion: A_ii = 2, A_ij = -|b_ij|.
inline IntMatrix cartan_companion(const ExchangeMatrix& b) {
    const int n = b.n();
    IntMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = (i == j) ? 2 : -std::abs(b.at(i, j));
    return r;
}

// True iff all entries of row k weakly agree in sign (mutation at k is then a
// source-sink move).
inline bool is_source_sink(const ExchangeMatrix& b, int k) {
    require_direction(b, k);
    bool any_pos = false, any_neg = false;
    for (int j = 0; j < b.n(); ++j) {
        const auto v = b.at(k - 1, j);
        any_pos |= v > 0;
        any_neg |= v < 0;
    }
    return !(any_pos && any_neg);
}

}  // namespace clusterbox
