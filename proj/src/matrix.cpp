#include "bnec/matrix.hpp"

#include <algorithm>

namespace bnec {

Matrix::Matrix(FieldPtr f, std::initializer_list<std::initializer_list<Symbol>> rows) : f_(std::move(f)) {
    rows_ = int(rows.size());
    cols_ = rows_ ? int(rows.begin()->size()) : 0;
    a_.reserve(std::size_t(rows_) * cols_);
    for (const auto& r : rows) {
        if (int(r.size()) != cols_) throw DimensionMismatch("ragged initializer");
        for (Symbol v : r) a_.push_back(v);
    }
}

std::vector<Symbol> Matrix::row(int r) const {
    return {a_.begin() + std::size_t(r) * cols_, a_.begin() + std::size_t(r + 1) * cols_};
}

std::vector<Symbol> Matrix::col(int c) const {
    std::vector<Symbol> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void Matrix::set_row(int r, const std::vector<Symbol>& v) {
    if (int(v.size()) != cols_) throw DimensionMismatch("row length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + std::size_t(r) * cols_);
}

Matrix Matrix::transposed() const {
    Matrix t(f_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
    Matrix s(f_, rows_, int(idx.size()));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < int(idx.size()); ++c) s.at(r, c) = at(r, idx[c]);
    return s;
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
    Matrix s(f_, int(idx.size()), cols_);
    for (int r = 0; r < int(idx.size()); ++r)
        for (int c = 0; c < cols_; ++c) s.at(r, c) = at(idx[r], c);
    return s;
}

Matrix Matrix::hstack(const Matrix& other) const {
    if (other.rows_ != rows_) throw DimensionMismatch("hstack row mismatch");
    Matrix s(f_, rows_, cols_ + other.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) s.at(r, c) = at(r, c);
        for (int c = 0; c < other.cols_; ++c) s.at(r, cols_ + c) = other.at(r, c);
    }
    return s;
}

namespace {

// In-place row echelon form. Returns pivot columns. Pivoting: first nonzero
// entry in column order (deterministic, no magnitude concept in F_q).
std::vector<int> echelon(Matrix& m) {
    const Field& f = *m.field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Symbol s = f.inv(m.at(r, c));
        for (int j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), s);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Symbol fac = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(fac, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const Matrix& m) {
    Matrix w = m;
    return int(echelon(w).size());
}

SolveResult solve_linear(const Matrix& a, const std::vector<Symbol>& b) {
    if (int(b.size()) != a.rows()) throw DimensionMismatch("solve_linear: rhs length != rows");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<int> pivots = echelon(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return {SolveResult::Kind::none, {}, 0};

    SolveResult res;
    res.solution.assign(a.cols(), 0);
    for (int i = 0; i < int(pivots.size()); ++i) res.solution[pivots[i]] = aug.at(i, a.cols());
    res.nullity = a.cols() - int(pivots.size());
    res.kind = res.nullity == 0 ? SolveResult::Kind::unique : SolveResult::Kind::multiple;
    return res;
}

Matrix nullspace_basis(const Matrix& m) {
    const FieldPtr& fp = m.field();
    const Field& f = *fp;
    Matrix w = m;
    std::vector<int> pivots = echelon(w);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    Matrix basis(fp, m.cols(), m.cols() - int(pivots.size()));
    int bc = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        // free variable c = 1, other free variables 0
        basis.at(c, bc) = 1;
        for (int i = 0; i < int(pivots.size()); ++i) basis.at(pivots[i], bc) = f.neg(w.at(i, c));
        ++bc;
    }
    return basis;
}

bool is_k_independent(const Matrix& rows, int k) {
    if (k > rows.rows()) throw KTooLarge("k exceeds row count");
    if (k <= 0) return true;
    // Every size-k subset has rank k; smaller dependent subsets would extend
    // to a dependent size-k subset, so checking size k exactly suffices.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (rank(rows.select_rows(idx)) != k) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == rows.rows() - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul shapes");
    const Field& f = *a.field();
    Matrix c(a.field(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            Symbol v = a.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                c.at(i, j) = f.add(c.at(i, j), f.mul(v, b.at(k, j)));
        }
    return c;
}

std::vector<Symbol> mat_vec(const Matrix& a, const std::vector<Symbol>& x) {
    if (int(x.size()) != a.cols()) throw DimensionMismatch("mat_vec shapes");
    const Field& f = *a.field();
    std::vector<Symbol> y(a.rows(), 0);
    for (int i = 0; i < a.rows(); ++i) {
        Symbol acc = 0;
        for (int j = 0; j < a.cols(); ++j)
            if (x[j] != 0) acc = f.add(acc, f.mul(a.at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

std::vector<Symbol> vec_add(const Field& f, const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vec_add length");
    std::vector<Symbol> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

std::vector<Symbol> vec_sub(const Field& f, const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vec_sub length");
    std::vector<Symbol> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

bool is_zero(const std::vector<Symbol>& v) {
    for (Symbol s : v)
        if (s != 0) return false;
    return true;
}

}  // namespace bnec
