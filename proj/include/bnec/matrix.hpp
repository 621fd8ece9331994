#pragma once

#include <initializer_list>
#include <vector>

#include "bnec/field.hpp"

namespace bnec {

// Dense row-major matrix over F_q.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr f, int rows, int cols)
        : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}
    Matrix(FieldPtr f, std::initializer_list<std::initializer_list<Symbol>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return f_; }

    Symbol& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    Symbol at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    std::vector<Symbol> row(int r) const;
    std::vector<Symbol> col(int c) const;
    void set_row(int r, const std::vector<Symbol>& v);

    Matrix transposed() const;
    // Matrix whose columns are the selected columns of *this, in the given order.
    Matrix select_cols(const std::vector<int>& idx) const;
    // Matrix whose rows are the selected rows of *this, in the given order.
    Matrix select_rows(const std::vector<int>& idx) const;
    // [*this | other] side by side.
    Matrix hstack(const Matrix& other) const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    FieldPtr f_;
    int rows_ = 0, cols_ = 0;
    std::vector<Symbol> a_;
};

struct SolveResult {
    enum class Kind { unique, none, multiple };
    Kind kind = Kind::none;
    std::vector<Symbol> solution;  // present iff kind != none (free variables set to 0)
    int nullity = 0;               // free-variable count when kind == multiple
};

int rank(const Matrix& m);

// Solves A x = b exactly over F_q.
SolveResult solve_linear(const Matrix& a, const std::vector<Symbol>& b);

// Columns form a basis of {x : M x = 0}; column count = cols(M) - rank(M).
// Deterministic: pivots are the first nonzero entries in column order.
Matrix nullspace_basis(const Matrix& m);

// True iff every subset of <= k rows is linearly independent.
bool is_k_independent(const Matrix& rows, int k);

Matrix mat_mul(const Matrix& a, const Matrix& b);
std::vector<Symbol> mat_vec(const Matrix& a, const std::vector<Symbol>& x);
std::vector<Symbol> vec_add(const Field& f, const std::vector<Symbol>& a, const std::vector<Symbol>& b);
std::vector<Symbol> vec_sub(const Field& f, const std::vector<Symbol>& a, const std::vector<Symbol>& b);
bool is_zero(const std::vector<Symbol>& v);

}  // namespace bnec
