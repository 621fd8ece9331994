#include "doctest.h"

#include "bnec/combin.hpp"
#include "bnec/matrix.hpp"
#include "bnec/rng.hpp"

using namespace bnec;

namespace {

Matrix random_matrix(FieldPtr f, int rows, int cols, Rng& rng) {
    Matrix m(f, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = rng.symbol(*f);
    return m;
}

// Oracle: a row set is dependent iff some nonzero coefficient vector over the
// chosen rows combines to zero. Enumerates all q^j combinations; independent
// of Gaussian elimination.
bool subset_dependent_oracle(const Matrix& m, const std::vector<int>& rows) {
    const Field& f = *m.field();
    unsigned q = f.q();
    std::vector<Symbol> coef(rows.size(), 0);
    while (true) {
        int i = int(rows.size()) - 1;
        while (i >= 0 && coef[i] == Symbol(q - 1)) --i;
        if (i < 0) return false;
        ++coef[i];
        for (std::size_t j = i + 1; j < rows.size(); ++j) coef[j] = 0;
        std::vector<Symbol> acc(m.cols(), 0);
        for (std::size_t j = 0; j < rows.size(); ++j)
            for (int c = 0; c < m.cols(); ++c)
                acc[c] = f.add(acc[c], f.mul(coef[j], m.at(rows[j], c)));
        if (is_zero(acc)) return true;
    }
}

bool k_independent_oracle(const Matrix& m, int k) {
    for (int size = 1; size <= k; ++size) {
        bool dep = false;
        for_each_subset(m.rows(), size, [&](const std::vector<int>& rows) {
            if (!dep && subset_dependent_oracle(m, rows)) dep = true;
        });
        if (dep) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("rank examples") {
    FieldPtr f7 = Field::make(7);
    CHECK(rank(Matrix(f7, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(rank(Matrix(f7, {{0, 0}, {0, 0}})) == 0);
    CHECK(rank(Matrix(f7, {{1, 2}, {2, 4}})) == 1);  // row 2 = 2 * row 1
}

TEST_CASE("solve_linear examples") {
    FieldPtr f7 = Field::make(7);
    Matrix a(f7, {{1}, {1}, {1}});

    SolveResult r1 = solve_linear(a, {5, 5, 5});
    CHECK(r1.kind == SolveResult::Kind::unique);
    CHECK(r1.solution == std::vector<Symbol>{5});

    SolveResult r2 = solve_linear(a, {5, 5, 6});
    CHECK(r2.kind == SolveResult::Kind::none);

    FieldPtr f2 = Field::make(2);
    SolveResult r3 = solve_linear(Matrix(f2, {{1, 1}}), {0});
    CHECK(r3.kind == SolveResult::Kind::multiple);
    CHECK(r3.nullity == 1);

    CHECK_THROWS_AS(solve_linear(a, {1, 2}), DimensionMismatch);
}

TEST_CASE("nullspace examples and property") {
    FieldPtr f7 = Field::make(7);
    Matrix m(f7, {{1, 1, 1}});
    Matrix basis = nullspace_basis(m);
    CHECK(basis.cols() == 2);
    CHECK(rank(basis) == 2);
    Matrix prod = mat_mul(m, basis);
    for (int c = 0; c < prod.cols(); ++c) CHECK(prod.at(0, c) == 0);

    CHECK(nullspace_basis(Matrix(f7, {{1, 0}, {0, 1}})).cols() == 0);
    Matrix zero23(f7, 2, 3);
    CHECK(nullspace_basis(zero23).cols() == 3);
}

TEST_CASE("k-independence examples") {
    FieldPtr f2 = Field::make(2);
    CHECK(is_k_independent(Matrix(f2, {{1, 0}, {0, 1}, {1, 1}}), 2));
    CHECK_FALSE(is_k_independent(Matrix(f2, {{1, 0}, {1, 0}}), 2));
    CHECK_FALSE(is_k_independent(Matrix(f2, {{0, 0}, {1, 0}}), 1));
    CHECK_THROWS_AS(is_k_independent(Matrix(f2, {{1, 0}}), 2), KTooLarge);
}

TEST_CASE("properties on random matrices") {
    Rng rng(20240811);
    for (unsigned q : {2u, 3u, 5u}) {
        FieldPtr f = Field::make(q);
        for (int iter = 0; iter < 40; ++iter) {
            Rng stream = rng.split({q, std::uint64_t(iter)});
            int rows = 1 + int(stream.below(5));
            int cols = 1 + int(stream.below(5));
            Matrix m = random_matrix(f, rows, cols, stream);

            CHECK(rank(m) == rank(m.transposed()));

            // solve re-verification
            std::vector<Symbol> x(cols);
            for (auto& v : x) v = stream.symbol(*f);
            std::vector<Symbol> b = mat_vec(m, x);
            SolveResult sr = solve_linear(m, b);
            REQUIRE(sr.kind != SolveResult::Kind::none);
            CHECK(mat_vec(m, sr.solution) == b);

            // nullspace property
            Matrix basis = nullspace_basis(m);
            CHECK(basis.cols() == cols - rank(m));
            if (basis.cols() > 0) {
                CHECK(rank(basis) == basis.cols());
                Matrix prod = mat_mul(m, basis);
                for (int r = 0; r < prod.rows(); ++r)
                    for (int c = 0; c < prod.cols(); ++c) CHECK(prod.at(r, c) == 0);
            }
        }
    }
}

TEST_CASE("k-independence agrees with brute-force subset oracle") {
    Rng rng(77);
    for (unsigned q : {2u, 3u}) {
        FieldPtr f = Field::make(q);
        for (int iter = 0; iter < 30; ++iter) {
            Rng stream = rng.split({q, std::uint64_t(iter)});
            int rows = 2 + int(stream.below(7));  // up to 8 rows
            int cols = 1 + int(stream.below(4));
            Matrix m = random_matrix(f, rows, cols, stream);
            for (int k = 1; k <= rows; ++k)
                CHECK(is_k_independent(m, k) == k_independent_oracle(m, k));
        }
    }
}
