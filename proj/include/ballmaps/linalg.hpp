#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ballmaps/rational.hpp"

namespace ballmaps {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;
using CRatVec = std::vector<CRat>;
using CRatMat = std::vector<CRatVec>;

inline CRatMat crat_identity(int m) {
    CRatMat I(m, CRatVec(m));
    for (int i = 0; i < m; ++i) I[i][i] = CRat(1);
    return I;
}

// v* M v for a Hermitian M; the result is real exactly when M is Hermitian.
inline Rational hermitian_value(const CRatMat& M, const CRatVec& v) {
    int m = static_cast<int>(M.size());
    CRat total(0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) total += v[i].conj() * M[i][j] * v[j];
    if (!(total.im == 0)) throw std::logic_error("quadratic value of a non-Hermitian matrix");
    return total.re;
}

enum class Definiteness { PD, PSD, NOT_PSD };

// Outcome of exact symmetric elimination on a Hermitian matrix. For a
// nonnegative matrix the pivots list the positive elimination pivots and
// rank equals their count. Otherwise witness holds a vector v with
// v* M v = witness_value < 0, re-verified exactly on construction.
struct HermCertificate {
    Definiteness verdict = Definiteness::NOT_PSD;
    int dim = 0;
    int rank = 0;
    std::vector<Rational> pivots;
    CRatVec witness;
    Rational witness_value;

    bool is_psd() const { return verdict != Definiteness::NOT_PSD; }
};

// Symmetric Gaussian elimination with largest-diagonal pivoting, tracking
// the congruence transform so failures yield exact witness vectors.
inline HermCertificate hermitian_definiteness(const CRatMat& M) {
    int m = static_cast<int>(M.size());
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(M[i].size()) != m) throw std::invalid_argument("non-square matrix");
        if (!(M[i][i].im == 0)) throw std::invalid_argument("non-real diagonal entry");
        for (int j = 0; j < i; ++j)
            if (!(M[i][j] == M[j][i].conj())) throw std::invalid_argument("matrix is not Hermitian");
    }
    HermCertificate cert;
    cert.dim = m;
    CRatMat S = M;
    CRatMat X = crat_identity(m);
    std::vector<bool> active(m, true);

    auto conj_row = [&](const CRatVec& row) {
        CRatVec v(m);
        for (int k = 0; k < m; ++k) v[k] = row[k].conj();
        return v;
    };
    auto fail_with = [&](const CRatVec& v) {
        cert.verdict = Definiteness::NOT_PSD;
        cert.witness = v;
        cert.witness_value = hermitian_value(M, v);
        if (!(cert.witness_value < 0)) throw std::logic_error("witness does not certify failure");
        return cert;
    };

    while (true) {
        int best = -1, worst = -1;
        for (int i = 0; i < m; ++i) {
            if (!active[i]) continue;
            if (S[i][i].re < 0 && (worst < 0 || S[i][i].re < S[worst][worst].re)) worst = i;
            if (S[i][i].re > 0 && (best < 0 || S[best][best].re < S[i][i].re)) best = i;
        }
        if (worst >= 0) return fail_with(conj_row(X[worst]));
        if (best < 0) break;
        Rational p = S[best][best].re;
        cert.pivots.push_back(p);
        active[best] = false;
        std::vector<CRat> col(m);
        for (int j = 0; j < m; ++j) col[j] = S[j][best];
        for (int j = 0; j < m; ++j) {
            if (!active[j] || col[j].is_zero()) continue;
            CRat f = col[j] / CRat(p);
            for (int k = 0; k < m; ++k) {
                if (active[k]) S[j][k] -= f * col[k].conj();
                X[j][k] -= f * X[best][k];
            }
        }
    }
    // Remaining active diagonal is all zero; any off-diagonal residue gives
    // a direction of negativity.
    for (int i = 0; i < m; ++i) {
        if (!active[i]) continue;
        for (int j = 0; j < m; ++j) {
            if (!active[j] || j == i || S[i][j].is_zero()) continue;
            CRatVec u(m);
            for (int k = 0; k < m; ++k) u[k] = S[i][j].conj() * X[i][k] - X[j][k];
            return fail_with(conj_row(u));
        }
    }
    cert.rank = static_cast<int>(cert.pivots.size());
    cert.verdict = cert.rank == m ? Definiteness::PD : Definiteness::PSD;
    return cert;
}

// Rank over the exact complex field by row echelon reduction.
inline int crat_rank(CRatMat A) {
    int rows = static_cast<int>(A.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(A[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!A[r][c].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(A[rank], A[pivot]);
        CRat inv = CRat(1) / A[rank][c];
        for (int k = c; k < cols; ++k) A[rank][k] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][c].is_zero()) continue;
            CRat f = A[r][c];
            for (int k = c; k < cols; ++k) A[r][k] -= f * A[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline int rat_rank(const RatMat& A) {
    CRatMat B(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        B[i].resize(A[i].size());
        for (std::size_t j = 0; j < A[i].size(); ++j) B[i][j] = CRat(A[i][j]);
    }
    return crat_rank(B);
}

struct LinearSolution {
    bool consistent = false;
    RatVec particular;                // one solution when consistent
    std::vector<RatVec> nullspace;    // basis of the homogeneous solutions
    int rank = 0;
};

// Gauss-Jordan solve of A x = b over the rationals, reporting the full
// affine solution structure.
inline LinearSolution solve_linear(RatMat A, RatVec b) {
    int rows = static_cast<int>(A.size());
    int cols = rows == 0 ? 0 : static_cast<int>(A[0].size());
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("rhs size mismatch");
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (A[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(A[rank], A[pivot]);
        std::swap(b[rank], b[pivot]);
        Rational inv = 1 / A[rank][c];
        for (int k = c; k < cols; ++k) A[rank][k] *= inv;
        b[rank] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0) continue;
            Rational f = A[r][c];
            for (int k = c; k < cols; ++k) A[r][k] -= f * A[rank][k];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    LinearSolution sol;
    sol.rank = rank;
    for (int r = rank; r < rows; ++r)
        if (b[r] != 0) return sol;
    sol.consistent = true;
    sol.particular.assign(cols, rat(0));
    for (int r = 0; r < rank; ++r) sol.particular[pivot_col[r]] = b[r];
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec basis(cols, rat(0));
        basis[c] = rat(1);
        for (int r = 0; r < rank; ++r) basis[pivot_col[r]] = -A[r][c];
        sol.nullspace.push_back(std::move(basis));
    }
    return sol;
}

}  // namespace ballmaps
