#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace combdrive {

/// Compressed sparse row matrix. Column indices are sorted within each row.
struct CsrMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> col;
    std::vector<double> val;

    std::size_t nnz() const { return val.size(); }
    double at(std::size_t r, std::size_t c) const;

    /// y = A x over row blocks. `threads` only changes who computes which
    /// rows, never the arithmetic, so the result is identical for any count.
    void multiply(const std::vector<double> &x, std::vector<double> &y, int threads = 1) const;
};

/// Sum in fixed-size blocks, blocks combined pairwise. Order depends only on
/// the vector length.
double deterministic_dot(const std::vector<double> &a, const std::vector<double> &b);
double deterministic_sum(const std::vector<double> &a);

enum class Preconditioner { SymmetricGaussSeidel, Jacobi, None };

std::string to_string(Preconditioner p);
Preconditioner preconditioner_from_string(const std::string &s);

struct SolverSettings {
    double tol = 1e-10; // relative residual ||r|| / ||b||
    int max_iter = 20000;
    Preconditioner precond = Preconditioner::SymmetricGaussSeidel;
    int threads = 1;
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0; // final relative residual
    std::size_t dofs = 0;
};

/// Preconditioned CG for an SPD system. `x` holds the initial guess on entry.
/// Throws ConvergenceError past max_iter, NumericalError on NaN.
SolveStats pcg(const CsrMatrix &A, const std::vector<double> &b, std::vector<double> &x,
               const SolverSettings &settings);

} // namespace combdrive
