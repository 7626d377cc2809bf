#include "combdrive/sparse.hpp"

#include "combdrive/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace combdrive {

double CsrMatrix::at(std::size_t r, std::size_t c) const {
    auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
    auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
    auto it = std::lower_bound(first, last, c);
    if (it == last || *it != c)
        return 0.0;
    return val[static_cast<std::size_t>(it - col.begin())];
}

void CsrMatrix::multiply(const std::vector<double> &x, std::vector<double> &y, int threads) const {
    y.resize(rows);
    auto block = [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            double s = 0.0;
            for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
                s += val[k] * x[col[k]];
            y[r] = s;
        }
    };
    const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
    if (t == 1 || rows < 4096) {
        block(0, rows);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (rows + t - 1) / t;
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t r0 = i * chunk, r1 = std::min(rows, r0 + chunk);
        if (r0 < r1)
            pool.emplace_back(block, r0, r1);
    }
    for (auto &th : pool)
        th.join();
}

namespace {

constexpr std::size_t kBlock = 256;

template <class F> double blocked_sum(std::size_t n, F term) {
    std::vector<double> partial((n + kBlock - 1) / kBlock, 0.0);
    for (std::size_t b = 0; b < partial.size(); ++b) {
        double s = 0.0;
        const std::size_t end = std::min(n, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i)
            s += term(i);
        partial[b] = s;
    }
    // pairwise tree over the block sums
    while (partial.size() > 1) {
        std::vector<double> next((partial.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = partial[2 * i] + (2 * i + 1 < partial.size() ? partial[2 * i + 1] : 0.0);
        partial.swap(next);
    }
    return partial.empty() ? 0.0 : partial[0];
}

} // namespace

double deterministic_dot(const std::vector<double> &a, const std::vector<double> &b) {
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double deterministic_sum(const std::vector<double> &a) {
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i]; });
}

std::string to_string(Preconditioner p) {
    switch (p) {
    case Preconditioner::SymmetricGaussSeidel: return "sgs";
    case Preconditioner::Jacobi: return "jacobi";
    case Preconditioner::None: return "none";
    }
    return "?";
}

Preconditioner preconditioner_from_string(const std::string &s) {
    if (s == "sgs")
        return Preconditioner::SymmetricGaussSeidel;
    if (s == "jacobi")
        return Preconditioner::Jacobi;
    if (s == "none")
        return Preconditioner::None;
    throw ValidationError("unknown preconditioner '" + s + "' (expected sgs, jacobi or none)");
}

namespace {

struct PrecondOp {
    const CsrMatrix &A;
    Preconditioner kind;
    std::vector<double> diag;
    std::vector<std::size_t> diag_pos;

    PrecondOp(const CsrMatrix &a, Preconditioner k) : A(a), kind(k) {
        diag.resize(A.rows);
        diag_pos.resize(A.rows);
        for (std::size_t r = 0; r < A.rows; ++r) {
            bool found = false;
            for (std::size_t q = A.row_ptr[r]; q < A.row_ptr[r + 1]; ++q)
                if (A.col[q] == r) {
                    diag[r] = A.val[q];
                    diag_pos[r] = q;
                    found = true;
                }
            if (!found || !(diag[r] > 0.0))
                throw NumericalError("matrix has a non-positive diagonal at row " +
                                     std::to_string(r));
        }
    }

    // z = M^{-1} r
    void apply(const std::vector<double> &r, std::vector<double> &z) const {
        const std::size_t n = A.rows;
        z.resize(n);
        switch (kind) {
        case Preconditioner::None:
            z = r;
            return;
        case Preconditioner::Jacobi:
            for (std::size_t i = 0; i < n; ++i)
                z[i] = r[i] / diag[i];
            return;
        case Preconditioner::SymmetricGaussSeidel:
            break;
        }
        // (D+L) w = r
        for (std::size_t i = 0; i < n; ++i) {
            double s = r[i];
            for (std::size_t q = A.row_ptr[i]; q < diag_pos[i]; ++q)
                s -= A.val[q] * z[A.col[q]];
            z[i] = s / diag[i];
        }
        // (D+U) z = D w
        for (std::size_t i = n; i-- > 0;) {
            double s = 0.0;
            for (std::size_t q = diag_pos[i] + 1; q < A.row_ptr[i + 1]; ++q)
                s += A.val[q] * z[A.col[q]];
            z[i] -= s / diag[i];
        }
    }
};

} // namespace

SolveStats pcg(const CsrMatrix &A, const std::vector<double> &b, std::vector<double> &x,
               const SolverSettings &settings) {
    const std::size_t n = A.rows;
    SolveStats st;
    st.dofs = n;
    x.resize(n, 0.0);
    if (n == 0)
        return st;

    const double bnorm = std::sqrt(deterministic_dot(b, b));
    if (!std::isfinite(bnorm))
        throw NumericalError("right-hand side contains NaN or Inf");
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return st;
    }

    PrecondOp M(A, settings.precond);
    std::vector<double> r(n), z(n), p(n), q(n);
    A.multiply(x, q, settings.threads);
    for (std::size_t i = 0; i < n; ++i)
        r[i] = b[i] - q[i];
    double rnorm = std::sqrt(deterministic_dot(r, r));
    st.residual = rnorm / bnorm;
    if (st.residual <= settings.tol)
        return st;

    M.apply(r, z);
    p = z;
    double rz = deterministic_dot(r, z);
    for (int it = 1; it <= settings.max_iter; ++it) {
        A.multiply(p, q, settings.threads);
        const double pq = deterministic_dot(p, q);
        if (!std::isfinite(pq) || !std::isfinite(rz))
            throw NumericalError("NaN encountered in conjugate gradient at iteration " +
                                 std::to_string(it));
        if (!(pq > 0.0))
            throw NumericalError("matrix is not positive definite (p'Ap <= 0)");
        const double a = rz / pq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += a * p[i];
            r[i] -= a * q[i];
        }
        rnorm = std::sqrt(deterministic_dot(r, r));
        st.iterations = it;
        st.residual = rnorm / bnorm;
        if (!std::isfinite(st.residual))
            throw NumericalError("NaN residual in conjugate gradient");
        if (st.residual <= settings.tol) {
            // confirm against the true residual to avoid recurrence drift
            A.multiply(x, q, settings.threads);
            for (std::size_t i = 0; i < n; ++i)
                r[i] = b[i] - q[i];
            st.residual = std::sqrt(deterministic_dot(r, r)) / bnorm;
            if (st.residual <= settings.tol)
                return st;
        }
        M.apply(r, z);
        const double rz_new = deterministic_dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = z[i] + beta * p[i];
    }
    throw ConvergenceError("conjugate gradient did not converge in " +
                               std::to_string(settings.max_iter) + " iterations (residual " +
                               std::to_string(st.residual) + ")",
                           settings.max_iter, st.residual);
}

} // namespace combdrive
