#pragma once

// Symmetric tridiagonal eigen-solvers: Sturm-sequence counting, bisection
// for eigenvalues in a window, and inverse iteration for eigenvectors.
// Shared by the finite-difference Hamiltonian and the beta-ensemble oracle.

#include <cstddef>
#include <vector>

namespace decayspec::tridiag {

// Number of eigenvalues strictly below E (signed Sturm recurrence with an
// underflow guard). diag has size m, offdiag size m-1.
std::size_t count_below(const std::vector<double>& diag,
                        const std::vector<double>& offdiag, double E);

// All eigenvalues in [a, b), each isolated by bisection on count_below to
// absolute tolerance tol. Returned sorted ascending.
std::vector<double> eigenvalues_in(const std::vector<double>& diag,
                                   const std::vector<double>& offdiag,
                                   double a, double b, double tol);

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag);

// Full spectrum, sorted ascending.
std::vector<double> all_eigenvalues(const std::vector<double>& diag,
                                    const std::vector<double>& offdiag, double tol);

// Solve (T - shift*I) x = b by tridiagonal LU with partial pivoting.
// Safe for nearly singular shifts (inverse iteration use).
std::vector<double> solve_shifted(const std::vector<double>& diag,
                                  const std::vector<double>& offdiag, double shift,
                                  std::vector<double> rhs);

// Sharpens an isolated bisection eigenvalue by inverse iteration plus
// Rayleigh quotient; near machine precision after two rounds.
double rayleigh_refine(const std::vector<double>& diag,
                       const std::vector<double>& offdiag, double eigenvalue,
                       int iterations = 2);

// Inverse iteration at an isolated eigenvalue estimate. Returns the
// Euclidean-normalized eigenvector; throws numerical_error on
// non-convergence (residual reported in the message). max_iter tridiagonal
// solves at most.
std::vector<double> inverse_iteration(const std::vector<double>& diag,
                                      const std::vector<double>& offdiag,
                                      double eigenvalue, int max_iter = 50);

}  // namespace decayspec::tridiag
