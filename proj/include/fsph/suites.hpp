#pragma once

#include "fsph/report.hpp"
#include "fsph/fuzzy.hpp"

#include <string>
#include <vector>

namespace fsph {

// Verification suites shared by the CLI and the acceptance run. Each is
// deterministic (fixed seeds) and reports max-abs residuals.

// Idempotence, trace-freeness, rank count, the two recursion ansaetze, braid
// relations, M(l+1) coefficients and pairing-sum traces, for ranks <= lmax.
Report projectorSuite(int D, int lmax);
// Dimensions, orthonormal bases, L and t^h actions, polynomial round trips.
Report harmonicSuite(int D, int Lambda);
// All fuzzy relation families, generation (when N <= 30) and O(D) equivariance.
Report fuzzySuite(const ModelParams& p);
// Closed-form N vs sphere integrals, recursion vs direct matrices, bounds
// where every recursion path stays inside H_Lambda.
Report cgSuite(const ModelParams& p);
Report liftSuite(const ModelParams& p);
// Spectrum and cutoff at the model k; ODE validation at k = 1e4.
Report radialSuite(const ModelParams& p);
// Convergence of f = t1 on phi = 1 over the given cutoffs.
Report convergeSuite(int D, const std::vector<int>& lambdas);

// Every signed permutation matrix of size D (2^D D! of them).
std::vector<Eigen::MatrixXd> signedPermutations(int D);

}  // namespace fsph
