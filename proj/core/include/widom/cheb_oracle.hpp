#pragma once

#include <optional>
#include <vector>

#include "widom/construct.hpp"
#include "widom/domain.hpp"

namespace widom {

/// Approximate Chebyshev polynomial tau_n(z) = z^n + sum_k coeffs[k] z^k.
struct ChebResult {
  int n = 0;
  std::vector<cplx> coeffs;     // c_0..c_{n-1}
  double norm_est = 0.0;        // scanned sup over L of |tau_n|
  double lower_bound = 0.0;     // dual certificate: <= min over monic of max on the samples <= ||tau_n||_K
  int grid_size = 0;
  int lawson_iters = 0;
  int exchange_rounds = 0;      // polishing rounds that added boundary points
  int sample_count = 0;         // grid plus exchanged points
  double residual_spread = 0.0; // (max - min) / max of |tau_n| over the final active set
  std::vector<double> objective_history;  // Lawson weighted LS value per iteration
};

struct LawsonOptions {
  int grid = 0;          // 0 selects 16 n (at least 64)
  int max_iters = 200;
  double tol = 1e-8;
  bool polish = true;    // exact discrete minimax plus point exchange after Lawson
  int max_rounds = 30;
};

/// Lawson iteration (iteratively reweighted least squares) on psi(e^{2 pi i k / grid}).
/// The lower-degree part is expanded in an Arnoldi-orthogonalized monomial
/// basis on the sample set and every weighted problem is solved by QR.
///
/// With polish, the Lawson coefficients seed a log-barrier Newton solve of
///   min t  subject to  |tau(z_k)| <= t  on the samples,
/// and local maxima of |tau| on L are added to the samples until the scanned
/// norm and the discrete optimum agree to tol.
ChebResult lawson_chebyshev(const ExteriorMap& map, int n, const LawsonOptions& options = {});

/// Evaluates tau_n through its monomial coefficients.
cplx eval_cheb(const ChebResult& result, cplx z);

struct BracketOptions {
  LawsonOptions lawson;
  int q = 2;
  double s = 0.25;  // level parameter of the comparison construction, c = s m / q
  PlacementMode mode = PlacementMode::shrunk;
};

struct WidomBracket {
  int n = 0;
  double lower = 1.0;
  double upper = 0.0;                         // min of the candidates below
  double upper_lawson = 0.0;                  // norm_est / cap^n
  std::optional<double> upper_constructed;    // constructed factor when n = q m
};

/// Bracket for w_n = ||tau_n||_K / cap^n.
WidomBracket widom_lower_upper(const ExteriorMap& map, int n, const BracketOptions& options = {});

}  // namespace widom
