#include "svd.hpp"

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "qwspec/errors.hpp"

namespace qwspec::detail {
namespace {

// jobz / jobu+jobvt: 'A' when the full V is wanted (LAPACK only returns V
// alongside U), 'S' for thin factors, 'N' for values only.
char job_for(bool want_u, bool want_v) {
  if (want_v) return 'A';
  return want_u ? 'S' : 'N';
}

}  // namespace

Svd svd(const CMatrix& mtx, bool want_u, bool want_v) {
  const auto rows = static_cast<lapack_int>(mtx.rows());
  const auto cols = static_cast<lapack_int>(mtx.cols());
  const lapack_int k = std::min(rows, cols);
  Svd out;
  if (k == 0) {
    out.sigma.resize(0);
    if (want_u) out.u = CMatrix(rows, 0);
    if (want_v) out.v = CMatrix::Identity(cols, cols);
    return out;
  }
  const char job = job_for(want_u, want_v);
  const lapack_int ucols = job == 'A' ? rows : (job == 'S' ? k : 1);
  const lapack_int vtrows = job == 'A' ? cols : (job == 'S' ? k : 1);

  CMatrix a = mtx;
  Eigen::VectorXd s(k);
  CMatrix u(job == 'N' ? 1 : rows, ucols);
  CMatrix vt(job == 'N' ? 1 : vtrows, cols);
  const lapack_int ldu = static_cast<lapack_int>(u.rows());
  const lapack_int ldvt = static_cast<lapack_int>(vt.rows());

  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, job, rows, cols, a.data(), rows, s.data(), u.data(), ldu,
                                   vt.data(), ldvt);
  if (info > 0) {
    a = mtx;
    std::vector<double> superb(static_cast<std::size_t>(k));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, job, job, rows, cols, a.data(), rows, s.data(), u.data(), ldu,
                          vt.data(), ldvt, superb.data());
  }
  if (info != 0) {
    throw Error(ErrorKind::NumericalError, "SVD failed (LAPACK info " + std::to_string(info) + ")");
  }
  out.sigma = std::move(s);
  if (want_u) out.u = u.leftCols(k);
  if (want_v) out.v = vt.adjoint();
  return out;
}

}  // namespace qwspec::detail
