#pragma once

#include "qwspec/types.hpp"

namespace qwspec::detail {

struct Svd {
  Eigen::VectorXd sigma;  // descending
  CMatrix u;              // thin, when requested
  CMatrix v;              // full (cols x cols), when requested
};

/// LAPACK zgesdd, retried with zgesvd when it does not converge. Throws
/// NumericalError when both drivers fail.
Svd svd(const CMatrix& mtx, bool want_u, bool want_v);

}  // namespace qwspec::detail
