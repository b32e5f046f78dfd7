#include "orbint/linalg.hpp"

namespace orbint {

QMat block_diag(const QMat& a, const QMat& b) {
  QMat out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

}  // namespace orbint
