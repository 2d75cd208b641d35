#include "fracshear/expm.hpp"

#include <array>
#include <cmath>

#include "fracshear/errors.hpp"

namespace fracshear {

namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
    10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
    960960.0,            16380.0,             182.0,              1.0};

// backward-error threshold for degree 13 in the 1-norm
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw ShapeError("expm: matrix must be square");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  if (!a.allFinite()) throw NumericalError("expm: non-finite entries");

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return Eigen::MatrixXcd::Identity(n, n);
  int s = 0;
  if (norm1 > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  const Eigen::MatrixXcd x = a * std::ldexp(1.0, -s);

  const auto& b = kPade13;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd x2 = x * x;
  const Eigen::MatrixXcd x4 = x2 * x2;
  const Eigen::MatrixXcd x6 = x4 * x2;

  const Eigen::MatrixXcd w1 = b[13] * x6 + b[11] * x4 + b[9] * x2;
  const Eigen::MatrixXcd w2 = b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id;
  const Eigen::MatrixXcd z1 = b[12] * x6 + b[10] * x4 + b[8] * x2;
  const Eigen::MatrixXcd z2 = b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
  const Eigen::MatrixXcd u = x * (x6 * w1 + w2);
  const Eigen::MatrixXcd v = x6 * z1 + z2;

  Eigen::MatrixXcd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  if (!r.allFinite()) throw NumericalError("expm: result is not finite");
  return r;
}

}  // namespace fracshear
