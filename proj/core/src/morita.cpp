#include "mfd/morita.hpp"

#include "mfd/distortion.hpp"
#include "mfd/error.hpp"

namespace mfd {

Matrix morita_distortion(const Matrix& delta, const Matrix& jones, const Vector& rho) {
  const std::size_t a = delta.rows();
  const std::size_t b = delta.cols();
  if (jones.rows() != a || jones.cols() != b || rho.size() != a) {
    throw Error(ErrorCode::kShapeMismatch, "Morita weights, distortion and Jones matrix shapes disagree");
  }
  for (std::size_t i = 0; i < a; ++i)
    if (rho[i].sign() <= 0) throw Error(ErrorCode::kInvalidArgument, "Morita weights must be positive", {{"index", i}});
  Vector column(b, Scalar(0));
  for (std::size_t h = 0; h < a; ++h)
    for (std::size_t j = 0; j < b; ++j)
      if (!jones(h, j).is_zero()) column[j] += rho[h] * jones(h, j) / delta(h, j);
  Matrix out(a, b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) out(i, j) = delta(i, j) / rho[i] * column[j];
  return out;
}

RealizabilityResult realizability_check(const PartialMatrix& delta, const InclusionData& inclusion,
                                        const Tolerance& tol) {
  Factorization f = factorize(delta, tol);
  if (f.eta.size() != inclusion.a() || f.xi.size() != inclusion.b()) {
    throw Error(ErrorCode::kShapeMismatch, "distortion shape does not match D");
  }
  Vector weighted = left_multiply(f.eta, inclusion.dims());
  RealizabilityResult out;
  for (std::size_t j = 0; j < inclusion.b(); ++j)
    if (!tol.close(weighted[j], f.xi[j], static_cast<double>(inclusion.a()))) {
      out.violation = j;
      return out;
    }
  out.realizable = true;
  out.eta_witness = f.eta;
  return out;
}

Vector rescale_to_standard(const Matrix& delta, const InclusionData& inclusion, const PerronData& perron,
                           const Tolerance& tol) {
  RealizabilityResult check = realizability_check(PartialMatrix(delta), inclusion, tol);
  if (!check.realizable) {
    throw Error(ErrorCode::kNotRealizable, "distortion is not realizable", {{"column", *check.violation}});
  }
  const Matrix sigma = standard_distortion(perron);
  PartialMatrix ratio(delta.rows(), delta.cols());
  for (std::size_t i = 0; i < delta.rows(); ++i)
    for (std::size_t j = 0; j < delta.cols(); ++j) ratio.set(i, j, delta(i, j).as(NumberMode::kFloat) / sigma(i, j));
  // δ / σ is built from float spectral data; allow the rounding of a few
  // products per cycle.
  Tolerance loose{tol.eps * 100.0};
  Factorization f = factorize(ratio, loose);
  Vector rho;
  for (const Scalar& eta : f.eta) rho.push_back(Scalar(1.0) / eta);
  return rho;
}

}  // namespace mfd
