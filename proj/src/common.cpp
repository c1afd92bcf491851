#include <cmath>
#include <limits>
#include <string>

#include "svo/errors.hpp"
#include "svo/linalg.hpp"
#include "svo/tolerances.hpp"

namespace svo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AsymmetryExceedsTolerance: return "AsymmetryExceedsTolerance";
    case ErrorKind::NotWellPosedAtZero: return "NotWellPosedAtZero";
    case ErrorKind::NotWellPosed: return "NotWellPosed";
    case ErrorKind::NearCutoff: return "NearCutoff";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::SingularAtTheta: return "SingularAtTheta";
    case ErrorKind::BoundaryTheta: return "BoundaryTheta";
    case ErrorKind::InvalidCoordinate: return "InvalidCoordinate";
    case ErrorKind::SingularCoreFactor: return "SingularCoreFactor";
    case ErrorKind::DefectiveCore: return "DefectiveCore";
    case ErrorKind::NearBlowup: return "NearBlowup";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ControlCostNotPD: return "ControlCostNotPD";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

struct TolField {
  const char* key;
  double Tolerances::*field;
};

constexpr TolField kTolFields[] = {
    {"eps_sym", &Tolerances::sym_rel},
    {"eps_pd", &Tolerances::pd_rel},
    {"eps_inv", &Tolerances::inv_rcond},
    {"eps_theta", &Tolerances::theta},
    {"eps_res", &Tolerances::res_rel},
    {"eps_eig", &Tolerances::eig_rel},
    {"kappa_max", &Tolerances::kappa_max},
    {"eps_real", &Tolerances::real_abs},
    {"eps_blow", &Tolerances::blow_rel},
    {"eps_spec", &Tolerances::spec_rel},
    {"eps_cluster", &Tolerances::cluster_rel},
    {"eps_proj", &Tolerances::proj},
    {"delta", &Tolerances::approach_window},
};

}  // namespace

void Tolerances::set(std::string_view key, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorKind::InvalidInput,
                "tolerance " + std::string(key) + " must be finite and non-negative");
  }
  if (key == "cutoff_max_iter") {
    cutoff_max_iter = static_cast<int>(value);
    return;
  }
  for (const auto& f : kTolFields) {
    if (key == f.key) {
      this->*(f.field) = value;
      return;
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown tolerance key: " + std::string(key));
}

std::vector<std::string> Tolerances::keys() {
  std::vector<std::string> out;
  for (const auto& f : kTolFields) out.emplace_back(f.key);
  out.emplace_back("cutoff_max_iter");
  return out;
}

Matrix sym_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double min_sym_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double rcond(const Matrix& m) {
  if (m.rows() != m.cols() || m.size() == 0) return 0.0;
  Eigen::PartialPivLU<Matrix> lu(m);
  const double r = lu.rcond();
  if (!std::isfinite(r)) return 0.0;
  // The estimator can report O(1) values for exactly singular inputs whose
  // pivots underflow to zero; guard with the pivots themselves.
  const auto diag = lu.matrixLU().diagonal().cwiseAbs();
  if (diag.minCoeff() == 0.0) return 0.0;
  return r;
}

Vector solve_checked(const Matrix& m, const Vector& rhs, std::string_view what,
                     double min_rcond) {
  if (m.rows() != m.cols() || m.rows() != rhs.size()) {
    throw Error(ErrorKind::DimensionMismatch, "shape mismatch solving " + std::string(what));
  }
  Eigen::PartialPivLU<Matrix> lu(m);
  double r = lu.rcond();
  if (!std::isfinite(r) || lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0) r = 0.0;
  if (r <= min_rcond) {
    throw Error(ErrorKind::SingularSystem,
                std::string(what) + " is singular (rcond " + std::to_string(r) + ")");
  }
  return lu.solve(rhs);
}

Matrix block_scaling(int d1, int d2, double w1, double w2) {
  Vector diag(d1 + d2);
  diag.head(d1).setConstant(w1);
  diag.tail(d2).setConstant(w2);
  return diag.asDiagonal();
}

}  // namespace svo
