#include "mces/models/logistic.hpp"

#include <cmath>

#include "mces/error.hpp"
#include "mces/math.hpp"

namespace mces {

LogisticRegressionModel::LogisticRegressionModel(Eigen::MatrixXd design,
                                                 Eigen::VectorXd labels)
    : design_(std::move(design)), labels_(std::move(labels)) {
  require(design_.rows() > 0 && design_.cols() > 0,
          "LogisticRegressionModel: empty design matrix");
  require(labels_.size() == design_.rows(),
          "LogisticRegressionModel: label count does not match design rows");
  for (Eigen::Index i = 0; i < labels_.size(); ++i) {
    require(labels_[i] == 0.0 || labels_[i] == 1.0,
            "LogisticRegressionModel: labels must be 0 or 1");
  }
  require(design_.allFinite(), "LogisticRegressionModel: design not finite");
}

double LogisticRegressionModel::potential_impl(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd z = design_ * beta;
  double U = 0.5 * beta.squaredNorm();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    U += softplus(z[i]) - labels_[i] * z[i];
  }
  return U;
}

void LogisticRegressionModel::gradient_impl(const Eigen::VectorXd& beta,
                                            Eigen::VectorXd& out) const {
  Eigen::VectorXd resid = design_ * beta;
  for (Eigen::Index i = 0; i < resid.size(); ++i) {
    resid[i] = sigmoid(resid[i]) - labels_[i];
  }
  out.noalias() = design_.transpose() * resid;
  out += beta;
}

}  // namespace mces
