#include "mces/models/target_model.hpp"

#include "mces/error.hpp"

namespace mces {

double TargetModel::potential(const Eigen::VectorXd& x) const {
  require_dim(static_cast<std::size_t>(dim()), static_cast<std::size_t>(x.size()),
              "potential");
  return potential_impl(x);
}

Eigen::VectorXd TargetModel::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(x.size());
  gradient(x, out);
  return out;
}

void TargetModel::gradient(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  require_dim(static_cast<std::size_t>(dim()), static_cast<std::size_t>(x.size()),
              "gradient");
  out.resize(x.size());
  gradient_impl(x, out);
}

}  // namespace mces
