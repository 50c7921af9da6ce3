#pragma once

#include <array>
#include <vector>

#include "npmojo/segment.hpp"

namespace npmojo {

struct EvalReport {
  double cm = 0.0;
  double vm = 0.0;
  int q_hat = 0;
  int q_true = 0;
};

double covering_metric(const Segmentation& est, const Segmentation& truth);
double v_measure(const Segmentation& est, const Segmentation& truth);
EvalReport evaluate(const Segmentation& est, const Segmentation& truth);

struct Summary {
  // Proportions of q_hat - q in {<= -2, -1, 0, 1, >= 2}.
  std::array<double, 5> q_diff{};
  double mean_cm = 0.0;
  double mean_vm = 0.0;
  std::size_t count = 0;
};

Summary aggregate(const std::vector<EvalReport>& reports);

}  // namespace npmojo
